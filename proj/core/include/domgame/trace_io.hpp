#pragma once

#include <string>
#include <string_view>

#include "domgame/strategy.hpp"

namespace domgame {

std::string phase_label(PhaseId p);  // "P0".."P4"

/// One line per turn: "<index> <D|S> <vertex> <gain> P<phase> e=<e_i|-> [critical]",
/// preceded by a '#' header and followed by a '#' ledger line.
std::string trace_to_text(const GameTrace& trace);

/// Machine-readable form carrying every GameTrace field.
std::string trace_to_json(const GameTrace& trace);

/// Inverse of trace_to_json. Records are taken as written (not replayed), so
/// a hand-edited trace can be fed to the invariant checks.
GameTrace trace_from_json(std::string_view text);

}  // namespace domgame
