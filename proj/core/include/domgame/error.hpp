#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace domgame {

enum class ErrorCode {
    CycleDetected,
    DuplicateEdge,
    SelfLoop,
    VertexOutOfRange,
    MalformedLine,
    InfeasibleShape,
    LimitExceeded,
    IsolatedVertexPresent,
    IllegalMove,
    TooLarge,
    GameOver,
    PhaseNotApplicable,
    NotAForest,
    IndexOutOfRange,
    IncompleteTrace,
    PreconditionNotMet,
    GeneratorFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace domgame
