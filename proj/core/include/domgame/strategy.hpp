#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "domgame/graph.hpp"
#include "domgame/residual.hpp"
#include "domgame/solver.hpp"

namespace domgame {

/// Phase0 is the opening Staller turn of a Staller-start game.
enum class PhaseId : std::uint8_t { Phase0 = 0, Phase1, Phase2, Phase3, Phase4 };

inline constexpr int kPhaseCount = 5;

constexpr int phase_number(PhaseId p) { return static_cast<int>(p); }
constexpr PhaseId phase_from_number(int i) { return static_cast<PhaseId>(i); }

struct MoveScore {
    Vertex vertex;
    int gain;
    int newly_red;
};

/// Gain and newly-red count of every legal move, by ascending vertex id.
std::vector<MoveScore> score_moves(const Graph& g, VertexSet dominated);

struct MaxGainMoves {
    int max_gain = 0;
    std::vector<Vertex> moves;
    std::vector<int> newly_red;  // parallel to moves
};

/// Throws Error{GameOver}.
MaxGainMoves max_gain_moves(const ResidualState& s);

int max_gain(const Graph& g, VertexSet dominated);

/// Phase1: some move gains >= 7 and turns >= 2 vertices red.
/// Phase2: some move gains >= 7. Phase3: >= 6. Phase4: any legal move.
bool phase_applicable(const Graph& g, VertexSet dominated, PhaseId p);
bool phase_applicable(const ResidualState& s, PhaseId p);

/// Smallest applicable phase >= current (Phase0 counts as Phase1).
/// Throws Error{GameOver} on a finished game.
PhaseId advance_phase(PhaseId current, const Graph& g, VertexSet dominated);
PhaseId advance_phase(PhaseId current, const ResidualState& s);

/// The strategy's move in phase p. Phase1/2: highest gain among moves meeting
/// the phase requirement, then most new reds, then lowest id. Phase3: highest
/// gain, preferring a white stem with a white leaf, then lowest id. Phase4:
/// lowest id. Throws Error{PhaseNotApplicable}.
Vertex dominator_choose(const Graph& g, VertexSet dominated, PhaseId p);
Vertex dominator_choose(const ResidualState& s, PhaseId p);

/// The phased strategy as a policy; the policy register holds the phase.
class PhasedPolicy final : public DominatorPolicy {
public:
    std::uint8_t initial_state() const override {
        return static_cast<std::uint8_t>(PhaseId::Phase1);
    }
    Step choose(const Graph& g, VertexSet dominated, std::uint8_t state) const override;
};

const PhasedPolicy& phased_policy();

enum class StallerKind { Optimal, GreedyMin, Random, Worst, Interactive, Scripted };

const char* to_string(StallerKind k);

/// How Staller moves in run_game.
///
/// Optimal maximises the remaining length against optimal Dominator replies;
/// Worst maximises it against the phased strategy itself. Both accept a
/// pre-built search object so corpus runs can share tables.
struct StallerPolicy {
    StallerKind kind = StallerKind::Optimal;
    std::function<Vertex(const ResidualState&)> callback;
    std::vector<Vertex> script;
    std::shared_ptr<GameSolver> solver;
    std::shared_ptr<WorstCaseSearch> worst;

    static StallerPolicy optimal(std::shared_ptr<GameSolver> solver = nullptr);
    static StallerPolicy greedy_min();
    static StallerPolicy random();
    static StallerPolicy worst_case(std::shared_ptr<WorstCaseSearch> search = nullptr);
    static StallerPolicy interactive(std::function<Vertex(const ResidualState&)> callback);
    static StallerPolicy scripted(std::vector<Vertex> moves);
};

struct TurnRecord {
    int index = 0;  // 0 for the Staller opening, then 1, 2, ...
    Player player = Player::Dominator;
    Vertex vertex = -1;
    int gain = 0;
    int newly_red = 0;
    PhaseId phase = PhaseId::Phase1;
    int e_i = 0;  // meaningful in Phase1 only
    bool critical = false;
    friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct GameTrace {
    std::shared_ptr<const Graph> forest;
    Player first = Player::Dominator;
    std::uint64_t seed = 0;
    std::string staller_policy;

    std::vector<TurnRecord> records;
    /// states[k] is the dominated set before records[k]; one extra at the end.
    std::vector<VertexSet> states;

    int e_star = 0;
    int c_star = 0;
    int r_k = 0;
    int n_ell = 0;
    std::optional<int> e0_star;
    int r0 = 0;
    int b0 = 0;
    std::array<int, kPhaseCount> per_phase_decrease{};

    /// Position in `states` where Phase1 is over (the G_k of the ledgers).
    std::size_t phase1_end = 0;
    /// Position of the first Dominator decision with phase >= 3, if any.
    std::optional<std::size_t> phase3_start;
    bool complete = false;

    int turns() const { return static_cast<int>(records.size()); }
    ResidualState state_at(std::size_t pos) const;
};

/// Builds a trace move by move: run_game and the game service both use it.
class GameRecorder {
public:
    GameRecorder(std::shared_ptr<const Graph> forest, Player first, std::uint64_t seed = 0,
                 std::string staller_policy = {});

    Player to_move() const { return mover_; }
    bool over() const { return state_.terminal(); }
    const ResidualState& state() const { return state_; }
    /// Phase register as the strategy sees it between Dominator turns.
    PhaseId phase_floor() const { return floor_; }
    /// Phase the next Dominator turn will be played in.
    PhaseId upcoming_dominator_phase() const;
    /// The phased strategy's move in the current position (Dominator to move).
    Vertex strategy_move() const;

    /// Throws Error{IllegalMove, GameOver}.
    const TurnRecord& play(Vertex v);

    const GameTrace& trace() const { return trace_; }

private:
    ResidualState state_;
    Player mover_;
    PhaseId floor_ = PhaseId::Phase1;
    bool phase1_closed_ = false;
    GameTrace trace_;
};

/// One game's worth of Staller state: the policy with its search tables,
/// the RNG (seeded once) and the script cursor.
class StallerDriver {
public:
    StallerDriver(StallerPolicy policy, std::shared_ptr<const Graph> forest,
                  std::uint64_t seed = 0);

    /// Staller's move in the recorder's current position.
    Vertex choose(const GameRecorder& game);
    const StallerPolicy& policy() const { return policy_; }

private:
    StallerPolicy policy_;
    std::mt19937_64 rng_;
    std::size_t cursor_ = 0;
};

/// Full game: Dominator follows the phased strategy, Staller the policy.
/// Throws Error{NotAForest, IsolatedVertexPresent, TooLarge}.
GameTrace run_game(const Forest& forest, const StallerPolicy& staller, Player first,
                   std::uint64_t seed = 0);
GameTrace run_game(std::shared_ptr<const Graph> forest, const StallerPolicy& staller,
                   Player first, std::uint64_t seed = 0);

/// A Phase3 Staller turn at position `pos` is critical when Staller got exactly
/// 3 points, the preceding Dominator move (< 8 points) was a white stem of a
/// critical P5 of the state before it, Staller took that path's centre, and
/// no move of 7 or more points is available afterwards.
/// Throws Error{IndexOutOfRange}.
bool is_critical_turn(const Graph& g, std::span<const VertexSet> states,
                      std::span<const TurnRecord> records, std::size_t pos);
bool is_critical_turn(const GameTrace& trace, std::size_t pos);

struct PhaseLedger {
    int turns = 0;
    int dominator_turns = 0;
    int staller_turns = 0;
    int decrease = 0;
};

struct LedgerSummary {
    std::array<PhaseLedger, kPhaseCount> phases{};
    int total_turns = 0;
    int e_star = 0;
    int c_star = 0;
    int r_k = 0;
    int n_ell = 0;
    std::optional<int> e0_star;

    int phase1_target() const { return 5 * phases[1].turns + e_star; }
    int phase2_target() const { return 5 * phases[2].turns; }
    int phase3_target() const { return 5 * phases[3].turns - c_star; }
    int phase4_target() const { return 5 * phases[4].turns; }
};

/// Throws Error{IncompleteTrace}.
LedgerSummary ledger(const GameTrace& trace);

}  // namespace domgame
