#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "domgame/generators.hpp"
#include "domgame/graph.hpp"
#include "domgame/residual.hpp"
#include "domgame/strategy.hpp"

namespace domgame {

/// One failed check. `check` is a stable dotted identifier such as
/// "phase2.dominator_gain"; `turn` is a record position or -1.
struct Violation {
    std::string check;
    int turn = -1;
    std::string detail;
};

std::string describe(const std::vector<Violation>& violations);

/// Ledger and phase invariants of a complete strategy trace on a forest:
/// per-move gains, phase requirements and monotonicity, per-phase decrease
/// accounting, critical-turn and critical-centre bounds, structure at the
/// Phase 2 boundary and during Phases 3-4, the all-K2 endgame, and the
/// turn-count inequalities tying e*, c*, r_k and n_ell together.
std::vector<Violation> check_trace_invariants(const GameTrace& trace);

/// Structure of a residual forest from which no move gains 7 or more:
/// white components have order <= 2, leaves of components of order >= 3 are
/// white, a blue vertex with a single white neighbour has exactly one more
/// neighbour and it lies in a white pair, blue degrees are <= 4.
/// Throws Error{PreconditionNotMet} if some move gains >= 7.
std::vector<Violation> check_phase2_end_structure(const ResidualState& s);

/// Exploratory: the white-component, white-leaf and single-white properties
/// above, tested on the state where Phase 1 ends. Never asserted; corpus runs
/// report hits as findings.
std::vector<Violation> explore_phase1_end_structure(const GameTrace& trace);

/// Structure and gain envelopes valid for residual forests in Phases 3-4.
std::vector<Violation> check_midgame_structure(const ResidualState& s);
std::vector<Violation> check_midgame_structure(const GameTrace& trace);

/// Vertices that are critical centres in some state at or after the end of
/// Phase 1.
VertexSet critical_centers_after_phase1(const GameTrace& trace);

struct Thresholds {
    int three_fifths = 0;          // floor(3n/5)
    int three_fifths_prime = 0;    // floor((3n+1)/5)
    int conjecture_prime = 0;      // floor((3n+2)/5)
    int five_eighths = 0;          // floor(5n/8)
    int five_eighths_prime = 0;    // floor((5n+2)/8)
    static Thresholds for_order(int n);
};

struct BoundsRow {
    int n = 0;
    bool no_leaf_pair_at_4 = false;
    bool caterpillar_components = false;
    int gamma = 0;
    int gamma_g = 0;
    int gamma_g_prime = 0;
    Thresholds thresholds;
    double slack_7n_11 = 0.0;  // 7n/11 - gamma_g
    std::vector<Violation> violations;
    std::vector<std::string> findings;
};

/// Exact gamma, gamma_g, gamma_g' with the classical, 3n/5 and 5n/8 bounds
/// asserted. Throws Error{TooLarge}.
BoundsRow check_bounds_exact(const Forest& forest);
BoundsRow check_bounds_exact(const Forest& forest, GameSolver& solver);

enum class CorpusSource { AllTrees, RandomForests, RandomCaterpillars, Files };

struct CorpusSpec {
    std::string label = "corpus";
    CorpusSource source = CorpusSource::AllTrees;
    int n_min = 2;
    int n_max = 10;
    int count = 0;  // random sources
    std::uint64_t seed = 1;
    std::vector<std::string> files;
    /// Keep only forests with no two leaves at distance 4.
    bool class_filter_no_leaf_pair_at_4 = false;
    std::vector<StallerKind> staller_policies{StallerKind::Optimal, StallerKind::GreedyMin,
                                              StallerKind::Random};
    std::vector<Player> starts{Player::Dominator, Player::Staller};
    bool check_bounds = true;
    bool check_worst_case = true;
    bool check_lemmas = true;
    int jobs = 1;
    /// Failing instances are written here as replay bundles when non-empty.
    std::string replay_dir;
};

struct CorpusInstance {
    std::string id;
    Forest forest;
    std::uint64_t seed = 0;
};

/// Deterministic expansion of a spec. Throws Error{GeneratorFailure}.
std::vector<CorpusInstance> materialize(const CorpusSpec& spec);

struct InstanceRow {
    std::string id;
    int n = 0;
    int components = 0;
    bool no_leaf_pair_at_4 = false;
    bool caterpillar_components = false;
    std::optional<BoundsRow> bounds;
    std::optional<int> worst_dominator_start;
    std::optional<int> worst_staller_start;
    int strategy_max_dominator_start = 0;
    int strategy_max_staller_start = 0;
    int max_e_star = 0;
    int max_c_star = 0;
    int traces_checked = 0;
    std::vector<Violation> violations;
    std::vector<std::string> findings;
    /// Failing traces as JSON, for replay bundles.
    std::vector<std::pair<std::string, std::string>> failing_traces;
    std::uint64_t seed = 0;
    std::string forest_text;
};

struct CheckReport {
    std::string label;
    std::vector<InstanceRow> rows;
    std::size_t violation_count = 0;
    std::size_t finding_count = 0;
    std::size_t traces_checked = 0;

    bool passed() const { return violation_count == 0; }
};

InstanceRow check_instance(const CorpusInstance& instance, const CorpusSpec& spec);

CheckReport corpus_run(const CorpusSpec& spec);

/// Fixed-column CSV, one row per instance.
std::string report_csv(const CheckReport& report);
std::string report_summary(const CheckReport& report);

/// Writes report.csv, summary.txt and replay bundles under `dir`.
void write_report(const CheckReport& report, const std::string& dir);

struct ScanRow {
    int n = 0;
    int trees = 0;
    int max_gamma_g = 0;
    int max_gamma_g_prime = 0;
    int threshold = 0;  // floor(3n/5)
    std::vector<std::string> attainers;  // edge lists of trees reaching max_gamma_g
    bool exceeds = false;
};

/// Per-order maximum of gamma_g over all trees of order 2..n_max.
/// Throws Error{LimitExceeded}.
std::vector<ScanRow> extremal_scan(int n_max, int limit = kDefaultEnumerationLimit);

std::string scan_table(const std::vector<ScanRow>& rows);

}  // namespace domgame
