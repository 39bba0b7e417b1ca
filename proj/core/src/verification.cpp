#include "domgame/verification.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "domgame/error.hpp"
#include "domgame/solver.hpp"
#include "domgame/trace_io.hpp"

namespace domgame {

namespace {

void add(std::vector<Violation>& out, std::string check, int turn, std::string detail) {
    out.push_back({std::move(check), turn, std::move(detail)});
}

std::string set_text(VertexSet s) {
    std::string out = "{";
    bool first = true;
    for_each_vertex(s, [&](Vertex v) {
        out += (first ? "" : ",") + std::to_string(v);
        first = false;
    });
    return out + "}";
}

int component_max_gain(const ResidualState& s, VertexSet component) {
    int best = 0;
    for_each_vertex(component & legal_moves(s), [&](Vertex v) {
        best = std::max(best, rules::gain(s.graph(), s.dominated(), v));
    });
    return best;
}

// Low-gain structure shared by the Phase 2 boundary check and its later
// restatement; `prefix` names the check family.
void low_gain_structure(const ResidualState& s, const StructureReport& r, int turn,
                        const std::string& prefix, std::vector<Violation>& out) {
    if (r.larger_white != 0) {
        add(out, prefix + ".white_components", turn,
            "white component of order >= 3 on " + set_text(r.larger_white));
    }
    for (const auto& comp : r.components) {
        if (comp.order >= 3 && comp.blue_leaves != 0) {
            add(out, prefix + ".leaves_white", turn,
                "blue leaves " + set_text(comp.blue_leaves) + " in component of order " +
                    std::to_string(comp.order));
        }
    }
    const auto component_order = [&](Vertex v) {
        for (const auto& comp : r.components) {
            if (contains(comp.vertices, v)) return comp.order;
        }
        return 0;
    };
    for (const auto& [v, degree] : r.blue_degrees) {
        const VertexSet nb = s.residual_neighbors(v);
        if (component_order(v) >= 3 && (nb & r.single_white) != 0) {
            const VertexSet rest = nb & ~bit(std::countr_zero(nb & r.single_white));
            if (degree != 2 || (rest & r.white_pair_members) == 0) {
                add(out, prefix + ".blue_single_white", turn,
                    "blue " + std::to_string(v) + " neighbours " + set_text(nb));
            }
        }
        if (degree > 4) {
            add(out, prefix + ".blue_degree", turn,
                "blue " + std::to_string(v) + " has degree " + std::to_string(degree));
        }
    }
}

}  // namespace

std::string describe(const std::vector<Violation>& violations) {
    std::ostringstream out;
    for (const auto& v : violations) {
        out << v.check;
        if (v.turn >= 0) out << " @" << v.turn;
        out << ": " << v.detail << '\n';
    }
    return out.str();
}

std::vector<Violation> check_phase2_end_structure(const ResidualState& s) {
    if (!s.terminal() && max_gain(s.graph(), s.dominated()) >= 7) {
        throw Error(ErrorCode::PreconditionNotMet, "a move of 7 or more points is available");
    }
    std::vector<Violation> out;
    low_gain_structure(s, structure_report(s), -1, "phase2_end", out);
    return out;
}

std::vector<Violation> explore_phase1_end_structure(const GameTrace& trace) {
    std::vector<Violation> out;
    const std::size_t pos = static_cast<std::size_t>(trace.phase1_end);
    if (pos >= trace.states.size()) return out;
    const ResidualState s(trace.forest, trace.states[pos]);
    if (s.terminal()) return out;
    low_gain_structure(s, structure_report(s), static_cast<int>(pos), "phase1_end", out);
    std::erase_if(out, [](const Violation& v) { return v.check == "phase1_end.blue_degree"; });
    return out;
}

std::vector<Violation> check_midgame_structure(const ResidualState& s) {
    std::vector<Violation> out;
    const StructureReport r = structure_report(s);
    if (r.larger_white != 0) {
        add(out, "midgame.white_components", -1,
            "white component of order >= 3 on " + set_text(r.larger_white));
    }
    for (const auto& [v, degree] : r.blue_degrees) {
        if (degree > 4) {
            add(out, "midgame.blue_degree", -1,
                "blue " + std::to_string(v) + " has degree " + std::to_string(degree));
        }
        const VertexSet nb = s.residual_neighbors(v);
        for_each_vertex(nb & r.single_white, [&](Vertex u) {
            if ((s.residual_neighbors(u) & r.blue_leaves) != 0) return;
            const VertexSet rest = nb & ~bit(u);
            const VertexSet allowed = r.white_pair_members | r.single_white_with_blue_leaf;
            if (count(rest) != 1 || (rest & allowed) == 0) {
                add(out, "midgame.blue_single_white", -1,
                    "blue " + std::to_string(v) + " via single white " + std::to_string(u) +
                        " has further neighbours " + set_text(rest));
            }
        });
    }
    for (const auto& comp : r.components) {
        if (comp.order >= 3 && !comp.bwb && comp.blue_leaves != 0) {
            const int best = component_max_gain(s, comp.vertices);
            if (best < 8) {
                add(out, "midgame.blue_leaf_gain", -1,
                    "component " + set_text(comp.vertices) + " max gain " + std::to_string(best));
            }
        }
        if (comp.order >= 4 && comp.blue_leaves == 0) {
            const int best = component_max_gain(s, comp.vertices);
            if (best > 6) {
                add(out, "midgame.leafless_gain", -1,
                    "component " + set_text(comp.vertices) + " max gain " + std::to_string(best));
            }
        }
    }
    return out;
}

std::vector<Violation> check_midgame_structure(const GameTrace& trace) {
    std::vector<Violation> out;
    if (!trace.phase3_start) return out;
    for (std::size_t pos = *trace.phase3_start; pos < trace.states.size(); ++pos) {
        for (auto v : check_midgame_structure(trace.state_at(pos))) {
            v.turn = static_cast<int>(pos);
            out.push_back(std::move(v));
        }
    }
    return out;
}

VertexSet critical_centers_after_phase1(const GameTrace& trace) {
    VertexSet centers = 0;
    for (std::size_t pos = trace.phase1_end; pos < trace.states.size(); ++pos) {
        for (const auto& p : detect_critical_p5(trace.state_at(pos))) centers |= bit(p.center);
    }
    return centers;
}

std::vector<Violation> check_trace_invariants(const GameTrace& t) {
    std::vector<Violation> out;
    const Graph& g = *t.forest;
    const int n = g.order();
    if (!t.complete || t.states.empty() || t.states.back() != g.all() ||
        t.states.size() != t.records.size() + 1) {
        add(out, "trace.complete", -1, "trace does not end in a dominated forest");
        return out;
    }
    const int turns = t.turns();

    std::array<PhaseLedger, kPhaseCount> ph{};
    int total = 0;
    int e_sum = 0;
    int flagged = 0;
    for (int pos = 0; pos < turns; ++pos) {
        const TurnRecord& r = t.records[pos];
        const bool dom = r.player == Player::Dominator;
        total += r.gain;
        auto& p = ph[phase_number(r.phase)];
        ++p.turns;
        (dom ? p.dominator_turns : p.staller_turns) += 1;
        p.decrease += r.gain;

        if (r.gain < 3) add(out, "gain.at_least_3", pos, "gain " + std::to_string(r.gain));
        if (pos > 0 && r.phase < t.records[pos - 1].phase) {
            add(out, "phase.monotone", pos, "phase went back");
        }
        if (r.phase == PhaseId::Phase0 && (dom || pos != 0)) {
            add(out, "phase0.opening_only", pos, "Phase0 outside the Staller opening");
        }
        switch (r.phase) {
            case PhaseId::Phase1:
                e_sum += r.e_i;
                if (r.e_i != r.gain - (dom ? 7 : 3)) {
                    add(out, "phase1.extra_points", pos, "e_i does not match the gain");
                }
                if (r.e_i < 0) add(out, "phase1.extra_nonnegative", pos, "e_i < 0");
                if (dom && (r.gain < 7 || r.newly_red < 2)) {
                    add(out, "phase1.dominator_gain", pos,
                        "gain " + std::to_string(r.gain) + " red " + std::to_string(r.newly_red));
                }
                break;
            case PhaseId::Phase2:
                if (dom && r.gain < 7) {
                    add(out, "phase2.dominator_gain", pos,
                        "Phase 2 Dominator gain " + std::to_string(r.gain) + " < 7");
                }
                break;
            case PhaseId::Phase3:
                if (dom && r.gain < 6) {
                    add(out, "phase3.dominator_gain", pos,
                        "Phase 3 Dominator gain " + std::to_string(r.gain) + " < 6");
                }
                break;
            case PhaseId::Phase4:
                if (r.gain != 5) {
                    add(out, "phase4.gain_exactly_5", pos, "gain " + std::to_string(r.gain));
                }
                break;
            case PhaseId::Phase0:
                break;
        }
        if (r.critical) ++flagged;
    }

    if (total != 3 * n) {
        add(out, "potential.total", -1,
            "gains sum to " + std::to_string(total) + ", expected " + std::to_string(3 * n));
    }
    if (e_sum != t.e_star) add(out, "phase1.extra_sum", -1, "e* differs from the sum of e_i");

    // Phase 1 starts with Dominator, so its turns alternate D,S,D,...
    {
        const auto& p1 = ph[1];
        const int k = p1.turns;
        const int extra = p1.dominator_turns - p1.staller_turns;
        if (extra < 0 || extra > 1 || p1.decrease != 5 * k + 2 * extra + t.e_star) {
            add(out, "phase1.decrease", -1,
                "decrease " + std::to_string(p1.decrease) + " vs 5k+e* = " +
                    std::to_string(5 * k + t.e_star));
        }
        if (k % 2 == 0 && p1.decrease != 5 * k + t.e_star) {
            add(out, "phase1.decrease", -1, "even phase not equal to 5k+e*");
        }
    }
    if (ph[2].decrease < 5 * ph[2].turns) {
        add(out, "phase2.decrease", -1,
            std::to_string(ph[2].decrease) + " < 5k = " + std::to_string(5 * ph[2].turns));
    }
    if (ph[3].decrease < 5 * ph[3].turns - t.c_star) {
        add(out, "phase3.decrease", -1,
            std::to_string(ph[3].decrease) + " < 5k-c* = " +
                std::to_string(5 * ph[3].turns - t.c_star));
    }
    if (ph[4].decrease != 5 * ph[4].turns) {
        add(out, "phase4.decrease", -1, "Phase 4 decrease is not 5 per turn");
    }

    // Phase-0 opening of a Staller-start game.
    if (t.first == Player::Staller && turns > 0) {
        const TurnRecord& r = t.records.front();
        if (r.phase != PhaseId::Phase0) add(out, "phase0.label", 0, "opening not in Phase0");
        if (r.gain < 4) add(out, "phase0.gain", 0, "opening gain " + std::to_string(r.gain));
        if (t.r0 < 1 || t.r0 + t.b0 < 2) add(out, "phase0.colours", 0, "r0 < 1 or r0+b0 < 2");
        if (!t.e0_star || *t.e0_star != 3 * t.r0 + t.b0 - 5 || r.gain != 5 + *t.e0_star) {
            add(out, "phase0.extra", 0, "e0* != 3r0+b0-5");
        }
    }

    // Critical turns: flags agree with recomputation, 3-point trichotomy.
    int recomputed = 0;
    for (int pos = 0; pos < turns; ++pos) {
        const bool critical = is_critical_turn(t, pos);
        recomputed += critical ? 1 : 0;
        if (critical != t.records[pos].critical) {
            add(out, "critical.flag", pos, "critical flag disagrees with recomputation");
        }
        const TurnRecord& r = t.records[pos];
        if (r.player != Player::Staller || r.phase != PhaseId::Phase3 || r.gain != 3) continue;
        const TurnRecord& prev = t.records[pos - 1];
        const bool a = prev.player == Player::Dominator && prev.gain >= 8;
        const bool b = max_gain(g, t.states[pos + 1]) >= 7;
        bool c = false;
        for (const auto& p : detect_critical_p5(t.state_at(pos - 1))) {
            if ((p.path[1] == prev.vertex || p.path[3] == prev.vertex) && p.center == r.vertex) {
                c = true;
            }
        }
        if (!a && !b && !c) {
            add(out, "phase3.trichotomy", pos, "three-point Staller turn with no explanation");
        }
    }
    if (recomputed != t.c_star || flagged != t.c_star) {
        add(out, "critical.count", -1, "c* does not match the critical turns");
    }
    if (5 * t.c_star > t.n_ell) {
        add(out, "critical.turn_bound", -1,
            "5c* = " + std::to_string(5 * t.c_star) + " > n_ell = " + std::to_string(t.n_ell));
    }

    const int centers = count(critical_centers_after_phase1(t));
    if (t.first == Player::Dominator) {
        if (3 * centers > t.r_k + 3 * t.e_star) {
            add(out, "critical.center_bound", -1,
                std::to_string(centers) + " centres > r_k/3 + e*");
        }
    } else if (3 * centers > (t.r_k - t.r0) + 3 * t.e_star + 3 * t.b0) {
        add(out, "critical.center_bound", -1,
            std::to_string(centers) + " centres > (r_k-r0)/3 + e* + b0");
    }
    if (!leaf_pair_at_distance(g, 4)) {
        for (std::size_t pos = 0; pos < t.states.size(); ++pos) {
            if (!detect_critical_p5(t.state_at(pos)).empty()) {
                add(out, "critical.none_without_leaf_pair_4", static_cast<int>(pos),
                    "critical P5 in a forest without leaves at distance 4");
                break;
            }
        }
    }

    // Structure wherever no 7-point move exists, in particular at the end of Phase 2.
    for (std::size_t pos = 0; pos < t.states.size(); ++pos) {
        const ResidualState s = t.state_at(pos);
        if (s.terminal() || max_gain(g, s.dominated()) >= 7) continue;
        const bool boundary = t.phase3_start && pos == *t.phase3_start;
        low_gain_structure(s, structure_report(s), static_cast<int>(pos),
                           boundary ? "phase2_end" : "low_gain", out);
    }
    for (auto& v : check_midgame_structure(t)) out.push_back(std::move(v));

    // All-K2 endgame.
    for (int pos = 0; pos < turns; ++pos) {
        if (t.records[pos].phase != PhaseId::Phase4) continue;
        const ResidualState s = t.state_at(pos);
        for (const auto& comp : structure_report(s).components) {
            if (!comp.bw_pair) {
                add(out, "phase4.components", pos, "component " + set_text(comp.vertices));
            }
        }
        break;
    }

    // Turn-count inequalities behind the bounds.
    if (t.first == Player::Dominator) {
        if (5 * turns > 3 * n - t.e_star + t.c_star) {
            add(out, "skeleton.turns", -1, "5t > 3n - e* + c*");
        }
        if (n < t.r_k + t.n_ell || t.r_k + t.n_ell < 8 * (t.c_star - t.e_star)) {
            add(out, "skeleton.order", -1, "n >= r_k + n_ell >= 8(c* - e*) fails");
        }
    } else if (t.e0_star && 5 * turns > 3 * n - t.e_star - *t.e0_star + t.c_star) {
        add(out, "skeleton.turns", -1, "5t' > 3n - e* - e0* + c*");
    }
    return out;
}

Thresholds Thresholds::for_order(int n) {
    return {3 * n / 5, (3 * n + 1) / 5, (3 * n + 2) / 5, 5 * n / 8, (5 * n + 2) / 8};
}

namespace {

bool all_components_caterpillars(const Forest& f) {
    const auto ids = f.component_ids();
    const int k = f.component_count();
    for (int c = 0; c < k; ++c) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < f.order(); ++v) {
            if (ids[v] == c) members.push_back(v);
        }
        std::vector<Vertex> index(f.order(), -1);
        for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
        std::vector<Edge> edges;
        for (const auto& [u, v] : f.edges()) {
            if (ids[u] == c) edges.emplace_back(index[u], index[v]);
        }
        if (!is_caterpillar(Forest(static_cast<int>(members.size()), std::move(edges)))) {
            return false;
        }
    }
    return true;
}

}  // namespace

BoundsRow check_bounds_exact(const Forest& forest, GameSolver& solver) {
    BoundsRow row;
    const int n = forest.order();
    row.n = n;
    row.no_leaf_pair_at_4 = !leaf_pair_at_distance(forest, 4);
    row.caterpillar_components = all_components_caterpillars(forest);
    row.gamma = domination_number(forest);
    row.gamma_g = solver.remaining(0, Player::Dominator);
    row.gamma_g_prime = solver.remaining(0, Player::Staller);
    row.thresholds = Thresholds::for_order(n);
    row.slack_7n_11 = 7.0 * n / 11.0 - row.gamma_g;

    const auto& th = row.thresholds;
    auto& v = row.violations;
    const int gamma = row.gamma;
    if (row.gamma_g < gamma || row.gamma_g > 2 * gamma - 1) {
        add(v, "classical.gamma_g", -1,
            "gamma=" + std::to_string(gamma) + " gamma_g=" + std::to_string(row.gamma_g));
    }
    if (row.gamma_g_prime < gamma || row.gamma_g_prime > 2 * gamma) {
        add(v, "classical.gamma_g_prime", -1,
            "gamma=" + std::to_string(gamma) + " gamma_g'=" + std::to_string(row.gamma_g_prime));
    }
    if (row.gamma_g > th.five_eighths) {
        add(v, "bound.5n_8", -1, std::to_string(row.gamma_g) + " > " + std::to_string(th.five_eighths));
    }
    if (row.gamma_g_prime > th.five_eighths_prime) {
        add(v, "bound.5n2_8", -1,
            std::to_string(row.gamma_g_prime) + " > " + std::to_string(th.five_eighths_prime));
    }
    if (row.no_leaf_pair_at_4) {
        if (row.gamma_g > th.three_fifths) {
            add(v, "bound.3n_5", -1,
                std::to_string(row.gamma_g) + " > " + std::to_string(th.three_fifths));
        }
        if (row.gamma_g_prime > th.three_fifths_prime) {
            add(v, "bound.3n1_5", -1,
                std::to_string(row.gamma_g_prime) + " > " + std::to_string(th.three_fifths_prime));
        }
    }
    if (row.caterpillar_components && row.gamma_g > th.three_fifths) {
        add(v, "bound.caterpillar_3n_5", -1,
            std::to_string(row.gamma_g) + " > " + std::to_string(th.three_fifths));
    }
    if (row.gamma_g > th.three_fifths) {
        row.findings.push_back("gamma_g=" + std::to_string(row.gamma_g) + " exceeds 3n/5");
    }
    if (row.gamma_g_prime > th.conjecture_prime) {
        row.findings.push_back("gamma_g'=" + std::to_string(row.gamma_g_prime) +
                               " exceeds (3n+2)/5");
    }
    return row;
}

BoundsRow check_bounds_exact(const Forest& forest) {
    GameSolver solver(forest);
    return check_bounds_exact(forest, solver);
}

std::vector<CorpusInstance> materialize(const CorpusSpec& spec) {
    std::vector<CorpusInstance> out;
    auto keep = [&](const Forest& f) {
        return !spec.class_filter_no_leaf_pair_at_4 || !leaf_pair_at_distance(f, 4);
    };
    try {
        switch (spec.source) {
            case CorpusSource::AllTrees:
                for (int n = std::max(2, spec.n_min); n <= spec.n_max; ++n) {
                    int index = 0;
                    for_each_tree(n, [&](const Forest& t) {
                        const std::string id = "tree-n" + std::to_string(n) + "-" + std::to_string(index++);
                        if (keep(t)) out.push_back({id, t, spec.seed});
                    });
                }
                break;
            case CorpusSource::RandomForests:
            case CorpusSource::RandomCaterpillars: {
                const bool forests = spec.source == CorpusSource::RandomForests;
                std::mt19937_64 rng(spec.seed);
                const int lo = std::max(2, spec.n_min);
                for (int i = 0; i < spec.count; ++i) {
                    const int n = std::uniform_int_distribution<int>(lo, spec.n_max)(rng);
                    const std::uint64_t seed = rng();
                    Forest f = forests
                                   ? random_forest(
                                         n, std::uniform_int_distribution<int>(1, n / 2)(rng), seed)
                                   : random_caterpillar(n, seed);
                    const std::string id =
                        std::string(forests ? "forest-" : "caterpillar-") + std::to_string(i);
                    if (keep(f)) out.push_back({id, std::move(f), seed});
                }
                break;
            }
            case CorpusSource::Files:
                for (const auto& path : spec.files) {
                    std::ifstream in(path);
                    if (!in) throw Error(ErrorCode::GeneratorFailure, "cannot read " + path);
                    std::stringstream buffer;
                    buffer << in.rdbuf();
                    Forest f = parse_edge_list(buffer.str()).graph;
                    if (keep(f)) out.push_back({path, std::move(f), spec.seed});
                }
                break;
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::GeneratorFailure) throw;
        throw Error(ErrorCode::GeneratorFailure, e.what());
    }
    return out;
}

InstanceRow check_instance(const CorpusInstance& instance, const CorpusSpec& spec) {
    InstanceRow row;
    const Forest& f = instance.forest;
    const auto shared = std::make_shared<const Graph>(f);
    row.id = instance.id;
    row.n = f.order();
    row.components = f.component_count();
    row.no_leaf_pair_at_4 = !leaf_pair_at_distance(f, 4);
    row.seed = instance.seed;
    row.forest_text = to_edge_list(f);

    const auto solver = std::make_shared<GameSolver>(shared);
    if (spec.check_bounds) {
        row.bounds = check_bounds_exact(f, *solver);
        row.caterpillar_components = row.bounds->caterpillar_components;
        for (const auto& v : row.bounds->violations) row.violations.push_back(v);
        for (const auto& s : row.bounds->findings) row.findings.push_back(s);
    }

    const Thresholds th = Thresholds::for_order(row.n);
    std::shared_ptr<WorstCaseSearch> worst;
    if (spec.check_worst_case) {
        worst = std::make_shared<WorstCaseSearch>(shared, phased_policy());
        const std::uint8_t start = phased_policy().initial_state();
        row.worst_dominator_start = worst->remaining(0, start, Player::Dominator);
        row.worst_staller_start = worst->remaining(0, start, Player::Staller);
        const int wd = *row.worst_dominator_start;
        const int ws = *row.worst_staller_start;
        if (wd > th.five_eighths) {
            add(row.violations, "worst.5n_8", -1, std::to_string(wd) + " > " + std::to_string(th.five_eighths));
        }
        if (ws > th.five_eighths_prime) {
            add(row.violations, "worst.5n2_8", -1,
                std::to_string(ws) + " > " + std::to_string(th.five_eighths_prime));
        }
        if (row.no_leaf_pair_at_4) {
            if (wd > th.three_fifths) {
                add(row.violations, "worst.3n_5", -1,
                    std::to_string(wd) + " > " + std::to_string(th.three_fifths));
            }
            if (ws > th.three_fifths_prime) {
                add(row.violations, "worst.3n1_5", -1,
                    std::to_string(ws) + " > " + std::to_string(th.three_fifths_prime));
            }
        }
        const int gg = solver->remaining(0, Player::Dominator);
        const int ggp = solver->remaining(0, Player::Staller);
        if (wd < gg || ws < ggp) {
            add(row.violations, "worst.at_least_optimal", -1,
                "worst-case length below the game value");
        }
    }

    if (spec.check_lemmas) {
        for (const StallerKind kind : spec.staller_policies) {
            StallerPolicy policy;
            switch (kind) {
                case StallerKind::Optimal: policy = StallerPolicy::optimal(solver); break;
                case StallerKind::GreedyMin: policy = StallerPolicy::greedy_min(); break;
                case StallerKind::Random: policy = StallerPolicy::random(); break;
                case StallerKind::Worst: policy = StallerPolicy::worst_case(worst); break;
                default: continue;
            }
            for (const Player start : spec.starts) {
                const GameTrace trace = run_game(shared, policy, start, instance.seed);
                ++row.traces_checked;
                auto& best = start == Player::Dominator ? row.strategy_max_dominator_start
                                                        : row.strategy_max_staller_start;
                best = std::max(best, trace.turns());
                row.max_e_star = std::max(row.max_e_star, trace.e_star);
                row.max_c_star = std::max(row.max_c_star, trace.c_star);
                const std::string tag = std::string(to_string(kind)) + "-" + to_string(start);
                for (const auto& v : explore_phase1_end_structure(trace)) {
                    row.findings.push_back("[" + tag + "] " + v.check + ": " + v.detail);
                }
                auto violations = check_trace_invariants(trace);
                if (!violations.empty()) {
                    for (auto& v : violations) {
                        v.detail = "[" + tag + "] " + v.detail;
                        row.violations.push_back(std::move(v));
                    }
                    row.failing_traces.emplace_back(tag, trace_to_json(trace));
                }
            }
        }
    }
    return row;
}

CheckReport corpus_run(const CorpusSpec& spec) {
    const auto instances = materialize(spec);
    CheckReport report;
    report.label = spec.label;
    report.rows.resize(instances.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            report.rows[i] = check_instance(instances[i], spec);
        }
    };
    const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(instances.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    for (const auto& row : report.rows) {
        report.violation_count += row.violations.size();
        report.finding_count += row.findings.size();
        report.traces_checked += row.traces_checked;
    }
    if (!spec.replay_dir.empty() && !report.passed()) write_report(report, spec.replay_dir);
    return report;
}

namespace {

std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

std::string report_csv(const CheckReport& report) {
    std::ostringstream out;
    out << "id,n,components,no_leaf_pair_at_4,caterpillar,gamma,gamma_g,gamma_g_prime,"
           "thr_3n_5,thr_3n1_5,thr_5n_8,thr_5n2_8,worst_dominator_start,worst_staller_start,"
           "strategy_max_dominator_start,strategy_max_staller_start,max_e_star,max_c_star,"
           "slack_7n_11,traces,violations,findings,status\n";
    for (const auto& r : report.rows) {
        const Thresholds th = Thresholds::for_order(r.n);
        out << r.id << ',' << r.n << ',' << r.components << ',' << int(r.no_leaf_pair_at_4) << ','
            << int(r.caterpillar_components) << ',';
        if (r.bounds) {
            out << r.bounds->gamma << ',' << r.bounds->gamma_g << ',' << r.bounds->gamma_g_prime
                << ',';
        } else {
            out << ",,,";
        }
        out << th.three_fifths << ',' << th.three_fifths_prime << ',' << th.five_eighths << ','
            << th.five_eighths_prime << ',' << opt(r.worst_dominator_start) << ','
            << opt(r.worst_staller_start) << ',' << r.strategy_max_dominator_start << ','
            << r.strategy_max_staller_start << ',' << r.max_e_star << ',' << r.max_c_star << ',';
        if (r.bounds) out << std::fixed << std::setprecision(4) << r.bounds->slack_7n_11;
        out << ',' << r.traces_checked << ',' << r.violations.size() << ',' << r.findings.size()
            << ',' << (r.violations.empty() ? "PASS" : "FAIL") << '\n';
    }
    return out.str();
}

std::string report_summary(const CheckReport& report) {
    std::ostringstream out;
    out << "corpus: " << report.label << '\n'
        << "instances: " << report.rows.size() << '\n'
        << "traces checked: " << report.traces_checked << '\n'
        << "violations: " << report.violation_count << '\n'
        << "findings: " << report.finding_count << '\n';
    for (const auto& r : report.rows) {
        for (const auto& f : r.findings) out << "finding " << r.id << ": " << f << '\n';
        for (const auto& v : r.violations) {
            out << "violation " << r.id << ": " << v.check;
            if (v.turn >= 0) out << " @" << v.turn;
            out << " " << v.detail << '\n';
        }
    }
    out << "status: " << (report.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

void write_report(const CheckReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream(fs::path(dir) / "report.csv") << report_csv(report);
    std::ofstream(fs::path(dir) / "summary.txt") << report_summary(report);
    for (const auto& r : report.rows) {
        if (r.violations.empty()) continue;
        std::string name = r.id;
        std::replace(name.begin(), name.end(), '/', '_');
        const fs::path bundle = fs::path(dir) / "failures" / name;
        fs::create_directories(bundle);
        std::ofstream(bundle / "forest.txt") << r.forest_text;
        std::ofstream(bundle / "seed.txt") << r.seed << '\n';
        std::ofstream(bundle / "violations.txt") << describe(r.violations);
        for (const auto& [tag, json] : r.failing_traces) {
            std::ofstream(bundle / ("trace-" + tag + ".json")) << json;
        }
    }
}

std::vector<ScanRow> extremal_scan(int n_max, int limit) {
    if (n_max > limit) {
        throw Error(ErrorCode::LimitExceeded, "scan supports n <= " + std::to_string(limit));
    }
    std::vector<ScanRow> rows;
    for (int n = 2; n <= n_max; ++n) {
        ScanRow row;
        row.n = n;
        row.threshold = 3 * n / 5;
        for_each_tree(
            n,
            [&](const Forest& t) {
                ++row.trees;
                GameSolver solver(t);
                const int gg = solver.remaining(0, Player::Dominator);
                row.max_gamma_g_prime =
                    std::max(row.max_gamma_g_prime, solver.remaining(0, Player::Staller));
                if (gg > row.max_gamma_g) {
                    row.max_gamma_g = gg;
                    row.attainers.clear();
                }
                if (gg == row.max_gamma_g) row.attainers.push_back(to_edge_list(t));
            },
            limit);
        row.exceeds = row.max_gamma_g > row.threshold;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scan_table(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << "n trees max_gamma_g floor_3n_5 max_gamma_g_prime attainers status\n";
    for (const auto& r : rows) {
        out << r.n << ' ' << r.trees << ' ' << r.max_gamma_g << ' ' << r.threshold << ' '
            << r.max_gamma_g_prime << ' ' << r.attainers.size() << ' '
            << (r.exceeds ? "EXCEEDS" : "ok") << '\n';
    }
    return out.str();
}

}  // namespace domgame
