#include "domgame/strategy.hpp"

#include <algorithm>
#include <random>

#include "domgame/error.hpp"

namespace domgame {

std::vector<MoveScore> score_moves(const Graph& g, VertexSet dominated) {
    std::vector<MoveScore> scores;
    for_each_vertex(rules::legal_moves(g, dominated), [&](Vertex v) {
        const int red = rules::newly_red(g, dominated, v);
        scores.push_back({v, count(g.closed_neighborhood(v) & ~dominated) + 2 * red, red});
    });
    return scores;
}

int max_gain(const Graph& g, VertexSet dominated) {
    int best = 0;
    for (const auto& s : score_moves(g, dominated)) best = std::max(best, s.gain);
    return best;
}

MaxGainMoves max_gain_moves(const ResidualState& s) {
    if (s.terminal()) throw Error(ErrorCode::GameOver, "no legal move");
    const auto scores = score_moves(s.graph(), s.dominated());
    MaxGainMoves out;
    for (const auto& m : scores) out.max_gain = std::max(out.max_gain, m.gain);
    for (const auto& m : scores) {
        if (m.gain == out.max_gain) {
            out.moves.push_back(m.vertex);
            out.newly_red.push_back(m.newly_red);
        }
    }
    return out;
}

namespace {

bool meets(const MoveScore& m, PhaseId p) {
    switch (p) {
        case PhaseId::Phase1: return m.gain >= 7 && m.newly_red >= 2;
        case PhaseId::Phase2: return m.gain >= 7;
        case PhaseId::Phase3: return m.gain >= 6;
        case PhaseId::Phase4: return m.gain >= 1;
        case PhaseId::Phase0: return false;
    }
    return false;
}

bool applicable(std::span<const MoveScore> scores, PhaseId p) {
    return std::any_of(scores.begin(), scores.end(), [&](const MoveScore& m) { return meets(m, p); });
}

PhaseId advance_with(PhaseId current, std::span<const MoveScore> scores) {
    if (scores.empty()) throw Error(ErrorCode::GameOver, "no legal move");
    int p = std::max(phase_number(current), phase_number(PhaseId::Phase1));
    for (; p < phase_number(PhaseId::Phase4); ++p) {
        if (applicable(scores, phase_from_number(p))) break;
    }
    return phase_from_number(p);
}

// White vertices with a white leaf neighbour. A white vertex keeps its whole
// original neighbourhood, so its residual degree is its degree in g.
VertexSet white_stems(const Graph& g, VertexSet dominated) {
    const VertexSet white = g.all() & ~dominated;
    VertexSet white_leaves = 0;
    for_each_vertex(white, [&](Vertex x) {
        if (g.degree(x) == 1) white_leaves |= bit(x);
    });
    VertexSet stems = 0;
    for_each_vertex(white, [&](Vertex v) {
        if ((g.open_neighborhood(v) & white_leaves) != 0) stems |= bit(v);
    });
    return stems;
}

Vertex choose_with(const Graph& g, VertexSet dominated, std::span<const MoveScore> scores,
                   PhaseId p) {
    if (p == PhaseId::Phase0 || !applicable(scores, p)) {
        throw Error(ErrorCode::PhaseNotApplicable,
                    "phase " + std::to_string(phase_number(p)) + " cannot be applied");
    }
    if (p == PhaseId::Phase4) return scores.front().vertex;

    if (p == PhaseId::Phase3) {
        int best = 0;
        for (const auto& m : scores) best = std::max(best, m.gain);
        const VertexSet stems = white_stems(g, dominated);
        Vertex fallback = -1;
        for (const auto& m : scores) {
            if (m.gain != best) continue;
            if (contains(stems, m.vertex)) return m.vertex;
            if (fallback < 0) fallback = m.vertex;
        }
        return fallback;
    }

    const MoveScore* pick = nullptr;
    for (const auto& m : scores) {
        if (!meets(m, p)) continue;
        if (pick == nullptr || m.gain > pick->gain ||
            (m.gain == pick->gain && m.newly_red > pick->newly_red)) {
            pick = &m;
        }
    }
    return pick->vertex;
}

}  // namespace

bool phase_applicable(const Graph& g, VertexSet dominated, PhaseId p) {
    return applicable(score_moves(g, dominated), p);
}

bool phase_applicable(const ResidualState& s, PhaseId p) {
    return phase_applicable(s.graph(), s.dominated(), p);
}

PhaseId advance_phase(PhaseId current, const Graph& g, VertexSet dominated) {
    return advance_with(current, score_moves(g, dominated));
}

PhaseId advance_phase(PhaseId current, const ResidualState& s) {
    return advance_phase(current, s.graph(), s.dominated());
}

Vertex dominator_choose(const Graph& g, VertexSet dominated, PhaseId p) {
    return choose_with(g, dominated, score_moves(g, dominated), p);
}

Vertex dominator_choose(const ResidualState& s, PhaseId p) {
    return dominator_choose(s.graph(), s.dominated(), p);
}

DominatorPolicy::Step PhasedPolicy::choose(const Graph& g, VertexSet dominated,
                                           std::uint8_t state) const {
    const auto scores = score_moves(g, dominated);
    const PhaseId phase = advance_with(phase_from_number(state), scores);
    return {choose_with(g, dominated, scores, phase), static_cast<std::uint8_t>(phase)};
}

const PhasedPolicy& phased_policy() {
    static const PhasedPolicy policy;
    return policy;
}

const char* to_string(StallerKind k) {
    switch (k) {
        case StallerKind::Optimal: return "optimal";
        case StallerKind::GreedyMin: return "greedy";
        case StallerKind::Random: return "random";
        case StallerKind::Worst: return "worst";
        case StallerKind::Interactive: return "interactive";
        case StallerKind::Scripted: return "scripted";
    }
    return "unknown";
}

StallerPolicy StallerPolicy::optimal(std::shared_ptr<GameSolver> solver) {
    StallerPolicy p;
    p.kind = StallerKind::Optimal;
    p.solver = std::move(solver);
    return p;
}

StallerPolicy StallerPolicy::greedy_min() {
    StallerPolicy p;
    p.kind = StallerKind::GreedyMin;
    return p;
}

StallerPolicy StallerPolicy::random() {
    StallerPolicy p;
    p.kind = StallerKind::Random;
    return p;
}

StallerPolicy StallerPolicy::worst_case(std::shared_ptr<WorstCaseSearch> search) {
    StallerPolicy p;
    p.kind = StallerKind::Worst;
    p.worst = std::move(search);
    return p;
}

StallerPolicy StallerPolicy::interactive(std::function<Vertex(const ResidualState&)> callback) {
    StallerPolicy p;
    p.kind = StallerKind::Interactive;
    p.callback = std::move(callback);
    return p;
}

StallerPolicy StallerPolicy::scripted(std::vector<Vertex> moves) {
    StallerPolicy p;
    p.kind = StallerKind::Scripted;
    p.script = std::move(moves);
    return p;
}

ResidualState GameTrace::state_at(std::size_t pos) const {
    if (pos >= states.size()) throw Error(ErrorCode::IndexOutOfRange, "state position");
    return ResidualState(forest, states[pos], static_cast<int>(pos));
}

GameRecorder::GameRecorder(std::shared_ptr<const Graph> forest, Player first, std::uint64_t seed,
                           std::string staller_policy)
    : state_(init_state(forest)), mover_(first) {
    trace_.forest = std::move(forest);
    trace_.first = first;
    trace_.seed = seed;
    trace_.staller_policy = std::move(staller_policy);
    trace_.states.push_back(0);
    trace_.complete = state_.terminal();
}

PhaseId GameRecorder::upcoming_dominator_phase() const {
    return advance_phase(floor_, state_);
}

Vertex GameRecorder::strategy_move() const {
    return phased_policy().choose(state_.graph(), state_.dominated(),
                                  static_cast<std::uint8_t>(floor_))
        .vertex;
}

const TurnRecord& GameRecorder::play(Vertex v) {
    if (over()) throw Error(ErrorCode::GameOver, "the game is finished");
    const MoveOutcome outcome = gain_of(state_, v);
    const std::size_t pos = trace_.records.size();

    PhaseId phase;
    if (mover_ == Player::Dominator) {
        phase = advance_phase(floor_, state_);
        if (!phase1_closed_ && phase > PhaseId::Phase1) {
            phase1_closed_ = true;
            trace_.r_k = count(state_.red());
            trace_.phase1_end = pos;
        }
        if (!trace_.phase3_start && phase >= PhaseId::Phase3) {
            trace_.phase3_start = pos;
            trace_.n_ell = state_.order() - count(state_.red());
        }
        floor_ = phase;
    } else {
        phase = (trace_.first == Player::Staller && pos == 0) ? PhaseId::Phase0 : floor_;
    }

    TurnRecord rec;
    rec.index = trace_.first == Player::Dominator ? static_cast<int>(pos) + 1
                                                  : static_cast<int>(pos);
    rec.player = mover_;
    rec.vertex = v;
    rec.gain = outcome.gain;
    rec.newly_red = outcome.newly_red;
    rec.phase = phase;
    if (phase == PhaseId::Phase1) {
        rec.e_i = outcome.gain - (mover_ == Player::Dominator ? 7 : 3);
        trace_.e_star += rec.e_i;
    }
    trace_.per_phase_decrease[phase_number(phase)] += outcome.gain;

    state_ = apply_move(state_, v).first;
    trace_.states.push_back(state_.dominated());
    trace_.records.push_back(rec);

    if (phase == PhaseId::Phase0) {
        trace_.r0 = count(state_.red());
        trace_.b0 = count(state_.blue());
        trace_.e0_star = 3 * trace_.r0 + trace_.b0 - 5;
    }
    if (rec.player == Player::Staller && phase == PhaseId::Phase3 &&
        is_critical_turn(state_.graph(), trace_.states, trace_.records, pos)) {
        trace_.records.back().critical = true;
        ++trace_.c_star;
    }

    mover_ = other(mover_);
    if (over()) {
        trace_.complete = true;
        if (!phase1_closed_) {
            phase1_closed_ = true;
            trace_.r_k = count(state_.red());
            trace_.phase1_end = trace_.states.size() - 1;
        }
    }
    return trace_.records.back();
}

StallerDriver::StallerDriver(StallerPolicy policy, std::shared_ptr<const Graph> forest,
                             std::uint64_t seed)
    : policy_(std::move(policy)), rng_(seed) {
    if (policy_.kind == StallerKind::Optimal && !policy_.solver) {
        policy_.solver = std::make_shared<GameSolver>(forest);
    }
    if (policy_.kind == StallerKind::Worst && !policy_.worst) {
        policy_.worst = std::make_shared<WorstCaseSearch>(forest, phased_policy());
    }
}

Vertex StallerDriver::choose(const GameRecorder& game) {
    const ResidualState& s = game.state();
    switch (policy_.kind) {
        case StallerKind::Optimal:
            return policy_.solver->best_reply(s.dominated(), Player::Staller).first;
        case StallerKind::GreedyMin: {
            const auto scores = score_moves(s.graph(), s.dominated());
            return std::min_element(scores.begin(), scores.end(),
                                    [](const MoveScore& a, const MoveScore& b) {
                                        return a.gain < b.gain;
                                    })
                ->vertex;
        }
        case StallerKind::Random: {
            const auto moves = to_vector(legal_moves(s));
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            return moves[pick(rng_)];
        }
        case StallerKind::Worst:
            return policy_.worst->best_staller_move(s.dominated(),
                                                    static_cast<std::uint8_t>(game.phase_floor()));
        case StallerKind::Interactive:
            return policy_.callback(s);
        case StallerKind::Scripted:
            if (cursor_ >= policy_.script.size()) {
                throw Error(ErrorCode::IndexOutOfRange, "Staller script exhausted");
            }
            return policy_.script[cursor_++];
    }
    throw Error(ErrorCode::IllegalMove, "unknown Staller policy");
}

GameTrace run_game(std::shared_ptr<const Graph> forest, const StallerPolicy& staller, Player first,
                   std::uint64_t seed) {
    if (!forest->is_forest()) throw Error(ErrorCode::NotAForest, "the strategy needs a forest");
    GameRecorder game(forest, first, seed, to_string(staller.kind));
    StallerDriver driver(staller, forest, seed);
    while (!game.over()) {
        const Vertex v =
            game.to_move() == Player::Dominator ? game.strategy_move() : driver.choose(game);
        game.play(v);
    }
    return game.trace();
}

GameTrace run_game(const Forest& forest, const StallerPolicy& staller, Player first,
                   std::uint64_t seed) {
    return run_game(std::make_shared<const Graph>(forest), staller, first, seed);
}

bool is_critical_turn(const Graph& g, std::span<const VertexSet> states,
                      std::span<const TurnRecord> records, std::size_t pos) {
    if (pos >= records.size() || pos + 1 >= states.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "turn position " + std::to_string(pos));
    }
    const TurnRecord& rec = records[pos];
    if (rec.player != Player::Staller || rec.phase != PhaseId::Phase3 || rec.gain != 3 ||
        pos == 0) {
        return false;
    }
    const TurnRecord& prev = records[pos - 1];
    if (prev.player != Player::Dominator || prev.gain >= 8) return false;

    const std::shared_ptr<const Graph> view(std::shared_ptr<const Graph>{}, &g);
    const ResidualState before(view, states[pos - 1]);
    const auto paths = detect_critical_p5(before);
    const bool pattern = std::any_of(paths.begin(), paths.end(), [&](const CriticalPath& p) {
        return (p.path[1] == prev.vertex || p.path[3] == prev.vertex) && p.center == rec.vertex;
    });
    if (!pattern) return false;
    return max_gain(g, states[pos + 1]) < 7;
}

bool is_critical_turn(const GameTrace& trace, std::size_t pos) {
    return is_critical_turn(*trace.forest, trace.states, trace.records, pos);
}

LedgerSummary ledger(const GameTrace& trace) {
    if (!trace.complete) throw Error(ErrorCode::IncompleteTrace, "game not finished");
    LedgerSummary out;
    for (const auto& rec : trace.records) {
        auto& ph = out.phases[phase_number(rec.phase)];
        ++ph.turns;
        (rec.player == Player::Dominator ? ph.dominator_turns : ph.staller_turns) += 1;
        ph.decrease += rec.gain;
    }
    out.total_turns = trace.turns();
    out.e_star = trace.e_star;
    out.c_star = trace.c_star;
    out.r_k = trace.r_k;
    out.n_ell = trace.n_ell;
    out.e0_star = trace.e0_star;
    return out;
}

}  // namespace domgame
