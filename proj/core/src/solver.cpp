#include "domgame/solver.hpp"

#include <algorithm>
#include <limits>

#include "domgame/error.hpp"

namespace domgame {

namespace {

void require_mask(const Graph& g) {
    if (!g.fits_mask()) {
        throw Error(ErrorCode::TooLarge, "n=" + std::to_string(g.order()) + " exceeds 64");
    }
}

struct DominatingSetSearch {
    const Graph& g;
    int max_cover = 1;
    int best_size;
    VertexSet best_set;

    explicit DominatingSetSearch(const Graph& graph)
        : g(graph), best_size(graph.order()), best_set(graph.all()) {
        for (Vertex v = 0; v < g.order(); ++v) max_cover = std::max(max_cover, g.degree(v) + 1);
    }

    void run(VertexSet dominated, VertexSet chosen, int depth) {
        const VertexSet open = g.all() & ~dominated;
        if (open == 0) {
            if (depth < best_size) {
                best_size = depth;
                best_set = chosen;
            }
            return;
        }
        const int lower = (count(open) + max_cover - 1) / max_cover;
        if (depth + lower >= best_size) return;
        // Some vertex of N[u] must be chosen for the lowest undominated u.
        const Vertex u = std::countr_zero(open);
        std::vector<Vertex> options = to_vector(g.closed_neighborhood(u));
        std::sort(options.begin(), options.end(), [&](Vertex a, Vertex b) {
            const int ca = count(g.closed_neighborhood(a) & open);
            const int cb = count(g.closed_neighborhood(b) & open);
            return ca != cb ? ca > cb : a < b;
        });
        for (Vertex v : options) {
            run(dominated | g.closed_neighborhood(v), chosen | bit(v), depth + 1);
        }
    }
};

}  // namespace

VertexSet minimum_dominating_set(const Graph& g) {
    require_mask(g);
    DominatingSetSearch search(g);
    search.run(0, 0, 0);
    return search.best_set;
}

int domination_number(const Graph& g) { return count(minimum_dominating_set(g)); }

GameSolver::GameSolver(std::shared_ptr<const Graph> graph, SolverOptions options)
    : graph_(std::move(graph)) {
    require_mask(*graph_);
    if (!options.allow_isolated && graph_->has_isolated_vertex()) {
        throw Error(ErrorCode::IsolatedVertexPresent, "the game needs an isolate-free graph");
    }
    all_ = graph_->all();
    dense_ = graph_->order() <= kDenseLimit;
    if (dense_) {
        for (auto& table : dense_table_) table.assign(std::size_t{1} << graph_->order(), 0xFF);
    }
}

GameSolver::GameSolver(const Graph& graph, SolverOptions options)
    : GameSolver(std::make_shared<const Graph>(graph), options) {}

int GameSolver::lookup(VertexSet dominated, Player p) const {
    const auto side = static_cast<std::size_t>(p);
    if (dense_) {
        const auto v = dense_table_[side][dominated];
        return v == 0xFF ? -1 : v;
    }
    const auto it = sparse_table_[side].find(dominated);
    return it == sparse_table_[side].end() ? -1 : it->second;
}

void GameSolver::store(VertexSet dominated, Player p, int value) {
    const auto side = static_cast<std::size_t>(p);
    if (dense_) {
        dense_table_[side][dominated] = static_cast<std::uint8_t>(value);
    } else {
        sparse_table_[side].emplace(dominated, static_cast<std::uint8_t>(value));
    }
}

int GameSolver::search(VertexSet dominated, Player p) {
    if (dominated == all_) return 0;
    if (const int cached = lookup(dominated, p); cached >= 0) return cached;
    ++expanded_;

    const Graph& g = *graph_;
    const VertexSet open = all_ & ~dominated;
    // Every turn dominates a new vertex, so the game lasts 1..|open| more turns.
    const int floor = 1;
    const int ceiling = count(open);
    int best = p == Player::Dominator ? std::numeric_limits<int>::max() : 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        const VertexSet nv = g.closed_neighborhood(v);
        if ((nv & open) == 0) continue;
        const int value = 1 + search(dominated | nv, other(p));
        if (p == Player::Dominator) {
            best = std::min(best, value);
            if (best == floor) break;
        } else {
            best = std::max(best, value);
            if (best == ceiling) break;
        }
    }
    store(dominated, p, best);
    return best;
}

int GameSolver::remaining(VertexSet dominated, Player to_move) {
    return search(dominated & all_, to_move);
}

std::vector<Vertex> GameSolver::optimal_moves(VertexSet dominated, Player who) {
    const int target = remaining(dominated, who);
    std::vector<Vertex> moves;
    for_each_vertex(rules::legal_moves(*graph_, dominated), [&](Vertex v) {
        if (1 + search(dominated | graph_->closed_neighborhood(v), other(who)) == target) {
            moves.push_back(v);
        }
    });
    return moves;
}

std::pair<Vertex, int> GameSolver::best_reply(VertexSet dominated, Player who) {
    if ((dominated & all_) == all_) throw Error(ErrorCode::GameOver, "no legal move");
    const int target = remaining(dominated, who);
    const auto moves = optimal_moves(dominated, who);
    return {moves.front(), target};
}

SolveResult GameSolver::solve(Player first) {
    SolveResult result;
    result.value = remaining(0, first);
    if (result.value > 0) result.optimal_first_moves = optimal_moves(0, first);
    result.nodes_expanded = expanded_;
    return result;
}

SolveResult game_dom_number(const Graph& g, Player first, SolverOptions options) {
    GameSolver solver(g, options);
    return solver.solve(first);
}

std::pair<Vertex, int> best_reply(const ResidualState& s, Player who) {
    GameSolver solver(s.graph_ptr(), {.allow_isolated = true});
    return solver.best_reply(s.dominated(), who);
}

std::size_t WorstCaseSearch::KeyHash::operator()(const Key& k) const noexcept {
    std::uint64_t h = k.dominated * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<std::uint64_t>(k.state) << 1 | static_cast<std::uint64_t>(k.to_move)) +
         0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
}

WorstCaseSearch::WorstCaseSearch(std::shared_ptr<const Graph> graph,
                                 const DominatorPolicy& policy)
    : graph_(std::move(graph)), policy_(policy) {
    require_mask(*graph_);
}

int WorstCaseSearch::remaining(VertexSet dominated, std::uint8_t state, Player to_move) {
    const Graph& g = *graph_;
    if (dominated == g.all()) return 0;
    const Key key{dominated, state, to_move};
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    int best = 0;
    if (to_move == Player::Dominator) {
        const auto step = policy_.choose(g, dominated, state);
        best = 1 + remaining(dominated | g.closed_neighborhood(step.vertex), step.next_state,
                             Player::Staller);
    } else {
        for_each_vertex(rules::legal_moves(g, dominated), [&](Vertex v) {
            best = std::max(best, 1 + remaining(dominated | g.closed_neighborhood(v), state,
                                                Player::Dominator));
        });
    }
    memo_.emplace(key, static_cast<std::uint8_t>(best));
    return best;
}

Vertex WorstCaseSearch::best_staller_move(VertexSet dominated, std::uint8_t state) {
    const Graph& g = *graph_;
    if (dominated == g.all()) throw Error(ErrorCode::GameOver, "no legal move");
    const int target = remaining(dominated, state, Player::Staller);
    for (Vertex v : to_vector(rules::legal_moves(g, dominated))) {
        if (1 + remaining(dominated | g.closed_neighborhood(v), state, Player::Dominator) ==
            target) {
            return v;
        }
    }
    throw Error(ErrorCode::GameOver, "inconsistent worst-case table");
}

WorstCaseResult WorstCaseSearch::run(Player first) {
    const Graph& g = *graph_;
    WorstCaseResult result;
    std::uint8_t state = policy_.initial_state();
    result.turns = remaining(0, state, first);
    VertexSet dominated = 0;
    Player mover = first;
    while (dominated != g.all()) {
        Vertex v;
        if (mover == Player::Dominator) {
            const auto step = policy_.choose(g, dominated, state);
            v = step.vertex;
            state = step.next_state;
        } else {
            v = best_staller_move(dominated, state);
            result.staller_line.push_back(v);
        }
        result.moves.push_back(v);
        dominated |= g.closed_neighborhood(v);
        mover = other(mover);
    }
    return result;
}

WorstCaseResult worst_case_turns(const Graph& g, const DominatorPolicy& policy, Player first) {
    WorstCaseSearch search(std::make_shared<const Graph>(g), policy);
    return search.run(first);
}

}  // namespace domgame
