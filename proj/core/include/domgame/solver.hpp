#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "domgame/graph.hpp"
#include "domgame/residual.hpp"

namespace domgame {

enum class Player : std::uint8_t { Dominator, Staller };

constexpr Player other(Player p) {
    return p == Player::Dominator ? Player::Staller : Player::Dominator;
}

constexpr const char* to_string(Player p) {
    return p == Player::Dominator ? "dominator" : "staller";
}

/// Exact domination number by branch and bound. Throws Error{TooLarge}.
int domination_number(const Graph& g);
VertexSet minimum_dominating_set(const Graph& g);

struct SolverOptions {
    /// Isolated vertices are forced moves; the classical game excludes them.
    bool allow_isolated = false;
};

struct SolveResult {
    int value = 0;
    std::vector<Vertex> optimal_first_moves;
    std::size_t nodes_expanded = 0;
};

/// Memoised minimax over (dominated set, player to move).
///
/// The remaining game length depends on nothing else, so one table serves
/// both start orders and every intermediate position. Dense tables are used
/// up to kDenseLimit vertices, hash maps above.
class GameSolver {
public:
    static constexpr int kDenseLimit = 22;

    explicit GameSolver(std::shared_ptr<const Graph> graph, SolverOptions options = {});
    explicit GameSolver(const Graph& graph, SolverOptions options = {});

    const Graph& graph() const { return *graph_; }

    /// Optimal number of turns still to be played.
    int remaining(VertexSet dominated, Player to_move);

    SolveResult solve(Player first);

    /// All moves attaining the minimax value for `who`, ascending.
    std::vector<Vertex> optimal_moves(VertexSet dominated, Player who);

    /// Lowest-id optimal move and the resulting remaining length including it.
    /// Throws Error{GameOver}.
    std::pair<Vertex, int> best_reply(VertexSet dominated, Player who);

    std::size_t nodes_expanded() const { return expanded_; }

private:
    int lookup(VertexSet dominated, Player p) const;
    void store(VertexSet dominated, Player p, int value);
    int search(VertexSet dominated, Player p);

    std::shared_ptr<const Graph> graph_;
    VertexSet all_ = 0;
    bool dense_ = false;
    std::vector<std::uint8_t> dense_table_[2];
    std::unordered_map<VertexSet, std::uint8_t> sparse_table_[2];
    std::size_t expanded_ = 0;
};

/// gamma_g (first = Dominator) or gamma_g' (first = Staller).
/// Throws Error{TooLarge, IsolatedVertexPresent}.
SolveResult game_dom_number(const Graph& g, Player first, SolverOptions options = {});

/// Convenience wrapper building a fresh solver for s.graph().
std::pair<Vertex, int> best_reply(const ResidualState& s, Player who);

/// A deterministic Dominator. `state` is a small policy-private register
/// (the phased strategy stores its current phase there).
class DominatorPolicy {
public:
    struct Step {
        Vertex vertex;
        std::uint8_t next_state;
    };

    virtual ~DominatorPolicy() = default;
    virtual std::uint8_t initial_state() const = 0;
    virtual Step choose(const Graph& g, VertexSet dominated, std::uint8_t state) const = 0;
};

struct WorstCaseResult {
    int turns = 0;
    std::vector<Vertex> staller_line;  // Staller's moves in order
    std::vector<Vertex> moves;         // complete game, both players
};

/// Longest game over all Staller behaviours against a fixed Dominator policy.
/// Only Staller nodes branch; memoised on (dominated, policy state, mover).
class WorstCaseSearch {
public:
    WorstCaseSearch(std::shared_ptr<const Graph> graph, const DominatorPolicy& policy);

    int remaining(VertexSet dominated, std::uint8_t state, Player to_move);

    /// Lowest-id Staller move maximising the remaining length. Throws Error{GameOver}.
    Vertex best_staller_move(VertexSet dominated, std::uint8_t state);

    WorstCaseResult run(Player first);

private:
    struct Key {
        VertexSet dominated;
        std::uint8_t state;
        Player to_move;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    std::shared_ptr<const Graph> graph_;
    const DominatorPolicy& policy_;
    std::unordered_map<Key, std::uint8_t, KeyHash> memo_;
};

WorstCaseResult worst_case_turns(const Graph& g, const DominatorPolicy& policy, Player first);

}  // namespace domgame
