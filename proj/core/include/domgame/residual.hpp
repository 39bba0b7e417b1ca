#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domgame/graph.hpp"

namespace domgame {

enum class Color : std::uint8_t { White, Blue, Red };

constexpr int point_value(Color c) {
    switch (c) {
        case Color::White: return 3;
        case Color::Blue: return 2;
        case Color::Red: return 0;
    }
    return 0;
}

constexpr char color_letter(Color c) {
    return c == Color::White ? 'W' : c == Color::Blue ? 'B' : 'R';
}

/// Bitmask form of the game rules. Everything here is derived from the
/// dominated set alone: a vertex is white when undominated, red when its
/// closed neighbourhood is dominated, blue otherwise.
namespace rules {

VertexSet red_set(const Graph& g, VertexSet dominated);

/// 3 per white vertex plus 2 per blue vertex.
int potential(const Graph& g, VertexSet dominated);

/// Vertices whose closed neighbourhood still has an undominated vertex.
VertexSet legal_moves(const Graph& g, VertexSet dominated);

inline bool is_legal(const Graph& g, VertexSet dominated, Vertex v) {
    return (g.closed_neighborhood(v) & ~dominated) != 0;
}

/// Number of vertices of N[N[v]] that turn red when v is played.
int newly_red(const Graph& g, VertexSet dominated, Vertex v);

/// Potential decrease caused by playing v. Since p = 3n - |D| - 2|R|, this is
/// the count of newly dominated vertices plus twice the newly red ones.
inline int gain(const Graph& g, VertexSet dominated, Vertex v) {
    return count(g.closed_neighborhood(v) & ~dominated) + 2 * newly_red(g, dominated, v);
}

/// N[N[v]], the only vertices whose colour can change when v is played.
VertexSet second_neighborhood(const Graph& g, Vertex v);

}  // namespace rules

struct ColorTransition {
    Vertex vertex;
    Color from;
    Color to;
    friend bool operator==(const ColorTransition&, const ColorTransition&) = default;
};

struct MoveOutcome {
    Vertex played = -1;
    int gain = 0;
    std::vector<ColorTransition> transitions;
    int newly_red = 0;
};

/// The residual graph: base graph plus the dominated set.
///
/// Red vertices, their edges and blue-blue edges are pruned from the active
/// view; the base graph stays reachable through graph() so callers can cite
/// the original structure.
class ResidualState {
public:
    ResidualState() = default;
    ResidualState(std::shared_ptr<const Graph> graph, VertexSet dominated, int move_count = 0);

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    int order() const { return graph_->order(); }

    VertexSet dominated() const { return dominated_; }
    VertexSet white() const { return graph_->all() & ~dominated_; }
    VertexSet red() const { return red_; }
    VertexSet blue() const { return dominated_ & ~red_; }
    VertexSet active() const { return graph_->all() & ~red_; }
    Color color(Vertex v) const;
    std::vector<Color> colors() const;
    int move_count() const { return move_count_; }
    bool terminal() const { return dominated_ == graph_->all(); }

    VertexSet residual_neighbors(Vertex v) const;
    int residual_degree(Vertex v) const { return count(residual_neighbors(v)); }
    bool is_residual_leaf(Vertex v) const { return residual_degree(v) == 1; }
    std::vector<Edge> active_edges() const;

    /// Connected components of the residual graph (red vertices excluded).
    std::vector<VertexSet> components() const;

    friend bool operator==(const ResidualState& a, const ResidualState& b) {
        return a.dominated_ == b.dominated_ && a.move_count_ == b.move_count_ &&
               (a.graph_ == b.graph_ || *a.graph_ == *b.graph_);
    }

private:
    std::shared_ptr<const Graph> graph_;
    VertexSet dominated_ = 0;
    VertexSet red_ = 0;
    int move_count_ = 0;
};

/// Fresh game: all vertices white. Throws Error{IsolatedVertexPresent}
/// unless allow_isolated, and Error{TooLarge} above 64 vertices.
ResidualState init_state(std::shared_ptr<const Graph> graph, bool allow_isolated = false);
ResidualState init_state(const Graph& graph, bool allow_isolated = false);

VertexSet legal_moves(const ResidualState& s);

/// Outcome of playing v without mutating s. Throws Error{IllegalMove}.
MoveOutcome gain_of(const ResidualState& s, Vertex v);

std::pair<ResidualState, MoveOutcome> apply_move(const ResidualState& s, Vertex v);

inline int value(const ResidualState& s) { return rules::potential(s.graph(), s.dominated()); }

struct WhiteComponent {
    enum class Kind { SingleW, WPair, Larger };
    Kind kind;
    std::vector<Vertex> vertices;
};

/// Components of the subgraph induced by white vertices.
std::vector<WhiteComponent> white_components(const ResidualState& s);

struct CriticalPath {
    std::array<Vertex, 5> path;  // W-leaf, W-stem, B center, W-stem, W-leaf
    Vertex center;
};

/// All residual paths of type WWBWW whose ends are residual leaves. Each path
/// is reported once, oriented so that path[0] < path[4].
std::vector<CriticalPath> detect_critical_p5(const ResidualState& s);

/// True for white vertices adjacent to a white residual leaf.
VertexSet white_stems_with_white_leaf(const ResidualState& s);

struct ComponentInfo {
    VertexSet vertices = 0;
    int order = 0;
    VertexSet blue_leaves = 0;
    bool bwb = false;  // path B-W-B with blue ends
    bool bw_pair = false;
};

/// Raw structural facts about a residual graph.
struct StructureReport {
    std::vector<ComponentInfo> components;
    VertexSet blue_leaves = 0;
    VertexSet single_white = 0;
    VertexSet single_white_with_blue_leaf = 0;
    VertexSet white_pair_members = 0;
    VertexSet larger_white = 0;
    std::vector<std::pair<Vertex, int>> blue_degrees;
    int max_blue_degree = 0;
};

StructureReport structure_report(const ResidualState& s);

/// Snapshot text: the edge-list format followed by "colors <W|B|R letters>"
/// and "moves <k>". Round-trips exactly.
std::string to_snapshot(const ResidualState& s);

/// Throws Error{PreconditionNotMet} when the colours are not the ones implied
/// by the dominated set (non-white vertices).
ResidualState parse_snapshot(std::string_view text);

}  // namespace domgame
