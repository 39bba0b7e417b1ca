#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace domgame {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Vertex subsets of graphs with at most 64 vertices.
using VertexSet = std::uint64_t;

inline constexpr int kMaxMaskVertices = 64;

constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }
constexpr bool contains(VertexSet s, Vertex v) { return (s >> v) & 1U; }
constexpr int count(VertexSet s) { return std::popcount(s); }
constexpr VertexSet full_set(int n) { return n >= 64 ? ~VertexSet{0} : (bit(n) - 1); }

// Visits members of `s` in increasing order.
template <typename F>
void for_each_vertex(VertexSet s, F&& f) {
    while (s != 0) {
        f(static_cast<Vertex>(std::countr_zero(s)));
        s &= s - 1;
    }
}

std::vector<Vertex> to_vector(VertexSet s);

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Every graph produced by the generators and by `parse_edge_list` in forest
/// mode is acyclic; general graphs are only admitted through the parser's
/// `allow_cycles` option (used by the exact solver). Closed-neighbourhood
/// bitmasks are available when n <= 64, which is the bound for every game
/// operation.
class Graph {
public:
    Graph() = default;

    /// Throws Error{SelfLoop | DuplicateEdge | VertexOutOfRange}. Acyclicity is
    /// not checked here; see `is_forest`.
    Graph(int n, std::vector<Edge> edges);

    int order() const { return n_; }
    std::size_t size() const { return edges_.size(); }

    /// Edges with u < v, sorted lexicographically.
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    bool fits_mask() const { return n_ <= kMaxMaskVertices; }
    /// N[v] as a bitmask. Requires fits_mask().
    VertexSet closed_neighborhood(Vertex v) const { return closed_[v]; }
    VertexSet open_neighborhood(Vertex v) const { return closed_[v] & ~bit(v); }
    VertexSet all() const { return full_set(n_); }

    bool is_forest() const;
    bool has_isolated_vertex() const;
    int component_count() const;
    /// Component index per vertex, numbered by smallest member.
    std::vector<int> component_ids() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<VertexSet> closed_;
};

using Forest = Graph;

struct ParseOptions {
    bool allow_cycles = false;
};

struct ParsedGraph {
    Graph graph;
    /// Non-fatal: game operations reject graphs with isolated vertices later.
    bool isolated_vertex_warning = false;
};

/// Reads the edge-list format: first non-comment line is n, every further
/// non-empty line is "u v". Lines starting with '#' are comments.
ParsedGraph parse_edge_list(std::string_view text, ParseOptions options = {});

/// Inverse of parse_edge_list; edges sorted lexicographically.
std::string to_edge_list(const Graph& g);

struct VertexClass {
    VertexSet leaves = 0;
    VertexSet stems = 0;
    VertexSet internal = 0;
};

/// Leaves are degree-1 vertices, stems have a leaf neighbour, internal
/// vertices are the non-leaves. Both ends of a K2 are leaves and stems.
VertexClass classify_vertices(const Graph& g);

/// All-pairs BFS distances; -1 for different components.
std::vector<std::vector<int>> distance_matrix(const Graph& g);

/// True iff two distinct leaves lie at distance exactly d.
bool leaf_pair_at_distance(const Graph& g, int d);

bool is_caterpillar(const Graph& g);

/// Relabels vertex v as perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

/// Disjoint union with b's vertices shifted past a's.
Graph disjoint_union(const Graph& a, const Graph& b);

Graph path_graph(int n);
Graph star_graph(int leaves);

}  // namespace domgame
