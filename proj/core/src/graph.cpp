#include "domgame/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>

#include "domgame/error.hpp"

namespace domgame {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::InfeasibleShape: return "InfeasibleShape";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::IsolatedVertexPresent: return "IsolatedVertexPresent";
        case ErrorCode::IllegalMove: return "IllegalMove";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::GameOver: return "GameOver";
        case ErrorCode::PhaseNotApplicable: return "PhaseNotApplicable";
        case ErrorCode::NotAForest: return "NotAForest";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::IncompleteTrace: return "IncompleteTrace";
        case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
        case ErrorCode::GeneratorFailure: return "GeneratorFailure";
    }
    return "Unknown";
}

std::vector<Vertex> to_vector(VertexSet s) {
    std::vector<Vertex> out;
    out.reserve(count(s));
    for_each_vertex(s, [&](Vertex v) { out.push_back(v); });
    return out;
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
    if (n < 0) throw Error(ErrorCode::VertexOutOfRange, "negative vertex count");
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw Error(ErrorCode::VertexOutOfRange,
                        "edge " + std::to_string(u) + " " + std::to_string(v) + " with n=" +
                            std::to_string(n));
        }
        if (u == v) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        throw Error(ErrorCode::DuplicateEdge,
                    std::to_string(dup->first) + " " + std::to_string(dup->second));
    }
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
    if (fits_mask()) {
        closed_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) {
            closed_[v] = bit(v);
            for (Vertex u : adjacency_[v]) closed_[v] |= bit(u);
        }
    }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

bool Graph::is_forest() const {
    DisjointSets sets(n_);
    for (const auto& [u, v] : edges_) {
        if (!sets.unite(u, v)) return false;
    }
    return true;
}

bool Graph::has_isolated_vertex() const {
    return std::any_of(adjacency_.begin(), adjacency_.end(),
                       [](const auto& adj) { return adj.empty(); });
}

std::vector<int> Graph::component_ids() const {
    std::vector<int> id(n_, -1);
    int next = 0;
    for (Vertex s = 0; s < n_; ++s) {
        if (id[s] >= 0) continue;
        std::vector<Vertex> stack{s};
        id[s] = next;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : adjacency_[v]) {
                if (id[u] < 0) {
                    id[u] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return id;
}

int Graph::component_count() const {
    auto ids = component_ids();
    return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits on blanks and parses every token as a non-negative integer.
bool parse_ints(std::string_view line, std::vector<long long>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        long long value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
        if (ec != std::errc{} || ptr != line.data() + j) return false;
        out.push_back(value);
        i = j;
    }
    return true;
}

}  // namespace

ParsedGraph parse_edge_list(std::string_view text, ParseOptions options) {
    int n = -1;
    std::vector<Edge> edges;
    std::vector<long long> ints;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        line = trim(line.substr(0, line.find('#')));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no);
        if (!parse_ints(line, ints)) throw Error(ErrorCode::MalformedLine, where);
        if (n < 0) {
            if (ints.size() != 1 || ints[0] < 0 || ints[0] > 1'000'000) {
                throw Error(ErrorCode::MalformedLine, where + ": expected vertex count");
            }
            n = static_cast<int>(ints[0]);
            continue;
        }
        if (ints.size() != 2) throw Error(ErrorCode::MalformedLine, where + ": expected 'u v'");
        if (ints[0] < 0 || ints[1] < 0 || ints[0] >= n || ints[1] >= n) {
            throw Error(ErrorCode::VertexOutOfRange, where);
        }
        edges.emplace_back(static_cast<Vertex>(ints[0]), static_cast<Vertex>(ints[1]));
    }
    if (n < 0) throw Error(ErrorCode::MalformedLine, "missing vertex count");

    ParsedGraph result{Graph(n, std::move(edges)), false};
    if (!options.allow_cycles && !result.graph.is_forest()) {
        throw Error(ErrorCode::CycleDetected, "input is not a forest");
    }
    result.isolated_vertex_warning = result.graph.has_isolated_vertex();
    return result;
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.order() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

VertexClass classify_vertices(const Graph& g) {
    VertexClass vc;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) == 1) vc.leaves |= bit(v);
    }
    for (Vertex v = 0; v < g.order(); ++v) {
        if (!contains(vc.leaves, v)) vc.internal |= bit(v);
        for (Vertex u : g.neighbors(v)) {
            if (contains(vc.leaves, u)) vc.stems |= bit(v);
        }
    }
    return vc;
}

std::vector<std::vector<int>> distance_matrix(const Graph& g) {
    const int n = g.order();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (Vertex s = 0; s < n; ++s) {
        auto& d = dist[s];
        std::queue<Vertex> queue;
        d[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex u : g.neighbors(v)) {
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    queue.push(u);
                }
            }
        }
    }
    return dist;
}

bool leaf_pair_at_distance(const Graph& g, int d) {
    std::vector<Vertex> leaves;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) == 1) leaves.push_back(v);
    }
    for (Vertex s : leaves) {
        // BFS from each leaf, stopping at depth d.
        std::vector<int> dist(g.order(), -1);
        std::queue<Vertex> queue;
        dist[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            if (dist[v] == d) {
                if (v != s && g.degree(v) == 1) return true;
                continue;
            }
            for (Vertex u : g.neighbors(v)) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push(u);
                }
            }
        }
    }
    return false;
}

bool is_caterpillar(const Graph& g) {
    if (!g.is_forest() || g.component_count() != 1) return false;
    // Non-leaves must induce a path (or nothing): every non-leaf has at most
    // two non-leaf neighbours. Connectivity of the spine follows from the tree.
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) <= 1) continue;
        int spine_neighbors = 0;
        for (Vertex u : g.neighbors(v)) spine_neighbors += g.degree(u) > 1 ? 1 : 0;
        if (spine_neighbors > 2) return false;
    }
    return true;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    std::vector<Edge> edges;
    edges.reserve(g.size());
    for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph(g.order(), std::move(edges));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> edges(a.edges().begin(), a.edges().end());
    for (const auto& [u, v] : b.edges()) edges.emplace_back(u + a.order(), v + a.order());
    return Graph(a.order() + b.order(), std::move(edges));
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, std::move(edges));
}

}  // namespace domgame
