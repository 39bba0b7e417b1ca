#include "domgame/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "domgame/error.hpp"

namespace domgame {

Forest tree_from_pruefer(int n, std::span<const Vertex> code) {
    if (n <= 1) return Forest(n, {});
    if (static_cast<int>(code.size()) != n - 2) {
        throw Error(ErrorCode::GeneratorFailure, "Pruefer code length must be n-2");
    }
    std::vector<int> degree(n, 1);
    for (Vertex v : code) {
        if (v < 0 || v >= n) throw Error(ErrorCode::VertexOutOfRange, "Pruefer entry");
        ++degree[v];
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may
    // jump back when a code entry becomes a smaller leaf.
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (Vertex v : code) {
        edges.emplace_back(leaf, v);
        if (--degree[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return Forest(n, std::move(edges));
}

namespace {

Forest random_tree_with(int n, std::mt19937_64& rng) {
    if (n <= 2) return path_graph(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<Vertex> code(n - 2);
    for (auto& c : code) c = pick(rng);
    return tree_from_pruefer(n, code);
}

}  // namespace

Forest random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::InfeasibleShape, "n must be positive");
    std::mt19937_64 rng(seed);
    return random_tree_with(n, rng);
}

Forest random_forest(int n, int components, std::uint64_t seed, bool isolate_free) {
    const int min_size = isolate_free ? 2 : 1;
    if (n < 1 || components < 1 || components * min_size > n) {
        throw Error(ErrorCode::InfeasibleShape, std::to_string(components) + " components on " +
                                                    std::to_string(n) + " vertices");
    }
    std::mt19937_64 rng(seed);

    // Random composition of the spare vertices: choose components-1 bars
    // among spare+components-1 slots.
    const int spare = n - components * min_size;
    std::vector<int> slots(spare + components - 1);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<int> bars(slots.begin(), slots.begin() + (components - 1));
    std::sort(bars.begin(), bars.end());
    std::vector<int> sizes;
    int previous = -1;
    for (int b : bars) {
        sizes.push_back(min_size + (b - previous - 1));
        previous = b;
    }
    sizes.push_back(min_size + (spare + components - 1 - previous - 1));

    std::vector<Edge> edges;
    int offset = 0;
    for (int size : sizes) {
        Forest part = random_tree_with(size, rng);
        for (const auto& [u, v] : part.edges()) edges.emplace_back(u + offset, v + offset);
        offset += size;
    }
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [u, v] : edges) {
        u = perm[u];
        v = perm[v];
    }
    return Forest(n, std::move(edges));
}

Forest random_caterpillar(int n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorCode::InfeasibleShape, "caterpillar needs n >= 2");
    if (n <= 3) return path_graph(n);
    std::mt19937_64 rng(seed);
    const int spine = std::uniform_int_distribution<int>(1, n - 2)(rng);
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < spine; ++v) edges.emplace_back(v, v + 1);
    std::uniform_int_distribution<int> anchor(0, spine - 1);
    for (Vertex v = spine; v < n; ++v) edges.emplace_back(anchor(rng), v);
    return Forest(n, std::move(edges));
}

namespace {

std::string rooted_form(const Forest& tree, Vertex v, Vertex parent) {
    std::vector<std::string> children;
    for (Vertex u : tree.neighbors(v)) {
        if (u != parent) children.push_back(rooted_form(tree, u, v));
    }
    std::sort(children.begin(), children.end());
    std::string out = "(";
    for (const auto& c : children) out += c;
    out += ')';
    return out;
}

std::vector<Vertex> centroids(const Forest& tree) {
    const int n = tree.order();
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (Vertex u : tree.neighbors(v)) {
            if (!seen[u]) {
                seen[u] = true;
                parent[u] = v;
                stack.push_back(u);
            }
        }
    }
    std::vector<int> size(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];
    }
    std::vector<Vertex> result;
    for (Vertex v = 0; v < n; ++v) {
        int heaviest = n - size[v];
        for (Vertex u : tree.neighbors(v)) {
            if (u != parent[v]) heaviest = std::max(heaviest, size[u]);
        }
        if (2 * heaviest <= n) result.push_back(v);
    }
    return result;
}

}  // namespace

std::string rooted_canonical_form(const Forest& tree, Vertex root) {
    return rooted_form(tree, root, -1);
}

std::string tree_canonical_form(const Forest& tree) {
    if (tree.order() == 0) return {};
    std::string best;
    for (Vertex c : centroids(tree)) best = std::max(best, rooted_form(tree, c, -1));
    return best;
}

TreeEnumerator::TreeEnumerator(int n, int limit) : n_(n) {
    if (n < 1 || n > limit) {
        throw Error(ErrorCode::LimitExceeded,
                    "tree enumeration supports 1 <= n <= " + std::to_string(limit));
    }
    level_.resize(n);
    std::iota(level_.begin(), level_.end(), 0);
}

bool TreeEnumerator::advance() {
    int p = n_ - 1;
    while (p > 0 && level_[p] <= 1) --p;
    if (p == 0) return false;
    int q = p - 1;
    while (level_[q] != level_[p] - 1) --q;
    const int shift = p - q;
    for (int i = p; i < n_; ++i) level_[i] = level_[i - shift];
    return true;
}

Forest TreeEnumerator::build() const {
    std::vector<Edge> edges;
    edges.reserve(n_ > 0 ? n_ - 1 : 0);
    std::vector<int> last_at_level(n_ + 1, -1);
    for (int i = 0; i < n_; ++i) {
        if (i > 0) edges.emplace_back(last_at_level[level_[i] - 1], i);
        last_at_level[level_[i]] = i;
    }
    return Forest(n_, std::move(edges));
}

bool TreeEnumerator::accept() const {
    // Subtree sizes of the root's children straight from the level sequence.
    int heaviest = 0;
    int heaviest_child = -1;
    for (int i = 1; i < n_;) {
        int j = i + 1;
        while (j < n_ && level_[j] > 1) ++j;
        if (j - i > heaviest) {
            heaviest = j - i;
            heaviest_child = i;
        }
        i = j;
    }
    if (2 * heaviest > n_) return false;
    if (2 * heaviest < n_) return true;
    const Forest tree = build();
    return rooted_canonical_form(tree, 0) >= rooted_canonical_form(tree, heaviest_child);
}

std::optional<Forest> TreeEnumerator::next() {
    while (!done_) {
        if (started_ && !advance()) {
            done_ = true;
            break;
        }
        started_ = true;
        if (accept()) return build();
    }
    return std::nullopt;
}

std::vector<Forest> enumerate_trees(int n, int limit) {
    std::vector<Forest> out;
    for_each_tree(n, [&](const Forest& t) { out.push_back(t); }, limit);
    return out;
}

void for_each_tree(int n, const std::function<void(const Forest&)>& visit, int limit) {
    TreeEnumerator it(n, limit);
    while (auto tree = it.next()) visit(*tree);
}

}  // namespace domgame
