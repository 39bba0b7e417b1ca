#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domgame/graph.hpp"

namespace domgame {

/// Tree on n vertices decoded from a Prüfer sequence (length n-2, entries < n).
Forest tree_from_pruefer(int n, std::span<const Vertex> code);

/// Uniform random labelled tree on n >= 1 vertices.
Forest random_tree(int n, std::uint64_t seed);

/// Forest with exactly `components` trees. With `isolate_free` every
/// component has at least two vertices, otherwise sizes are >= 1.
/// Throws Error{InfeasibleShape}.
Forest random_forest(int n, int components, std::uint64_t seed, bool isolate_free = true);

/// Tree whose non-leaf vertices induce a path; n >= 2.
Forest random_caterpillar(int n, std::uint64_t seed);

/// AHU-style canonical string of the tree rooted at `root`.
std::string rooted_canonical_form(const Forest& tree, Vertex root);

/// Isomorphism-invariant form of a free tree, computed from its centroid(s).
std::string tree_canonical_form(const Forest& tree);

inline constexpr int kDefaultEnumerationLimit = 18;

/// Generates one representative per isomorphism class of free trees on n
/// vertices. Rooted trees come from canonical level sequences in successor
/// order; a rooted tree is kept only when its root is the centroid that
/// yields the larger rooted form.
class TreeEnumerator {
public:
    explicit TreeEnumerator(int n, int limit = kDefaultEnumerationLimit);

    /// Next tree or nullopt when exhausted.
    std::optional<Forest> next();

private:
    bool advance();
    bool accept() const;
    Forest build() const;

    int n_;
    std::vector<int> level_;  // 1-based levels, root at index 0
    bool started_ = false;
    bool done_ = false;
};

std::vector<Forest> enumerate_trees(int n, int limit = kDefaultEnumerationLimit);

void for_each_tree(int n, const std::function<void(const Forest&)>& visit,
                   int limit = kDefaultEnumerationLimit);

}  // namespace domgame
