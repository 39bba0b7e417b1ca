#include <doctest.h>

#include <set>

#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "oracles.hpp"

using namespace domgame;

TEST_SUITE("generators") {
    TEST_CASE("random_forest shapes") {
        CHECK(random_forest(2, 1, 7) == path_graph(2));
        CHECK(random_forest(10, 3, 5) == random_forest(10, 3, 5));
        const Forest f = random_forest(10, 3, 5);
        CHECK(f.component_count() == 3);
        CHECK(f.is_forest());
        CHECK_FALSE(f.has_isolated_vertex());
        try {
            random_forest(10, 6, 1);
            FAIL("expected InfeasibleShape");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InfeasibleShape);
        }
        const Forest loose = random_forest(6, 6, 1, false);
        CHECK(loose.size() == 0);
    }

    TEST_CASE("generated forests are valid") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const int n = 2 + static_cast<int>(seed % 19);
            const Forest t = random_tree(n, seed);
            CHECK(t.is_forest());
            CHECK(t.component_count() == 1);
            const Forest c = random_caterpillar(n, seed);
            CHECK(c.is_forest());
            CHECK(c.component_count() == 1);
            CHECK(is_caterpillar(c));
            const int k = 1 + static_cast<int>(seed % (n / 2));
            const Forest f = random_forest(n, k, seed);
            CHECK(f.component_count() == k);
            CHECK_FALSE(f.has_isolated_vertex());
        }
    }

    TEST_CASE("caterpillar small cases") {
        CHECK(random_caterpillar(2, 3) == path_graph(2));
        CHECK(random_caterpillar(7, 11) == random_caterpillar(7, 11));
    }

    TEST_CASE("pruefer decoding matches the oracle") {
        const std::vector<Vertex> code{3, 3, 3, 4};
        const Forest t = tree_from_pruefer(6, code);
        auto expected = oracle::pruefer_edges(6, {3, 3, 3, 4});
        for (auto& [u, v] : expected) {
            if (u > v) std::swap(u, v);
        }
        std::sort(expected.begin(), expected.end());
        CHECK(std::vector<Edge>(t.edges().begin(), t.edges().end()) == expected);
    }

    TEST_CASE("enumeration counts") {
        const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301};
        for (int n = 1; n <= 13; ++n) {
            CHECK_MESSAGE(enumerate_trees(n).size() == expected[n - 1], "n=" << n);
        }
        CHECK(enumerate_trees(4).size() == 2);
    }

    TEST_CASE("enumeration agrees with independent oracles") {
        for (int n = 2; n <= 8; ++n) {
            CHECK(enumerate_trees(n).size() == oracle::count_classes_by_pruefer(n));
        }
        CHECK(oracle::count_classes_by_pruefer(7) == 11);
        CHECK(oracle::count_classes_by_growth(10) == 106);
        CHECK(enumerate_trees(10).size() == oracle::count_classes_by_growth(10));
    }

    TEST_CASE("enumerated trees are pairwise non-isomorphic trees") {
        for (int n = 1; n <= 11; ++n) {
            std::set<std::string> forms;
            std::set<std::string> oracle_forms;
            for (const Forest& t : enumerate_trees(n)) {
                CHECK(t.order() == n);
                CHECK(t.is_forest());
                CHECK(t.component_count() == 1);
                forms.insert(tree_canonical_form(t));
                oracle_forms.insert(oracle::canonical(t));
            }
            CHECK(forms.size() == enumerate_trees(n).size());
            CHECK(oracle_forms.size() == forms.size());
        }
    }

    TEST_CASE("enumeration limit") {
        CHECK_THROWS_AS(TreeEnumerator(19), Error);
        CHECK_THROWS_AS(TreeEnumerator(0), Error);
        CHECK(enumerate_trees(5).size() == 3);
    }

    TEST_CASE("canonical form is label-invariant") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Forest t = random_tree(14, seed);
            std::vector<Vertex> perm(14);
            for (int i = 0; i < 14; ++i) perm[i] = 13 - i;
            CHECK(tree_canonical_form(relabel(t, perm)) == tree_canonical_form(t));
        }
    }
}
