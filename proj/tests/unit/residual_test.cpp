#include <doctest.h>

#include <random>

#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "domgame/residual.hpp"
#include "domgame/strategy.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace domgame;
using testing_support::set_of;
using testing_support::shared;
using testing_support::state_of;

namespace {

std::string letters(const ResidualState& s) {
    std::string out;
    for (Color c : s.colors()) out += color_letter(c);
    return out;
}

std::vector<char> as_vector(VertexSet dominated, int n) {
    std::vector<char> out(n);
    for (int v = 0; v < n; ++v) out[v] = contains(dominated, v) ? 1 : 0;
    return out;
}

// Random position reached by random legal play from a fresh forest.
ResidualState random_position(const Forest& f, std::mt19937_64& rng) {
    ResidualState s = init_state(f);
    const int steps = std::uniform_int_distribution<int>(0, f.order())(rng);
    for (int i = 0; i < steps && !s.terminal(); ++i) {
        const auto moves = to_vector(legal_moves(s));
        s = apply_move(s, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)])
                .first;
    }
    return s;
}

}  // namespace

TEST_SUITE("residual") {
    TEST_CASE("init_state") {
        CHECK(value(init_state(path_graph(3))) == 9);
        CHECK(value(init_state(disjoint_union(path_graph(2), path_graph(2)))) == 12);
        CHECK(value(init_state(random_tree(10, 1))) == 30);
        try {
            init_state(Graph(1, {}));
            FAIL("expected IsolatedVertexPresent");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IsolatedVertexPresent);
        }
        CHECK(value(init_state(Graph(1, {}), true)) == 3);
    }

    TEST_CASE("legal moves") {
        CHECK(legal_moves(init_state(path_graph(3))) == set_of({0, 1, 2}));
        CHECK(legal_moves(state_of(path_graph(3), {0, 1, 2})) == 0);
        const auto [after, out] = apply_move(init_state(path_graph(5)), 1);
        CHECK(legal_moves(after) == set_of({2, 3, 4}));
        CHECK(after.red() == set_of({0, 1}));
    }

    TEST_CASE("gain examples") {
        const auto p3 = gain_of(init_state(path_graph(3)), 1);
        CHECK(p3.gain == 9);
        CHECK(p3.newly_red == 3);

        const auto p5 = gain_of(init_state(path_graph(5)), 1);
        CHECK(p5.gain == 7);
        CHECK(p5.newly_red == 2);
        const std::vector<ColorTransition> expected{{0, Color::White, Color::Red},
                                                    {1, Color::White, Color::Red},
                                                    {2, Color::White, Color::Blue}};
        CHECK(p5.transitions == expected);

        // B-W-B: blue leaves around a white centre.
        const auto bwb = state_of(path_graph(5), {0, 1, 3, 4});
        CHECK(letters(bwb) == "RBWBR");
        CHECK(gain_of(bwb, 2).gain == 7);

        // B-W K2 component.
        const auto bw = state_of(path_graph(2), {0});
        CHECK(gain_of(bw, 0).gain == 5);
        CHECK(gain_of(bw, 1).gain == 5);
    }

    TEST_CASE("apply_move") {
        const auto [p2, out] = apply_move(init_state(path_graph(2)), 0);
        CHECK(p2.terminal());
        CHECK(out.gain == 6);

        auto s = apply_move(init_state(path_graph(5)), 1).first;
        CHECK(value(s) == 8);
        s = apply_move(s, 2).first;
        CHECK(letters(s) == "RRRBW");
        CHECK(value(s) == 5);
        CHECK(s.move_count() == 2);
        try {
            apply_move(s, 0);
            FAIL("expected IllegalMove");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IllegalMove);
        }
        CHECK(value(state_of(path_graph(3), {0, 1, 2})) == 0);
    }

    TEST_CASE("white components") {
        const auto p2 = white_components(init_state(path_graph(2)));
        REQUIRE(p2.size() == 1);
        CHECK(p2[0].kind == WhiteComponent::Kind::WPair);
        const auto p3 = white_components(init_state(path_graph(3)));
        REQUIRE(p3.size() == 1);
        CHECK(p3[0].kind == WhiteComponent::Kind::Larger);
        const auto after = apply_move(init_state(path_graph(5)), 1).first;
        const auto comps = white_components(after);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == WhiteComponent::Kind::WPair);
        CHECK(comps[0].vertices == std::vector<Vertex>{3, 4});
    }

    TEST_CASE("critical P5 detection") {
        // 0-1-2-3-4 with 2 blue via a red neighbour 5.
        const Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}});
        const auto s = state_of(g, {2, 5});
        CHECK(letters(s) == "WWBWWR");
        const auto hits = detect_critical_p5(s);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].center == 2);
        CHECK(hits[0].path == std::array<Vertex, 5>{0, 1, 2, 3, 4});

        CHECK(detect_critical_p5(init_state(path_graph(5))).empty());

        // Same but vertex 4 has another white neighbour 6.
        const Graph h(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {4, 6}});
        CHECK(detect_critical_p5(state_of(h, {2, 5})).empty());
    }

    TEST_CASE("structure report") {
        const auto bw = structure_report(state_of(path_graph(2), {0}));
        REQUIRE(bw.components.size() == 1);
        CHECK(bw.components[0].order == 2);
        CHECK(bw.components[0].bw_pair);
        CHECK(bw.blue_leaves == set_of({0}));

        const auto fresh = structure_report(init_state(random_tree(9, 3)));
        CHECK(fresh.blue_degrees.empty());

        const auto after = apply_move(init_state(path_graph(5)), 1).first;
        const auto r = structure_report(after);
        CHECK(after.residual_degree(2) == 1);
        CHECK(r.blue_leaves == set_of({2}));
        REQUIRE(r.components.size() == 1);
        CHECK(r.components[0].order == 3);
    }

    TEST_CASE("residual view drops red vertices and blue-blue edges") {
        const auto s = state_of(path_graph(4), {0, 1, 2});
        CHECK(letters(s) == "RRBW");
        const auto bb = state_of(path_graph(4), {1, 2});
        CHECK(letters(bb) == "WBBW");
        CHECK(bb.residual_neighbors(1) == set_of({0}));
        CHECK(bb.residual_neighbors(2) == set_of({3}));
        CHECK(bb.components().size() == 2);
    }

    TEST_CASE("snapshot round trip") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            const Forest f = random_forest(12, 2, i);
            const ResidualState s = random_position(f, rng);
            const ResidualState back = parse_snapshot(to_snapshot(s));
            CHECK(back == s);
            CHECK(to_snapshot(back) == to_snapshot(s));
        }
        CHECK_THROWS_AS(parse_snapshot("2\n0 1\ncolors RW\nmoves 1\n"), Error);
    }

    TEST_CASE("engine recolouring equals the transition rules") {
        std::mt19937_64 rng(2024);
        int compared = 0;
        while (compared < 10000) {
            const int n = std::uniform_int_distribution<int>(2, 16)(rng);
            const int k = std::uniform_int_distribution<int>(1, n / 2)(rng);
            const Forest f = random_forest(n, k, rng());
            const auto adj = oracle::adjacency(f);
            const ResidualState s = random_position(f, rng);
            if (s.terminal()) continue;
            const std::string before = oracle::colours(adj, as_vector(s.dominated(), n));
            CHECK(letters(s) == before);
            for (Vertex v : to_vector(legal_moves(s))) {
                const auto [next, out] = apply_move(s, v);
                const std::string expected = oracle::transition(adj, before, v);
                CHECK(letters(next) == expected);
                CHECK(out.gain == oracle::points(before) - oracle::points(expected));
                ++compared;
            }
        }
    }

    TEST_CASE("move properties on random play") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = std::uniform_int_distribution<int>(2, 18)(rng);
            const Forest f = random_forest(n, std::uniform_int_distribution<int>(1, n / 2)(rng), rng());
            ResidualState s = init_state(f);
            int moves = 0;
            while (!s.terminal()) {
                // No isolated residual vertex and blue-leaf => 7-point move.
                for (Vertex v = 0; v < n; ++v) {
                    if (s.color(v) != Color::Red) CHECK(s.residual_degree(v) >= 1);
                    if (s.color(v) == Color::White) CHECK(s.residual_degree(v) == f.degree(v));
                }
                const auto report = structure_report(s);
                for (const auto& c : report.components) {
                    if (c.order >= 3 && c.blue_leaves != 0) CHECK(max_gain(f, s.dominated()) >= 7);
                }
                const auto options = to_vector(legal_moves(s));
                for (Vertex v : options) CHECK(gain_of(s, v).gain >= 3);
                const Vertex v =
                    options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
                const int before = value(s);
                s = apply_move(s, v).first;
                CHECK(value(s) < before);
                ++moves;
            }
            CHECK(moves <= n);
        }
    }
}
