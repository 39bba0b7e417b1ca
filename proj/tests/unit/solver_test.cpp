#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "domgame/solver.hpp"
#include "domgame/strategy.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace domgame;
using testing_support::set_of;
using testing_support::shared;
using testing_support::state_of;

TEST_SUITE("solver") {
    TEST_CASE("domination number") {
        CHECK(domination_number(path_graph(3)) == 1);
        CHECK(domination_number(path_graph(5)) == 2);
        CHECK(domination_number(disjoint_union(path_graph(2), path_graph(2))) == 2);
        const VertexSet witness = minimum_dominating_set(path_graph(5));
        CHECK(count(witness) == 2);
        VertexSet covered = 0;
        for_each_vertex(witness, [&](Vertex v) { covered |= path_graph(5).closed_neighborhood(v); });
        CHECK(covered == path_graph(5).all());
    }

    TEST_CASE("domination number agrees with brute force") {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const int n = 2 + static_cast<int>(seed % 15);
            const Forest f = random_forest(n, 1 + static_cast<int>(seed % (n / 2)), seed);
            CHECK(domination_number(f) == oracle::domination_number(f));
        }
        const Graph cycle = parse_edge_list("6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0", {true}).graph;
        CHECK(domination_number(cycle) == 2);
    }

    TEST_CASE("game values") {
        CHECK(game_dom_number(path_graph(2), Player::Dominator).value == 1);
        CHECK(game_dom_number(path_graph(3), Player::Dominator).value == 1);
        CHECK(game_dom_number(path_graph(3), Player::Staller).value == 2);
        CHECK(game_dom_number(path_graph(5), Player::Dominator).value == 3);
        CHECK(game_dom_number(star_graph(5), Player::Dominator).value == 1);
        CHECK(game_dom_number(star_graph(5), Player::Dominator).optimal_first_moves ==
              std::vector<Vertex>{0});
    }

    TEST_CASE("best reply") {
        CHECK(best_reply(init_state(path_graph(3)), Player::Dominator) == std::pair<Vertex, int>{1, 1});
        CHECK(best_reply(init_state(path_graph(2)), Player::Staller) == std::pair<Vertex, int>{0, 1});
        const auto s = state_of(path_graph(5), {0, 1, 2, 3});
        CHECK(best_reply(s, Player::Dominator) == std::pair<Vertex, int>{3, 1});
        CHECK_THROWS_AS(best_reply(state_of(path_graph(2), {0, 1}), Player::Dominator), Error);
    }

    TEST_CASE("memoised solver equals plain minimax on small trees") {
        for (int n = 2; n <= 8; ++n) {
            for (const Forest& t : enumerate_trees(n)) {
                GameSolver solver(t);
                CHECK(solver.remaining(0, Player::Dominator) == oracle::game_value(t, true));
                CHECK(solver.remaining(0, Player::Staller) == oracle::game_value(t, false));
            }
        }
    }

    TEST_CASE("memoised solver equals plain minimax on random forests") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const Forest f = random_forest(9, 1 + static_cast<int>(seed % 4), seed);
            GameSolver solver(f);
            CHECK(solver.remaining(0, Player::Dominator) == oracle::game_value(f, true));
            CHECK(solver.remaining(0, Player::Staller) == oracle::game_value(f, false));
        }
    }

    TEST_CASE("classical bounds and relabelling invariance") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 100; ++i) {
            const int n = std::uniform_int_distribution<int>(2, 16)(rng);
            const Forest t = random_tree(n, rng());
            std::vector<Vertex> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            const Graph u = relabel(t, perm);
            const int gamma = domination_number(t);
            const int gd = game_dom_number(t, Player::Dominator).value;
            const int gs = game_dom_number(t, Player::Staller).value;
            CHECK(game_dom_number(u, Player::Dominator).value == gd);
            CHECK(game_dom_number(u, Player::Staller).value == gs);
            CHECK(gamma <= gd);
            CHECK(gd <= 2 * gamma - 1);
            CHECK(gamma <= gs);
            CHECK(gs <= 2 * gamma);
        }
    }

    TEST_CASE("general graphs and isolated vertices") {
        const Graph c4 = parse_edge_list("4\n0 1\n1 2\n2 3\n3 0", {true}).graph;
        CHECK(game_dom_number(c4, Player::Dominator).value == 2);
        CHECK_THROWS_AS(game_dom_number(Graph(3, {{0, 1}}), Player::Dominator), Error);
        CHECK(game_dom_number(Graph(3, {{0, 1}}), Player::Dominator, {true}).value == 2);
        CHECK(game_dom_number(Graph(1, {}), Player::Staller, {true}).value == 1);
    }

    TEST_CASE("sparse tables above the dense limit") {
        const Forest t = random_tree(GameSolver::kDenseLimit + 4, 12);
        GameSolver solver(t);
        const int value = solver.remaining(0, Player::Dominator);
        CHECK(value >= domination_number(t));
        CHECK(value <= 5 * t.order() / 8);
    }

    TEST_CASE("worst case against the phased strategy") {
        CHECK(worst_case_turns(path_graph(2), phased_policy(), Player::Dominator).turns == 1);
        const auto p5 = worst_case_turns(path_graph(5), phased_policy(), Player::Dominator);
        CHECK(p5.turns == 3);
        CHECK(p5.moves.front() == 1);
        CHECK(p5.staller_line.front() == 2);
        CHECK(worst_case_turns(path_graph(4), phased_policy(), Player::Dominator).turns == 2);
    }

    TEST_CASE("worst case is at least the game value") {
        for (int n = 2; n <= 12; ++n) {
            for (const Forest& t : enumerate_trees(n)) {
                const auto g = shared(t);
                GameSolver solver(g);
                WorstCaseSearch search(g, phased_policy());
                const auto start = phased_policy().initial_state();
                CHECK(search.remaining(0, start, Player::Dominator) >=
                      solver.remaining(0, Player::Dominator));
                CHECK(search.remaining(0, start, Player::Staller) >=
                      solver.remaining(0, Player::Staller));
            }
        }
    }
}
