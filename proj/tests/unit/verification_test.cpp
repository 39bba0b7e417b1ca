#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "corruption.hpp"
#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "domgame/trace_io.hpp"
#include "domgame/verification.hpp"
#include "helpers.hpp"

using namespace domgame;
using testing_support::state_of;

namespace {

bool names(const std::vector<Violation>& vs, const std::string& check) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.check == check; });
}

}  // namespace

TEST_SUITE("verification") {
    TEST_CASE("P5 trace is clean") {
        const GameTrace t = run_game(path_graph(5), StallerPolicy::optimal(), Player::Dominator);
        CHECK(check_trace_invariants(t).empty());
        CHECK(explore_phase1_end_structure(t).empty());
    }

    TEST_CASE("shifting a Phase 2 point is caught once") {
        const GameTrace good = testing_support::phase2_trace();
        REQUIRE(good.records[1].phase == PhaseId::Phase2);
        CHECK(good.records[1].gain == 7);
        CHECK(good.records[2].phase == PhaseId::Phase2);
        CHECK(check_trace_invariants(good).empty());
        const GameTrace bad = testing_support::shift_phase2_point(good);
        const auto vs = check_trace_invariants(bad);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].check == "phase2.dominator_gain");
        CHECK(vs[0].turn >= 0);
    }

    TEST_CASE("other injected faults") {
        GameTrace t = run_game(random_tree(12, 3), StallerPolicy::greedy_min(), Player::Dominator, 3);
        REQUIRE(check_trace_invariants(t).empty());

        GameTrace incomplete = t;
        incomplete.records.pop_back();
        incomplete.states.pop_back();
        CHECK(names(check_trace_invariants(incomplete), "trace.complete"));

        GameTrace total = t;
        total.records.back().gain += 1;
        CHECK(names(check_trace_invariants(total), "potential.total"));

        GameTrace backwards = t;
        backwards.records.back().phase = PhaseId::Phase1;
        backwards.records.front().phase = PhaseId::Phase4;
        CHECK(names(check_trace_invariants(backwards), "phase.monotone"));

        GameTrace crit = t;
        crit.c_star += 1;
        CHECK(names(check_trace_invariants(crit), "critical.count"));

        GameTrace e = t;
        e.e_star += 1;
        CHECK(names(check_trace_invariants(e), "phase1.extra_sum"));
    }

    TEST_CASE("Phase 4 moves take exactly five points") {
        int seen = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const GameTrace t = run_game(random_forest(12, 3, seed), StallerPolicy::random(),
                                         Player::Dominator, seed);
            const LedgerSummary l = ledger(t);
            CHECK(l.phases[4].decrease == 5 * l.phases[4].turns);
            seen += l.phases[4].turns;
        }
        CHECK(seen > 0);
    }

    TEST_CASE("Phase 2 end structure") {
        CHECK_THROWS_AS(check_phase2_end_structure(init_state(path_graph(3))), Error);
        try {
            check_phase2_end_structure(init_state(path_graph(6)));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PreconditionNotMet);
        }
        const Graph pairs = disjoint_union(path_graph(2), path_graph(2));
        CHECK(check_phase2_end_structure(state_of(pairs, {0, 3})).empty());
        CHECK(check_phase2_end_structure(state_of(pairs, {0, 1, 2, 3})).empty());
    }

    TEST_CASE("mid-game structure") {
        // B-W-B inside a P5 whose ends are red: exempt from the 8-point rule.
        CHECK(check_midgame_structure(state_of(path_graph(5), {0, 1, 3, 4})).empty());
        // Blue leaf 2 in B-W-W: the middle white takes 8.
        CHECK(check_midgame_structure(state_of(path_graph(5), {0, 1, 2})).empty());
        // W-W-B-W-W without blue leaves: at most 6.
        const Graph tail(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}});
        CHECK(check_midgame_structure(state_of(tail, {2, 5})).empty());
        // A blue centre with five white leaves breaks the degree rule.
        const Graph star(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}});
        const auto vs = check_midgame_structure(state_of(star, {0, 6}));
        CHECK(names(vs, "midgame.blue_degree"));
        CHECK(names(vs, "midgame.leafless_gain"));
    }

    TEST_CASE("trace checks hold on all small trees") {
        for (int n = 2; n <= 10; ++n) {
            for (const Forest& t : enumerate_trees(n)) {
                for (Player first : {Player::Dominator, Player::Staller}) {
                    for (auto policy : {StallerPolicy::optimal(), StallerPolicy::greedy_min(),
                                        StallerPolicy::random()}) {
                        const GameTrace trace = run_game(t, policy, first, 7);
                        const auto vs = check_trace_invariants(trace);
                        CHECK_MESSAGE(vs.empty(), to_edge_list(t) << describe(vs));
                    }
                }
            }
        }
    }

    TEST_CASE("bounds rows") {
        const BoundsRow p5 = check_bounds_exact(path_graph(5));
        CHECK(p5.gamma == 2);
        CHECK(p5.gamma_g == 3);
        CHECK(p5.gamma_g_prime == 3);
        CHECK_FALSE(p5.no_leaf_pair_at_4);
        CHECK(p5.caterpillar_components);
        CHECK(p5.violations.empty());

        const Thresholds th = Thresholds::for_order(10);
        CHECK(th.three_fifths == 6);
        CHECK(th.three_fifths_prime == 6);
        CHECK(th.conjecture_prime == 6);
        CHECK(th.five_eighths == 6);
        CHECK(th.five_eighths_prime == 6);
        CHECK(Thresholds::for_order(13).five_eighths_prime == 8);
    }

    TEST_CASE("corpus runs are deterministic") {
        CorpusSpec spec;
        spec.source = CorpusSource::RandomForests;
        spec.n_max = 14;
        spec.count = 40;
        spec.seed = 11;
        spec.jobs = 4;
        const CheckReport a = corpus_run(spec);
        spec.jobs = 1;
        const CheckReport b = corpus_run(spec);
        CHECK(a.passed());
        CHECK(report_csv(a) == report_csv(b));
        CHECK(report_summary(a) == report_summary(b));
        CHECK(a.rows.size() == 40);
        CHECK(a.traces_checked == 40 * 6);
    }

    TEST_CASE("all trees up to 10 pass with a Dominator start") {
        CorpusSpec spec;
        spec.n_max = 10;
        spec.starts = {Player::Dominator};
        const CheckReport r = corpus_run(spec);
        CHECK(r.rows.size() == 200);
        CHECK(r.passed());
    }

    TEST_CASE("corpus filters and file sources") {
        CorpusSpec spec;
        spec.n_max = 8;
        spec.class_filter_no_leaf_pair_at_4 = true;
        for (const auto& inst : materialize(spec)) CHECK_FALSE(leaf_pair_at_distance(inst.forest, 4));

        const auto dir = std::filesystem::temp_directory_path() / "domgame-corpus-test";
        std::filesystem::create_directories(dir);
        std::ofstream(dir / "p5.txt") << to_edge_list(path_graph(5));
        CorpusSpec files;
        files.source = CorpusSource::Files;
        files.files = {(dir / "p5.txt").string()};
        const auto inst = materialize(files);
        REQUIRE(inst.size() == 1);
        CHECK(inst[0].forest == path_graph(5));
        files.files = {(dir / "missing.txt").string()};
        try {
            materialize(files);
            FAIL("expected GeneratorFailure");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::GeneratorFailure);
        }
    }

    TEST_CASE("caterpillars stay under 3n/5") {
        CorpusSpec spec;
        spec.source = CorpusSource::RandomCaterpillars;
        spec.n_max = 16;
        spec.count = 50;
        spec.check_lemmas = false;
        const CheckReport r = corpus_run(spec);
        CHECK(r.passed());
        for (const auto& row : r.rows) {
            REQUIRE(row.bounds.has_value());
            CHECK(row.bounds->gamma_g <= 3 * row.n / 5);
        }
    }

    TEST_CASE("replay bundles") {
        const GameTrace bad = testing_support::shift_phase2_point(testing_support::phase2_trace());
        CheckReport report;
        report.label = "injected";
        InstanceRow row;
        row.id = "bad/one";
        row.n = bad.forest->order();
        row.forest_text = to_edge_list(*bad.forest);
        row.seed = 5;
        row.violations = check_trace_invariants(bad);
        row.failing_traces.emplace_back("greedy-dominator", trace_to_json(bad));
        report.rows.push_back(row);
        report.violation_count = row.violations.size();

        const auto dir = std::filesystem::temp_directory_path() / "domgame-replay-test";
        std::filesystem::remove_all(dir);
        write_report(report, dir.string());
        const auto bundle = dir / "failures" / "bad_one";
        CHECK(std::filesystem::exists(dir / "report.csv"));
        CHECK(std::filesystem::exists(dir / "summary.txt"));
        CHECK(std::filesystem::exists(bundle / "forest.txt"));
        CHECK(std::filesystem::exists(bundle / "seed.txt"));
        CHECK(std::filesystem::exists(bundle / "violations.txt"));
        std::ifstream in(bundle / "trace-greedy-dominator.json");
        std::stringstream text;
        text << in.rdbuf();
        CHECK(check_trace_invariants(trace_from_json(text.str())).size() == 1);
    }

    TEST_CASE("extremal scan") {
        const auto rows = extremal_scan(10);
        REQUIRE(rows.size() == 9);
        CHECK(rows[0].n == 2);
        CHECK(rows[0].max_gamma_g == 1);
        CHECK(rows[3].n == 5);
        CHECK(rows[3].trees == 3);
        CHECK(rows[3].max_gamma_g == 3);
        CHECK(rows[8].max_gamma_g <= 6);
        for (const auto& r : rows) CHECK_FALSE(r.exceeds);
        CHECK_THROWS_AS(extremal_scan(19), Error);
        const std::string table = scan_table(extremal_scan(5));
        CHECK(table.find("5 3 3 3") != std::string::npos);
    }
}
