#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "domgame/service.hpp"
#include "domgame/solver.hpp"
#include "domgame/strategy.hpp"
#include "domgame/trace_io.hpp"
#include "domgame/verification.hpp"

using namespace domgame;

namespace {

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooLarge:
        case ErrorCode::LimitExceeded:
            return 3;
        case ErrorCode::NotAForest:
            return 4;
        default:
            return 2;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedLine, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// "-" writes to stdout.
void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::MalformedLine, "cannot write " + path);
    out << text;
}

const std::map<std::string, Player> kPlayers{{"dominator", Player::Dominator},
                                             {"staller", Player::Staller}};

const std::map<std::string, StallerKind> kStallers{{"optimal", StallerKind::Optimal},
                                                   {"greedy", StallerKind::GreedyMin},
                                                   {"random", StallerKind::Random},
                                                   {"worst", StallerKind::Worst}};

StallerPolicy make_staller(StallerKind kind) {
    switch (kind) {
        case StallerKind::GreedyMin: return StallerPolicy::greedy_min();
        case StallerKind::Random: return StallerPolicy::random();
        case StallerKind::Worst: return StallerPolicy::worst_case();
        default: return StallerPolicy::optimal();
    }
}

std::string join(const std::vector<Vertex>& vs, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(vs[i]);
    return out;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
    std::string input;
    Player start = Player::Dominator;
    bool allow_general = false;
};

int run_solve(const SolveArgs& a) {
    ParseOptions opts;
    opts.allow_cycles = a.allow_general;
    const Graph g = parse_edge_list(read_file(a.input), opts).graph;
    SolverOptions sopts;
    sopts.allow_isolated = a.allow_general;
    const SolveResult r = game_dom_number(g, a.start, sopts);
    std::cout << "gamma=" << domination_number(g) << ' '
              << (a.start == Player::Dominator ? "gamma_g=" : "gamma_g_prime=") << r.value << '\n'
              << "optimal_first_moves=" << join(r.optimal_first_moves) << '\n';
    return 0;
}

// --- strategy ----------------------------------------------------------------

struct StrategyArgs {
    std::string input;
    StallerKind staller = StallerKind::Optimal;
    Player start = Player::Dominator;
    std::uint64_t seed = 0;
    std::string trace_out;
    std::string json_out;
};

int run_strategy(const StrategyArgs& a) {
    ParseOptions opts;
    opts.allow_cycles = true;
    const Graph g = parse_edge_list(read_file(a.input), opts).graph;
    if (!g.is_forest()) throw Error(ErrorCode::NotAForest, "the strategy needs a forest");
    const GameTrace trace = run_game(g, make_staller(a.staller), a.start, a.seed);
    if (!a.trace_out.empty()) write_file(a.trace_out, trace_to_text(trace));
    if (!a.json_out.empty()) write_file(a.json_out, trace_to_json(trace));

    const int n = g.order();
    const int t = trace.turns();
    const bool dom = a.start == Player::Dominator;
    const Thresholds th = Thresholds::for_order(n);
    const int thr35 = dom ? th.three_fifths : th.three_fifths_prime;
    const int thr58 = dom ? th.five_eighths : th.five_eighths_prime;
    const bool class_35 = !leaf_pair_at_distance(g, 4);
    const auto violations = check_trace_invariants(trace);
    const bool pass = (!class_35 || t <= thr35) && t <= thr58 && violations.empty();

    std::cout << "turns=" << t << " e*=" << trace.e_star << " c*=" << trace.c_star
              << " r_k=" << trace.r_k << " n_ell=" << trace.n_ell << '\n';
    std::cout << t << " <= " << thr35 << " (" << (dom ? "3n/5" : "(3n+1)/5")
              << (class_35 ? "" : " n/a: leaves at distance 4") << ") ; " << t << " <= " << thr58
              << " (" << (dom ? "5n/8" : "(5n+2)/8") << ") " << (pass ? "PASS" : "FAIL") << '\n';
    if (!violations.empty()) std::cerr << describe(violations);
    return pass ? 0 : 1;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    int nmax = 10;
    int seeds = 0;
    int forest_nmax = 20;
    int caterpillars = 0;
    int caterpillar_nmax = 16;
    std::uint64_t seed = 1;
    std::string out;
    int jobs = 1;
    std::string check_trace;
};

int run_check_trace(const std::string& path) {
    const GameTrace trace = trace_from_json(read_file(path));
    const auto violations = check_trace_invariants(trace);
    if (violations.empty()) {
        std::cout << "trace ok: " << trace.turns() << " turns\n";
        return 0;
    }
    std::cout << describe(violations);
    return 1;
}

int run_verify(const VerifyArgs& a) {
    if (!a.check_trace.empty()) return run_check_trace(a.check_trace);

    CorpusSpec base;
    base.jobs = a.jobs;
    base.seed = a.seed;
    base.check_bounds = a.suite != "lemmas";
    base.check_worst_case = a.suite != "lemmas";
    base.check_lemmas = a.suite != "bounds";

    std::vector<CorpusSpec> specs;
    CorpusSpec trees = base;
    trees.label = "trees n<=" + std::to_string(a.nmax);
    trees.source = CorpusSource::AllTrees;
    trees.n_max = a.nmax;
    specs.push_back(trees);
    if (a.seeds > 0) {
        CorpusSpec forests = base;
        forests.label = "random forests n<=" + std::to_string(a.forest_nmax);
        forests.source = CorpusSource::RandomForests;
        forests.n_max = a.forest_nmax;
        forests.count = a.seeds;
        specs.push_back(forests);
    }
    if (a.caterpillars > 0) {
        CorpusSpec cats = base;
        cats.label = "random caterpillars n<=" + std::to_string(a.caterpillar_nmax);
        cats.source = CorpusSource::RandomCaterpillars;
        cats.n_max = a.caterpillar_nmax;
        cats.count = a.caterpillars;
        specs.push_back(cats);
    }

    bool ok = true;
    std::string csv;
    std::string summary;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const CheckReport report = corpus_run(specs[i]);
        ok = ok && report.passed();
        const std::string part = report_csv(report);
        csv += i == 0 ? part : part.substr(part.find('\n') + 1);
        summary += report_summary(report);
        std::cout << report_summary(report);
        if (!a.out.empty() && !report.passed()) write_report(report, a.out + "/" + std::to_string(i));
    }
    if (!a.out.empty()) {
        std::filesystem::create_directories(a.out);
        write_file(a.out + "/report.csv", csv);
        write_file(a.out + "/summary.txt", summary);
    }
    std::cout << (ok ? "verify: PASS" : "verify: FAIL") << '\n';
    return ok ? 0 : 1;
}

// --- scan / gen --------------------------------------------------------------

int run_scan(int nmax) {
    std::cout << scan_table(extremal_scan(nmax));
    return 0;
}

struct GenArgs {
    std::string kind = "tree";
    int n = 10;
    int components = 1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen(const GenArgs& a) {
    if (a.n < 1 || a.n > 64) throw Error(ErrorCode::TooLarge, "n must lie in [1, 64]");
    Forest f = a.kind == "forest"        ? random_forest(a.n, a.components, a.seed)
               : a.kind == "caterpillar" ? random_caterpillar(a.n, a.seed)
               : a.kind == "path"        ? path_graph(a.n)
               : a.kind == "star"        ? star_graph(a.n - 1)
                                         : random_tree(a.n, a.seed);
    const std::string text = to_edge_list(f);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        write_file(a.out, text);
    }
    return 0;
}

// --- play --------------------------------------------------------------------

struct PlayArgs {
    std::string input;
    Player side = Player::Staller;
    Player start = Player::Dominator;
    StallerKind staller = StallerKind::Optimal;
    std::uint64_t seed = 0;
};

void show_board(const ResidualState& s) {
    std::cout << "board:";
    bool any = false;
    for (Vertex v = 0; v < s.order(); ++v) {
        if (s.color(v) == Color::Red) continue;
        any = true;
        std::cout << "\n  " << v << " [" << color_letter(s.color(v)) << "] -> ";
        const auto nb = to_vector(s.residual_neighbors(v));
        for (std::size_t i = 0; i < nb.size(); ++i) {
            std::cout << (i ? " " : "") << nb[i] << '[' << color_letter(s.color(nb[i])) << ']';
        }
    }
    std::cout << (any ? "\n" : " all red\n");
}

int run_play(const PlayArgs& a) {
    auto forest = std::make_shared<const Graph>(parse_edge_list(read_file(a.input)).graph);
    GameRecorder game(forest, a.start, a.seed, "interactive");
    StallerDriver staller(make_staller(a.staller), forest, a.seed);
    std::shared_ptr<GameSolver> solver;
    const auto announce = [](const TurnRecord& r) {
        std::cout << to_string(r.player) << " plays " << r.vertex << " (+" << r.gain << ", "
                  << phase_label(r.phase) << ")\n";
    };

    while (!game.over()) {
        if (game.to_move() != a.side) {
            const Vertex v = game.to_move() == Player::Dominator ? game.strategy_move()
                                                                 : staller.choose(game);
            announce(game.play(v));
            continue;
        }
        show_board(game.state());
        std::cout << "legal: " << join(to_vector(legal_moves(game.state())), ' ')
                  << "\nmove (vertex id, 'hint' or 'quit')> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line) || line == "quit") {
            std::cout << "\nresigned after " << game.trace().turns() << " turns\n";
            return 0;
        }
        if (line == "hint") {
            if (!solver) solver = std::make_shared<GameSolver>(forest);
            const auto [v, rest] = solver->best_reply(game.state().dominated(), a.side);
            std::cout << "hint: " << v << " (" << rest << " turns remain with best play)\n";
            continue;
        }
        Vertex v = -1;
        try {
            std::size_t used = 0;
            v = std::stoi(line, &used);
            if (used != line.size()) v = -1;
        } catch (const std::exception&) {
            v = -1;
        }
        if (v < 0 || v >= forest->order() ||
            !rules::is_legal(*forest, game.state().dominated(), v)) {
            std::cout << "illegal move '" << line << "', try again\n";
            continue;
        }
        announce(game.play(v));
    }
    const int n = forest->order();
    const Thresholds th = Thresholds::for_order(n);
    const bool dom = a.start == Player::Dominator;
    std::cout << "game over after " << game.trace().turns() << " turns (3n/5 bound "
              << (dom ? th.three_fifths : th.three_fifths_prime) << ", 5n/8 bound "
              << (dom ? th.five_eighths : th.five_eighths_prime) << ")\n";
    return 0;
}

// --- serve -------------------------------------------------------------------

int run_serve(const std::string& host, int port) {
    GameService service;
    HttpServer server(service);
    const int bound = server.bind(host, port);
    if (bound < 0) {
        std::cerr << "cannot bind " << host << ':' << port << '\n';
        return 1;
    }
    std::cout << "listening on http://" << host << ':' << bound << std::endl;
    return server.listen() ? 0 : 1;
}

int default_jobs() {
    if (const char* env = std::getenv("DOMGAME_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Domination game solver, phased strategy runner and verifier"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Exact gamma and game domination number");
    solve_cmd->add_option("--input", solve.input, "Edge-list file")->required();
    solve_cmd->add_option("--start", solve.start, "First player")
        ->transform(CLI::CheckedTransformer(kPlayers).description("{dominator,staller}"));
    solve_cmd->add_flag("--allow-general", solve.allow_general, "Accept cycles and isolated vertices");

    StrategyArgs strat;
    auto* strat_cmd = app.add_subcommand("strategy", "Play the phased strategy against a Staller");
    strat_cmd->add_option("--input", strat.input, "Edge-list file")->required();
    strat_cmd->add_option("--staller", strat.staller, "Staller policy")
        ->transform(CLI::CheckedTransformer(kStallers).description("{optimal,greedy,random,worst}"));
    strat_cmd->add_option("--start", strat.start, "First player")
        ->transform(CLI::CheckedTransformer(kPlayers).description("{dominator,staller}"));
    strat_cmd->add_option("--seed", strat.seed, "Seed for the random Staller");
    strat_cmd->add_option("--trace", strat.trace_out, "Write the text trace here (- for stdout)");
    strat_cmd->add_option("--json", strat.json_out, "Write the JSON trace here (- for stdout)");

    VerifyArgs verify;
    verify.jobs = default_jobs();
    auto* verify_cmd = app.add_subcommand("verify", "Run invariant and bound checks over corpora");
    verify_cmd->add_option("--suite", verify.suite, "all | lemmas | bounds")
        ->check(CLI::IsMember({"all", "lemmas", "bounds"}));
    verify_cmd->add_option("--nmax", verify.nmax, "All trees up to this order");
    verify_cmd->add_option("--seeds", verify.seeds, "Number of random forests");
    verify_cmd->add_option("--forest-nmax", verify.forest_nmax, "Order cap for random forests");
    verify_cmd->add_option("--caterpillars", verify.caterpillars, "Number of random caterpillars");
    verify_cmd->add_option("--caterpillar-nmax", verify.caterpillar_nmax, "Order cap for caterpillars");
    verify_cmd->add_option("--seed", verify.seed, "Base seed of the random corpora");
    verify_cmd->add_option("--out", verify.out, "Report directory");
    verify_cmd->add_option("--jobs", verify.jobs, "Worker threads (default $DOMGAME_JOBS or 1)");
    verify_cmd->add_option("--check-trace", verify.check_trace, "Check one JSON trace file");

    int scan_nmax = 10;
    auto* scan_cmd = app.add_subcommand("scan", "Maximum game domination number per order");
    scan_cmd->add_option("--nmax", scan_nmax, "Largest order")->check(CLI::Range(2, 18));

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated forest as an edge list");
    gen_cmd->add_option("--kind", gen.kind, "tree | forest | caterpillar | path | star")
        ->check(CLI::IsMember({"tree", "forest", "caterpillar", "path", "star"}));
    gen_cmd->add_option("--n", gen.n, "Order");
    gen_cmd->add_option("--components", gen.components, "Components (forest)");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output file (stdout by default)");

    PlayArgs play;
    auto* play_cmd = app.add_subcommand("play", "Play against the engine on the terminal");
    play_cmd->add_option("--input", play.input, "Edge-list file")->required();
    play_cmd->add_option("--side", play.side, "Your side")->transform(CLI::CheckedTransformer(kPlayers).description("{dominator,staller}"));
    play_cmd->add_option("--start", play.start, "First player")
        ->transform(CLI::CheckedTransformer(kPlayers).description("{dominator,staller}"));
    play_cmd->add_option("--staller", play.staller, "Engine Staller policy")
        ->transform(CLI::CheckedTransformer(kStallers).description("{optimal,greedy,random,worst}"));
    play_cmd->add_option("--seed", play.seed, "Seed");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "Start the JSON game service");
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--port", port, "Port (0 picks a free one)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*strat_cmd) return run_strategy(strat);
        if (*verify_cmd) return run_verify(verify);
        if (*scan_cmd) return run_scan(scan_nmax);
        if (*gen_cmd) return run_gen(gen);
        if (*play_cmd) return run_play(play);
        if (*serve_cmd) return run_serve(host, port);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    }
    return 0;
}
