#include "domgame/service.hpp"

#include <httplib.h>

#include <array>
#include <json.hpp>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

#include "domgame/error.hpp"
#include "domgame/generators.hpp"
#include "domgame/trace_io.hpp"

namespace domgame {

using json = nlohmann::ordered_json;

namespace {

constexpr int kMaxOrder = 64;

ServiceResponse reply(int status, const json& body) { return {status, body.dump() + "\n"}; }

ServiceResponse failure(int status, std::string_view code, std::string_view message) {
    return reply(status, json{{"error", code}, {"message", message}});
}

Player parse_side(const json& doc, const char* key, Player fallback) {
    if (!doc.contains(key)) return fallback;
    const std::string s = doc.at(key).get<std::string>();
    if (s == "dominator") return Player::Dominator;
    if (s == "staller") return Player::Staller;
    throw Error(ErrorCode::MalformedLine, std::string(key) + " must be dominator or staller");
}

StallerKind parse_policy(const json& doc) {
    if (!doc.contains("staller_policy")) return StallerKind::Optimal;
    const std::string s = doc.at("staller_policy").get<std::string>();
    for (StallerKind k : {StallerKind::Optimal, StallerKind::GreedyMin, StallerKind::Random,
                          StallerKind::Worst}) {
        if (s == to_string(k)) return k;
    }
    throw Error(ErrorCode::MalformedLine, "unknown staller_policy " + s);
}

Forest build_forest(const json& doc) {
    if (doc.contains("edges")) return parse_edge_list(doc.at("edges").get<std::string>()).graph;
    if (!doc.contains("generator")) {
        throw Error(ErrorCode::MalformedLine, "expected \"edges\" or \"generator\"");
    }
    const json& gen = doc.at("generator");
    const std::string kind = gen.at("kind").get<std::string>();
    const int n = gen.at("n").get<int>();
    const std::uint64_t seed = gen.value("seed", std::uint64_t{1});
    if (n < 1 || n > kMaxOrder) throw Error(ErrorCode::TooLarge, "n must lie in [1, 64]");
    if (kind == "tree") return random_tree(n, seed);
    if (kind == "forest") return random_forest(n, gen.value("components", 1), seed);
    if (kind == "caterpillar") return random_caterpillar(n, seed);
    if (kind == "path") return path_graph(n);
    if (kind == "star") return star_graph(n - 1);
    throw Error(ErrorCode::MalformedLine, "unknown generator kind " + kind);
}

std::string new_session_id() {
    static std::mutex m;
    static std::random_device device;
    std::lock_guard lock(m);
    std::array<std::uint32_t, 4> words{};
    for (auto& w : words) w = device();
    char buffer[33];
    std::snprintf(buffer, sizeof buffer, "%08x%08x%08x%08x", words[0], words[1], words[2],
                  words[3]);
    return buffer;
}

json thresholds_for(int n, Player start) {
    if (start == Player::Dominator) {
        return {{"three_fifths", 3 * n / 5}, {"five_eighths", 5 * n / 8}};
    }
    return {{"three_fifths", (3 * n + 1) / 5}, {"five_eighths", (5 * n + 2) / 8}};
}

}  // namespace

std::string render_view(const std::string& id, const SessionConfig& config,
                        const GameRecorder& game) {
    const ResidualState& s = game.state();
    const Graph& g = s.graph();
    const GameTrace& trace = game.trace();
    const VertexSet legal = legal_moves(s);

    json vertices = json::array();
    for (Vertex v = 0; v < g.order(); ++v) {
        json entry{{"id", v},
                   {"color", std::string(1, color_letter(s.color(v)))},
                   {"legal", contains(legal, v)}};
        entry["gain"] = contains(legal, v) ? json(rules::gain(g, s.dominated(), v)) : json(nullptr);
        vertices.push_back(std::move(entry));
    }
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    json active = json::array();
    for (const auto& [u, v] : s.active_edges()) active.push_back({u, v});

    json history = json::array();
    for (const auto& r : trace.records) {
        history.push_back({{"index", r.index},
                           {"player", to_string(r.player)},
                           {"vertex", r.vertex},
                           {"gain", r.gain},
                           {"phase", phase_label(r.phase)},
                           {"critical", r.critical}});
    }

    const bool over = game.over();
    PhaseId phase = game.phase_floor();
    if (over && !trace.records.empty()) phase = trace.records.back().phase;
    if (!over && game.to_move() == Player::Dominator) phase = game.upcoming_dominator_phase();

    json doc;
    doc["id"] = id;
    doc["n"] = g.order();
    doc["start"] = to_string(config.start);
    doc["human"] = to_string(config.human);
    doc["staller_policy"] = to_string(config.staller);
    doc["seed"] = config.seed;
    doc["vertices"] = std::move(vertices);
    doc["edges"] = std::move(edges);
    doc["active_edges"] = std::move(active);
    doc["legal_moves"] = to_vector(legal);
    doc["turn"] = over ? json(nullptr) : json(to_string(game.to_move()));
    doc["your_turn"] = !over && game.to_move() == config.human;
    doc["over"] = over;
    doc["phase"] = phase_label(phase);
    doc["turns"] = trace.turns();
    doc["potential"] = value(s);
    doc["ledger"] = {{"e_star", trace.e_star},
                     {"c_star", trace.c_star},
                     {"r_k", trace.r_k},
                     {"n_ell", trace.n_ell},
                     {"e0_star", trace.e0_star ? json(*trace.e0_star) : json(nullptr)}};
    doc["thresholds"] = thresholds_for(g.order(), config.start);
    doc["history"] = std::move(history);
    return doc.dump();
}

namespace {

struct Session {
    Session(std::shared_ptr<const Graph> forest, SessionConfig cfg)
        : config(cfg),
          game(forest, cfg.start, cfg.seed, to_string(cfg.staller)),
          staller(make_policy(cfg.staller), forest, cfg.seed) {}

    static StallerPolicy make_policy(StallerKind k) {
        switch (k) {
            case StallerKind::GreedyMin: return StallerPolicy::greedy_min();
            case StallerKind::Random: return StallerPolicy::random();
            case StallerKind::Worst: return StallerPolicy::worst_case();
            default: return StallerPolicy::optimal();
        }
    }

    GameSolver& solver() {
        if (!hint_solver) hint_solver = std::make_shared<GameSolver>(game.state().graph_ptr());
        return *hint_solver;
    }

    // Plays engine turns until the human is to move or the game is over.
    json advance() {
        json played = json::array();
        while (!game.over() && game.to_move() != config.human) {
            const Vertex v = game.to_move() == Player::Dominator ? game.strategy_move()
                                                                 : staller.choose(game);
            const TurnRecord& r = game.play(v);
            played.push_back({{"player", to_string(r.player)}, {"vertex", r.vertex},
                              {"gain", r.gain}, {"phase", phase_label(r.phase)}});
        }
        return played;
    }

    SessionConfig config;
    GameRecorder game;
    StallerDriver staller;
    std::shared_ptr<GameSolver> hint_solver;
    std::chrono::steady_clock::time_point last_active;
    mutable std::shared_mutex mutex;
};

}  // namespace

struct GameService::Impl {
    ServiceOptions options;
    mutable std::shared_mutex mutex;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions;

    std::shared_ptr<Session> find(const std::string& id) {
        std::shared_lock lock(mutex);
        const auto it = sessions.find(id);
        return it == sessions.end() ? nullptr : it->second;
    }
};

GameService::GameService(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = std::move(options);
}

GameService::~GameService() = default;

std::size_t GameService::session_count() const {
    std::shared_lock lock(impl_->mutex);
    return impl_->sessions.size();
}

std::size_t GameService::expire_idle() {
    const auto now = impl_->options.clock();
    std::unique_lock lock(impl_->mutex);
    return std::erase_if(impl_->sessions, [&](const auto& entry) {
        std::shared_lock session_lock(entry.second->mutex);
        return now - entry.second->last_active > impl_->options.idle_timeout;
    });
}

ServiceResponse GameService::create_game(std::string_view body) {
    expire_idle();
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        return failure(400, "MalformedBody", e.what());
    }
    std::shared_ptr<Session> session;
    std::string id;
    try {
        SessionConfig cfg;
        cfg.human = parse_side(doc, "human", Player::Staller);
        cfg.start = parse_side(doc, "start", Player::Dominator);
        cfg.staller = parse_policy(doc);
        cfg.seed = doc.value("seed", std::uint64_t{0});
        auto forest = std::make_shared<const Graph>(build_forest(doc));
        if (forest->order() > kMaxOrder) throw Error(ErrorCode::TooLarge, "n must be <= 64");
        if (!forest->is_forest()) throw Error(ErrorCode::NotAForest, "input has a cycle");
        if (forest->has_isolated_vertex()) {
            throw Error(ErrorCode::IsolatedVertexPresent, "input has an isolated vertex");
        }
        session = std::make_shared<Session>(forest, cfg);
        session->advance();
        session->last_active = impl_->options.clock();
        id = new_session_id();
    } catch (const json::exception& e) {
        return failure(400, "MalformedBody", e.what());
    } catch (const Error& e) {
        const bool syntax = e.code() == ErrorCode::MalformedLine;
        return failure(syntax ? 400 : 422, to_string(e.code()), e.what());
    }
    std::string view = render_view(id, session->config, session->game);
    {
        std::unique_lock lock(impl_->mutex);
        impl_->sessions.emplace(id, std::move(session));
    }
    return {201, view + "\n"};
}

ServiceResponse GameService::view(const std::string& id) {
    const auto session = impl_->find(id);
    if (!session) return failure(404, "UnknownSession", "no session " + id);
    std::shared_lock lock(session->mutex);
    return {200, render_view(id, session->config, session->game) + "\n"};
}

ServiceResponse GameService::move(const std::string& id, std::string_view body) {
    const auto session = impl_->find(id);
    if (!session) return failure(404, "UnknownSession", "no session " + id);
    Vertex v = -1;
    try {
        v = json::parse(body).at("vertex").get<Vertex>();
    } catch (const json::exception& e) {
        return failure(400, "MalformedBody", e.what());
    }
    std::unique_lock lock(session->mutex);
    session->last_active = impl_->options.clock();
    Session& s = *session;
    if (s.game.over() || s.game.to_move() != s.config.human) {
        return failure(409, "NotYourTurn", s.game.over() ? "game is over" : "engine to move");
    }
    if (v < 0 || v >= s.game.state().order() || !rules::is_legal(s.game.state().graph(),
                                                                 s.game.state().dominated(), v)) {
        return failure(422, "IllegalMove", "vertex " + std::to_string(v) + " is not a legal move");
    }
    const TurnRecord& r = s.game.play(v);
    json applied{{"player", to_string(r.player)}, {"vertex", r.vertex}, {"gain", r.gain},
                 {"phase", phase_label(r.phase)}};
    json replies = s.advance();
    json out;
    out["applied"] = std::move(applied);
    out["replies"] = std::move(replies);
    out["view"] = json::parse(render_view(id, s.config, s.game));
    return reply(200, out);
}

ServiceResponse GameService::hint(const std::string& id) {
    const auto session = impl_->find(id);
    if (!session) return failure(404, "UnknownSession", "no session " + id);
    std::unique_lock lock(session->mutex);
    session->last_active = impl_->options.clock();
    Session& s = *session;
    if (s.game.over() || s.game.to_move() != s.config.human) {
        return failure(409, "NotYourTurn", s.game.over() ? "game is over" : "engine to move");
    }
    try {
        const auto [vertex, remaining] =
            s.solver().best_reply(s.game.state().dominated(), s.config.human);
        json out{{"vertex", vertex}, {"remaining", remaining}, {"side", to_string(s.config.human)}};
        if (s.config.human == Player::Dominator) out["strategy_vertex"] = s.game.strategy_move();
        return reply(200, out);
    } catch (const Error& e) {
        return failure(422, to_string(e.code()), e.what());
    }
}

struct HttpServer::Impl {
    GameService& service;
    httplib::Server server;
    std::thread thread;

    explicit Impl(GameService& s) : service(s) {
        const auto send = [](httplib::Response& res, const ServiceResponse& r) {
            res.status = r.status;
            res.set_content(r.body, "application/json");
        };
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Headers", "Content-Type"},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
        server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
        });
        server.Post("/games", [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, service.create_game(req.body));
        });
        server.Get(R"(/games/([0-9a-f]+))",
                   [this, send](const httplib::Request& req, httplib::Response& res) {
                       send(res, service.view(req.matches[1]));
                   });
        server.Post(R"(/games/([0-9a-f]+)/moves)",
                    [this, send](const httplib::Request& req, httplib::Response& res) {
                        send(res, service.move(req.matches[1], req.body));
                    });
        server.Get(R"(/games/([0-9a-f]+)/hint)",
                   [this, send](const httplib::Request& req, httplib::Response& res) {
                       send(res, service.hint(req.matches[1]));
                   });
    }
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::start() {
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void HttpServer::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace domgame
