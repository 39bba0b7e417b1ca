#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "domgame/strategy.hpp"

namespace domgame {

/// JSON API behind the interactive board. Handlers return an HTTP status and
/// a JSON body so they can be exercised without a socket.
///
///   POST /games               {"edges": "<edge list>"} or
///                             {"generator": {"kind": "tree|forest|caterpillar|path|star",
///                                            "n": 7, "components": 2, "seed": 1}},
///                             plus optional "human" (default "staller"),
///                             "start" (default "dominator"),
///                             "staller_policy" (optimal|greedy|random|worst), "seed".
///   GET  /games/{id}          current view
///   POST /games/{id}/moves    {"vertex": 3}
///   GET  /games/{id}/hint     {"vertex", "remaining", "side"}
struct ServiceResponse {
    int status = 200;
    std::string body;
};

struct ServiceOptions {
    std::chrono::seconds idle_timeout{30 * 60};
    /// Time source; tests substitute a fake clock to exercise expiry.
    std::function<std::chrono::steady_clock::time_point()> clock = [] {
        return std::chrono::steady_clock::now();
    };
};

struct SessionConfig {
    Player human = Player::Staller;
    Player start = Player::Dominator;
    StallerKind staller = StallerKind::Optimal;
    std::uint64_t seed = 0;
};

/// The view document for a game position. Depends on nothing but its
/// arguments, so replaying a session's moves reproduces it exactly.
std::string render_view(const std::string& id, const SessionConfig& config,
                        const GameRecorder& game);

class GameService {
public:
    explicit GameService(ServiceOptions options = {});
    ~GameService();
    GameService(const GameService&) = delete;
    GameService& operator=(const GameService&) = delete;

    ServiceResponse create_game(std::string_view body);
    ServiceResponse view(const std::string& id);
    ServiceResponse move(const std::string& id, std::string_view body);
    ServiceResponse hint(const std::string& id);

    /// Drops sessions idle for longer than the timeout; returns how many.
    std::size_t expire_idle();
    std::size_t session_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// httplib front end for a GameService.
class HttpServer {
public:
    explicit HttpServer(GameService& service);
    ~HttpServer();

    /// Binds; port 0 picks a free one. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool listen();
    /// Runs listen() on a background thread.
    void start();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace domgame
