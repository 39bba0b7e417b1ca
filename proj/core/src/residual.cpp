#include "domgame/residual.hpp"

#include <algorithm>
#include <sstream>

#include "domgame/error.hpp"

namespace domgame {

namespace rules {

VertexSet red_set(const Graph& g, VertexSet dominated) {
    VertexSet red = 0;
    for_each_vertex(dominated, [&](Vertex v) {
        if ((g.closed_neighborhood(v) & ~dominated) == 0) red |= bit(v);
    });
    return red;
}

int potential(const Graph& g, VertexSet dominated) {
    const int d = count(dominated);
    return 3 * g.order() - d - 2 * count(red_set(g, dominated));
}

VertexSet legal_moves(const Graph& g, VertexSet dominated) {
    VertexSet legal = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (is_legal(g, dominated, v)) legal |= bit(v);
    }
    return legal;
}

VertexSet second_neighborhood(const Graph& g, Vertex v) {
    VertexSet out = 0;
    for_each_vertex(g.closed_neighborhood(v), [&](Vertex u) { out |= g.closed_neighborhood(u); });
    return out;
}

int newly_red(const Graph& g, VertexSet dominated, Vertex v) {
    const VertexSet after = dominated | g.closed_neighborhood(v);
    int fresh = 0;
    for_each_vertex(second_neighborhood(g, v), [&](Vertex u) {
        const VertexSet nu = g.closed_neighborhood(u);
        if ((nu & ~after) == 0 && (nu & ~dominated) != 0) ++fresh;
    });
    return fresh;
}

}  // namespace rules

ResidualState::ResidualState(std::shared_ptr<const Graph> graph, VertexSet dominated,
                             int move_count)
    : graph_(std::move(graph)), dominated_(dominated), move_count_(move_count) {
    if (!graph_->fits_mask()) {
        throw Error(ErrorCode::TooLarge, "n=" + std::to_string(graph_->order()) + " exceeds 64");
    }
    dominated_ &= graph_->all();
    red_ = rules::red_set(*graph_, dominated_);
}

Color ResidualState::color(Vertex v) const {
    if (!contains(dominated_, v)) return Color::White;
    return contains(red_, v) ? Color::Red : Color::Blue;
}

std::vector<Color> ResidualState::colors() const {
    std::vector<Color> out(order());
    for (Vertex v = 0; v < order(); ++v) out[v] = color(v);
    return out;
}

VertexSet ResidualState::residual_neighbors(Vertex v) const {
    if (contains(red_, v)) return 0;
    VertexSet nb = graph_->open_neighborhood(v) & ~red_;
    if (contains(dominated_, v)) nb &= ~dominated_;  // blue: white neighbours only
    return nb;
}

std::vector<Edge> ResidualState::active_edges() const {
    std::vector<Edge> out;
    for (const auto& [u, v] : graph_->edges()) {
        if (contains(residual_neighbors(u), v)) out.emplace_back(u, v);
    }
    return out;
}

std::vector<VertexSet> ResidualState::components() const {
    std::vector<VertexSet> out;
    VertexSet left = active();
    while (left != 0) {
        VertexSet comp = bit(std::countr_zero(left));
        VertexSet frontier = comp;
        while (frontier != 0) {
            VertexSet next = 0;
            for_each_vertex(frontier, [&](Vertex v) { next |= residual_neighbors(v); });
            frontier = next & ~comp;
            comp |= next;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

ResidualState init_state(std::shared_ptr<const Graph> graph, bool allow_isolated) {
    if (!graph->fits_mask()) {
        throw Error(ErrorCode::TooLarge, "n=" + std::to_string(graph->order()) + " exceeds 64");
    }
    if (!allow_isolated && graph->has_isolated_vertex()) {
        throw Error(ErrorCode::IsolatedVertexPresent, "the game needs an isolate-free graph");
    }
    return ResidualState(std::move(graph), 0, 0);
}

ResidualState init_state(const Graph& graph, bool allow_isolated) {
    return init_state(std::make_shared<const Graph>(graph), allow_isolated);
}

VertexSet legal_moves(const ResidualState& s) {
    return rules::legal_moves(s.graph(), s.dominated());
}

MoveOutcome gain_of(const ResidualState& s, Vertex v) {
    const Graph& g = s.graph();
    if (v < 0 || v >= g.order() || !rules::is_legal(g, s.dominated(), v)) {
        throw Error(ErrorCode::IllegalMove, "vertex " + std::to_string(v));
    }
    const VertexSet after = s.dominated() | g.closed_neighborhood(v);
    MoveOutcome out;
    out.played = v;
    for_each_vertex(rules::second_neighborhood(g, v), [&](Vertex u) {
        const Color from = s.color(u);
        Color to = Color::Red;
        if (!contains(after, u)) {
            to = Color::White;
        } else if ((g.closed_neighborhood(u) & ~after) != 0) {
            to = Color::Blue;
        }
        if (from != to) {
            out.transitions.push_back({u, from, to});
            out.gain += point_value(from) - point_value(to);
            if (to == Color::Red) ++out.newly_red;
        }
    });
    return out;
}

std::pair<ResidualState, MoveOutcome> apply_move(const ResidualState& s, Vertex v) {
    MoveOutcome outcome = gain_of(s, v);
    ResidualState next(s.graph_ptr(), s.dominated() | s.graph().closed_neighborhood(v),
                       s.move_count() + 1);
    return {std::move(next), std::move(outcome)};
}

std::vector<WhiteComponent> white_components(const ResidualState& s) {
    const Graph& g = s.graph();
    const VertexSet white = s.white();
    std::vector<WhiteComponent> out;
    VertexSet left = white;
    while (left != 0) {
        VertexSet comp = bit(std::countr_zero(left));
        VertexSet frontier = comp;
        while (frontier != 0) {
            VertexSet next = 0;
            for_each_vertex(frontier, [&](Vertex v) { next |= g.open_neighborhood(v) & white; });
            frontier = next & ~comp;
            comp |= next;
        }
        left &= ~comp;
        const int size = count(comp);
        const auto kind = size == 1   ? WhiteComponent::Kind::SingleW
                          : size == 2 ? WhiteComponent::Kind::WPair
                                      : WhiteComponent::Kind::Larger;
        out.push_back({kind, to_vector(comp)});
    }
    return out;
}

namespace {

// White residual leaves hanging off white vertex a, other than `exclude`.
VertexSet white_leaves_at(const ResidualState& s, Vertex a, Vertex exclude) {
    VertexSet out = 0;
    for_each_vertex(s.residual_neighbors(a) & s.white() & ~bit(exclude), [&](Vertex x) {
        if (s.is_residual_leaf(x)) out |= bit(x);
    });
    return out;
}

}  // namespace

std::vector<CriticalPath> detect_critical_p5(const ResidualState& s) {
    std::vector<CriticalPath> out;
    const VertexSet white = s.white();
    for_each_vertex(s.blue(), [&](Vertex c) {
        const auto stems = to_vector(s.residual_neighbors(c) & white);
        for (std::size_t i = 0; i < stems.size(); ++i) {
            for (std::size_t j = i + 1; j < stems.size(); ++j) {
                const Vertex a = stems[i];
                const Vertex b = stems[j];
                for (Vertex x : to_vector(white_leaves_at(s, a, c))) {
                    for (Vertex y : to_vector(white_leaves_at(s, b, c))) {
                        CriticalPath p{{x, a, c, b, y}, c};
                        if (y < x) p.path = {y, b, c, a, x};
                        out.push_back(p);
                    }
                }
            }
        }
    });
    std::sort(out.begin(), out.end(),
              [](const CriticalPath& l, const CriticalPath& r) { return l.path < r.path; });
    return out;
}

VertexSet white_stems_with_white_leaf(const ResidualState& s) {
    VertexSet out = 0;
    for_each_vertex(s.white(), [&](Vertex v) {
        if (white_leaves_at(s, v, v) != 0) out |= bit(v);
    });
    return out;
}

StructureReport structure_report(const ResidualState& s) {
    StructureReport r;
    const VertexSet blue = s.blue();
    for_each_vertex(blue, [&](Vertex v) {
        const int d = s.residual_degree(v);
        r.blue_degrees.emplace_back(v, d);
        r.max_blue_degree = std::max(r.max_blue_degree, d);
        if (d == 1) r.blue_leaves |= bit(v);
    });
    for (const VertexSet comp : s.components()) {
        ComponentInfo info;
        info.vertices = comp;
        info.order = count(comp);
        info.blue_leaves = comp & r.blue_leaves;
        if (info.order == 3 && count(comp & blue) == 2 && info.blue_leaves == (comp & blue)) {
            info.bwb = true;
        }
        info.bw_pair = info.order == 2 && count(comp & blue) == 1;
        r.components.push_back(info);
    }
    for (const auto& wc : white_components(s)) {
        VertexSet members = 0;
        for (Vertex v : wc.vertices) members |= bit(v);
        switch (wc.kind) {
            case WhiteComponent::Kind::SingleW: r.single_white |= members; break;
            case WhiteComponent::Kind::WPair: r.white_pair_members |= members; break;
            case WhiteComponent::Kind::Larger: r.larger_white |= members; break;
        }
    }
    for_each_vertex(r.single_white, [&](Vertex v) {
        if ((s.residual_neighbors(v) & r.blue_leaves) != 0) r.single_white_with_blue_leaf |= bit(v);
    });
    return r;
}

std::string to_snapshot(const ResidualState& s) {
    std::string out = to_edge_list(s.graph());
    out += "colors ";
    for (Vertex v = 0; v < s.order(); ++v) out += color_letter(s.color(v));
    out += "\nmoves " + std::to_string(s.move_count()) + "\n";
    return out;
}

ResidualState parse_snapshot(std::string_view text) {
    std::string graph_part;
    std::string letters;
    int moves = 0;
    bool have_colors = false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("colors", 0) == 0) {
            std::istringstream fields(line.substr(6));
            fields >> letters;
            have_colors = true;
        } else if (line.rfind("moves", 0) == 0) {
            moves = std::stoi(line.substr(5));
        } else {
            graph_part += line;
            graph_part += '\n';
        }
    }
    auto parsed = parse_edge_list(graph_part, {.allow_cycles = true});
    auto graph = std::make_shared<const Graph>(std::move(parsed.graph));
    if (!have_colors || static_cast<int>(letters.size()) != graph->order()) {
        throw Error(ErrorCode::MalformedLine, "snapshot needs one colour letter per vertex");
    }
    VertexSet dominated = 0;
    for (Vertex v = 0; v < graph->order(); ++v) {
        const char c = letters[v];
        if (c != 'W' && c != 'B' && c != 'R') {
            throw Error(ErrorCode::MalformedLine, std::string("bad colour letter ") + c);
        }
        if (c != 'W') dominated |= bit(v);
    }
    ResidualState s(graph, dominated, moves);
    for (Vertex v = 0; v < graph->order(); ++v) {
        if (color_letter(s.color(v)) != letters[v]) {
            throw Error(ErrorCode::PreconditionNotMet,
                        "colour of vertex " + std::to_string(v) + " contradicts the dominated set");
        }
    }
    return s;
}

}  // namespace domgame
