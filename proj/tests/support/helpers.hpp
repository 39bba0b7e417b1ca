#pragma once

#include <initializer_list>
#include <memory>

#include "domgame/graph.hpp"
#include "domgame/residual.hpp"

namespace testing_support {

inline domgame::VertexSet set_of(std::initializer_list<domgame::Vertex> vs) {
    domgame::VertexSet s = 0;
    for (auto v : vs) s |= domgame::bit(v);
    return s;
}

inline std::shared_ptr<const domgame::Graph> shared(domgame::Graph g) {
    return std::make_shared<const domgame::Graph>(std::move(g));
}

inline domgame::ResidualState state_of(const domgame::Graph& g,
                                       std::initializer_list<domgame::Vertex> dominated) {
    return domgame::ResidualState(shared(g), set_of(dominated));
}

}  // namespace testing_support
