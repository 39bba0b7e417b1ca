#include "domgame/trace_io.hpp"

#include <json.hpp>
#include <sstream>

#include "domgame/error.hpp"

namespace domgame {

using json = nlohmann::ordered_json;

std::string phase_label(PhaseId p) { return "P" + std::to_string(phase_number(p)); }

std::string trace_to_text(const GameTrace& trace) {
    std::ostringstream out;
    out << "# n=" << trace.forest->order() << " first=" << to_string(trace.first)
        << " staller=" << trace.staller_policy << " seed=" << trace.seed << '\n';
    out << "# index player vertex gain phase e_i flags\n";
    for (const auto& r : trace.records) {
        out << r.index << ' ' << (r.player == Player::Dominator ? 'D' : 'S') << ' ' << r.vertex
            << ' ' << r.gain << ' ' << phase_label(r.phase) << " e=";
        if (r.phase == PhaseId::Phase1) {
            out << r.e_i;
        } else {
            out << '-';
        }
        if (r.critical) out << " critical";
        out << '\n';
    }
    out << "# turns=" << trace.turns() << " e*=" << trace.e_star << " c*=" << trace.c_star
        << " r_k=" << trace.r_k << " n_ell=" << trace.n_ell;
    if (trace.e0_star) out << " e0*=" << *trace.e0_star;
    out << " decrease=";
    for (int p = 0; p < kPhaseCount; ++p) {
        out << (p ? "," : "") << trace.per_phase_decrease[p];
    }
    out << '\n';
    return out.str();
}

std::string trace_to_json(const GameTrace& trace) {
    json doc;
    doc["n"] = trace.forest->order();
    json edges = json::array();
    for (const auto& [u, v] : trace.forest->edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);
    doc["first"] = to_string(trace.first);
    doc["seed"] = trace.seed;
    doc["staller_policy"] = trace.staller_policy;
    json records = json::array();
    for (const auto& r : trace.records) {
        records.push_back({{"index", r.index},
                           {"player", to_string(r.player)},
                           {"vertex", r.vertex},
                           {"gain", r.gain},
                           {"newly_red", r.newly_red},
                           {"phase", phase_number(r.phase)},
                           {"e_i", r.e_i},
                           {"critical", r.critical}});
    }
    doc["records"] = std::move(records);
    doc["states"] = trace.states;
    doc["e_star"] = trace.e_star;
    doc["c_star"] = trace.c_star;
    doc["r_k"] = trace.r_k;
    doc["n_ell"] = trace.n_ell;
    doc["e0_star"] = trace.e0_star ? json(*trace.e0_star) : json(nullptr);
    doc["r0"] = trace.r0;
    doc["b0"] = trace.b0;
    doc["per_phase_decrease"] = trace.per_phase_decrease;
    doc["phase1_end"] = trace.phase1_end;
    doc["phase3_start"] = trace.phase3_start ? json(*trace.phase3_start) : json(nullptr);
    doc["complete"] = trace.complete;
    return doc.dump(2) + "\n";
}

namespace {

Player parse_player(const std::string& s) {
    if (s == "dominator") return Player::Dominator;
    if (s == "staller") return Player::Staller;
    throw Error(ErrorCode::MalformedLine, "unknown player " + s);
}

}  // namespace

GameTrace trace_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedLine, e.what());
    }
    try {
        GameTrace t;
        std::vector<Edge> edges;
        for (const auto& e : doc.at("edges")) edges.emplace_back(e.at(0), e.at(1));
        t.forest = std::make_shared<const Graph>(doc.at("n").get<int>(), std::move(edges));
        t.first = parse_player(doc.at("first"));
        t.seed = doc.at("seed");
        t.staller_policy = doc.at("staller_policy");
        for (const auto& r : doc.at("records")) {
            TurnRecord rec;
            rec.index = r.at("index");
            rec.player = parse_player(r.at("player"));
            rec.vertex = r.at("vertex");
            rec.gain = r.at("gain");
            rec.newly_red = r.at("newly_red");
            rec.phase = phase_from_number(r.at("phase").get<int>());
            rec.e_i = r.at("e_i");
            rec.critical = r.at("critical");
            t.records.push_back(rec);
        }
        t.states = doc.at("states").get<std::vector<VertexSet>>();
        t.e_star = doc.at("e_star");
        t.c_star = doc.at("c_star");
        t.r_k = doc.at("r_k");
        t.n_ell = doc.at("n_ell");
        if (!doc.at("e0_star").is_null()) t.e0_star = doc.at("e0_star").get<int>();
        t.r0 = doc.at("r0");
        t.b0 = doc.at("b0");
        t.per_phase_decrease = doc.at("per_phase_decrease");
        t.phase1_end = doc.at("phase1_end");
        if (!doc.at("phase3_start").is_null()) {
            t.phase3_start = doc.at("phase3_start").get<std::size_t>();
        }
        t.complete = doc.at("complete");
        if (t.states.size() != t.records.size() + 1) {
            throw Error(ErrorCode::MalformedLine, "states must outnumber records by one");
        }
        return t;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedLine, e.what());
    }
}

}  // namespace domgame
