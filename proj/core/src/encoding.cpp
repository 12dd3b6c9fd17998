#include "greenroute/encoding.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace greenroute {

std::string encode(const Solution& sol, const Instance& inst) {
    std::string out;
    auto token = [&out](NodeId node, LevelId level) {
        if (!out.empty()) out += '-';
        out += std::to_string(node);
        out += ',';
        out += std::to_string(level);
    };
    for (const Route& route : sol.routes) {
        if (route.empty()) continue;
        token(route.front().node, route.size() > 1 ? route[1].speed_level : route.front().speed_level);
        for (std::size_t m = 1; m < route.size(); ++m) token(route[m].node, route[m].speed_level);
    }
    (void)inst;
    return out;
}

namespace {

int parse_field(std::string_view field, std::size_t token, const char* what) {
    if (field.empty()) throw DecodeError(token, std::string("empty ") + what);
    for (char c : field) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw DecodeError(token, std::string(what) + " is not a number: '" + std::string(field) + "'");
        }
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{}) throw DecodeError(token, std::string(what) + " out of range");
    return value;
}

}  // namespace

Solution decode(std::string_view text, const Instance& inst) {
    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.empty()) throw DecodeError(1, "empty solution string");

    std::vector<Visit> tokens;
    std::size_t begin = 0;
    while (true) {
        const std::size_t index = tokens.size() + 1;
        const std::size_t dash = compact.find('-', begin);
        const std::string_view tok =
            std::string_view(compact).substr(begin, dash == std::string::npos ? std::string::npos : dash - begin);
        const std::size_t comma = tok.find(',');
        if (comma == std::string_view::npos || tok.find(',', comma + 1) != std::string_view::npos) {
            throw DecodeError(index, "malformed token '" + std::string(tok) + "', expected node,level");
        }
        const int node = parse_field(tok.substr(0, comma), index, "node");
        const int level = parse_field(tok.substr(comma + 1), index, "level");
        if (node > inst.end_depot()) throw DecodeError(index, "unknown node id " + std::to_string(node));
        tokens.push_back({node, level});
        if (dash == std::string::npos) break;
        begin = dash + 1;
    }

    Solution sol;
    Route current;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        const Visit& v = tokens[t];
        const std::size_t index = t + 1;
        if (current.empty()) {
            if (v.node != 0) throw DecodeError(index, "route must start with depot 0");
            current.push_back(v);
            continue;
        }
        if (!inst.has_level(v.speed_level)) {
            throw DecodeError(index, "speed level " + std::to_string(v.speed_level) + " out of range");
        }
        if (v.node == 0) throw DecodeError(index, "route not terminated by depot " + std::to_string(inst.end_depot()));
        current.push_back(v);
        if (v.node == inst.end_depot()) {
            current.front().speed_level = current[1].speed_level;
            sol.routes.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        throw DecodeError(tokens.size(), "route not terminated by depot " + std::to_string(inst.end_depot()));
    }
    return sol;
}

}  // namespace greenroute
