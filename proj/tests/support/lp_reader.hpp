#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenroute::testing {

struct LpRow {
    std::string name;
    std::map<std::string, double> coef;
    std::string sense;
    double rhs = 0.0;
};

struct LpModel {
    std::map<std::string, double> objective;
    std::vector<LpRow> rows;
    std::set<std::string> bounded;
    std::set<std::string> binaries;

    const LpRow* row(const std::string& name) const {
        for (const auto& r : rows) {
            if (r.name == name) return &r;
        }
        return nullptr;
    }
};

/// Just enough of the CPLEX LP grammar to read back what export_milp writes.
inline LpModel read_lp(const std::string& text) {
    LpModel model;
    std::istringstream in(text);
    std::string line, section, pending;

    auto parse_terms = [](const std::string& body, std::map<std::string, double>& out) {
        std::istringstream ts(body);
        std::string tok;
        double sign = 1.0, coef = 1.0;
        bool have_coef = false;
        while (ts >> tok) {
            if (tok == "+" || tok == "-") {
                sign = tok == "-" ? -1.0 : 1.0;
                continue;
            }
            const char c = tok[0];
            if ((c >= '0' && c <= '9') || c == '.') {
                coef = std::stod(tok);
                have_coef = true;
                continue;
            }
            out[tok] += sign * (have_coef ? coef : 1.0);
            sign = 1.0;
            coef = 1.0;
            have_coef = false;
        }
    };

    auto flush_row = [&](const std::string& full) {
        const auto colon = full.find(':');
        if (colon == std::string::npos) throw std::runtime_error("row without name: " + full);
        LpRow row;
        row.name = full.substr(0, colon);
        row.name.erase(0, row.name.find_first_not_of(' '));
        std::string body = full.substr(colon + 1);
        for (const char* sense : {"<=", ">=", "="}) {
            const auto pos = body.rfind(std::string(" ") + sense + " ");
            if (pos == std::string::npos) continue;
            row.sense = sense;
            row.rhs = std::stod(body.substr(pos + std::string(sense).size() + 2));
            body = body.substr(0, pos);
            break;
        }
        if (row.sense.empty()) throw std::runtime_error("row without sense: " + full);
        parse_terms(body, row.coef);
        model.rows.push_back(std::move(row));
    };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line[0] != ' ') {
            section = line;
            continue;
        }
        if (section == "Minimize") {
            const auto colon = line.find(':');
            parse_terms(colon == std::string::npos ? line : line.substr(colon + 1), model.objective);
        } else if (section == "Subject To") {
            pending += line;
            if (pending.find(" <= ") != std::string::npos || pending.find(" >= ") != std::string::npos ||
                pending.find(" = ") != std::string::npos) {
                flush_row(pending);
                pending.clear();
            }
        } else if (section == "Bounds") {
            std::istringstream ts(line);
            std::string var;
            ts >> var;
            model.bounded.insert(var);
        } else if (section == "Binaries") {
            std::istringstream ts(line);
            std::string var;
            ts >> var;
            model.binaries.insert(var);
        }
    }
    return model;
}

}  // namespace greenroute::testing
