#include "greenroute/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace greenroute {

namespace {

std::string strip(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& token, int line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) fail(line_no, "not a number: '" + token + "'");
    return value;
}

std::vector<double> parse_row(const std::string& line, int line_no) {
    std::istringstream is(line);
    std::vector<double> out;
    std::string token;
    while (is >> token) out.push_back(parse_number(token, line_no));
    return out;
}

int as_int(double v, int line_no, const char* what) {
    if (v != static_cast<double>(static_cast<int>(v))) fail(line_no, std::string(what) + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Instance read_instance(std::istream& in) {
    Instance inst;
    std::map<std::string, std::pair<double, int>> meta;
    std::vector<std::vector<double>> dist_rows;
    std::vector<std::vector<double>> alpha_rows;
    std::string section;
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "meta" && section != "levels" && section != "nodes" && section != "distances" &&
                section != "alpha") {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        if (section.empty()) fail(line_no, "data before any section header");

        if (section == "meta") {
            std::istringstream is(line);
            std::string key, value, extra;
            if (!(is >> key >> value) || (is >> extra)) fail(line_no, "expected 'key value'");
            meta[key] = {parse_number(value, line_no), line_no};
        } else if (section == "levels") {
            const auto row = parse_row(line, line_no);
            if (row.size() != 6) fail(line_no, "level needs: id lower avg upper bracket_start bracket_end");
            inst.speed_levels.push_back({as_int(row[0], line_no, "level id"), row[1], row[2], row[3], row[4], row[5]});
        } else if (section == "nodes") {
            const auto row = parse_row(line, line_no);
            if (row.size() != 7) fail(line_no, "node needs: id x y demand service tw_open tw_close");
            inst.nodes.push_back({as_int(row[0], line_no, "node id"), row[1], row[2], row[3], row[4], row[5], row[6]});
        } else if (section == "distances") {
            dist_rows.push_back(parse_row(line, line_no));
        } else {
            alpha_rows.push_back(parse_row(line, line_no));
        }
    }

    auto require = [&](const std::string& key) -> double {
        auto it = meta.find(key);
        if (it == meta.end()) throw InputError("[meta] is missing '" + key + "'");
        return it->second.first;
    };
    auto optional = [&](const std::string& key, double fallback) {
        auto it = meta.find(key);
        return it == meta.end() ? fallback : it->second.first;
    };
    for (const auto& [key, entry] : meta) {
        static const char* known[] = {"n",    "fleet_size", "vehicle_weight", "capacity", "fuel_cost",
                                      "emission_cost", "beta", "alpha", "delta1", "delta2"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            fail(entry.second, "unknown [meta] key '" + key + "'");
        }
    }

    const int n = as_int(require("n"), meta["n"].second, "n");
    if (n < 0) throw InputError("n must be nonnegative");
    if (inst.nodes.size() != static_cast<std::size_t>(n) + 2) {
        throw InputError("[nodes] lists " + std::to_string(inst.nodes.size()) + " nodes, expected n+2 = " +
                         std::to_string(n + 2));
    }
    inst.fleet_size = as_int(require("fleet_size"), meta["fleet_size"].second, "fleet_size");
    inst.vehicle_weight = require("vehicle_weight");
    inst.capacity = require("capacity");
    inst.fuel_cost = require("fuel_cost");
    inst.emission_cost = require("emission_cost");
    inst.beta = require("beta");
    inst.delta1 = optional("delta1", 1.0);
    inst.delta2 = optional("delta2", 0.0);

    const std::size_t size = inst.nodes.size();
    auto to_matrix = [size](const std::vector<std::vector<double>>& rows, const char* name) {
        if (rows.size() != size) {
            throw InputError(std::string("[") + name + "] needs " + std::to_string(size) + " rows");
        }
        Matrix m(size);
        for (std::size_t i = 0; i < size; ++i) {
            if (rows[i].size() != size) {
                throw InputError(std::string("[") + name + "] row " + std::to_string(i) + " needs " +
                                 std::to_string(size) + " values");
            }
            for (std::size_t j = 0; j < size; ++j) m(i, j) = rows[i][j];
        }
        return m;
    };

    inst.distances = dist_rows.empty() ? euclidean_distances(inst.nodes) : to_matrix(dist_rows, "distances");
    if (alpha_rows.empty()) {
        inst.alpha = Matrix(size, require("alpha"));
        for (std::size_t i = 0; i < size; ++i) inst.alpha(i, i) = 0.0;
    } else {
        inst.alpha = to_matrix(alpha_rows, "alpha");
    }
    validate(inst);
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open instance file " + path.string());
    try {
        return read_instance(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_instance(std::ostream& out, const Instance& inst) {
    const std::size_t size = inst.nodes.size();
    const auto f = format_double;

    // Scalar alpha when every edge shares one value.
    bool uniform_alpha = size > 1;
    const double alpha0 = size > 1 ? inst.alpha(0, 1) : 1.0;
    for (std::size_t i = 0; i < size && uniform_alpha; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            if (i != j && inst.alpha(i, j) != alpha0) {
                uniform_alpha = false;
                break;
            }
        }
        if (inst.alpha(i, i) != 0.0) uniform_alpha = false;
    }
    const bool euclidean = inst.distances == euclidean_distances(inst.nodes);

    out << "[meta]\n";
    out << "n " << inst.customers() << "\n";
    out << "fleet_size " << inst.fleet_size << "\n";
    out << "vehicle_weight " << f(inst.vehicle_weight) << "\n";
    out << "capacity " << f(inst.capacity) << "\n";
    out << "fuel_cost " << f(inst.fuel_cost) << "\n";
    out << "emission_cost " << f(inst.emission_cost) << "\n";
    out << "beta " << f(inst.beta) << "\n";
    out << "alpha " << f(alpha0) << "\n";
    out << "delta1 " << f(inst.delta1) << "\n";
    out << "delta2 " << f(inst.delta2) << "\n";

    out << "\n[levels]\n# id lower avg upper bracket_start bracket_end\n";
    for (const auto& l : inst.speed_levels) {
        out << l.id << ' ' << f(l.lower) << ' ' << f(l.avg) << ' ' << f(l.upper) << ' ' << f(l.bracket_start) << ' '
            << f(l.bracket_end) << "\n";
    }

    out << "\n[nodes]\n# id x y demand service tw_open tw_close\n";
    for (const auto& nd : inst.nodes) {
        out << nd.id << ' ' << f(nd.x) << ' ' << f(nd.y) << ' ' << f(nd.demand) << ' ' << f(nd.service) << ' '
            << f(nd.tw_open) << ' ' << f(nd.tw_close) << "\n";
    }

    auto write_matrix = [&](const char* name, const Matrix& m) {
        out << "\n[" << name << "]\n";
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = 0; j < size; ++j) out << (j ? " " : "") << f(m(i, j));
            out << "\n";
        }
    };
    if (!euclidean) write_matrix("distances", inst.distances);
    if (!uniform_alpha) write_matrix("alpha", inst.alpha);
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write instance file " + path.string());
    write_instance(out, inst);
    if (!out) throw std::ios_base::failure("failed writing instance file " + path.string());
}

SolutionFile read_solution_file(std::istream& in) {
    SolutionFile file;
    std::string raw;
    int line_no = 0;
    bool have_string = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (!have_string) {
            file.encoded = line;
            have_string = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key=value");
        file.fields[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (!have_string) throw InputError("solution file has no solution string");
    return file;
}

SolutionFile load_solution_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open solution file " + path.string());
    return read_solution_file(in);
}

void write_solution_file(std::ostream& out, const SolutionFile& file) {
    out << file.encoded << "\n";
    if (auto it = file.fields.find("objective"); it != file.fields.end()) out << "objective=" << it->second << "\n";
    for (const auto& [key, value] : file.fields) {
        if (key != "objective") out << key << "=" << value << "\n";
    }
}

void save_solution_file(const std::filesystem::path& path, const SolutionFile& file) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write solution file " + path.string());
    write_solution_file(out, file);
}

}  // namespace greenroute
