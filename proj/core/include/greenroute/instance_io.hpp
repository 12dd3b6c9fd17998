#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "greenroute/model.hpp"

namespace greenroute {

// Instance file: plain text with `[meta]`, `[levels]`, `[nodes]` and the
// optional `[distances]` / `[alpha]` matrix sections. `#` starts a comment.
//
//   [meta]      key value          (n, fleet_size, vehicle_weight, capacity,
//                                   fuel_cost, emission_cost, beta, alpha,
//                                   delta1, delta2)
//   [levels]    id lower avg upper bracket_start bracket_end
//   [nodes]     id x y demand service tw_open tw_close
//   [distances] n+2 rows of n+2 values
//   [alpha]     n+2 rows of n+2 values
//
// Without `[distances]` the matrix is Euclidean over the coordinates. Without
// `[alpha]` the scalar meta value is broadcast to every edge.

Instance read_instance(std::istream& in);
Instance load_instance(const std::filesystem::path& path);

/// Writes every value with the shortest round-trip representation, so
/// read_instance(write_instance(x)) == x.
void write_instance(std::ostream& out, const Instance& inst);
void save_instance(const std::filesystem::path& path, const Instance& inst);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Solution file: the encoded string on the first line, then `key=value`
/// lines. `objective` is always present; solvers add `status` and others.
struct SolutionFile {
    std::string encoded;
    std::map<std::string, std::string> fields;
};

SolutionFile read_solution_file(std::istream& in);
SolutionFile load_solution_file(const std::filesystem::path& path);
void write_solution_file(std::ostream& out, const SolutionFile& file);
void save_solution_file(const std::filesystem::path& path, const SolutionFile& file);

}  // namespace greenroute
