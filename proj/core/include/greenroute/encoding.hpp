#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "greenroute/model.hpp"

namespace greenroute {

/// Decode failure carrying the 1-based index of the offending token.
class DecodeError : public InputError {
 public:
    DecodeError(std::size_t token, const std::string& what)
        : InputError("token " + std::to_string(token) + ": " + what), token_(token) {}

    std::size_t token() const { return token_; }

 private:
    std::size_t token_;
};

// Flat solution string: hyphen-separated "node,level" tokens, routes laid
// end to end, each opened by node 0 and closed by node n+1. A token's level
// belongs to the edge arriving at that node; the opening depot token repeats
// the level of the route's first edge.
//
//   token  := digits "," digits
//   string := token ("-" token)*

std::string encode(const Solution& sol, const Instance& inst);

/// Whitespace anywhere in `text` is ignored.
Solution decode(std::string_view text, const Instance& inst);

}  // namespace greenroute
