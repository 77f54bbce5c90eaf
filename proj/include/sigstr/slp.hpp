// Straight-line grammar files materialized into collection handles.
//
// A file names its root with a `#start NAME` header; every other line is a
// production: `A -> B C` (two or more names, concatenated left to right),
// `A -> 'c'` (a single character), or `A -> B ^ k` (k copies of B, built by
// doubling). Equality of two files' derived strings is then one signature
// comparison, with nothing ever expanded to characters.
#pragma once

#include <stdexcept>
#include <string>

#include "sigstr/collection.hpp"

namespace sigstr {

struct SlpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Derives the start symbol's string; throws SlpError on malformed files,
// undefined names, cycles, or zero powers.
Handle build_slp(Store& st, const std::string& path);

bool slp_eq(Store& st, const std::string& path_a, const std::string& path_b);

}  // namespace sigstr
