// Micro-benchmark rows: per-operation wall time, signatures interned, and
// parse depth, across a range of string lengths. The interesting trend is
// that a concatenation of already-parsed strings interns a number of fresh
// signatures proportional to the logarithm of the result length, while its
// wall time stays far below re-parsing the result from scratch.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sigstr/collection.hpp"

namespace sigstr {

struct BenchRow {
  const char* op;          // "make", "concat" or "split"
  Len n;                   // length of the operation's result
  std::int64_t wall_ns;    // wall clock spent inside the single call
  std::uint64_t new_sigs;  // signatures the call interned
  int depth;               // parse depth (root level) of the result
};

// For each n in sizes, `repeats` times: parse two fresh random strings of
// length n/2 over an 8-letter alphabet, concatenate them, and split the
// result at a random point; one row per operation. Each size runs in a
// fresh store so rows are independent across sizes.
std::vector<BenchRow> bench_ops(const std::vector<Len>& sizes, int repeats,
                                std::uint64_t seed);

// Writes "op,n,wall_ns,new_sigs,depth" rows, header line first.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace sigstr
