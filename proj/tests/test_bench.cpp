// The benchmark harness itself must be trustworthy: rows deterministic under
// a fixed seed, counts consistent, and the headline trend (concatenation
// interns logarithmically few signatures once operands are parsed) visible.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sigstr/bench.hpp"

using namespace sigstr;

TEST_CASE("row inventory and shape") {
  std::vector<Len> sizes = {256, 1024};
  auto rows = bench_ops(sizes, 3, 42);
  REQUIRE(rows.size() == sizes.size() * 3 * 4);
  std::size_t i = 0;
  for (Len n : sizes) {
    for (int rep = 0; rep < 3; ++rep) {
      CHECK(rows[i].op == std::string("make"));
      CHECK(rows[i].n == n / 2);
      ++i;
      CHECK(rows[i].op == std::string("make"));
      CHECK(rows[i].n == n - n / 2);
      ++i;
      CHECK(rows[i].op == std::string("concat"));
      CHECK(rows[i].n == n);
      ++i;
      CHECK(rows[i].op == std::string("split"));
      CHECK(rows[i].n == n);
      ++i;
    }
  }
  for (const BenchRow& r : rows) {
    CHECK(r.wall_ns >= 0);
    CHECK(r.depth > 0);
  }
}

TEST_CASE("deterministic apart from wall time") {
  auto a = bench_ops({512}, 4, 7);
  auto b = bench_ops({512}, 4, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::string(a[i].op) == b[i].op);
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].new_sigs == b[i].new_sigs);
    CHECK(a[i].depth == b[i].depth);
  }
}

TEST_CASE("concat interns far fewer signatures than parsing from scratch") {
  auto rows = bench_ops({4096}, 5, 9);
  double make_mean = 0, concat_mean = 0;
  int makes = 0, concats = 0;
  for (const BenchRow& r : rows) {
    if (r.op == std::string("make")) make_mean += double(r.new_sigs), ++makes;
    if (r.op == std::string("concat"))
      concat_mean += double(r.new_sigs), ++concats;
  }
  make_mean /= makes;
  concat_mean /= concats;
  CHECK(make_mean > 512);       // parsing 2048 fresh chars interns plenty
  CHECK(concat_mean < 400);     // joining two parsed halves interns few
  CHECK(concat_mean * 4 < make_mean);
}

TEST_CASE("csv format") {
  auto rows = bench_ops({64}, 1, 3);
  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "op,n,wall_ns,new_sigs,depth");
  std::size_t cnt = 0;
  while (std::getline(is, line)) {
    ++cnt;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(cnt == rows.size());
}
