#include "sigstr/bench.hpp"

#include <chrono>
#include <ostream>
#include <string>

#include "sigstr/rng.hpp"

namespace sigstr {

namespace {

std::string random_text(Rng& rng, Len n) {
  std::string s(n, 'a');
  for (Len i = 0; i < n; ++i) s[i] = char('a' + rng.below(8));
  return s;
}

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::vector<BenchRow> bench_ops(const std::vector<Len>& sizes, int repeats,
                                std::uint64_t seed) {
  std::vector<BenchRow> rows;
  for (Len n : sizes) {
    Store st(splitmix64(seed ^ n), Config{});
    Rng rng(splitmix64(seed ^ n ^ 0x5eedu));
    Grammar& g = st.grammar();
    auto timed = [&](const char* op, auto&& f) {
      std::uint64_t before = g.size();
      std::int64_t t0 = now_ns();
      Handle h = f();
      std::int64_t t1 = now_ns();
      rows.push_back({op, st.length(h), t1 - t0, g.size() - before,
                      g.level(st.sig(h))});
      return h;
    };
    for (int rep = 0; rep < repeats; ++rep) {
      std::string s1 = random_text(rng, n / 2);
      std::string s2 = random_text(rng, n - n / 2);
      Handle a = timed("make", [&] { return st.make_string(s1); });
      Handle b = timed("make", [&] { return st.make_string(s2); });
      Handle c = timed("concat", [&] { return st.concat(a, b); });
      Len k = 1 + rng.below(n - 1);
      std::uint64_t before = g.size();
      std::int64_t t0 = now_ns();
      auto parts = st.split(c, k);
      std::int64_t t1 = now_ns();
      int d = std::max(g.level(st.sig(parts.first)),
                       g.level(st.sig(parts.second)));
      rows.push_back({"split", n, t1 - t0, g.size() - before, d});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "op,n,wall_ns,new_sigs,depth\n";
  for (const BenchRow& r : rows)
    out << r.op << ',' << r.n << ',' << r.wall_ns << ',' << r.new_sigs << ','
        << r.depth << '\n';
}

}  // namespace sigstr
