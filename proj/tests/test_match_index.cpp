// Pattern matching over an activatable subset, checked against naive scans.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigstr/collection.hpp"
#include "sigstr/match_index.hpp"
#include "sigstr/rng.hpp"

using namespace sigstr;

namespace {

using Occ = std::vector<std::pair<Handle, Len>>;

// Scans every active string directly; positions are 1-based.
Occ naive_find(const std::map<Handle, std::string>& active,
               const std::string& p) {
  Occ out;
  for (const auto& [h, text] : active) {
    if (p.empty() || p.size() > text.size()) continue;
    for (std::size_t i = 0; i + p.size() <= text.size(); ++i)
      if (text.compare(i, p.size(), p) == 0) out.push_back({h, Len(i + 1)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string random_text(Rng& rng, std::size_t len, int sigma) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i)
    s.push_back(char('a' + rng.below(std::uint64_t(sigma))));
  return s;
}

void check_pattern(MatchIndex& mi, const std::map<Handle, std::string>& active,
                   const std::string& p) {
  CAPTURE(p);
  Occ got = mi.find(p);
  Occ want = naive_find(active, p);
  CHECK(got == want);
  if (want.size() > 2) {
    Occ head = mi.find(p, want.size() - 1);
    Occ trunc(want.begin(), want.end() - 1);
    CHECK(head == trunc);
  }
}

}  // namespace

TEST_CASE("single string, fixed patterns") {
  Store col(11, Config{});
  MatchIndex mi(col);
  Handle h = col.make_string("banana");
  mi.activate(h);
  std::map<Handle, std::string> active{{h, "banana"}};
  for (const char* p :
       {"a", "b", "n", "x", "an", "na", "ba", "ana", "nan", "ban", "nana",
        "anana", "banana", "bananax", "aa", "bb"})
    check_pattern(mi, active, p);
  CHECK(mi.find("").empty());
  mi.deactivate(h);
  CHECK(mi.find("ana").empty());
  CHECK(mi.find("a").empty());
}

TEST_CASE("several strings with shared structure") {
  Store col(12, Config{});
  MatchIndex mi(col);
  std::map<Handle, std::string> active;
  for (const char* t : {"banana", "ananas", "nana", "bandana"}) {
    Handle h = col.make_string(t);
    mi.activate(h);
    active[h] = t;
  }
  for (const char* p : {"a", "s", "d", "an", "na", "as", "ana", "nan", "and",
                        "anas", "nana", "banan", "bandana", "q"})
    check_pattern(mi, active, p);

  SUBCASE("deactivation narrows results") {
    auto it = active.begin();
    Handle gone = it->first;
    mi.deactivate(gone);
    active.erase(it);
    for (const char* p : {"a", "an", "ana", "nana", "band"})
      check_pattern(mi, active, p);
    CHECK_FALSE(mi.is_active(gone));
  }

  SUBCASE("re-activation restores them") {
    Handle h = active.begin()->first;
    mi.deactivate(h);
    mi.activate(h);
    for (const char* p : {"a", "ana"}) check_pattern(mi, active, p);
  }
}

TEST_CASE("runs and periodic strings") {
  Store col(13, Config{});
  MatchIndex mi(col);
  std::map<Handle, std::string> active;
  for (const char* t : {"aaaaaa", "ababab", "aabaab", "aaaabaaaa"}) {
    Handle h = col.make_string(t);
    mi.activate(h);
    active[h] = t;
  }
  for (const char* p : {"a", "b", "aa", "ab", "ba", "aaa", "aba", "bab",
                        "aab", "abab", "aaaa", "aabaa", "aaaaa", "aaaaaa"})
    check_pattern(mi, active, p);
}

TEST_CASE("strings assembled by concat and split") {
  Store col(14, Config{});
  MatchIndex mi(col);
  Handle a = col.make_string("aba");
  Handle b = col.make_string("ba");
  Handle ab = col.concat(a, b);  // ababa
  auto [l, r] = col.split(ab, 2);  // ab | aba
  std::map<Handle, std::string> active;
  for (auto [h, t] : std::vector<std::pair<Handle, std::string>>{
           {ab, "ababa"}, {l, "ab"}, {r, "aba"}}) {
    mi.activate(h);
    active[h] = t;
  }
  for (const char* p : {"a", "b", "ab", "ba", "aba", "bab", "abab", "ababa"})
    check_pattern(mi, active, p);
  mi.deactivate(ab);
  active.erase(ab);
  for (const char* p : {"a", "ab", "aba"}) check_pattern(mi, active, p);
}

TEST_CASE("duplicate activation is idempotent") {
  Store col(15, Config{});
  MatchIndex mi(col);
  Handle h = col.make_string("abcabc");
  mi.activate(h);
  mi.activate(h);
  std::map<Handle, std::string> active{{h, "abcabc"}};
  check_pattern(mi, active, "abc");
  check_pattern(mi, active, "c");
  mi.deactivate(h);
  mi.deactivate(h);
  CHECK(mi.find("abc").empty());
}

TEST_CASE("random churn against naive scans") {
  Rng rng(99);
  Store col(16, Config{});
  MatchIndex mi(col);
  std::vector<std::pair<Handle, std::string>> pool;
  for (int i = 0; i < 10; ++i) {
    std::string t = random_text(rng, 1 + rng.below(40), 2);
    pool.push_back({col.make_string(t), t});
  }
  // Derived handles share parse structure with their sources.
  for (int i = 0; i < 6; ++i) {
    auto [ha, ta] = pool[rng.below(pool.size())];
    auto [hb, tb] = pool[rng.below(pool.size())];
    pool.push_back({col.concat(ha, hb), ta + tb});
  }
  for (int i = 0; i < 4; ++i) {
    auto [h, t] = pool[rng.below(pool.size())];
    if (t.size() < 2) continue;
    Len k = 1 + rng.below(t.size() - 1);
    auto [hl, hr] = col.split(h, k);
    pool.push_back({hl, t.substr(0, k)});
    pool.push_back({hr, t.substr(k)});
  }

  std::map<Handle, std::string> active;
  for (int step = 0; step < 250; ++step) {
    auto [h, t] = pool[rng.below(pool.size())];
    if (active.count(h) && rng.below(2) == 0) {
      mi.deactivate(h);
      active.erase(h);
    } else {
      mi.activate(h);
      active[h] = t;
    }

    std::string p;
    switch (rng.below(4)) {
      case 0: {  // substring of some active string: guaranteed hits
        if (active.empty()) continue;
        auto it = active.begin();
        std::advance(it, rng.below(active.size()));
        const std::string& t2 = it->second;
        std::size_t i = rng.below(t2.size());
        std::size_t m = 1 + rng.below(t2.size() - i);
        p = t2.substr(i, m);
        break;
      }
      case 1:
        p = random_text(rng, 1 + rng.below(6), 2);
        break;
      case 2:
        p = random_text(rng, 1, 3);  // single char, sometimes absent
        break;
      default:
        p = std::string(1 + rng.below(8), 'a');  // unary run
        break;
    }
    check_pattern(mi, active, p);
  }
}
