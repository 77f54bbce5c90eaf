#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "sigstr/cursor.hpp"
#include "support/naive.hpp"

using namespace sigstr;

namespace {

TCur ascend(const Nav& nav, TCur c, int l) {
  while (c.l < l) c = nav.tparent(c);
  return c;
}

std::string random_text(Rng& rng, std::size_t n, unsigned alphabet) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(static_cast<char>('a' + rng.below(alphabet)));
  return s;
}

// Exhaustively compare layer-cursor navigation against the reference layer
// matrix for one string.
void check_navigation(Grammar& g, const std::string& text) {
  CAPTURE(text);
  naive::Parse np = naive::parse(g, text);
  Nav nav(g);
  SigId rootSig = np.root();
  int depth = np.depth();
  REQUIRE(g.level(rootSig) == depth);

  for (Len i = 1; i <= text.size(); ++i) {
    TCur leaf = nav.tleaf_at(rootSig, i);
    CHECK(nav.trepr(leaf) == std::make_pair(i, i));
    CHECK(g.expand(nav.tsig(leaf)) == text.substr(i - 1, 1));
  }
  CHECK(nav.trepr(nav.tbegin(rootSig)).first == 1);
  CHECK(nav.trepr(nav.tend(rootSig)).second == text.size());

  for (int l = 0; l <= depth; ++l) {
    const auto& layer = np.layers[l];
    for (std::size_t idx = 0; idx < layer.size(); ++idx) {
      const naive::Node& node = layer[idx];
      TCur cur = ascend(nav, nav.tleaf_at(rootSig, node.lo), l);
      CAPTURE(l);
      CAPTURE(idx);
      REQUIRE(nav.trepr(cur) == std::make_pair(node.lo, node.hi));
      REQUIRE(nav.tsig(cur) == node.sig);

      // Degree: number of layer l-1 elements inside the span (copies have
      // exactly one, themselves).
      Len ndeg = 0;
      std::vector<naive::Node> kids;
      if (l > 0)
        for (const auto& below : np.layers[l - 1])
          if (below.lo >= node.lo && below.hi <= node.hi) {
            ++ndeg;
            kids.push_back(below);
          }
      CHECK(nav.tdegree(cur) == ndeg);
      for (Len k = 1; k <= ndeg; ++k) {
        TCur child = nav.tchild(cur, k);
        CHECK(nav.trepr(child) ==
              std::make_pair(kids[k - 1].lo, kids[k - 1].hi));
        CHECK(nav.tsig(child) == kids[k - 1].sig);
        CHECK(nav.tsame(nav.tparent(child), cur));
      }

      // Index and run extents relative to the layer parent.
      Len nindex = 0, nrext = 0, nlext = 0;
      if (l < depth) {
        const naive::Node& par = np.at(l + 1, node.lo);
        Len pos = 0, total = 0;
        for (const auto& sib : layer)
          if (sib.lo >= par.lo && sib.hi <= par.hi) {
            ++total;
            if (sib.lo <= node.lo) ++pos;
          }
        nindex = pos;
        if (l % 2 == 0) {
          nrext = total - pos;
          nlext = pos - 1;
        }
      }
      CHECK(nav.tindex(cur) == nindex);
      CHECK(nav.trext(cur) == nrext);
      CHECK(nav.tlext(cur) == nlext);

      // Neighbors at the same layer.
      TCur r = nav.tright(cur);
      if (idx + 1 < layer.size()) {
        REQUIRE(r.valid());
        CHECK(nav.trepr(r) ==
              std::make_pair(layer[idx + 1].lo, layer[idx + 1].hi));
        CHECK(nav.tsig(r) == layer[idx + 1].sig);
      } else {
        CHECK(!r.valid());
      }
      TCur lf = nav.tleft(cur);
      if (idx > 0) {
        REQUIRE(lf.valid());
        CHECK(nav.trepr(lf) ==
              std::make_pair(layer[idx - 1].lo, layer[idx - 1].hi));
      } else {
        CHECK(!lf.valid());
      }

      // Bounded right skip: lands k elements to the right while k <= rext+1.
      for (Len k = 0; k <= nrext + 1; ++k) {
        TCur skip = nav.trskip(cur, k);
        if (idx + k < layer.size()) {
          REQUIRE(skip.valid());
          CHECK(nav.trepr(skip) ==
                std::make_pair(layer[idx + k].lo, layer[idx + k].hi));
        } else {
          CHECK(!skip.valid());
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("layer navigation matches the reference matrix on fixed strings") {
  Config cfg;
  Grammar g(4242, cfg);
  for (const char* text :
       {"a", "ab", "aa", "aab", "aabb", "banana", "aaaaaaaa", "abracadabra",
        "mississippi", "abcabcabcabc", "aabbaabbaabb"})
    check_navigation(g, text);
}

TEST_CASE("layer navigation matches the reference matrix on random strings") {
  Rng rng(909);
  for (int round = 0; round < 30; ++round) {
    Config cfg;
    Grammar g(1000 + round, cfg);
    std::string text =
        random_text(rng, 1 + rng.below(48), 1 + rng.below(3));
    check_navigation(g, text);
  }
}
