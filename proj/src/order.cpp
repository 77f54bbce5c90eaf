#include "sigstr/order.hpp"

#include <algorithm>

namespace sigstr {

// Both cursors descend in lockstep, layer by layer.  Invariant entering each
// layer: the spans before the cursors are identical, and the common prefix of
// the remaining suffixes consists of at most one distinct symbol (a run).
// Hence one skip past the shorter common run settles the whole layer, and the
// total work is proportional to the parse depth.
Len lcp_sigs(const Nav& nav, SigId s1, SigId s2) {
  const Grammar& g = nav.grammar();
  if (s1 == s2) return g.length(s1);
  TCur p1 = nav.troot(s1), p2 = nav.troot(s2);
  while (p1.l > p2.l) p1 = nav.tchild(p1, 1);
  while (p2.l > p1.l) p2 = nav.tchild(p2, 1);
  for (int i = p1.l;; --i) {
    if (nav.tsig(p1) == nav.tsig(p2)) {
      Len k = std::min(nav.trext(p1), nav.trext(p2)) + 1;
      p1 = nav.trskip(p1, k);
      p2 = nav.trskip(p2, k);
      // A cursor fell off the end: that whole string is a common prefix.
      if (!p1.valid() || !p2.valid())
        return std::min(g.length(s1), g.length(s2));
    }
    if (i == 0) break;
    p1 = nav.tchild(p1, 1);
    p2 = nav.tchild(p2, 1);
  }
  // Terminals at the same position differ; the prefix before them is common.
  return nav.trepr(p1).first - 1;
}

int compare_sigs(const Nav& nav, SigId s1, SigId s2) {
  if (s1 == s2) return 0;
  const Grammar& g = nav.grammar();
  Len l = lcp_sigs(nav, s1, s2);
  Len n1 = g.length(s1), n2 = g.length(s2);
  if (l == n1) return -1;  // proper prefix: s1 != s2 rules out equality
  if (l == n2) return 1;
  unsigned char c1 = g.char_at(s1, l + 1);
  unsigned char c2 = g.char_at(s2, l + 1);
  return c1 < c2 ? -1 : 1;
}

Len lcp(const Collection& col, Handle a, Handle b) {
  return lcp_sigs(col.nav(), col.sig(a), col.sig(b));
}

int compare(const Collection& col, Handle a, Handle b) {
  return compare_sigs(col.nav(), col.sig(a), col.sig(b));
}

bool is_prefix(const Collection& col, Handle a, Handle b) {
  Len n1 = col.length(a);
  return n1 <= col.length(b) && lcp(col, a, b) == n1;
}

}  // namespace sigstr
