#ifndef SIGSTR_CURSOR_HPP
#define SIGSTR_CURSOR_HPP

// Navigation over parse trees without materializing them.
//
// A compressed cursor is a stack of stack entries from the root to a node,
// where chain runs are elided: consecutive nodes connected by leftmost-child
// edges collapse into a single L entry (rightmost into R), recoverable via
// the grammar's chain queries. Entries carry the absolute start offset of
// their subtree, so spans are O(1). Interior children of powers appear as
// explicit Child entries with their 1-based index.
//
// A layer cursor (TCur) adds a layer number l and denotes the element of the
// l-th shrink layer whose subtree the compressed cursor addresses: signatures
// created below l act as unary copies up to the layer where they merge.
// Layer cursors expose the sibling structure the decomposition and
// comparison algorithms walk: parent/child/left/right, run extents to either
// side at even layers, and a bounded right-skip.

#include <cstdint>
#include <utility>
#include <vector>

#include "sigstr/grammar.hpp"

namespace sigstr {

enum class Tag : std::uint8_t { Top, L, R, Child };

struct Entry {
  SigId sig;
  Tag tag;
  Len idx;    // child index, Tag::Child only
  Len delta;  // absolute 0-based start offset of the subtree
};

// Empty vector = null cursor.
struct CStack {
  std::vector<Entry> e;
  bool valid() const { return !e.empty(); }
};

struct TCur {
  CStack inner;
  int l = 0;
  bool valid() const { return inner.valid(); }
};

class Nav {
 public:
  explicit Nav(const Grammar& g) : g_(g) {}

  const Grammar& grammar() const { return g_; }

  // Compressed cursors.
  CStack root(SigId s) const;
  SigId csig(const CStack& p) const { return p.e.back().sig; }
  Len cdelta(const CStack& p) const { return p.e.back().delta; }
  std::pair<Len, Len> crepr(const CStack& p) const;
  CStack cchild(const CStack& p, Len j) const;
  CStack cparent(const CStack& p) const;  // null for the root cursor
  Len cindex(const CStack& p) const;      // 0 root, else index among siblings
  // Element of layer l starting right after / ending right before p's span.
  CStack cright_at(const CStack& p, int l) const;
  CStack cleft_at(const CStack& p, int l) const;

  // Layer cursors.
  TCur troot(SigId s) const { return {root(s), g_.level(s)}; }
  TCur tbegin(SigId s) const { return tleaf_at(s, 1); }
  TCur tend(SigId s) const { return tleaf_at(s, g_.length(s)); }
  TCur tleaf_at(SigId s, Len i) const;
  SigId tsig(const TCur& p) const { return csig(p.inner); }
  std::pair<Len, Len> trepr(const TCur& p) const { return crepr(p.inner); }
  TCur tparent(const TCur& p) const;
  TCur tchild(const TCur& p, Len k) const;
  Len tdegree(const TCur& p) const;
  Len tindex(const TCur& p) const;
  // Number of further siblings to the right/left under the same layer
  // parent; zero at odd layers and at the root.
  Len trext(const TCur& p) const;
  Len tlext(const TCur& p) const;
  TCur tright(const TCur& p) const;
  TCur tleft(const TCur& p) const;
  // k <= trext(p)+1 steps to the right at the same layer; null off the end.
  TCur trskip(const TCur& p, Len k) const;

  bool tsame(const TCur& a, const TCur& b) const {
    if (!a.valid() || !b.valid()) return a.valid() == b.valid();
    return a.l == b.l && crepr(a.inner) == crepr(b.inner);
  }

 private:
  void push_collapse(CStack& p, Entry ent) const;

  const Grammar& g_;
};

}  // namespace sigstr

#endif  // SIGSTR_CURSOR_HPP
