#ifndef SIGSTR_DECOMPOSE_HPP
#define SIGSTR_DECOMPOSE_HPP

// Substring decomposition and the collapse engine.
//
// ci() walks two frontier cursors up the parse layers and emits a run
// sequence expanding to the requested range, built entirely from nodes the
// range's parse shares with the whole string's parse. A frontier marked fine
// keeps the cuts near that edge gradual (suitable for splicing against other
// material); a plain frontier must sit on a string boundary and emits the
// coarsest cover. The emitted sequence has at most 2*depth+2 runs.
//
// collapse() is the inverse: it reduces a run sequence to the canonical root
// signature of its expansion by scheduling level-ordered rewrite rules (group
// a run into a power, merge an adjacent admissible pair) in per-level buckets
// and sweeping the levels upward. Fired rules may schedule new rules only at
// strictly higher levels, so one pass suffices. Throws failure on level
// exhaustion, guard violation, or length overflow.

#include "sigstr/cursor.hpp"
#include "sigstr/rle.hpp"

namespace sigstr {

RleSeq ci(const Nav& nav, SigId s, Len i, Len j, bool fine_left,
          bool fine_right);

// Range [i..j] extracted as an independent string (fine only at interior
// cuts).
inline RleSeq ci_range(const Nav& nav, SigId s, Len i, Len j) {
  return ci(nav, s, i, j, i > 1, j < nav.grammar().length(s));
}

// Whole string prepared for splicing: fine at the side that will meet the
// other concat operand.
inline RleSeq ci_concat_left(const Nav& nav, SigId s) {
  return ci(nav, s, 1, nav.grammar().length(s), false, true);
}
inline RleSeq ci_concat_right(const Nav& nav, SigId s) {
  return ci(nav, s, 1, nav.grammar().length(s), true, false);
}

// Reduce a run sequence to its canonical root signature. Sweeping above
// guard_level throws failure(DepthGuard); running out of levels throws
// failure(LevelOverflow).
SigId collapse(Grammar& g, const RleSeq& seq, int guard_level);

// Canonical signature of a fresh text (character runs + collapse).
SigId make_sig(Grammar& g, std::string_view text, int guard_level);

}  // namespace sigstr

#endif  // SIGSTR_DECOMPOSE_HPP
