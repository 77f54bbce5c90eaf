#ifndef SIGSTR_GRAMMAR_HPP
#define SIGSTR_GRAMMAR_HPP

// Signature store: a global acyclic grammar over terminals, pairs and powers,
// deduplicated so that equal strings always collapse to the same signature.
//
// Each signature record carries its production, expanded length, level in the
// parse hierarchy, and one machine word of random h-bits drawn from the seeded
// stream at creation. Levels follow the alternating schedule: run-length
// steps produce odd-level powers (level(base)+1) and pairing steps produce
// even-level pairs (the smallest admissible even level above both children,
// where bit level/2 of the children's h-words is 0 for the left child and 1
// for the right).
//
// For navigation the store maintains two forests over signatures: in the left
// forest a signature's parent is its leftmost child, in the right forest its
// rightmost child. Binary-lifting jump tables plus per-signature level
// bitmasks b(s) answer "deepest left/right-chain ancestor with level >= l"
// (first_last) and "chain representative with level <= l" (rep_at) in
// O(log levels).
//
// Concurrency: the store is append-only and externally synchronized; a single
// writer may intern while readers hold SigIds, but members are not atomic.

#include <array>
#include <cassert>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sigstr/common.hpp"
#include "sigstr/rng.hpp"

namespace sigstr {

enum class Kind : std::uint8_t { Terminal, Pair, Power };
enum class Side : std::uint8_t { Left, Right };

// 192-bit level set: enough for levels 0..2B with B <= 64.
struct Mask192 {
  std::uint64_t w[3] = {0, 0, 0};

  void set(unsigned bit) { w[bit >> 6] |= std::uint64_t{1} << (bit & 63); }

  int popcount() const {
    return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]) +
           __builtin_popcountll(w[2]);
  }

  // Number of set bits at positions >= l.
  int popcount_at_least(unsigned l) const {
    if (l >= 192) return 0;
    int total = 0;
    unsigned word = l >> 6, off = l & 63;
    std::uint64_t first = w[word] & ~((off ? (std::uint64_t{1} << off) : 1) - 1);
    if (off == 0) first = w[word];
    total += __builtin_popcountll(first);
    for (unsigned i = word + 1; i < 3; ++i) total += __builtin_popcountll(w[i]);
    return total;
  }
};

struct Record {
  Kind kind;
  unsigned char ch = 0;   // terminal byte
  SigId left = kNoSig;    // pair left child, or power base
  SigId right = kNoSig;   // pair right child
  Len count = 0;          // power multiplicity
  Len length = 0;
  std::int32_t level = 0;
  std::uint64_t hbits = 0;
  // Binary lifting over the two forests: up[side][j] = 2^j-th chain ancestor.
  std::array<SigId, 8> upL;
  std::array<SigId, 8> upR;
  Mask192 bL, bR;  // levels present on the left/right chain (self included)
};

class Grammar {
 public:
  Grammar(std::uint64_t seed, const Config& cfg) : cfg_(cfg), rng_(seed) {
    assert(cfg.bits >= 1 && cfg.bits <= 64);
  }

  const Config& config() const { return cfg_; }
  std::size_t size() const { return records_.size(); }
  const Record& rec(SigId s) const { return records_[s]; }

  Len length(SigId s) const { return records_[s].length; }
  int level(SigId s) const { return records_[s].level; }

  // h_i(s) for 1 <= i <= B.
  unsigned h_bit(SigId s, unsigned i) const {
    return (records_[s].hbits >> (i - 1)) & 1u;
  }

  SigId intern_terminal(unsigned char c);
  // Throws failure(LevelOverflow) when no admissible even level <= 2B exists,
  // failure(LengthOverflow) when the combined length exceeds 2^B-1.
  SigId intern_pair(SigId l, SigId r);
  // k >= 2; level(base) must be even (runs of odd-level signatures cannot
  // occur in any valid parse layer). Throws like intern_pair.
  SigId intern_power(SigId base, Len k);

  // Smallest admissible even pair level, or -1 if none exists within 2B.
  int pair_level(SigId l, SigId r) const;

  // Number of children of s in the parse tree (pair 2, power k, terminal 0).
  Len degree(SigId s) const;
  // 1-based k-th child signature.
  SigId child_sig(SigId s, Len k) const;

  // Deepest chain ancestor of s (self included) with level >= l, following
  // leftmost children for Side::Left and rightmost for Side::Right.
  // Requires l <= level(s).
  SigId first_last(SigId s, int l, Side side) const;

  // Chain node with the greatest level <= l: the representative of the
  // level-l layer on s's left or right chain. Requires l >= 0.
  SigId rep_at(SigId s, int l, Side side) const;

  void expand(SigId s, std::string& out) const;
  std::string expand(SigId s) const;
  // 1-based character access.
  unsigned char char_at(SigId s, Len pos) const;

 private:
  SigId push_record(Record&& r);
  void build_chains(Record& r, SigId self);

  Config cfg_;
  Rng rng_;
  std::vector<Record> records_;
  std::unordered_map<unsigned, SigId> term_map_;
  std::unordered_map<std::uint64_t, SigId> pair_map_;
  struct PowerKey {
    SigId base;
    Len count;
    bool operator==(const PowerKey& o) const {
      return base == o.base && count == o.count;
    }
  };
  struct PowerHash {
    std::size_t operator()(const PowerKey& k) const {
      return splitmix64((std::uint64_t{k.base} << 32) ^ k.count * 0x9e3779b97f4a7c15ull);
    }
  };
  std::unordered_map<PowerKey, SigId, PowerHash> power_map_;
};

}  // namespace sigstr

#endif  // SIGSTR_GRAMMAR_HPP
