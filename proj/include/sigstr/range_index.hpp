// Two-dimensional range reporting over points whose coordinates are stored
// strings, with lazy enumeration in timestamp order.  Points arrive
// incrementally (merged power-of-two blocks) and can be retired by id.
#pragma once

#include <cstdint>
#include <queue>
#include <unordered_set>
#include <vector>

#include "sigstr/cursor.hpp"

namespace sigstr {

// A position on a string axis: str(sig), optionally followed by a sentinel
// ordering above every real character.  The strings with prefix p occupy
// exactly the closed range [p plain, p sentineled].
struct OrderedKey {
  SigId sig = kNoSig;
  bool sentinel = false;
};

inline OrderedKey plain_key(SigId s) { return {s, false}; }
inline OrderedKey fence_key(SigId s) { return {s, true}; }

// -1, 0, +1 in lexicographic order of the denoted strings.
int compare_keys(const Nav& nav, const OrderedKey& a, const OrderedKey& b);

struct AnchoredPoint {
  std::uint64_t key = 0;  // caller-chosen unique id, used for removal
  OrderedKey x, y;
  std::int64_t timestamp = 0;
  std::int64_t extra = 0;
};

class RangeIndex {
 public:
  explicit RangeIndex(const Nav& nav) : nav_(nav) {}

  void insert(const AnchoredPoint& p);
  void erase(std::uint64_t key);  // no-op if absent
  bool contains(std::uint64_t key) const { return present_.count(key) != 0; }
  std::size_t size() const { return present_.size(); }

  // All live points with x in [xLo, xHi] and y in [yLo, yHi], in no
  // particular order.
  std::vector<AnchoredPoint> query(const OrderedKey& xLo,
                                   const OrderedKey& xHi,
                                   const OrderedKey& yLo,
                                   const OrderedKey& yHi) const;

  // All live points with x in [xLo, xHi], any y.
  std::vector<AnchoredPoint> query_x(const OrderedKey& xLo,
                                     const OrderedKey& xHi) const;

  // Lazy enumeration of the same rectangle in increasing timestamp order.
  // The stream reads the index in place: consume it before the next insert.
  class Stream {
   public:
    bool next(AnchoredPoint& out);  // false once exhausted

   private:
    friend class RangeIndex;
    struct Item {
      std::int64_t ts;
      std::uint32_t block, node, lo, hi, best;  // heap over ys[lo, hi)
      bool operator>(const Item& o) const {
        if (ts != o.ts) return ts > o.ts;
        if (block != o.block) return block > o.block;
        if (node != o.node) return node > o.node;
        return lo > o.lo;
      }
    };
    const RangeIndex* idx_ = nullptr;
    std::uint64_t gen_ = 0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
    void push_range(std::uint32_t block, std::uint32_t node, std::uint32_t lo,
                    std::uint32_t hi);
  };
  Stream stream(const OrderedKey& xLo, const OrderedKey& xHi,
                const OrderedKey& yLo, const OrderedKey& yHi) const;

 private:
  // Constant-time argmin over a fixed timestamp array.
  struct SparseMin {
    std::vector<std::vector<std::uint32_t>> t;  // t[j][i]: argmin of [i, i+2^j)
    void build(const std::vector<std::int64_t>& v);
    std::uint32_t argmin(const std::vector<std::int64_t>& v, std::uint32_t l,
                         std::uint32_t r) const;  // [l, r), r > l
  };
  struct Entry {
    OrderedKey y;
    std::int64_t ts;
    std::uint32_t pt;  // index into Block::pts
  };
  struct Node {
    std::vector<Entry> ys;  // sorted by y
    std::vector<std::int64_t> ts;
    SparseMin rmq;
  };
  struct Block {
    std::vector<AnchoredPoint> pts;  // sorted by x
    std::vector<Node> nodes;         // implicit segment tree, root 1
  };

  void build_block(Block& b, std::vector<AnchoredPoint> pts);
  void build_node(Block& b, std::uint32_t v, std::uint32_t lo, std::uint32_t hi);
  std::pair<std::uint32_t, std::uint32_t> x_span(const Block& b,
                                                 const OrderedKey& xLo,
                                                 const OrderedKey& xHi) const;
  std::pair<std::uint32_t, std::uint32_t> y_span(const Node& n,
                                                 const OrderedKey& yLo,
                                                 const OrderedKey& yHi) const;
  template <class Fn>
  void visit_canonical(const Block& b, std::uint32_t v, std::uint32_t lo,
                       std::uint32_t hi, std::uint32_t qlo, std::uint32_t qhi,
                       Fn&& fn) const;
  void rebuild_all();

  const Nav& nav_;
  std::vector<Block> slots_;  // slot j holds a block born with 2^j points
  std::unordered_set<std::uint64_t> present_;  // live keys
  std::unordered_set<std::uint64_t> dead_;     // retired keys still in blocks
  std::uint64_t gen_ = 0;  // bumped whenever block memory moves
};

}  // namespace sigstr
