#include "sigstr/range_index.hpp"

#include <algorithm>
#include <cassert>

#include "sigstr/order.hpp"

namespace sigstr {

int compare_keys(const Nav& nav, const OrderedKey& a, const OrderedKey& b) {
  if (a.sig == b.sig) {
    if (a.sentinel == b.sentinel) return 0;
    return a.sentinel ? 1 : -1;  // a string precedes itself plus sentinel
  }
  const Grammar& g = nav.grammar();
  Len l = lcp_sigs(nav, a.sig, b.sig);
  Len n1 = g.length(a.sig), n2 = g.length(b.sig);
  // Distinct signatures denote distinct strings, so at most one side ends.
  assert(l < n1 || l < n2);
  if (l == n1) return a.sentinel ? 1 : -1;  // sentinel outranks any extension
  if (l == n2) return b.sentinel ? -1 : 1;
  unsigned char c1 = g.char_at(a.sig, l + 1);
  unsigned char c2 = g.char_at(b.sig, l + 1);
  return c1 < c2 ? -1 : 1;
}

void RangeIndex::SparseMin::build(const std::vector<std::int64_t>& v) {
  t.clear();
  std::uint32_t m = static_cast<std::uint32_t>(v.size());
  if (m == 0) return;
  t.emplace_back(m);
  for (std::uint32_t i = 0; i < m; ++i) t[0][i] = i;
  for (std::uint32_t j = 1; (1u << j) <= m; ++j) {
    std::uint32_t w = 1u << j;
    t.emplace_back(m - w + 1);
    for (std::uint32_t i = 0; i + w <= m; ++i) {
      std::uint32_t a = t[j - 1][i], b = t[j - 1][i + w / 2];
      t[j][i] = v[b] < v[a] ? b : a;
    }
  }
}

std::uint32_t RangeIndex::SparseMin::argmin(const std::vector<std::int64_t>& v,
                                            std::uint32_t l,
                                            std::uint32_t r) const {
  assert(l < r && r <= v.size());
  std::uint32_t j = 31 - static_cast<std::uint32_t>(__builtin_clz(r - l));
  std::uint32_t a = t[j][l], b = t[j][r - (1u << j)];
  return v[b] < v[a] ? b : a;
}

void RangeIndex::build_node(Block& b, std::uint32_t v, std::uint32_t lo,
                            std::uint32_t hi) {
  Node& n = b.nodes[v];
  if (hi - lo == 1) {
    const AnchoredPoint& p = b.pts[lo];
    n.ys = {{p.y, p.timestamp, lo}};
  } else {
    std::uint32_t mid = (lo + hi) / 2;
    build_node(b, 2 * v, lo, mid);
    build_node(b, 2 * v + 1, mid, hi);
    const auto& l = b.nodes[2 * v].ys;
    const auto& r = b.nodes[2 * v + 1].ys;
    n.ys.reserve(l.size() + r.size());
    std::merge(l.begin(), l.end(), r.begin(), r.end(),
               std::back_inserter(n.ys), [&](const Entry& a, const Entry& c) {
                 int cmp = compare_keys(nav_, a.y, c.y);
                 return cmp != 0 ? cmp < 0 : a.pt < c.pt;
               });
  }
  n.ts.reserve(n.ys.size());
  for (const Entry& e : n.ys) n.ts.push_back(e.ts);
  n.rmq.build(n.ts);
}

void RangeIndex::build_block(Block& b, std::vector<AnchoredPoint> pts) {
  assert(!pts.empty());
  std::sort(pts.begin(), pts.end(),
            [&](const AnchoredPoint& a, const AnchoredPoint& c) {
              int cmp = compare_keys(nav_, a.x, c.x);
              return cmp != 0 ? cmp < 0 : a.key < c.key;
            });
  b.pts = std::move(pts);
  b.nodes.assign(4 * b.pts.size(), {});
  build_node(b, 1, 0, static_cast<std::uint32_t>(b.pts.size()));
}

void RangeIndex::insert(const AnchoredPoint& p) {
  // A re-inserted key must not meet its own tombstoned copy in a later
  // merge, so purge retired points before resurrecting the key.
  if (dead_.count(p.key)) rebuild_all();
  assert(!present_.count(p.key));
  present_.insert(p.key);
  ++gen_;
  std::vector<AnchoredPoint> carry = {p};
  std::size_t j = 0;
  for (; j < slots_.size() && !slots_[j].pts.empty(); ++j) {
    for (AnchoredPoint& q : slots_[j].pts) {
      if (dead_.erase(q.key))
        continue;  // retired point leaves the structure here
      carry.push_back(std::move(q));
    }
    slots_[j] = {};
  }
  if (j == slots_.size()) slots_.emplace_back();
  build_block(slots_[j], std::move(carry));
}

void RangeIndex::erase(std::uint64_t key) {
  if (!present_.erase(key)) return;
  dead_.insert(key);
  if (dead_.size() > present_.size()) rebuild_all();
}

void RangeIndex::rebuild_all() {
  std::vector<AnchoredPoint> live;
  for (Block& b : slots_)
    for (AnchoredPoint& p : b.pts)
      if (!dead_.count(p.key)) live.push_back(std::move(p));
  assert(live.size() == present_.size());
  slots_.clear();
  dead_.clear();
  ++gen_;
  if (live.empty()) return;
  std::size_t j = 0;
  while ((std::size_t{1} << j) < live.size()) ++j;
  slots_.resize(j + 1);
  build_block(slots_[j], std::move(live));
}

std::pair<std::uint32_t, std::uint32_t> RangeIndex::x_span(
    const Block& b, const OrderedKey& xLo, const OrderedKey& xHi) const {
  auto lo = std::partition_point(
      b.pts.begin(), b.pts.end(),
      [&](const AnchoredPoint& p) { return compare_keys(nav_, p.x, xLo) < 0; });
  auto hi = std::partition_point(
      lo, b.pts.end(),
      [&](const AnchoredPoint& p) { return compare_keys(nav_, p.x, xHi) <= 0; });
  return {static_cast<std::uint32_t>(lo - b.pts.begin()),
          static_cast<std::uint32_t>(hi - b.pts.begin())};
}

std::pair<std::uint32_t, std::uint32_t> RangeIndex::y_span(
    const Node& n, const OrderedKey& yLo, const OrderedKey& yHi) const {
  auto lo = std::partition_point(
      n.ys.begin(), n.ys.end(),
      [&](const Entry& e) { return compare_keys(nav_, e.y, yLo) < 0; });
  auto hi = std::partition_point(lo, n.ys.end(), [&](const Entry& e) {
    return compare_keys(nav_, e.y, yHi) <= 0;
  });
  return {static_cast<std::uint32_t>(lo - n.ys.begin()),
          static_cast<std::uint32_t>(hi - n.ys.begin())};
}

template <class Fn>
void RangeIndex::visit_canonical(const Block& b, std::uint32_t v,
                                 std::uint32_t lo, std::uint32_t hi,
                                 std::uint32_t qlo, std::uint32_t qhi,
                                 Fn&& fn) const {
  if (qhi <= lo || hi <= qlo) return;
  if (qlo <= lo && hi <= qhi) {
    fn(v);
    return;
  }
  std::uint32_t mid = (lo + hi) / 2;
  visit_canonical(b, 2 * v, lo, mid, qlo, qhi, fn);
  visit_canonical(b, 2 * v + 1, mid, hi, qlo, qhi, fn);
}

std::vector<AnchoredPoint> RangeIndex::query(const OrderedKey& xLo,
                                             const OrderedKey& xHi,
                                             const OrderedKey& yLo,
                                             const OrderedKey& yHi) const {
  std::vector<AnchoredPoint> out;
  for (std::uint32_t bi = 0; bi < slots_.size(); ++bi) {
    const Block& b = slots_[bi];
    if (b.pts.empty()) continue;
    auto [i0, i1] = x_span(b, xLo, xHi);
    if (i0 >= i1) continue;
    visit_canonical(b, 1, 0, static_cast<std::uint32_t>(b.pts.size()), i0, i1,
                    [&](std::uint32_t v) {
                      const Node& n = b.nodes[v];
                      auto [j0, j1] = y_span(n, yLo, yHi);
                      for (std::uint32_t j = j0; j < j1; ++j) {
                        const AnchoredPoint& p = b.pts[n.ys[j].pt];
                        if (!dead_.count(p.key)) out.push_back(p);
                      }
                    });
  }
  return out;
}

std::vector<AnchoredPoint> RangeIndex::query_x(const OrderedKey& xLo,
                                               const OrderedKey& xHi) const {
  std::vector<AnchoredPoint> out;
  for (const Block& b : slots_) {
    if (b.pts.empty()) continue;
    auto [i0, i1] = x_span(b, xLo, xHi);
    for (std::uint32_t i = i0; i < i1; ++i)
      if (!dead_.count(b.pts[i].key)) out.push_back(b.pts[i]);
  }
  return out;
}

void RangeIndex::Stream::push_range(std::uint32_t block, std::uint32_t node,
                                    std::uint32_t lo, std::uint32_t hi) {
  if (lo >= hi) return;
  const Node& n = idx_->slots_[block].nodes[node];
  std::uint32_t best = n.rmq.argmin(n.ts, lo, hi);
  heap_.push({n.ts[best], block, node, lo, hi, best});
}

bool RangeIndex::Stream::next(AnchoredPoint& out) {
  assert(idx_ && gen_ == idx_->gen_ && "index mutated under a live stream");
  while (!heap_.empty()) {
    Item it = heap_.top();
    heap_.pop();
    push_range(it.block, it.node, it.lo, it.best);
    push_range(it.block, it.node, it.best + 1, it.hi);
    const Block& b = idx_->slots_[it.block];
    const AnchoredPoint& p = b.pts[b.nodes[it.node].ys[it.best].pt];
    if (idx_->dead_.count(p.key)) continue;
    out = p;
    return true;
  }
  return false;
}

RangeIndex::Stream RangeIndex::stream(const OrderedKey& xLo,
                                      const OrderedKey& xHi,
                                      const OrderedKey& yLo,
                                      const OrderedKey& yHi) const {
  Stream s;
  s.idx_ = this;
  s.gen_ = gen_;
  for (std::uint32_t bi = 0; bi < slots_.size(); ++bi) {
    const Block& b = slots_[bi];
    if (b.pts.empty()) continue;
    auto [i0, i1] = x_span(b, xLo, xHi);
    if (i0 >= i1) continue;
    visit_canonical(b, 1, 0, static_cast<std::uint32_t>(b.pts.size()), i0, i1,
                    [&](std::uint32_t v) {
                      auto [j0, j1] = y_span(b.nodes[v], yLo, yHi);
                      s.push_range(bi, v, j0, j1);
                    });
  }
  return s;
}

}  // namespace sigstr
