#include "sigstr/history.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <string>

namespace sigstr {

Len History::length() const {
  const std::optional<Handle>& cur = snaps_.back();
  return cur ? st_.length(*cur) : 0;
}

std::optional<Handle> History::prefix(Len m) const {
  if (m == 0) return std::nullopt;
  Handle cur = *snaps_.back();
  if (m == st_.length(cur)) return cur;
  return st_.split(cur, m).first;
}

std::optional<Handle> History::suffix(Len s) const {
  Handle cur = *snaps_.back();
  if (s > st_.length(cur)) return std::nullopt;
  if (s == 1) return cur;
  return st_.split(cur, s - 1).second;
}

void History::sync() {
  if (st_.epoch() != seen_) {
    seen_ = st_.epoch();
    rebuild();
  }
}

// Records the anchor only; commit() keys it into the index once the edit's
// store operations are over, so a restart in between cannot leave a stale
// key behind.
void History::add_anchor(Handle left, Handle right, std::int64_t v,
                         Len delta) {
  anchors_.push_back({left, right, v, delta});
}

std::int64_t History::commit(std::optional<Handle> next) {
  snaps_.push_back(next);
  if (st_.epoch() == seen_) {
    for (; flushed_ < anchors_.size(); ++flushed_) {
      const Anchor& a = anchors_[flushed_];
      AnchoredPoint pt;
      pt.key = flushed_;
      pt.x = plain_key(st_.rsig(a.left));
      pt.y = plain_key(st_.sig(a.right));
      pt.timestamp = a.version;
      pt.extra = std::int64_t(a.delta);
      idx_->insert(pt);
    }
  }
  // Otherwise the store restarted mid-edit: the index is stale from its nav
  // on down, and the next sync() rebuilds it from the anchors.
  return version();
}

std::int64_t History::apply_insert(Len pos, unsigned char c) {
  sync();
  Len n = length();
  if (pos < 1 || pos > n + 1) throw std::out_of_range("insert position");
  std::int64_t v = version() + 1;
  std::optional<Handle> x = prefix(pos - 1);
  std::optional<Handle> y;
  if (pos <= n) y = suffix(pos);
  Handle hc = st_.make_string(std::string(1, char(c)));
  Handle cy = y ? st_.concat(hc, *y) : hc;
  Handle next = x ? st_.concat(*x, cy) : cy;
  if (x) add_anchor(*x, cy, v, pos);      // junction left of c
  if (y) add_anchor(hc, *y, v, pos + 1);  // junction right of c
  registry_.push_back({c, v, pos});
  return commit(next);
}

std::int64_t History::apply_delete(Len l, Len r) {
  sync();
  Len n = length();
  if (l < 1 || l > r || r > n) throw std::out_of_range("delete range");
  std::int64_t v = version() + 1;
  std::optional<Handle> x = prefix(l - 1);
  std::optional<Handle> y = r < n ? suffix(r + 1) : std::nullopt;
  std::optional<Handle> next;
  if (x && y) {
    next = st_.concat(*x, *y);
    add_anchor(*x, *y, v, l);
  } else {
    next = x ? x : y;  // one side empty: no new adjacency
  }
  return commit(next);
}

std::int64_t History::apply_move(Len l, Len r, Len dest) {
  sync();
  Len n = length();
  if (l < 1 || l > r || r > n) throw std::out_of_range("move range");
  if (dest >= l && dest <= r) throw std::out_of_range("move destination");
  if (dest < 1 || dest > n) throw std::out_of_range("move destination");
  std::int64_t v = version() + 1;
  // The new text is X P Q Y: moving forward puts the skipped block before
  // the moved one, moving backward the other way around.
  std::optional<Handle> x, y;
  Handle p, q;
  if (dest < l) {
    // Block lands so it starts at dest: X = [1,dest), Q = [dest,l), P = block.
    x = prefix(dest - 1);
    Handle mid = *suffix(dest);  // [dest, n]
    Len bstart = l - dest + 1;   // block offset inside mid
    auto [a, tail] = st_.split(mid, bstart - 1);
    q = a;
    if (r < n) {
      auto [b, rest] = st_.split(tail, r - l + 1);
      p = b;
      y = rest;
    } else {
      p = tail;
    }
  } else {
    // Block lands so it ends at dest: P = (r,dest], Q = block, Y = (dest,n].
    x = prefix(l - 1);
    Handle mid = *suffix(l);  // [l, n]
    auto [b, tail] = st_.split(mid, r - l + 1);
    q = b;
    if (dest < n) {
      auto [a, rest] = st_.split(tail, dest - r);
      p = a;
      y = rest;
    } else {
      p = tail;
    }
  }
  Handle qy = y ? st_.concat(q, *y) : q;
  Handle pqy = st_.concat(p, qy);
  Handle next = x ? st_.concat(*x, pqy) : pqy;
  Len lx = x ? st_.length(*x) : 0;
  Len lp = st_.length(p);
  Len lq = st_.length(q);
  if (x) add_anchor(*x, pqy, v, lx + 1);
  Handle xp = x ? st_.concat(*x, p) : p;
  add_anchor(xp, qy, v, lx + lp + 1);
  if (y) add_anchor(st_.concat(xp, q), *y, v, lx + lp + lq + 1);
  return commit(next);
}

std::vector<std::pair<std::int64_t, Len>> History::find(std::string_view p,
                                                        std::size_t k) {
  std::vector<std::pair<std::int64_t, Len>> out;
  if (p.empty()) return out;
  sync();
  if (p.size() == 1) {
    for (const Insertion& ins : registry_) {
      if (ins.ch != static_cast<unsigned char>(p[0])) continue;
      out.push_back({ins.version, ins.pos});
      if (k != 0 && out.size() == k) break;
    }
    return out;
  }
  unsigned e0 = st_.epoch();
  Handle hp = st_.make_string(p);
  if (st_.epoch() != e0) throw EpochChange{};  // index keys just went stale
  struct Part {
    Len l;
    RangeIndex::Stream st;
    AnchoredPoint head;
    bool has;
  };
  std::vector<Part> parts;
  for (Len l = 1; l + 1 <= p.size(); ++l) {
    auto [h1, h2] = st_.split(hp, l);
    if (st_.epoch() != e0) throw EpochChange{};
    SigId rev1 = st_.rsig(h1);
    SigId fwd2 = st_.sig(h2);
    parts.push_back({l,
                     idx_->stream(plain_key(rev1), fence_key(rev1),
                                  plain_key(fwd2), fence_key(fwd2)),
                     {}, false});
  }
  for (Part& pt : parts) pt.has = pt.st.next(pt.head);
  // Version rounds: drain every stream's items for the lowest pending
  // version, dedup positions (one occurrence can straddle two junctions of
  // one move), emit sorted.
  for (;;) {
    std::int64_t low = 0;
    bool any = false;
    for (const Part& pt : parts)
      if (pt.has && (!any || pt.head.timestamp < low)) {
        low = pt.head.timestamp;
        any = true;
      }
    if (!any) break;
    std::set<Len> bucket;
    for (Part& pt : parts)
      while (pt.has && pt.head.timestamp == low) {
        bucket.insert(Len(pt.head.extra) - pt.l);
        pt.has = pt.st.next(pt.head);
      }
    for (Len pos : bucket) {
      out.push_back({low, pos});
      if (k != 0 && out.size() == k) return out;
    }
  }
  return out;
}

void History::rebuild() {
  idx_.emplace(st_.nav());
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const Anchor& a = anchors_[i];
    AnchoredPoint pt;
    pt.key = i;
    pt.x = plain_key(st_.rsig(a.left));
    pt.y = plain_key(st_.sig(a.right));
    pt.timestamp = a.version;
    pt.extra = std::int64_t(a.delta);
    idx_->insert(pt);
  }
  flushed_ = anchors_.size();
}

}  // namespace sigstr
