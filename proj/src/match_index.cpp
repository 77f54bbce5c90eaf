#include "sigstr/match_index.hpp"

#include <algorithm>
#include <cassert>

#include "sigstr/decompose.hpp"

namespace sigstr {

// Brings the registry up to date: after a store restart every recorded
// signature id belongs to a discarded parse, so the registry is rebuilt from
// the durable activation set; afterwards any handle whose realization
// previously failed is retried.
void MatchIndex::sync() {
  if (st_.epoch() != seen_) {
    seen_ = st_.epoch();
    idx_.emplace(st_.nav());
    entries_.clear();
    last_char_.clear();
    realized_.clear();
  }
  for (Handle h : wanted_)
    if (!realized_.count(h)) {
      realize(h);
      realized_.insert(h);
    }
}

// Canonical signature of the reverse of str(child), obtained by carving the
// child's span [delta+1, delta+m] out of the activated handle and mirroring
// it. The splits go through the store so they sit on the logged, restartable
// path; if one of them does restart, every id gathered so far is stale and
// the realization aborts.
SigId MatchIndex::rev_part(SigId child, Len delta, Handle h, Len n) {
  Len m = st_.grammar().length(child);
  if (m == 1) return child;  // one character reads the same both ways
  Handle part = h;
  if (delta + m < n) part = st_.split(part, delta + m).first;
  if (delta > 0) part = st_.split(part, delta).second;
  if (st_.epoch() != seen_) throw EpochChange{};
  return st_.rsig(part);
}

void MatchIndex::visit(SigId s, Len delta, Handle h, Len n) {
  if (entries_.count(s)) return;  // node and its child edges already present
  Entry& e = entries_[s];
  Grammar& g = st_.grammar();
  const Record r = g.rec(s);  // by value: interning below grows the store
  if (r.kind == Kind::Terminal) return;
  auto link = [&](SigId child) {
    auto& pars = entries_.at(child).pars;
    e.refs.push_back({child, pars.insert(pars.end(), s)});
  };
  AnchoredPoint pt;
  pt.key = s;
  if (r.kind == Kind::Pair) {
    visit(r.left, delta, h, n);
    visit(r.right, delta + g.length(r.left), h, n);
    link(r.left);
    link(r.right);
    pt.x = plain_key(rev_part(r.left, delta, h, n));
    pt.y = plain_key(r.right);
  } else {
    visit(r.left, delta, h, n);
    link(r.left);
    pt.x = plain_key(rev_part(r.left, delta, h, n));
    pt.y = plain_key(r.count == 2 ? r.left
                                  : g.intern_power(r.left, r.count - 1));
  }
  idx_->insert(pt);
}

void MatchIndex::realize(Handle h) {
  Len n = st_.length(h);
  last_char_[h] = st_.char_at(h, n);
  SigId s = st_.sig(h);
  visit(s, 0, h, n);
  entries_.at(s).inW = true;
}

void MatchIndex::unrealize(Handle h) {
  last_char_.erase(h);
  SigId s = st_.sig(h);
  entries_.at(s).inW = false;
  unlink(s);
}

void MatchIndex::activate(Handle h) {
  if (!wanted_.insert(h).second) return;
  sync();
}

void MatchIndex::deactivate(Handle h) {
  if (wanted_.erase(h) == 0) return;
  // With a stale epoch the whole registry is garbage anyway; the next sync
  // rebuilds it from wanted_, which no longer contains h.
  if (st_.epoch() == seen_ && realized_.erase(h)) unrealize(h);
}

void MatchIndex::unlink(SigId s) {
  auto it = entries_.find(s);
  if (it == entries_.end()) return;  // a sibling cascade already removed it
  Entry& e = it->second;
  if (e.inW || !e.pars.empty()) return;  // still referenced
  std::vector<SigId> children;
  for (const Entry::Ref& ref : e.refs) {
    entries_.at(ref.child).pars.erase(ref.it);
    children.push_back(ref.child);
  }
  if (st_.grammar().rec(s).kind != Kind::Terminal) idx_->erase(s);
  entries_.erase(it);
  for (SigId c : children) unlink(c);
}

const MatchIndex::OccList& MatchIndex::occ(
    SigId s, std::unordered_map<SigId, OccList>& memo) {
  auto mit = memo.find(s);
  if (mit != memo.end()) return mit->second;
  OccList res;
  const Entry& e = entries_.at(s);
  if (e.inW) res.push_back({st_.collection().by_sig(s), 0});
  const Grammar& g = st_.grammar();
  for (SigId par : e.pars) {
    const Record pr = g.rec(par);
    // Offsets of s inside str(par), by par's production.
    Len offs[2];
    std::size_t cnt = 0;
    if (pr.kind == Kind::Pair) {
      if (pr.left == s) offs[cnt++] = 0;
      if (pr.right == s) offs[cnt++] = g.length(pr.left);
    }
    const OccList& up = occ(par, memo);
    for (const auto& [h, off] : up) {
      if (pr.kind == Kind::Pair) {
        for (std::size_t i = 0; i < cnt; ++i) res.push_back({h, off + offs[i]});
      } else {
        Len w = g.length(pr.left);
        for (Len j = 0; j < pr.count; ++j) res.push_back({h, off + j * w});
      }
    }
  }
  return memo.emplace(s, std::move(res)).first->second;
}

std::vector<std::pair<Handle, Len>> MatchIndex::find(std::string_view p,
                                                     std::size_t limit) {
  if (p.empty() || wanted_.empty()) return {};
  sync();
  Grammar& g = st_.grammar();
  Handle hp = st_.make_string(p);
  if (st_.epoch() != seen_) throw EpochChange{};  // registry just went stale
  SigId sp = st_.sig(hp);
  Len plen = p.size();
  std::unordered_map<SigId, OccList> memo;
  std::set<std::pair<Handle, Len>> out;  // sorted and deduplicated

  auto report = [&](SigId s, const std::vector<Len>& qs) {
    for (const auto& [h, off] : occ(s, memo))
      for (Len q : qs) out.insert({h, off + q});
  };

  if (plen == 1) {
    // Every occurrence except a final character sits just left of the one
    // junction created for that adjacency; final characters come from the
    // last-character registry.
    for (const AnchoredPoint& pt :
         idx_->query_x(plain_key(sp), fence_key(sp))) {
      SigId s = static_cast<SigId>(pt.key);
      const Record r = g.rec(s);
      std::vector<Len> qs;
      if (r.kind == Kind::Pair) {
        qs.push_back(g.length(r.left));
      } else {
        Len w = g.length(r.left);
        for (Len j = 1; j < r.count; ++j) qs.push_back(j * w);
      }
      report(s, qs);
    }
    for (const auto& [h, c] : last_char_)
      if (c == static_cast<unsigned char>(p[0]))
        out.insert({h, st_.length(h)});
  } else {
    // Occurrences aligned with a whole node of p's own signature.
    if (entries_.count(sp)) report(sp, {1});
    // Any other occurrence straddles a junction of its covering node at one
    // of these splits: after the first copy of the leading run, or at a run
    // boundary, of p's context-insensitive decomposition.
    RleSeq d = ci(st_.nav(), sp, 1, plen, true, true);
    std::set<Len> splits;
    splits.insert(g.length(d.runs().front().sig));
    Len acc = 0;
    for (std::size_t i = 0; i + 1 < d.runs().size(); ++i) {
      acc += d.runs()[i].count * g.length(d.runs()[i].sig);
      splits.insert(acc);
    }
    for (Len l : splits) {
      if (l == 0 || l >= plen) continue;
      auto [h1, h2] = st_.split(hp, l);
      if (st_.epoch() != seen_) throw EpochChange{};
      SigId pl_rev = st_.rsig(h1);
      SigId pr_fwd = st_.sig(h2);
      for (const AnchoredPoint& pt :
           idx_->query(plain_key(pl_rev), fence_key(pl_rev),
                       plain_key(pr_fwd), fence_key(pr_fwd))) {
        SigId s = static_cast<SigId>(pt.key);
        const Record r = g.rec(s);
        std::vector<Len> qs;
        if (r.kind == Kind::Pair) {
          assert(g.length(r.left) >= l);
          qs.push_back(g.length(r.left) - l + 1);
        } else {
          Len w = g.length(r.left);
          Len pright = plen - l;
          assert(w >= l && (r.count - 1) * w >= pright);
          Len jmax = r.count - (pright + w - 1) / w;
          for (Len j = 1; j <= jmax; ++j) qs.push_back(j * w - l + 1);
        }
        report(s, qs);
      }
    }
  }
  std::vector<std::pair<Handle, Len>> res(out.begin(), out.end());
  if (limit != 0 && res.size() > limit) res.resize(limit);
  return res;
}

}  // namespace sigstr
