#include "sigstr/decompose.hpp"

#include <algorithm>

namespace sigstr {

RleSeq ci(const Nav& nav, SigId s, Len i, Len j, bool fine_left,
          bool fine_right) {
  const Grammar& g = nav.grammar();
  assert(i >= 1 && i <= j && j <= g.length(s));
  assert(fine_left || i == 1);
  assert(fine_right || j == g.length(s));

  RleSeq left;                    // runs covering [i .. start(P)-1]
  std::vector<Run> right_rev;     // runs covering [end(Q)+1 .. j], reversed
  auto emit_right = [&](SigId sig, Len count) {
    if (!right_rev.empty() && right_rev.back().sig == sig)
      right_rev.back().count += count;
    else
      right_rev.push_back({sig, count});
  };

  TCur P = nav.tleaf_at(s, i);
  TCur Q = nav.tleaf_at(s, j);
  for (;;) {
    if (nav.tsame(P, Q)) break;
    auto pr = nav.trepr(P);
    auto qr = nav.trepr(Q);
    assert(pr.first <= qr.second + 1);
    if (pr.first == qr.second + 1) break;  // frontiers crossed; covered
    TCur pp = nav.tparent(P);
    TCur qp = nav.tparent(Q);
    if (nav.tsame(pp, qp)) break;
    TCur pn, qn;
    if (!fine_left) {
      pn = pp;  // P stays flush with the string start
    } else {
      TCur r = nav.tright(P);
      if (nav.tsig(P) != nav.tsig(r) && nav.tsame(pp, nav.tparent(r))) {
        pn = pp;  // left child of a pair whose sibling is in range: climb
      } else {
        left.push(nav.tsig(P), nav.trext(P) + 1);
        pn = nav.tright(pp);
      }
    }
    if (!fine_right) {
      qn = qp;  // Q stays flush with the string end
    } else {
      TCur lf = nav.tleft(Q);
      if (nav.tsig(Q) != nav.tsig(lf) && nav.tsame(qp, nav.tparent(lf))) {
        qn = qp;
      } else {
        emit_right(nav.tsig(Q), nav.tlext(Q) + 1);
        qn = nav.tleft(qp);
      }
    }
    P = pn;
    Q = qn;
  }

  auto pr = nav.trepr(P);
  auto qr = nav.trepr(Q);
  assert(pr.first <= qr.second + 1);
  if (pr.first != qr.second + 1) {
    if (nav.tsig(P) == nav.tsig(Q))
      left.push(nav.tsig(P), nav.tindex(Q) - nav.tindex(P) + 1);
    else {
      left.push(nav.tsig(P), 1);
      left.push(nav.tsig(Q), 1);
    }
  }
  for (auto it = right_rev.rbegin(); it != right_rev.rend(); ++it)
    left.push(it->sig, it->count);
  return left;
}

namespace {

struct CollapseNode {
  SigId sig;
  Len count;
  int prev, next;
  bool alive;
};

struct Rule {
  bool is_run;
  int a, b;       // run: node a; pair: adjacent nodes a, b
  SigId sa, sb;   // expected signatures
  Len cnt;        // expected count, run rules only
};

}  // namespace

SigId collapse(Grammar& g, const RleSeq& seq, int guard_level) {
  const auto& runs = seq.runs();
  assert(!runs.empty());
  if (runs.size() == 1 && runs[0].count == 1) return runs[0].sig;

  std::vector<CollapseNode> ns;
  ns.reserve(runs.size() * 2);
  for (std::size_t k = 0; k < runs.size(); ++k)
    ns.push_back({runs[k].sig, runs[k].count, static_cast<int>(k) - 1,
                  k + 1 == runs.size() ? -1 : static_cast<int>(k) + 1, true});
  int head = 0;
  int live = static_cast<int>(ns.size());
  const int cap = g.config().max_level();
  std::vector<std::vector<Rule>> buckets(static_cast<std::size_t>(cap) + 1);
  int sweeping = 0;

  auto schedule_run = [&](int x) {
    if (ns[x].count < 2) return;
    int lvl = g.level(ns[x].sig) + 1;
    assert(lvl % 2 == 1);
    if (lvl > cap) return;  // can never fire; detected as leftover work
    assert(lvl > sweeping);
    buckets[lvl].push_back({true, x, -1, ns[x].sig, kNoSig, ns[x].count});
  };
  auto schedule_pair = [&](int x, int y) {
    int lvl = g.pair_level(ns[x].sig, ns[y].sig);
    if (lvl < 0) return;
    assert(lvl > sweeping);
    buckets[lvl].push_back({false, x, y, ns[x].sig, ns[y].sig, 0});
  };
  auto splice = [&](int x) {
    ns[x].alive = false;
    int p = ns[x].prev, n = ns[x].next;
    if (p >= 0) ns[p].next = n;
    if (n >= 0) ns[n].prev = p;
    if (head == x) head = n;
    --live;
  };

  for (std::size_t k = 0; k < ns.size(); ++k) {
    schedule_run(static_cast<int>(k));
    if (ns[k].next >= 0) schedule_pair(static_cast<int>(k), ns[k].next);
  }

  for (int lvl = 1; lvl <= cap; ++lvl) {
    sweeping = lvl;
    if (lvl > guard_level)
      throw failure(FailureKind::DepthGuard,
                    "collapse exceeded depth guard at level " +
                        std::to_string(lvl));
    auto& bucket = buckets[lvl];
    for (std::size_t bi = 0; bi < bucket.size(); ++bi) {
      Rule r = bucket[bi];
      if (r.is_run) {
        CollapseNode& v = ns[r.a];
        if (!v.alive || v.sig != r.sa || v.count != r.cnt || v.count < 2)
          continue;
        SigId p = g.intern_power(v.sig, v.count);
        v.sig = p;
        v.count = 1;
        // Equal powers can never sit adjacent in a consistent sequence.
        assert(v.prev < 0 || !ns[v.prev].alive || ns[v.prev].sig != p);
        assert(v.next < 0 || !ns[v.next].alive || ns[v.next].sig != p);
        if (v.prev >= 0) schedule_pair(v.prev, r.a);
        if (v.next >= 0) schedule_pair(r.a, v.next);
      } else {
        if (!ns[r.a].alive || !ns[r.b].alive || ns[r.a].next != r.b ||
            ns[r.a].sig != r.sa || ns[r.b].sig != r.sb)
          continue;
        // Lower-level run rules already fired, so both flanks are singletons.
        assert(ns[r.a].count == 1 && ns[r.b].count == 1);
        SigId p = g.intern_pair(r.sa, r.sb);
        splice(r.b);
        ns[r.a].sig = p;
        int f = r.a;
        if (ns[f].prev >= 0 && ns[ns[f].prev].sig == p) {
          int lp = ns[f].prev;
          ns[lp].count += ns[f].count;
          splice(f);
          f = lp;
        }
        if (ns[f].next >= 0 && ns[ns[f].next].sig == p) {
          int nx = ns[f].next;
          ns[f].count += ns[nx].count;
          splice(nx);
        }
        schedule_run(f);
        if (ns[f].prev >= 0) schedule_pair(ns[f].prev, f);
        if (ns[f].next >= 0) schedule_pair(f, ns[f].next);
      }
      if (live == 1 && ns[head].count == 1) return ns[head].sig;
    }
    bucket.clear();
  }
  throw failure(FailureKind::LevelOverflow,
                "collapse ran out of levels (cap " + std::to_string(cap) + ")");
}

SigId make_sig(Grammar& g, std::string_view text, int guard_level) {
  assert(!text.empty());
  RleSeq seq;
  for (char c : text) seq.push(g.intern_terminal(static_cast<unsigned char>(c)), 1);
  return collapse(g, seq, guard_level);
}

}  // namespace sigstr
