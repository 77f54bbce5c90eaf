#include "sigstr/cursor.hpp"

namespace sigstr {

CStack Nav::root(SigId s) const {
  CStack p;
  p.e.push_back({s, Tag::Top, 0, 0});
  return p;
}

std::pair<Len, Len> Nav::crepr(const CStack& p) const {
  const Entry& t = p.e.back();
  return {t.delta + 1, t.delta + g_.length(t.sig)};
}

void Nav::push_collapse(CStack& p, Entry ent) const {
  // Two adjacent entries with the same chain tag collapse into the deeper
  // one; intermediate chain nodes are recoverable via first_last.
  if ((ent.tag == Tag::L || ent.tag == Tag::R) && p.e.back().tag == ent.tag)
    p.e.back() = ent;
  else
    p.e.push_back(ent);
}

CStack Nav::cchild(const CStack& p, Len j) const {
  SigId s = csig(p);
  Len deg = g_.degree(s);
  assert(j >= 1 && j <= deg);
  SigId c = g_.child_sig(s, j);
  CStack out = p;
  if (j == 1) {
    push_collapse(out, {c, Tag::L, 0, cdelta(p)});
  } else if (j == deg) {
    push_collapse(out, {c, Tag::R, 0, cdelta(p) + g_.length(s) - g_.length(c)});
  } else {
    out.e.push_back({c, Tag::Child, j, cdelta(p) + (j - 1) * g_.length(c)});
  }
  return out;
}

CStack Nav::cparent(const CStack& p) const {
  const Entry& t = p.e.back();
  CStack out;
  switch (t.tag) {
    case Tag::Top:
      return out;  // null
    case Tag::Child:
      out = p;
      out.e.pop_back();
      return out;
    case Tag::L: {
      const Entry& below = p.e[p.e.size() - 2];
      SigId par = g_.first_last(below.sig, g_.level(t.sig) + 1, Side::Left);
      out = p;
      out.e.pop_back();
      if (par != below.sig) out.e.push_back({par, Tag::L, 0, below.delta});
      return out;
    }
    case Tag::R: {
      const Entry& below = p.e[p.e.size() - 2];
      SigId par = g_.first_last(below.sig, g_.level(t.sig) + 1, Side::Right);
      out = p;
      out.e.pop_back();
      if (par != below.sig)
        out.e.push_back(
            {par, Tag::R, 0, below.delta + g_.length(below.sig) - g_.length(par)});
      return out;
    }
  }
  return out;
}

Len Nav::cindex(const CStack& p) const {
  const Entry& t = p.e.back();
  switch (t.tag) {
    case Tag::Top:
      return 0;
    case Tag::L:
      return 1;
    case Tag::Child:
      return t.idx;
    case Tag::R: {
      const Entry& below = p.e[p.e.size() - 2];
      SigId par = g_.first_last(below.sig, g_.level(t.sig) + 1, Side::Right);
      return g_.degree(par);
    }
  }
  return 0;
}

CStack Nav::cright_at(const CStack& p, int l) const {
  if (p.e.back().tag == Tag::Top) return {};
  CStack base = p;
  if (base.e.back().tag == Tag::R) base.e.pop_back();
  const Entry& t = base.e.back();
  if (t.tag == Tag::Top) return {};
  // t is an L or Child entry (R above R cannot occur); its node has a right
  // sibling inside the parse parent.
  Len j = t.tag == Tag::L ? 2 : t.idx + 1;
  CStack q = cparent(base);
  CStack r = cchild(q, j);
  SigId rs = csig(r);
  if (g_.level(rs) <= l) return r;
  SigId rep = g_.rep_at(rs, l, Side::Left);
  push_collapse(r, {rep, Tag::L, 0, cdelta(r)});
  return r;
}

CStack Nav::cleft_at(const CStack& p, int l) const {
  if (p.e.back().tag == Tag::Top) return {};
  CStack base = p;
  if (base.e.back().tag == Tag::L) base.e.pop_back();
  const Entry& t = base.e.back();
  if (t.tag == Tag::Top) return {};
  CStack q = cparent(base);
  Len j = t.tag == Tag::R ? g_.degree(csig(q)) - 1 : t.idx - 1;
  CStack r = cchild(q, j);
  SigId rs = csig(r);
  if (g_.level(rs) <= l) return r;
  SigId rep = g_.rep_at(rs, l, Side::Right);
  push_collapse(r, {rep, Tag::R, 0, cdelta(r) + g_.length(rs) - g_.length(rep)});
  return r;
}

TCur Nav::tleaf_at(SigId s, Len i) const {
  assert(i >= 1 && i <= g_.length(s));
  CStack p = root(s);
  while (g_.rec(csig(p)).kind != Kind::Terminal) {
    SigId cur = csig(p);
    const Record& r = g_.rec(cur);
    Len local = i - cdelta(p);
    Len j;
    if (r.kind == Kind::Pair)
      j = local <= g_.length(r.left) ? 1 : 2;
    else
      j = (local - 1) / g_.length(r.left) + 1;
    p = cchild(p, j);
  }
  return {p, 0};
}

TCur Nav::tparent(const TCur& p) const {
  SigId rootSig = p.inner.e.front().sig;
  if (p.l == g_.level(rootSig)) return {};
  if (p.inner.e.back().tag == Tag::Top) return {p.inner, p.l + 1};
  CStack cp = cparent(p.inner);
  if (g_.level(csig(cp)) == p.l + 1) return {cp, p.l + 1};
  return {p.inner, p.l + 1};
}

TCur Nav::tchild(const TCur& p, Len k) const {
  if (p.l == 0) return {};
  if (g_.level(csig(p.inner)) == p.l) return {cchild(p.inner, k), p.l - 1};
  assert(k == 1);
  return {p.inner, p.l - 1};
}

Len Nav::tdegree(const TCur& p) const {
  if (p.l == 0) return 0;
  SigId s = csig(p.inner);
  return g_.level(s) == p.l ? g_.degree(s) : 1;
}

Len Nav::tindex(const TCur& p) const {
  SigId rootSig = p.inner.e.front().sig;
  if (p.l == g_.level(rootSig)) return 0;
  if (p.inner.e.back().tag == Tag::Top) return 1;  // copies up to the root
  CStack cp = cparent(p.inner);
  if (g_.level(csig(cp)) > p.l + 1) return 1;  // layer parent is a copy
  return cindex(p.inner);
}

Len Nav::trext(const TCur& p) const {
  if (p.l % 2 != 0) return 0;
  SigId rootSig = p.inner.e.front().sig;
  if (p.l == g_.level(rootSig)) return 0;
  if (p.inner.e.back().tag == Tag::Top) return 0;
  CStack cp = cparent(p.inner);
  if (g_.level(csig(cp)) != p.l + 1) return 0;
  return g_.degree(csig(cp)) - cindex(p.inner);
}

Len Nav::tlext(const TCur& p) const {
  if (p.l % 2 != 0) return 0;
  SigId rootSig = p.inner.e.front().sig;
  if (p.l == g_.level(rootSig)) return 0;
  if (p.inner.e.back().tag == Tag::Top) return 0;
  CStack cp = cparent(p.inner);
  if (g_.level(csig(cp)) != p.l + 1) return 0;
  return cindex(p.inner) - 1;
}

TCur Nav::tright(const TCur& p) const {
  CStack r = cright_at(p.inner, p.l);
  if (!r.valid()) return {};
  return {r, p.l};
}

TCur Nav::tleft(const TCur& p) const {
  CStack r = cleft_at(p.inner, p.l);
  if (!r.valid()) return {};
  return {r, p.l};
}

TCur Nav::trskip(const TCur& p, Len k) const {
  if (k == 0) return p;
  Len r = trext(p);
  if (k <= r) return tchild(tparent(p), tindex(p) + k);
  if (k == r + 1) {
    TCur last = r == 0 ? p : tchild(tparent(p), tindex(p) + r);
    return tright(last);
  }
  return {};
}

}  // namespace sigstr
