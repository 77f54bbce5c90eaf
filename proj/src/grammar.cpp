#include "sigstr/grammar.hpp"

#include <algorithm>

namespace sigstr {

namespace {

// Mask selecting h-indices j (1-based, stored at bit j-1) with j >= jmin.
std::uint64_t h_index_mask(unsigned jmin, unsigned bits) {
  std::uint64_t all = bits >= 64 ? ~std::uint64_t{0}
                                 : ((std::uint64_t{1} << bits) - 1);
  if (jmin <= 1) return all;
  if (jmin > 64) return 0;
  return all & ~((std::uint64_t{1} << (jmin - 1)) - 1);
}

}  // namespace

SigId Grammar::push_record(Record&& r) {
  r.hbits = rng_.next();
  if (cfg_.bits < 64) r.hbits &= (std::uint64_t{1} << cfg_.bits) - 1;
  SigId self = static_cast<SigId>(records_.size());
  build_chains(r, self);
  records_.push_back(std::move(r));
  return self;
}

void Grammar::build_chains(Record& r, SigId self) {
  SigId parentL = kNoSig, parentR = kNoSig;
  switch (r.kind) {
    case Kind::Terminal: break;
    case Kind::Pair: parentL = r.left, parentR = r.right; break;
    case Kind::Power: parentL = parentR = r.left; break;
  }
  r.upL.fill(kNoSig);
  r.upR.fill(kNoSig);
  r.upL[0] = parentL;
  r.upR[0] = parentR;
  for (int j = 1; j < 8; ++j) {
    SigId a = r.upL[j - 1];
    r.upL[j] = a == kNoSig ? kNoSig : records_[a].upL[j - 1];
    SigId b = r.upR[j - 1];
    r.upR[j] = b == kNoSig ? kNoSig : records_[b].upR[j - 1];
  }
  if (parentL != kNoSig) r.bL = records_[parentL].bL;
  if (parentR != kNoSig) r.bR = records_[parentR].bR;
  r.bL.set(static_cast<unsigned>(r.level));
  r.bR.set(static_cast<unsigned>(r.level));
  (void)self;
}

SigId Grammar::intern_terminal(unsigned char c) {
  auto it = term_map_.find(c);
  if (it != term_map_.end()) return it->second;
  Record r;
  r.kind = Kind::Terminal;
  r.ch = c;
  r.length = 1;
  r.level = 0;
  SigId s = push_record(std::move(r));
  term_map_.emplace(c, s);
  return s;
}

int Grammar::pair_level(SigId l, SigId r) const {
  int maxl = std::max(records_[l].level, records_[r].level);
  unsigned jmin = static_cast<unsigned>(maxl / 2 + 1);
  std::uint64_t cand = ~records_[l].hbits & records_[r].hbits;
  cand &= h_index_mask(jmin, cfg_.bits);
  if (cand == 0) return -1;
  int j = __builtin_ctzll(cand) + 1;
  return 2 * j;
}

SigId Grammar::intern_pair(SigId l, SigId r) {
  std::uint64_t key = (std::uint64_t{l} << 32) | r;
  auto it = pair_map_.find(key);
  if (it != pair_map_.end()) return it->second;
  int lvl = pair_level(l, r);
  if (lvl < 0)
    throw failure(FailureKind::LevelOverflow,
                  "no admissible pair level within " +
                      std::to_string(cfg_.max_level()));
  Len len;
  if (__builtin_add_overflow(records_[l].length, records_[r].length, &len) ||
      len > cfg_.max_len())
    throw failure(FailureKind::LengthOverflow,
                  "pair length exceeds 2^" + std::to_string(cfg_.bits) + "-1");
  Record rec;
  rec.kind = Kind::Pair;
  rec.left = l;
  rec.right = r;
  rec.length = len;
  rec.level = lvl;
  SigId s = push_record(std::move(rec));
  pair_map_.emplace(key, s);
  return s;
}

SigId Grammar::intern_power(SigId base, Len k) {
  assert(k >= 2);
  assert(records_[base].level % 2 == 0);
  auto it = power_map_.find(PowerKey{base, k});
  if (it != power_map_.end()) return it->second;
  int lvl = records_[base].level + 1;
  if (lvl > cfg_.max_level())
    throw failure(FailureKind::LevelOverflow,
                  "power level above " + std::to_string(cfg_.max_level()));
  Len len;
  if (__builtin_mul_overflow(records_[base].length, k, &len) ||
      len > cfg_.max_len())
    throw failure(FailureKind::LengthOverflow,
                  "power length exceeds 2^" + std::to_string(cfg_.bits) + "-1");
  Record rec;
  rec.kind = Kind::Power;
  rec.left = base;
  rec.count = k;
  rec.length = len;
  rec.level = lvl;
  SigId s = push_record(std::move(rec));
  power_map_.emplace(PowerKey{base, k}, s);
  return s;
}

Len Grammar::degree(SigId s) const {
  const Record& r = records_[s];
  switch (r.kind) {
    case Kind::Terminal: return 0;
    case Kind::Pair: return 2;
    case Kind::Power: return r.count;
  }
  return 0;
}

SigId Grammar::child_sig(SigId s, Len k) const {
  const Record& r = records_[s];
  if (r.kind == Kind::Pair) {
    assert(k == 1 || k == 2);
    return k == 1 ? r.left : r.right;
  }
  assert(r.kind == Kind::Power && k >= 1 && k <= r.count);
  return r.left;
}

SigId Grammar::first_last(SigId s, int l, Side side) const {
  const Record& r = records_[s];
  assert(l <= r.level);
  const Mask192& mask = side == Side::Left ? r.bL : r.bR;
  int k = mask.popcount_at_least(l < 0 ? 0 : static_cast<unsigned>(l));
  assert(k >= 1);
  int steps = k - 1;
  SigId cur = s;
  for (int j = 0; steps; ++j, steps >>= 1)
    if (steps & 1)
      cur = side == Side::Left ? records_[cur].upL[j] : records_[cur].upR[j];
  return cur;
}

SigId Grammar::rep_at(SigId s, int l, Side side) const {
  const Record& r = records_[s];
  if (r.level <= l) return s;
  const Mask192& mask = side == Side::Left ? r.bL : r.bR;
  int steps = mask.popcount_at_least(static_cast<unsigned>(l) + 1);
  SigId cur = s;
  for (int j = 0; steps; ++j, steps >>= 1)
    if (steps & 1)
      cur = side == Side::Left ? records_[cur].upL[j] : records_[cur].upR[j];
  assert(records_[cur].level <= l);
  return cur;
}

void Grammar::expand(SigId s, std::string& out) const {
  const Record& r = records_[s];
  switch (r.kind) {
    case Kind::Terminal:
      out.push_back(static_cast<char>(r.ch));
      break;
    case Kind::Pair:
      expand(r.left, out);
      expand(r.right, out);
      break;
    case Kind::Power:
      for (Len i = 0; i < r.count; ++i) expand(r.left, out);
      break;
  }
}

std::string Grammar::expand(SigId s) const {
  std::string out;
  out.reserve(records_[s].length);
  expand(s, out);
  return out;
}

unsigned char Grammar::char_at(SigId s, Len pos) const {
  assert(pos >= 1 && pos <= records_[s].length);
  for (;;) {
    const Record& r = records_[s];
    if (r.kind == Kind::Terminal) return r.ch;
    if (r.kind == Kind::Pair) {
      Len ll = records_[r.left].length;
      if (pos <= ll) {
        s = r.left;
      } else {
        pos -= ll;
        s = r.right;
      }
    } else {
      Len bl = records_[r.left].length;
      pos = (pos - 1) % bl + 1;
      s = r.left;
    }
  }
}

}  // namespace sigstr
