#include "sigstr/collection.hpp"

#include <algorithm>
#include <cmath>

namespace sigstr {

Collection::Collection(std::uint64_t seed, const Config& cfg)
    : cfg_(cfg), g_(seed, cfg), nav_(g_) {}

int Collection::guard_level(Len extra) const {
  double t = static_cast<double>(std::max<std::uint64_t>(t_, 2));
  double n = static_cast<double>(std::max<Len>(n_ + extra, 2));
  double bound = 8.0 * (cfg_.depth_guard_c * std::log(t) + std::log(n));
  return static_cast<int>(bound);
}

Handle Collection::intern_handle(SigId fwd, SigId rev) {
  auto it = by_sig_.find(fwd);
  if (it != by_sig_.end()) {
    assert(handles_[it->second].second == rev);
    return it->second;
  }
  Handle h = static_cast<Handle>(handles_.size());
  handles_.emplace_back(fwd, rev);
  by_sig_.emplace(fwd, h);
  n_ += g_.length(fwd);
  return h;
}

Handle Collection::make_string(std::string_view text) {
  assert(!text.empty());
  t_ += text.size();
  int guard = guard_level(text.size());
  SigId fwd = make_sig(g_, text, guard);
  std::string rev(text.rbegin(), text.rend());
  SigId bwd = make_sig(g_, rev, guard);
  return intern_handle(fwd, bwd);
}

Handle Collection::concat(Handle a, Handle b) {
  t_ += 1;
  int guard = guard_level(length(a) + length(b));
  SigId fwd = collapse(
      g_, RleSeq::concat(ci_concat_left(nav_, sig(a)), ci_concat_right(nav_, sig(b))),
      guard);
  SigId bwd = collapse(
      g_, RleSeq::concat(ci_concat_left(nav_, rsig(b)), ci_concat_right(nav_, rsig(a))),
      guard);
  return intern_handle(fwd, bwd);
}

std::pair<Handle, Handle> Collection::split(Handle h, Len k) {
  Len n = length(h);
  assert(k >= 1 && k < n);
  t_ += 1;
  int guard = guard_level(n);
  SigId lf = collapse(g_, ci_range(nav_, sig(h), 1, k), guard);
  SigId rf = collapse(g_, ci_range(nav_, sig(h), k + 1, n), guard);
  SigId lb = collapse(g_, ci_range(nav_, rsig(h), n - k + 1, n), guard);
  SigId rb = collapse(g_, ci_range(nav_, rsig(h), 1, n - k), guard);
  Handle left = intern_handle(lf, lb);
  Handle right = intern_handle(rf, rb);
  return {left, right};
}

Store::Store(std::uint64_t master_seed, const Config& cfg)
    : master_(master_seed), cfg_(cfg) {
  col_ = std::make_unique<Collection>(splitmix64(master_), cfg_);
}

template <class F>
auto Store::with_restart(F&& f) {
  for (;;) {
    try {
      return f(*col_);
    } catch (const failure& e) {
      // Length overflow depends only on the strings, not the seed: futile.
      if (!enabled_ || e.kind() == FailureKind::LengthOverflow) throw;
      if (attempt_ >= cfg_.restart_budget) throw;
      ++attempt_;
      rebuild();
    }
  }
}

void Store::apply(const Op& op) {
  switch (op.kind) {
    case Op::Make: {
      Handle h = col_->make_string(op.text);
      assert(h == op.r1);
      (void)h;
      break;
    }
    case Op::Concat: {
      Handle h = col_->concat(op.a, op.b);
      assert(h == op.r1);
      (void)h;
      break;
    }
    case Op::Split: {
      auto [l, r] = col_->split(op.a, op.k);
      assert(l == op.r1 && r == op.r2);
      (void)l;
      (void)r;
      break;
    }
  }
}

void Store::rebuild() {
  for (;;) {
    col_ = std::make_unique<Collection>(splitmix64(master_ ^ attempt_), cfg_);
    try {
      for (const Op& op : log_) apply(op);
      return;
    } catch (const failure& e) {
      if (e.kind() == FailureKind::LengthOverflow) throw;  // cannot happen twice
      if (attempt_ >= cfg_.restart_budget) throw;
      ++attempt_;
    }
  }
}

Handle Store::make_string(std::string_view text) {
  Handle h = with_restart([&](Collection& c) { return c.make_string(text); });
  Op op;
  op.kind = Op::Make;
  op.text = std::string(text);
  op.r1 = h;
  log_.push_back(std::move(op));
  return h;
}

Handle Store::concat(Handle a, Handle b) {
  Handle h = with_restart([&](Collection& c) { return c.concat(a, b); });
  Op op;
  op.kind = Op::Concat;
  op.a = a;
  op.b = b;
  op.r1 = h;
  log_.push_back(std::move(op));
  return h;
}

std::pair<Handle, Handle> Store::split(Handle h, Len k) {
  auto parts = with_restart([&](Collection& c) { return c.split(h, k); });
  Op op;
  op.kind = Op::Split;
  op.a = h;
  op.k = k;
  op.r1 = parts.first;
  op.r2 = parts.second;
  log_.push_back(std::move(op));
  return parts;
}

}  // namespace sigstr
