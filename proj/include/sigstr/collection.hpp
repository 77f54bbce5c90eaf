#ifndef SIGSTR_COLLECTION_HPP
#define SIGSTR_COLLECTION_HPP

// Persistent string collection with canonical handles.
//
// Every stored string is represented by the canonical root signature of its
// parse; equal strings therefore always receive the same dense handle, and
// equality is handle comparison. Each handle also keeps the root signature
// of the reversed string, maintained through every operation, so reversed
// substrings (needed by the pattern index) are as cheap as forward ones.
// Operations never copy characters: concat splices decompositions, split
// extracts range decompositions, both in time proportional to parse depth.
//
// Collection is the raw layer: randomized failures (level exhaustion, depth
// guard) escape as exceptions. Store wraps it with an update log and restart
// driver: on a recoverable failure it rebuilds a fresh collection under a
// derived seed, replays the log (handle numbering is reproduced exactly,
// since equality classes do not depend on the seed), and retries.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigstr/cursor.hpp"
#include "sigstr/decompose.hpp"

namespace sigstr {

class Collection {
 public:
  Collection(std::uint64_t seed, const Config& cfg);

  Handle make_string(std::string_view text);
  Handle concat(Handle a, Handle b);
  std::pair<Handle, Handle> split(Handle h, Len k);  // parts [1..k], [k+1..n]

  std::size_t size() const { return handles_.size(); }
  Len length(Handle h) const { return g_.length(sig(h)); }
  std::string str(Handle h) const { return g_.expand(sig(h)); }
  unsigned char char_at(Handle h, Len pos) const {
    return g_.char_at(sig(h), pos);
  }
  SigId sig(Handle h) const { return handles_[h].first; }
  SigId rsig(Handle h) const { return handles_[h].second; }
  Handle by_sig(SigId s) const {
    auto it = by_sig_.find(s);
    return it == by_sig_.end() ? kNoHandle : it->second;
  }

  Grammar& grammar() { return g_; }
  const Grammar& grammar() const { return g_; }
  const Nav& nav() const { return nav_; }

  std::uint64_t updates() const { return t_; }
  Len corpus() const { return n_; }
  // Depth budget for the next operation touching extra new characters.
  int guard_level(Len extra) const;

 private:
  Handle intern_handle(SigId fwd, SigId rev);

  Config cfg_;
  Grammar g_;
  Nav nav_;
  std::vector<std::pair<SigId, SigId>> handles_;  // forward, reversed
  std::unordered_map<SigId, Handle> by_sig_;
  std::uint64_t t_ = 0;  // accumulated update size
  Len n_ = 0;            // total length of distinct stored strings
};

class Store {
 public:
  Store(std::uint64_t master_seed, const Config& cfg);

  Handle make_string(std::string_view text);
  Handle concat(Handle a, Handle b);
  std::pair<Handle, Handle> split(Handle h, Len k);

  Len length(Handle h) const { return col_->length(h); }
  std::string str(Handle h) const { return col_->str(h); }
  unsigned char char_at(Handle h, Len pos) const { return col_->char_at(h, pos); }
  SigId sig(Handle h) const { return col_->sig(h); }
  SigId rsig(Handle h) const { return col_->rsig(h); }
  std::size_t size() const { return col_->size(); }
  Collection& collection() { return *col_; }
  const Collection& collection() const { return *col_; }
  Grammar& grammar() { return col_->grammar(); }
  const Nav& nav() const { return col_->nav(); }

  // Number of rebuild+replay rounds performed so far. Signature ids from
  // before a bump are invalid; handles stay stable.
  unsigned epoch() const { return attempt_; }
  bool restarts_enabled() const { return enabled_; }
  void set_restarts_enabled(bool on) { enabled_ = on; }

 private:
  struct Op {
    enum Kind { Make, Concat, Split } kind;
    std::string text;
    Handle a = kNoHandle, b = kNoHandle;
    Len k = 0;
    Handle r1 = kNoHandle, r2 = kNoHandle;  // recorded results
  };

  template <class F>
  auto with_restart(F&& f);
  void apply(const Op& op);
  void rebuild();

  std::uint64_t master_;
  Config cfg_;
  std::unique_ptr<Collection> col_;
  std::vector<Op> log_;
  unsigned attempt_ = 0;
  bool enabled_ = true;
};

}  // namespace sigstr

#endif  // SIGSTR_COLLECTION_HPP
