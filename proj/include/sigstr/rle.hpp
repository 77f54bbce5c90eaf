#ifndef SIGSTR_RLE_HPP
#define SIGSTR_RLE_HPP

// Run-length sequences of signatures: the exchange format between the
// decomposition routines and the collapse engine. Pushes coalesce adjacent
// runs of the same signature, so a sequence is always maximally grouped.

#include <string>
#include <vector>

#include "sigstr/grammar.hpp"

namespace sigstr {

struct Run {
  SigId sig;
  Len count;
  bool operator==(const Run&) const = default;
};

class RleSeq {
 public:
  void push(SigId sig, Len count) {
    if (count == 0) return;
    if (!runs_.empty() && runs_.back().sig == sig)
      runs_.back().count += count;
    else
      runs_.push_back({sig, count});
  }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  std::size_t size() const { return runs_.size(); }

  static RleSeq concat(RleSeq a, const RleSeq& b) {
    for (const Run& r : b.runs_) a.push(r.sig, r.count);
    return a;
  }

  Len expanded_length(const Grammar& g) const {
    Len n = 0;
    for (const Run& r : runs_) n += r.count * g.length(r.sig);
    return n;
  }

  std::string expand(const Grammar& g) const {
    std::string out;
    for (const Run& r : runs_)
      for (Len i = 0; i < r.count; ++i) g.expand(r.sig, out);
    return out;
  }

 private:
  std::vector<Run> runs_;
};

}  // namespace sigstr

#endif  // SIGSTR_RLE_HPP
