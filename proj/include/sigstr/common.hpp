#ifndef SIGSTR_COMMON_HPP
#define SIGSTR_COMMON_HPP

// Shared basic types: ids, configuration, and the failure model.
//
// All randomized machinery in this library can fail (with small probability)
// rather than degrade: a parse can run out of levels, a guarded operation can
// exceed its depth budget, a length can overflow the configured word size.
// Failures are thrown as `failure` and are meant to be caught by a restart
// driver, never swallowed.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigstr {

using SigId = std::uint32_t;
using Handle = std::uint32_t;
using Len = std::uint64_t;  // expanded lengths and 1-based positions

inline constexpr SigId kNoSig = 0xffffffffu;
inline constexpr Handle kNoHandle = 0xffffffffu;

enum class FailureKind {
  LevelOverflow,   // a signature would need a level above 2B
  DepthGuard,      // an operation exceeded its depth budget
  LengthOverflow,  // a length does not fit in B bits
};

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::LevelOverflow: return "LevelOverflow";
    case FailureKind::DepthGuard: return "DepthGuard";
    case FailureKind::LengthOverflow: return "LengthOverflow";
  }
  return "?";
}

// Recoverable randomized failure. A fresh instance with an independent seed
// replays the update history and in all likelihood succeeds.
class failure : public std::runtime_error {
 public:
  failure(FailureKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  FailureKind kind() const { return kind_; }

 private:
  FailureKind kind_;
};

// Thrown by an index operation when the store restarted under it: signature
// ids gathered so far belong to the discarded parse. Handles survive
// restarts, so the remedy is to rebuild the index from its handles and retry
// the operation; the indices do the rebuilding themselves on their next
// call, so retrying is all a caller needs.
struct EpochChange {};

// Runs f, retrying when a restart pre-empts it. Each retry replays further
// along the logged operations, so a handful of attempts always settles
// unless restarts are failing wholesale; then the signal propagates.
template <class F>
auto retry_on_epoch_change(F&& f) {
  for (int t = 0;; ++t) {
    try {
      return f();
    } catch (const EpochChange&) {
      if (t >= 8) throw;
    }
  }
}

struct Config {
  // Word size B: h-bit budget per signature, length cap 2^B-1, level cap 2B.
  // Smaller values make failures likely; tests force B=8 to exercise restarts.
  unsigned bits = 64;
  // Depth guard constant: an update creating a string of length n after total
  // update size t aborts when parsing passes level 8*(c*ln t + ln n).
  double depth_guard_c = 4.0;
  // Restart attempts per operation before the failure is surfaced.
  unsigned restart_budget = 100;

  Len max_len() const {
    return bits >= 64 ? ~Len{0} : ((Len{1} << bits) - 1);
  }
  int max_level() const { return static_cast<int>(2 * bits); }
};

}  // namespace sigstr

#endif  // SIGSTR_COMMON_HPP
