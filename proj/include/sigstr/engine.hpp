// Line-protocol driver tying the whole library together: one engine owns a
// store, a pattern index over its activatable strings, and an edit timeline,
// and executes textual commands against them.
//
// One command, one reply line (BENCH replies with a CSV block). Errors in a
// command are reported as "ERR <line> <reason>" without disturbing state;
// a surfaced parse failure (restarts disabled or budget exhausted) reports
// "FAIL <reason>". Queries interrupted by a store restart are retried after
// the indices heal, so callers never observe a half-rebuilt index.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigstr/collection.hpp"
#include "sigstr/history.hpp"
#include "sigstr/match_index.hpp"

namespace sigstr {

class Engine {
 public:
  explicit Engine(std::uint64_t seed = 0, const Config& cfg = Config{});
  ~Engine();

  // Executes one line; returns the reply, or nothing for blank lines and
  // lines starting with '#'. lineno only labels error replies.
  std::optional<std::string> run_line(std::string_view line,
                                      std::size_t lineno);

  // Feeds every line of in through run_line, writing replies to out.
  void run_script(std::istream& in, std::ostream& out);

  Store& store() { return *st_; }
  History& history() { return *hist_; }
  MatchIndex& match_index() { return *mi_; }

 private:
  void reset(std::uint64_t seed);
  std::string dispatch(const std::vector<std::string>& tok, std::size_t no);
  Handle arg_handle(const std::string& t) const;

  std::uint64_t seed_;
  Config cfg_;
  std::unique_ptr<Store> st_;
  std::unique_ptr<MatchIndex> mi_;
  std::unique_ptr<History> hist_;
};

}  // namespace sigstr
