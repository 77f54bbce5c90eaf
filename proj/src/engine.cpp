#include "sigstr/engine.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sigstr/bench.hpp"
#include "sigstr/order.hpp"
#include "sigstr/slp.hpp"

namespace sigstr {

namespace {

// Command-level misuse: bad syntax, bad numbers, unknown handles. Reported
// as ERR and never touches engine state.
struct ProtoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& t, const char* what) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(t, &used);
    if (used != t.size() || t[0] == '-') throw ProtoError(what);
    return v;
  } catch (const ProtoError&) {
    throw;
  } catch (const std::exception&) {
    throw ProtoError(std::string("bad number for ") + what);
  }
}

// Queries that intern strings can be pre-empted by a store restart; the
// indices heal themselves at their next call, so a short retry loop is
// enough to ride out any burst of restarts.
template <class F>
std::string with_retry(F&& f) {
  try {
    return retry_on_epoch_change(f);
  } catch (const EpochChange&) {
    return "FAIL restarts kept pre-empting the query";
  }
}

}  // namespace

Engine::Engine(std::uint64_t seed, const Config& cfg)
    : seed_(seed), cfg_(cfg) {
  reset(seed);
}

Engine::~Engine() = default;

void Engine::reset(std::uint64_t seed) {
  seed_ = seed;
  st_ = std::make_unique<Store>(seed, cfg_);
  mi_ = std::make_unique<MatchIndex>(*st_);
  hist_ = std::make_unique<History>(*st_);
}

Handle Engine::arg_handle(const std::string& t) const {
  if (t.size() < 2 || t[0] != 'H')
    throw ProtoError("expected a handle like H3");
  std::uint64_t v = parse_u64(t.substr(1), "handle");
  if (v >= st_->size()) throw ProtoError("unknown handle " + t);
  return Handle(v);
}

std::optional<std::string> Engine::run_line(std::string_view line,
                                            std::size_t lineno) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(std::move(t));
  if (tok.empty() || tok[0][0] == '#') return std::nullopt;
  try {
    return dispatch(tok, lineno);
  } catch (const ProtoError& e) {
    return "ERR " + std::to_string(lineno) + ' ' + e.what();
  } catch (const failure& e) {
    return std::string("FAIL ") + e.what();
  } catch (const std::exception& e) {
    return "ERR " + std::to_string(lineno) + ' ' + e.what();
  }
}

void Engine::run_script(std::istream& in, std::ostream& out) {
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto reply = run_line(line, no)) out << *reply << '\n';
  }
}

std::string Engine::dispatch(const std::vector<std::string>& tok,
                             std::size_t no) {
  (void)no;
  const std::string& cmd = tok[0];
  auto arity = [&](std::size_t k, const char* usage) {
    if (tok.size() != k) throw ProtoError(std::string("usage: ") + usage);
  };
  auto fmt_handle = [](Handle h) { return "H" + std::to_string(h); };
  // FIND s [LIMIT k] / HFIND s [LIMIT k]
  auto arg_limit = [&](const char* usage) -> std::size_t {
    if (tok.size() == 2) return 0;
    if (tok.size() == 4 && tok[2] == "LIMIT") {
      std::size_t k = parse_u64(tok[3], "limit");
      if (k == 0) throw ProtoError("limit must be positive");
      return k;
    }
    throw ProtoError(std::string("usage: ") + usage);
  };

  if (cmd == "SEED") {
    arity(2, "SEED u64");
    reset(parse_u64(tok[1], "seed"));
    return "OK";
  }
  if (cmd == "RESTART") {
    arity(2, "RESTART ON|OFF");
    if (tok[1] == "ON")
      st_->set_restarts_enabled(true);
    else if (tok[1] == "OFF")
      st_->set_restarts_enabled(false);
    else
      throw ProtoError("usage: RESTART ON|OFF");
    return "OK";
  }
  if (cmd == "MAKE") {
    arity(2, "MAKE text");
    return fmt_handle(st_->make_string(tok[1]));
  }
  if (cmd == "CONCAT") {
    arity(3, "CONCAT Hi Hj");
    return fmt_handle(st_->concat(arg_handle(tok[1]), arg_handle(tok[2])));
  }
  if (cmd == "SPLIT") {
    arity(3, "SPLIT Hi k");
    Handle h = arg_handle(tok[1]);
    Len k = parse_u64(tok[2], "split point");
    if (k < 1 || k >= st_->length(h))
      throw ProtoError("split point out of range");
    auto [l, r] = st_->split(h, k);
    return fmt_handle(l) + ' ' + fmt_handle(r);
  }
  if (cmd == "EQ") {
    arity(3, "EQ Hi Hj");
    return st_->sig(arg_handle(tok[1])) == st_->sig(arg_handle(tok[2]))
               ? "TRUE"
               : "FALSE";
  }
  if (cmd == "CMP") {
    arity(3, "CMP Hi Hj");
    int c = compare(st_->collection(), arg_handle(tok[1]),
                    arg_handle(tok[2]));
    return c < 0 ? "LT" : c > 0 ? "GT" : "EQ";
  }
  if (cmd == "LCP") {
    arity(3, "LCP Hi Hj");
    return std::to_string(
        lcp(st_->collection(), arg_handle(tok[1]), arg_handle(tok[2])));
  }
  if (cmd == "ACTIVATE") {
    arity(2, "ACTIVATE Hi");
    Handle h = arg_handle(tok[1]);
    return with_retry([&] {
      mi_->activate(h);
      return std::string("OK");
    });
  }
  if (cmd == "DEACTIVATE") {
    arity(2, "DEACTIVATE Hi");
    mi_->deactivate(arg_handle(tok[1]));
    return "OK";
  }
  if (cmd == "FIND") {
    std::size_t k = arg_limit("FIND text [LIMIT k]");
    return with_retry([&] {
      auto occ = mi_->find(tok[1], k);
      if (occ.empty()) return std::string("-");
      std::string out;
      for (const auto& [h, pos] : occ) {
        if (!out.empty()) out += ' ';
        out += '(' + fmt_handle(h) + ',' + std::to_string(pos) + ')';
      }
      return out;
    });
  }
  if (cmd == "HINS") {
    arity(3, "HINS pos c");
    if (tok[2].size() != 1) throw ProtoError("HINS takes one character");
    Len pos = parse_u64(tok[1], "position");
    return "V" + std::to_string(
                     hist_->apply_insert(pos, (unsigned char)tok[2][0]));
  }
  if (cmd == "HDEL") {
    arity(3, "HDEL l r");
    return "V" + std::to_string(hist_->apply_delete(
                     parse_u64(tok[1], "l"), parse_u64(tok[2], "r")));
  }
  if (cmd == "HMOVE") {
    arity(4, "HMOVE l r dest");
    return "V" + std::to_string(hist_->apply_move(
                     parse_u64(tok[1], "l"), parse_u64(tok[2], "r"),
                     parse_u64(tok[3], "dest")));
  }
  if (cmd == "HFIND") {
    std::size_t k = arg_limit("HFIND text [LIMIT k]");
    return with_retry([&] {
      auto occ = hist_->find(tok[1], k);
      if (occ.empty()) return std::string("-");
      std::string out;
      for (const auto& [v, pos] : occ) {
        if (!out.empty()) out += ' ';
        out += '(' + std::to_string(v) + ',' + std::to_string(pos) + ')';
      }
      return out;
    });
  }
  if (cmd == "SLPEQ") {
    arity(3, "SLPEQ fileA fileB");
    return slp_eq(*st_, tok[1], tok[2]) ? "TRUE" : "FALSE";
  }
  if (cmd == "BENCH") {
    arity(2, "BENCH quick|ops");
    std::vector<Len> sizes;
    int repeats = 0;
    if (tok[1] == "quick") {
      sizes = {1 << 10, 1 << 12, 1 << 14};
      repeats = 2;
    } else if (tok[1] == "ops") {
      for (int e = 10; e <= 18; ++e) sizes.push_back(Len{1} << e);
      repeats = 3;
    } else {
      throw ProtoError("unknown bench suite (quick|ops)");
    }
    std::ostringstream os;
    write_csv(os, bench_ops(sizes, repeats, seed_));
    std::string s = os.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();  // one reply block
    return s;
  }
  throw ProtoError("unknown command " + cmd);
}

}  // namespace sigstr
