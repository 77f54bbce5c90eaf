#include "sigstr/slp.hpp"

#include <cstddef>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sigstr {

namespace {

struct Rule {
  enum Kind { Char, Concat, Power } kind;
  unsigned char ch = 0;
  std::vector<std::string> rhs;
  Len k = 0;
};

std::unordered_map<std::string, Rule> parse_rules(const std::string& path,
                                                  std::string& start) {
  std::ifstream in(path);
  if (!in) throw SlpError(path + ": cannot open");
  std::unordered_map<std::string, Rule> rules;
  std::string line;
  std::size_t lineno = 0;
  bool seen_start = false;
  auto fail = [&](const std::string& msg) -> void {
    throw SlpError(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!seen_start) {
      if (tok.size() != 2 || tok[0] != "#start")
        fail("expected `#start NAME` header");
      start = tok[1];
      seen_start = true;
      continue;
    }
    if (tok[0][0] == '#') continue;
    if (tok.size() < 3 || tok[1] != "->") fail("expected `NAME -> ...`");
    Rule r;
    if (tok[2].size() == 3 && tok[2].front() == '\'' && tok[2].back() == '\'') {
      if (tok.size() != 3) fail("character rule takes exactly 'c'");
      r.kind = Rule::Char;
      r.ch = static_cast<unsigned char>(tok[2][1]);
    } else if (tok.size() == 5 && tok[3] == "^") {
      r.kind = Rule::Power;
      r.rhs.push_back(tok[2]);
      try {
        std::size_t used = 0;
        r.k = std::stoull(tok[4], &used);
        if (used != tok[4].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail("power count must be an integer");
      }
      if (r.k == 0) fail("power count must be positive");
    } else {
      if (tok.size() < 4) fail("concatenation needs at least two names");
      r.kind = Rule::Concat;
      for (std::size_t i = 2; i < tok.size(); ++i) r.rhs.push_back(tok[i]);
    }
    if (!rules.emplace(tok[0], std::move(r)).second)
      fail("duplicate rule for " + tok[0]);
  }
  if (!seen_start) throw SlpError(path + ": missing `#start NAME` header");
  return rules;
}

Handle pow_handle(Store& st, Handle base, Len k) {
  Handle acc{};
  bool has = false;
  Handle sq = base;
  for (;;) {
    if (k & 1) {
      acc = has ? st.concat(acc, sq) : sq;
      has = true;
    }
    k >>= 1;
    if (k == 0) break;
    sq = st.concat(sq, sq);
  }
  return acc;
}

}  // namespace

Handle build_slp(Store& st, const std::string& path) {
  std::string start;
  auto rules = parse_rules(path, start);

  std::unordered_map<std::string, Handle> done;
  std::unordered_set<std::string> open;  // names on the stack: cycle guard
  struct Frame {
    const std::string* name;
    const Rule* rule;
    std::size_t next = 0;
    Handle acc{};
    bool has = false;
  };
  std::vector<Frame> stk;
  auto push = [&](const std::string& nm) {
    auto it = rules.find(nm);
    if (it == rules.end()) throw SlpError(path + ": undefined name " + nm);
    if (!open.insert(nm).second)
      throw SlpError(path + ": cycle through " + nm);
    stk.push_back({&it->first, &it->second});
  };
  push(start);
  while (!stk.empty()) {
    Frame& f = stk.back();
    const Rule& r = *f.rule;
    if (r.kind == Rule::Char) {
      done[*f.name] = st.make_string(std::string(1, char(r.ch)));
    } else if (f.next < r.rhs.size()) {
      auto dit = done.find(r.rhs[f.next]);
      if (dit == done.end()) {
        push(r.rhs[f.next]);  // resolve the child first
        continue;
      }
      ++f.next;
      f.acc = f.has ? st.concat(f.acc, dit->second) : dit->second;
      f.has = true;
      continue;
    } else {
      done[*f.name] = r.kind == Rule::Power ? pow_handle(st, f.acc, r.k)
                                            : f.acc;
    }
    open.erase(*f.name);
    stk.pop_back();
  }
  return done.at(start);
}

bool slp_eq(Store& st, const std::string& path_a, const std::string& path_b) {
  Handle a = build_slp(st, path_a);
  Handle b = build_slp(st, path_b);
  return st.sig(a) == st.sig(b);
}

}  // namespace sigstr
