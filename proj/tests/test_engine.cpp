// Protocol conformance plus an end-to-end run at a tiny word size, where
// restarts fire constantly: replies must stay correct against a shadow text
// model, and a same-seed rerun must reproduce the transcript exactly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sigstr/engine.hpp"
#include "sigstr/rng.hpp"

using namespace sigstr;

namespace {

std::string run1(Engine& e, const std::string& line) {
  auto r = e.run_line(line, 1);
  REQUIRE(r.has_value());
  return *r;
}

}  // namespace

TEST_CASE("collection commands and reply formats") {
  Engine e(5);
  CHECK(run1(e, "MAKE banana") == "H0");
  CHECK(run1(e, "MAKE nana") == "H1");
  CHECK(run1(e, "MAKE ba") == "H2");
  // ba + nana spells banana: the concat dedups onto the existing handle.
  CHECK(run1(e, "CONCAT H2 H1") == "H0");
  CHECK(run1(e, "EQ H0 H0") == "TRUE");
  CHECK(run1(e, "EQ H0 H1") == "FALSE");
  CHECK(run1(e, "CMP H2 H0") == "LT");  // ba < banana
  CHECK(run1(e, "CMP H0 H2") == "GT");
  CHECK(run1(e, "CMP H1 H1") == "EQ");
  CHECK(run1(e, "LCP H0 H2") == "2");
  CHECK(run1(e, "LCP H0 H1") == "0");
  auto parts = run1(e, "SPLIT H0 2");
  CHECK(parts.substr(0, 3) == "H2 ");  // left part is the known "ba"
  CHECK(e.run_line("# just a comment", 9) == std::nullopt);
  CHECK(e.run_line("   ", 9) == std::nullopt);
  CHECK(e.run_line("", 9) == std::nullopt);
}

TEST_CASE("pattern commands") {
  Engine e(5);
  CHECK(run1(e, "MAKE banana") == "H0");
  CHECK(run1(e, "FIND ana") == "-");  // nothing active yet
  CHECK(run1(e, "ACTIVATE H0") == "OK");
  CHECK(run1(e, "FIND ana") == "(H0,2) (H0,4)");
  CHECK(run1(e, "FIND ana LIMIT 1") == "(H0,2)");
  CHECK(run1(e, "FIND a") == "(H0,2) (H0,4) (H0,6)");
  CHECK(run1(e, "FIND zz") == "-");
  CHECK(run1(e, "DEACTIVATE H0") == "OK");
  CHECK(run1(e, "FIND ana") == "-");
}

TEST_CASE("history commands") {
  Engine e(5);
  CHECK(run1(e, "HINS 1 a") == "V2");
  CHECK(run1(e, "HINS 2 c") == "V3");   // ac
  CHECK(run1(e, "HINS 2 b") == "V4");   // abc
  CHECK(run1(e, "HDEL 2 2") == "V5");   // ac again
  CHECK(run1(e, "HFIND ac") == "(3,1) (5,1)");
  CHECK(run1(e, "HFIND ac LIMIT 1") == "(3,1)");
  CHECK(run1(e, "HFIND b") == "(4,2)");
  CHECK(run1(e, "HFIND zz") == "-");
  CHECK(run1(e, "HMOVE 1 1 2") == "V6");  // ca
  CHECK(run1(e, "HFIND ca") == "(6,1)");
}

TEST_CASE("errors leave state alone and name the line") {
  Engine e(5);
  CHECK(run1(e, "MAKE abc") == "H0");
  CHECK(e.run_line("EQ H0 H9", 7)->substr(0, 6) == "ERR 7 ");
  CHECK(e.run_line("SPLIT H0 3", 8)->substr(0, 6) == "ERR 8 ");  // k = len
  CHECK(e.run_line("SPLIT H0 0", 9)->substr(0, 6) == "ERR 9 ");
  CHECK(e.run_line("HINS 1 xy", 2)->substr(0, 6) == "ERR 2 ");
  CHECK(e.run_line("HINS 5 x", 3)->substr(0, 6) == "ERR 3 ");
  CHECK(e.run_line("NOPE", 4)->substr(0, 6) == "ERR 4 ");
  CHECK(e.run_line("FIND a LIMIT 0", 5)->substr(0, 6) == "ERR 5 ");
  CHECK(e.run_line("MAKE a b", 6)->substr(0, 6) == "ERR 6 ");
  CHECK(e.run_line("CONCAT H0 x", 7)->substr(0, 6) == "ERR 7 ");
  CHECK(e.run_line("SEED -3", 8)->substr(0, 6) == "ERR 8 ");
  // State is intact: the handle still works.
  CHECK(run1(e, "CONCAT H0 H0") == "H1");
}

TEST_CASE("SEED resets everything deterministically") {
  Engine e(5);
  CHECK(run1(e, "MAKE xyz") == "H0");
  CHECK(run1(e, "HINS 1 q") == "V2");
  CHECK(run1(e, "SEED 11") == "OK");
  // Old handles are gone; numbering and versions restart.
  CHECK(e.run_line("EQ H0 H0", 1)->substr(0, 4) == "ERR ");
  CHECK(run1(e, "MAKE xyz") == "H0");
  CHECK(run1(e, "HINS 1 q") == "V2");
}

TEST_CASE("restart storm at eight bits: correct and reproducible") {
  // Brew a mixed workload over a small closed set of strings so the restart
  // budget comfortably covers the storm, then check every reply against a
  // shadow model and rerun the whole transcript for determinism.
  std::vector<std::string> script;
  script.push_back("RESTART ON");
  Rng rng(99);
  // Small closed set: at eight bits even a four-letter string fails to
  // parse a fifth of the time, and every restart replays the whole log, so
  // the workload keeps the set of distinct strings tiny.
  std::vector<std::string> pool = {"a", "b", "ab", "ba", "aab", "bba"};
  for (int i = 0; i < 240; ++i) {
    unsigned pick = unsigned(rng.below(5));
    if (pick < 2) {
      script.push_back("MAKE " + pool[rng.below(pool.size())]);
    } else if (pick == 2) {
      script.push_back("CONCAT");  // operands patched in during the run
    } else if (pick == 3) {
      script.push_back("SPLIT");
    } else {
      script.push_back(i % 2 ? "FINDQ" : "ACT");
    }
  }

  auto run = [&](Engine& e) {
    // Shadow model: what each handle must denote, per the replies.
    std::vector<std::string> denote;
    std::set<unsigned> active;
    std::vector<std::string> transcript;
    Rng pat(7);
    auto reply_handle = [&](const std::string& reply) {
      REQUIRE(reply[0] == 'H');
      return unsigned(std::stoul(reply.substr(1)));
    };
    auto feed = [&](const std::string& line) {
      std::string r = run1(e, line);
      transcript.push_back(r);
      // Queries and activations intern auxiliary handles (patterns, carved
      // parts); keep the denotation table covering every handle.
      while (denote.size() < e.store().size())
        denote.push_back(e.store().str(Handle(denote.size())));
      return r;
    };
    for (const std::string& cmd : script) {
      if (cmd.rfind("MAKE ", 0) == 0) {
        unsigned h = reply_handle(feed(cmd));
        REQUIRE(h < denote.size());
        REQUIRE(denote[h] == cmd.substr(5));
      } else if (cmd == "CONCAT" && !denote.empty()) {
        unsigned a = unsigned(pat.below(denote.size()));
        unsigned b = unsigned(pat.below(denote.size()));
        if (denote[a].size() + denote[b].size() > 3) continue;
        std::string want = denote[a] + denote[b];
        unsigned h = reply_handle(
            feed("CONCAT H" + std::to_string(a) + " H" + std::to_string(b)));
        REQUIRE(h < denote.size());
        REQUIRE(denote[h] == want);
      } else if (cmd == "SPLIT" && !denote.empty()) {
        unsigned a = unsigned(pat.below(denote.size()));
        if (denote[a].size() < 2) continue;
        Len k = 1 + pat.below(denote[a].size() - 1);
        std::string r =
            feed("SPLIT H" + std::to_string(a) + " " + std::to_string(k));
        auto sp = r.find(' ');
        REQUIRE(sp != std::string::npos);
        unsigned hl = unsigned(std::stoul(r.substr(1, sp - 1)));
        unsigned hr = unsigned(std::stoul(r.substr(sp + 2)));
        REQUIRE(hl < denote.size());
        REQUIRE(hr < denote.size());
        CHECK(denote[hl] == denote[a].substr(0, k));
        CHECK(denote[hr] == denote[a].substr(k));
      } else if (cmd == "ACT" && !denote.empty()) {
        unsigned a = unsigned(pat.below(denote.size()));
        bool off = active.count(a) && pat.below(2) == 0;
        feed((off ? "DEACTIVATE H" : "ACTIVATE H") + std::to_string(a));
        if (off)
          active.erase(a);
        else
          active.insert(a);
      } else if (cmd == "FINDQ") {
        std::string p = pool[pat.below(pool.size())];
        std::string r = feed("FIND " + p);
        std::set<std::pair<unsigned, Len>> want;
        for (unsigned h : active)
          for (std::size_t at = denote[h].find(p); at != std::string::npos;
               at = denote[h].find(p, at + 1))
            want.insert({h, Len(at + 1)});
        std::string exp;
        for (const auto& [h, posn] : want) {
          if (!exp.empty()) exp += ' ';
          exp += "(H" + std::to_string(h) + ',' + std::to_string(posn) + ')';
        }
        if (exp.empty()) exp = "-";
        REQUIRE(r == exp);
      } else {
        std::string r = run1(e, cmd);
        transcript.push_back(r);
      }
    }
    return transcript;
  };

  Config narrow;
  narrow.bits = 8;
  // Restarts are random per seed; scan a fixed seed list for one that shows
  // a few, then verify reproducibility on that seed. Deterministic overall.
  std::uint64_t chosen = 0;
  bool found = false;
  for (std::uint64_t seed = 3; seed < 23 && !found; ++seed) {
    Engine probe(seed, narrow);
    run(probe);
    if (probe.store().epoch() > 0) {
      chosen = seed;
      found = true;
    }
  }
  REQUIRE(found);
  Engine e1(chosen, narrow), e2(chosen, narrow);
  auto t1 = run(e1), t2 = run(e2);
  CHECK(t1 == t2);
  CHECK(e1.store().epoch() > 0);
  CHECK(e1.store().epoch() == e2.store().epoch());
  // The same workload on a comfortable word size, checked by the same
  // shadow model, with no restarts at all.
  Engine wide(3);
  run(wide);
  CHECK(wide.store().epoch() == 0);
}
