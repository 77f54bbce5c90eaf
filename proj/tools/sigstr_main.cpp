// Command-line front end: runs protocol scripts against one engine.
//
// Reads commands from a script file (or standard input), one per line, and
// prints one reply line per command. See README for the protocol.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sigstr/engine.hpp"

int main(int argc, char** argv) {
  CLI::App app{"persistent string collection driver"};
  std::string script;
  std::uint64_t seed = 0;
  unsigned bits = 64;
  app.add_option("script", script,
                 "protocol script to run (default: standard input)");
  app.add_option("--seed", seed, "master seed for the engine");
  app.add_option("--bits", bits,
                 "word size B; small values exercise restarts")
      ->check(CLI::Range(4u, 64u));
  CLI11_PARSE(app, argc, argv);

  sigstr::Config cfg;
  cfg.bits = bits;
  sigstr::Engine eng(seed, cfg);
  if (script.empty()) {
    eng.run_script(std::cin, std::cout);
  } else {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "cannot open " << script << '\n';
      return 1;
    }
    eng.run_script(in, std::cout);
  }
  return 0;
}
