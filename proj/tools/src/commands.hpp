#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace entkit::cli {

// Configuration or usage problems detected after flag parsing; mapped to
// exit code 2 by main.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Knobs shared by more than one command. Commands ignore fields they do not
// use but echo everything they acted on into the output envelope.
struct Options {
  std::string input = "-";
  std::string input_b;  // second positional (eh)
  std::string output;   // empty -> stdout
  std::string format = "json";
  double epsilon = 0.01;
  unsigned k_max = 3;
  bool k_max_given = false;
  std::string families;  // comma list; empty -> default ladder
  std::string compressor = "builtin";
  bool separator_mode = false;
  bool verify_compressor = false;
  bool split = false;
  bool raw = false;  // keep trailing newline bytes on text inputs
  std::string alphabet;       // explicit symbol list; empty -> infer
  std::string alphabet_mode = "global";  // matrix: global | per-file | explicit
  std::string method = "ncd";            // matrix: ncd | nid | eh
  unsigned threads = 0;
  double audit_slack = 1e-9;
  std::string table;  // eh: explicit joint table JSON file
  std::string model;  // typical: family spec
  std::uint64_t n = 0;
  bool n_given = false;
  std::uint64_t cap = 0;  // typical: enumeration cap override, 0 -> default
  std::vector<std::uint64_t> curve_lengths;
  std::uint64_t seed = 0;
  std::string kind = "random";  // gen: parity | random | constant | skewed
  std::uint64_t sigma = 2;
};

int cmd_entropy(const Options& opt);
int cmd_select(const Options& opt);
int cmd_matrix(const Options& opt);
int cmd_typical(const Options& opt);
int cmd_compress(const Options& opt);
int cmd_decompress(const Options& opt);
int cmd_eh(const Options& opt);
int cmd_gen(const Options& opt);

}  // namespace entkit::cli
