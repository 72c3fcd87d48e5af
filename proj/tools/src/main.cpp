#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "entkit/errors.hpp"
#include "entkit/version.hpp"

namespace {

using entkit::cli::Options;

void add_output_flags(CLI::App* sub, Options& opt,
                      const std::string& formats = "json") {
  sub->add_option("--output,-o", opt.output, "write here instead of standard output");
  sub->add_option("--format", opt.format, "output format: " + formats)
      ->default_str("json");
}

void add_text_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--alphabet", opt.alphabet,
                  "explicit symbol list; default infers from the input");
  sub->add_flag("--raw", opt.raw, "keep a trailing newline instead of stripping it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"empirical-entropy toolkit"};
  app.set_version_flag("--version", std::string(entkit::kToolName) + " " +
                                        entkit::kToolVersion);
  app.set_config("--config", "", "read defaults from an INI file (same keys as flags)");
  app.require_subcommand(1);

  Options opt;

  CLI::App* entropy = app.add_subcommand("entropy", "per-order entropy profile of a string");
  entropy->add_option("input", opt.input, "input file, or - for standard input");
  entropy->add_option("--k-max", opt.k_max, "largest context order to report");
  add_text_flags(entropy, opt);
  add_output_flags(entropy, opt, "json, csv");

  CLI::App* select = app.add_subcommand("select", "pick the cheapest model for a string");
  select->add_option("input", opt.input, "input file, or - for standard input");
  select->add_option("--epsilon", opt.epsilon, "typicality slack per symbol");
  select->add_option("--k-max", opt.k_max, "largest Markov order in the default ladder");
  select->add_option("--families", opt.families,
                     "comma list of candidate families (bernoulli, markov-K, singleton, uniform)");
  add_text_flags(select, opt);
  add_output_flags(select, opt);

  CLI::App* matrix = app.add_subcommand("matrix", "pairwise distance matrix over a corpus");
  matrix->add_option("manifest", opt.input,
                     "label,path CSV or a directory of corpus files")
      ->required();
  matrix->add_option("--method", opt.method, "distance: ncd, nid, or eh");
  matrix->add_option("--compressor", opt.compressor,
                     "ncd backend: builtin or external:\"<command>\"");
  matrix->add_flag("--separator-mode", opt.separator_mode,
                   "join pairs with a fresh separator symbol in the builtin compressor");
  matrix->add_flag("--verify-compressor", opt.verify_compressor,
                   "probe an external compressor for determinism before use");
  matrix->add_option("--epsilon", opt.epsilon, "typicality slack for nid model selection");
  matrix->add_option("--k-max", opt.k_max, "largest Markov order for nid model selection");
  matrix->add_option("--families", opt.families, "comma list of nid candidate families");
  matrix->add_option("--alphabet-mode", opt.alphabet_mode,
                     "global (shared, inferred), per-file, or explicit");
  matrix->add_option("--alphabet", opt.alphabet, "symbol list for --alphabet-mode explicit");
  matrix->add_option("--threads", opt.threads, "worker threads; 0 picks automatically");
  matrix->add_option("--audit-slack", opt.audit_slack,
                     "tolerance for the metric-property audit");
  matrix->add_flag("--raw", opt.raw, "keep trailing newlines on corpus files");
  add_output_flags(matrix, opt, "json, csv, phylip");

  CLI::App* typical = app.add_subcommand("typical", "census of a model's typical set");
  typical->add_option("--model", opt.model,
                      "model spec: bernoulli:P | bernoulli:P0,P1,... | uniform:K | "
                      "singleton:STRING")
      ->required();
  typical->add_option("--n", opt.n, "string length for bernoulli and uniform models");
  typical->add_option("--epsilon", opt.epsilon, "typicality slack per symbol");
  typical->add_option("--cap", opt.cap, "enumeration budget override");
  typical->add_option("--curve", opt.curve_lengths,
                      "also report atypical mass at these lengths (closed form)");
  add_output_flags(typical, opt);

  CLI::App* compress = app.add_subcommand("compress", "encode a string as a prefix-code blob");
  compress->add_option("input", opt.input, "input file, or - for standard input");
  compress->add_option("--alphabet", opt.alphabet,
                       "explicit symbol list; default infers from the input");
  compress->add_flag("--split", opt.split,
                     "print a header/payload size report instead of the blob");
  compress->add_option("--output,-o", opt.output, "write the blob here");

  CLI::App* decompress = app.add_subcommand("decompress", "decode a prefix-code blob");
  decompress->add_option("input", opt.input, "blob file, or - for standard input");
  decompress->add_option("--output,-o", opt.output,
                         "write the decoded bytes here instead of standard output");

  CLI::App* eh = app.add_subcommand("eh", "entropy distance between two distributions");
  eh->add_option("input_x", opt.input, "first string file, or - for standard input");
  eh->add_option("input_y", opt.input_b, "second string file");
  eh->add_option("--table", opt.table,
                 "JSON joint table {outcomes_x, outcomes_y, p} instead of strings");
  add_text_flags(eh, opt);
  add_output_flags(eh, opt);

  CLI::App* gen = app.add_subcommand("gen", "deterministic test strings");
  gen->add_option("--kind", opt.kind, "parity, random, constant, or skewed");
  gen->add_option("--n", opt.n, "length")->required();
  gen->add_option("--sigma", opt.sigma, "alphabet size for random and skewed kinds");
  gen->add_option("--seed", opt.seed, "RNG seed for random and skewed kinds");
  gen->add_option("--output,-o", opt.output, "write here instead of standard output");

  // Let flags placed after the subcommand name reach the top-level app, so
  // --config works in either position.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opt.k_max_given = entropy->count("--k-max") > 0 || select->count("--k-max") > 0 ||
                    matrix->count("--k-max") > 0;
  opt.n_given = typical->count("--n") > 0 || gen->count("--n") > 0;

  const std::pair<CLI::App*, std::function<int(const Options&)>> commands[] = {
      {entropy, entkit::cli::cmd_entropy},   {select, entkit::cli::cmd_select},
      {matrix, entkit::cli::cmd_matrix},     {typical, entkit::cli::cmd_typical},
      {compress, entkit::cli::cmd_compress}, {decompress, entkit::cli::cmd_decompress},
      {eh, entkit::cli::cmd_eh},             {gen, entkit::cli::cmd_gen}};

  try {
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) return run(opt);
    }
  } catch (const entkit::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const entkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
