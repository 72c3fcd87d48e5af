#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string_view>

#include "entkit/compressor.hpp"
#include "entkit/distances.hpp"
#include "entkit/entropy.hpp"
#include "entkit/errors.hpp"
#include "entkit/huffman.hpp"
#include "entkit/models.hpp"
#include "entkit/typicality.hpp"
#include "entkit/version.hpp"
#include "io.hpp"
#include "json.hpp"
#include "render.hpp"

using nlohmann::json;

namespace entkit::cli {

namespace {

std::vector<unsigned char> read_text_input(const Options& opt, const std::string& path) {
  std::vector<unsigned char> bytes = read_input(path);
  if (!opt.raw) strip_trailing_newline(bytes);
  return bytes;
}

SymbolString parse_symbols(const std::vector<unsigned char>& bytes,
                           const std::string& alphabet_spec) {
  std::span<const unsigned char> view(bytes);
  if (alphabet_spec.empty()) {
    return SymbolString::parse_with_inferred_alphabet(view);
  }
  return SymbolString::parse(view, Alphabet::from_characters(alphabet_spec));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    if (end > start) parts.push_back(text.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

// The default candidate ladder: Bernoulli, Markov orders 1..k_max (those
// that fit in the string), Singleton, and the uniform control.
std::vector<FamilyTag> resolve_families(const std::string& spec, unsigned k_max, std::size_t n) {
  std::vector<FamilyTag> families;
  if (spec.empty()) {
    families.push_back(FamilyTag::bernoulli());
    for (unsigned k = 1; k <= k_max && k < n; ++k) families.push_back(FamilyTag::markov(k));
    families.push_back(FamilyTag::singleton());
    families.push_back(FamilyTag::uniform_baseline());
    return families;
  }
  for (const std::string& name : split_list(spec)) {
    auto tag = parse_family(name);
    if (!tag) throw UsageError("unknown family name: " + name);
    families.push_back(*tag);
  }
  if (families.empty()) throw UsageError("family list is empty");
  return families;
}

json family_names(const std::vector<FamilyTag>& families) {
  json names = json::array();
  for (const FamilyTag& tag : families) names.push_back(tag.name());
  return names;
}

CompressorHandle resolve_compressor(const Options& opt) {
  if (opt.compressor == "builtin") {
    return CompressorHandle::builtin(opt.separator_mode);
  }
  constexpr std::string_view prefix = "external:";
  if (opt.compressor.rfind(prefix, 0) == 0) {
    std::string command = opt.compressor.substr(prefix.size());
    if (command.empty()) throw UsageError("external compressor command is empty");
    return CompressorHandle::external(std::move(command), opt.verify_compressor);
  }
  throw UsageError("unknown compressor (expected builtin or external:\"<command>\"): " +
                   opt.compressor);
}

void require_format(const Options& opt, std::initializer_list<std::string_view> allowed) {
  for (std::string_view f : allowed) {
    if (opt.format == f) return;
  }
  std::string message = "unsupported format for this command: " + opt.format + " (expected";
  for (std::string_view f : allowed) {
    message += ' ';
    message += f;
  }
  throw UsageError(message + ")");
}

json model_summary(const FittedModel& model) {
  return json{
      {"family", model.family.name()},
      {"alpha_bits", model.alpha_bits},
      {"entropy_bits", model.entropy_bits},
      {"nll_bits", model.nll_bits},
      {"gap_bits", model.gap_bits()},
      {"two_part_bits", model.two_part_bits()},
  };
}

json selection_to_json(const SelectionResult& selection) {
  json candidates = json::array();
  for (const ScoredCandidate& c : selection.candidates) {
    json entry = model_summary(c.model);
    entry["kept"] = c.kept;
    candidates.push_back(std::move(entry));
  }
  return json{
      {"winner", model_summary(selection.winner)},
      {"two_part_bits", selection.two_part_bits},
      {"typicality_gap_bits", selection.typicality_gap_bits},
      {"candidates", std::move(candidates)},
  };
}

json eh_to_json(const EhResult& r) {
  return json{
      {"value", r.value},
      {"value_alt", r.value_alt},
      {"h_x", r.h_x},
      {"h_y", r.h_y},
      {"h_joint", r.h_joint},
      {"mutual_information", r.mutual_information},
  };
}

json view_to_json(const TypicalSetView& view) {
  return json{
      {"gap_tolerance_bits", view.gap_tolerance_bits},
      {"typical_count", view.typical_count},
      {"typical_probability", view.typical_probability},
      {"cardinality_lower", view.cardinality_lower},
      {"cardinality_upper", view.cardinality_upper},
      {"lower_holds", view.lower_holds},
      {"upper_holds", view.upper_holds},
  };
}

// Model specs: "bernoulli:P" (P(1) over alphabet 01), "bernoulli:P0,P1,..."
// (digit alphabet), "uniform:K" (K digits), "singleton:STRING".
FittedModel resolve_model(const Options& opt) {
  const std::size_t colon = opt.model.find(':');
  if (colon == std::string::npos) {
    throw UsageError("model spec must look like family:parameters, got: " + opt.model);
  }
  const std::string family = opt.model.substr(0, colon);
  const std::string params = opt.model.substr(colon + 1);
  static const std::string digits = "0123456789";

  if (family == "singleton") {
    if (params.empty()) throw UsageError("singleton model needs a literal string");
    if (opt.n_given && opt.n != params.size()) {
      throw UsageError("--n contradicts the singleton literal length");
    }
    return fit(SymbolString::parse_with_inferred_alphabet(params), FamilyTag::singleton());
  }
  if (!opt.n_given || opt.n == 0) throw UsageError("this model spec needs --n");

  if (family == "uniform") {
    std::size_t sigma = 0;
    try {
      sigma = std::stoul(params);
    } catch (const std::exception&) {
      throw UsageError("uniform model needs an alphabet size, got: " + params);
    }
    if (sigma < 1 || sigma > digits.size()) {
      throw UsageError("uniform alphabet size must be between 1 and 10");
    }
    return make_uniform_model(Alphabet::from_characters(digits.substr(0, sigma)), opt.n);
  }
  if (family == "bernoulli") {
    std::vector<double> probs;
    for (const std::string& piece : split_list(params)) {
      try {
        probs.push_back(std::stod(piece));
      } catch (const std::exception&) {
        throw UsageError("bad probability in model spec: " + piece);
      }
    }
    if (probs.empty()) throw UsageError("bernoulli model needs probabilities");
    if (probs.size() == 1) probs = {1.0 - probs[0], probs[0]};
    if (probs.size() > digits.size()) throw UsageError("at most 10 symbol probabilities");
    try {
      return make_bernoulli_model(Alphabet::from_characters(digits.substr(0, probs.size())),
                                  probs, opt.n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad model probabilities: ") + e.what());
    }
  }
  throw UsageError("unknown model family in spec: " + family);
}

}  // namespace

int cmd_entropy(const Options& opt) {
  require_format(opt, {"json", "csv"});
  SymbolString x = parse_symbols(read_text_input(opt, opt.input), opt.alphabet);
  const unsigned k_max =
      opt.k_max_given ? opt.k_max
                      : static_cast<unsigned>(std::min<std::uint64_t>(opt.k_max, x.size()));
  auto profile = entropy_profile(x, k_max);

  if (opt.format == "csv") {
    std::string out = "k,h\n";
    for (const auto& [k, h] : profile) {
      out += std::to_string(k) + "," + format_double(h) + "\n";
    }
    write_output(opt.output, out);
    return 0;
  }

  json rows = json::array();
  for (const auto& [k, h] : profile) rows.push_back({{"k", k}, {"h", h}});
  json config{{"input", opt.input}, {"k_max", k_max},   {"alphabet", opt.alphabet},
              {"raw", opt.raw},     {"format", opt.format}};
  json result{{"n", x.size()}, {"alphabet_size", x.alphabet().size()}, {"profile", rows}};
  write_output(opt.output, render_envelope("entropy", config, result));
  return 0;
}

int cmd_select(const Options& opt) {
  require_format(opt, {"json"});
  SymbolString x = parse_symbols(read_text_input(opt, opt.input), opt.alphabet);
  std::vector<FamilyTag> families = resolve_families(opt.families, opt.k_max, x.size());
  SelectionResult selection = select_model(x, families, opt.epsilon);

  json config{{"input", opt.input},
              {"epsilon", opt.epsilon},
              {"k_max", opt.k_max},
              {"families", family_names(families)},
              {"alphabet", opt.alphabet},
              {"raw", opt.raw},
              {"format", opt.format}};
  json result = selection_to_json(selection);
  result["n"] = x.size();
  result["alphabet_size"] = x.alphabet().size();
  write_output(opt.output, render_envelope("select", config, result));
  return 0;
}

int cmd_matrix(const Options& opt) {
  require_format(opt, {"json", "csv", "phylip"});
  std::string alphabet_mode = opt.alphabet_mode;
  if (alphabet_mode == "infer-global") alphabet_mode = "global";
  if (alphabet_mode == "infer-per-file") alphabet_mode = "per-file";
  if (alphabet_mode != "global" && alphabet_mode != "per-file" && alphabet_mode != "explicit") {
    throw UsageError("unknown alphabet mode: " + opt.alphabet_mode);
  }
  if (alphabet_mode == "explicit" && opt.alphabet.empty()) {
    throw UsageError("alphabet mode 'explicit' needs --alphabet");
  }

  CorpusLoad load = load_corpus(opt.input, !opt.raw);
  LabeledCorpus corpus;
  if (alphabet_mode == "per-file") {
    for (const CorpusFile& file : load.files) {
      corpus.emplace_back(file.label, SymbolString::parse_with_inferred_alphabet(
                                          std::span<const unsigned char>(file.bytes)));
    }
  } else {
    Alphabet shared = [&] {
      if (alphabet_mode == "explicit") return Alphabet::from_characters(opt.alphabet);
      std::vector<unsigned char> all;
      for (const CorpusFile& file : load.files) {
        all.insert(all.end(), file.bytes.begin(), file.bytes.end());
      }
      return Alphabet::infer(std::span<const unsigned char>(all));
    }();
    for (const CorpusFile& file : load.files) {
      try {
        corpus.emplace_back(file.label,
                            SymbolString::parse(std::span<const unsigned char>(file.bytes), shared));
      } catch (const Error& e) {
        load.errors.push_back(file.label + ": " + e.what());
      }
    }
  }
  if (corpus.size() < 2) {
    for (const std::string& message : load.errors) std::cerr << message << "\n";
    std::cerr << "matrix needs at least two readable corpus items\n";
    return 1;
  }

  DistanceMatrix matrix;
  std::vector<FamilyTag> families;
  if (opt.method == "ncd") {
    matrix = ncd_matrix(corpus, resolve_compressor(opt), opt.threads);
  } else if (opt.method == "nid") {
    std::size_t longest = 0;
    for (const auto& [label, value] : corpus) longest = std::max(longest, value.size());
    families = resolve_families(opt.families, opt.k_max, longest);
    matrix = nid_matrix(corpus, families, opt.epsilon, PairMode::Plain, opt.threads);
  } else if (opt.method == "eh") {
    matrix = eh_matrix(corpus, opt.threads);
  } else {
    throw UsageError("unknown matrix method (expected ncd, nid, or eh): " + opt.method);
  }
  MetricAuditReport audit = audit_metric(matrix, opt.audit_slack);

  const bool partial = !load.errors.empty() || !matrix.errors.empty();
  if (opt.format == "csv") {
    for (const std::string& message : load.errors) std::cerr << message << "\n";
    write_output(opt.output, matrix_to_csv(matrix));
    return partial ? 1 : 0;
  }
  if (opt.format == "phylip") {
    for (const std::string& message : load.errors) std::cerr << message << "\n";
    write_output(opt.output, matrix_to_phylip(matrix));
    return partial ? 1 : 0;
  }

  json config{{"manifest", opt.input},
              {"method", opt.method},
              {"alphabet_mode", alphabet_mode},
              {"alphabet", opt.alphabet},
              {"threads", opt.threads},
              {"audit_slack", opt.audit_slack},
              {"raw", opt.raw},
              {"format", opt.format}};
  if (opt.method == "ncd") {
    config["compressor"] = resolve_compressor(opt).describe();
    config["separator_mode"] = opt.separator_mode;
  }
  if (opt.method == "nid") {
    config["epsilon"] = opt.epsilon;
    config["k_max"] = opt.k_max;
    config["families"] = family_names(families);
  }
  json result{{"corpus_errors", load.errors}, {"matrix", matrix_to_json(matrix, audit)}};

  if (opt.method == "nid") {
    // Per-pair constituents: which models carried the joint and the halves.
    json pairs = json::array();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t j = i + 1; j < corpus.size(); ++j) {
        try {
          NidBreakdown b = nid_empirical(corpus[i].second, corpus[j].second, families,
                                         opt.epsilon, PairMode::Plain);
          pairs.push_back({{"a", corpus[i].first},
                           {"b", corpus[j].first},
                           {"value", b.value},
                           {"joint_bits", b.joint_bits},
                           {"x_bits", b.x_bits},
                           {"y_bits", b.y_bits},
                           {"independence_bits", b.independence_bits},
                           {"joint_family", b.joint_family},
                           {"x_family", b.x_family},
                           {"y_family", b.y_family}});
        } catch (const Error&) {
          // already recorded by the matrix pass
        }
      }
    }
    result["pairs"] = std::move(pairs);
  }
  write_output(opt.output, render_envelope("matrix", config, result));
  return partial ? 1 : 0;
}

int cmd_typical(const Options& opt) {
  require_format(opt, {"json"});
  FittedModel model = resolve_model(opt);
  const std::uint64_t cap = opt.cap == 0 ? kDefaultEnumerationCap : opt.cap;
  TypicalSetReport report = typical_set_report(model, opt.epsilon, cap);

  json config{{"model", opt.model}, {"n", model.length}, {"epsilon", opt.epsilon},
              {"cap", cap},         {"format", opt.format}};
  json result{{"family", report.family.name()},
              {"n", report.n},
              {"alphabet_size", report.alphabet_size},
              {"epsilon", report.epsilon},
              {"entropy_bits", report.entropy_bits},
              {"enumerated", report.enumerated},
              {"probability_sum", report.probability_sum},
              {"bits", view_to_json(report.bits)},
              {"base_sigma", view_to_json(report.base_sigma)}};

  if (!opt.curve_lengths.empty()) {
    if (model.family.kind == FamilyTag::Kind::Singleton) {
      throw UsageError("--curve applies to bernoulli and uniform models only");
    }
    std::vector<double> probs = model.symbol_probs;
    if (probs.empty()) {
      probs.assign(model.alphabet.size(), 1.0 / static_cast<double>(model.alphabet.size()));
    }
    json curve = json::array();
    for (const MassPoint& point :
         bernoulli_atypical_mass_curve(probs, opt.curve_lengths, opt.epsilon)) {
      curve.push_back({{"n", point.n},
                       {"atypical_mass", point.atypical_mass},
                       {"typical_mass", point.typical_mass}});
    }
    config["curve_lengths"] = opt.curve_lengths;
    result["curve"] = std::move(curve);
  }
  write_output(opt.output, render_envelope("typical", config, result));
  return 0;
}

int cmd_compress(const Options& opt) {
  std::vector<unsigned char> bytes = read_input(opt.input);
  SymbolString x = opt.alphabet.empty()
                       ? SymbolString::parse_with_inferred_alphabet(
                             std::span<const unsigned char>(bytes))
                       : SymbolString::parse(std::span<const unsigned char>(bytes),
                                             Alphabet::from_characters(opt.alphabet));
  CompressedBlob blob = huffman_compress(x);
  if (!opt.output.empty()) {
    write_output(opt.output, blob.to_bytes());
  }
  if (opt.split) {
    json config{{"input", opt.input}, {"output", opt.output}, {"alphabet", opt.alphabet}};
    json result{{"n", x.size()},
                {"alphabet_size", x.alphabet().size()},
                {"header_bits", blob.header_bits},
                {"payload_bits", blob.payload_bits},
                {"header_bytes", blob.header_bytes.size()},
                {"payload_bytes", blob.payload_bytes.size()},
                {"total_bits_padded", blob.total_bits_padded()}};
    write_output("", render_envelope("compress", config, result));
  } else if (opt.output.empty()) {
    write_output("", blob.to_bytes());
  }
  return 0;
}

int cmd_decompress(const Options& opt) {
  std::vector<unsigned char> bytes = read_input(opt.input);
  CompressedBlob blob = parse_blob(bytes);
  SymbolString x = huffman_decompress(blob);
  write_output(opt.output, x.render());
  return 0;
}

int cmd_eh(const Options& opt) {
  require_format(opt, {"json"});
  json config{{"format", opt.format}};
  EhResult r;
  if (!opt.table.empty()) {
    std::ifstream in(opt.table);
    if (!in) throw Error("cannot read table file: " + opt.table);
    json spec;
    try {
      spec = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("table file is not valid JSON: " + std::string(e.what()));
    }
    try {
      JointTable table(spec.at("outcomes_x").get<std::vector<std::string>>(),
                       spec.at("outcomes_y").get<std::vector<std::string>>(),
                       spec.at("p").get<std::vector<std::vector<double>>>());
      r = e_h(table);
    } catch (const json::exception& e) {
      throw UsageError("table file needs outcomes_x, outcomes_y, and p: " +
                       std::string(e.what()));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad joint table: ") + e.what());
    }
    config["table"] = opt.table;
  } else {
    if (opt.input_b.empty()) throw UsageError("eh needs two inputs or --table");
    SymbolString x = parse_symbols(read_text_input(opt, opt.input), opt.alphabet);
    SymbolString y = parse_symbols(read_text_input(opt, opt.input_b), opt.alphabet);
    r = e_h_from_strings(x, y);
    config["input_x"] = opt.input;
    config["input_y"] = opt.input_b;
    config["alphabet"] = opt.alphabet;
    config["raw"] = opt.raw;
  }
  write_output(opt.output, render_envelope("eh", config, eh_to_json(r)));
  return 0;
}

namespace {

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

int cmd_gen(const Options& opt) {
  static const std::string symbols = "0123456789abcdefghijklmnopqrstuvwxyz";
  if (opt.sigma < 1 || opt.sigma > symbols.size()) {
    throw UsageError("--sigma must be between 1 and " + std::to_string(symbols.size()));
  }
  if (opt.n == 0) throw UsageError("--n must be positive");

  std::string out;
  out.reserve(opt.n);
  if (opt.kind == "parity") {
    for (std::uint64_t i = 0; i < opt.n; ++i) out.push_back(i % 2 == 0 ? '1' : '0');
  } else if (opt.kind == "constant") {
    out.assign(opt.n, symbols[0]);
  } else if (opt.kind == "random") {
    SplitMix rng{opt.seed * 0x100000001b3ull + 0x9e3779b9ull};
    for (std::uint64_t i = 0; i < opt.n; ++i) {
      out.push_back(symbols[static_cast<std::size_t>(rng.next() % opt.sigma)]);
    }
  } else if (opt.kind == "skewed") {
    // Mostly the first symbol, with seeded rare departures; the departure
    // rate is one in eight.
    SplitMix rng{opt.seed * 0x100000001b3ull + 0x51ed270bull};
    for (std::uint64_t i = 0; i < opt.n; ++i) {
      if (rng.next() % 8 == 0 && opt.sigma > 1) {
        out.push_back(symbols[1 + static_cast<std::size_t>(rng.next() % (opt.sigma - 1))]);
      } else {
        out.push_back(symbols[0]);
      }
    }
  } else {
    throw UsageError("unknown kind (expected parity, random, constant, or skewed): " + opt.kind);
  }
  write_output(opt.output, out);
  return 0;
}

}  // namespace entkit::cli
