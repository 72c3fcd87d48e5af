#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entkit/alphabet.hpp"

namespace entkit {

// Selects between the built-in coder and an external command-line
// compressor that reads raw bytes on stdin and writes compressed bytes to
// stdout (e.g. "gzip -9").
struct CompressorHandle {
  struct Builtin {
    bool separator_mode = false;  // insert a separator symbol between pair halves
  };
  struct External {
    std::string command_template;
    bool verify_deterministic = false;  // run twice, require identical output
  };

  std::variant<Builtin, External> kind = Builtin{};

  static CompressorHandle builtin(bool separator_mode = false) {
    return {Builtin{separator_mode}};
  }
  static CompressorHandle external(std::string command, bool verify = false) {
    return {External{std::move(command), verify}};
  }

  bool is_builtin() const noexcept { return std::holds_alternative<Builtin>(kind); }
  std::string describe() const;
};

// Codelength of one input under a handle. total_bits for the built-in coder
// is the padded blob size in bits (8 * file bytes); header_bits and
// payload_bits are the exact pre-padding sizes. External compressors report
// 8 * output bytes with no split.
struct Codelength {
  double total_bits = 0.0;
  std::optional<double> header_bits;
  std::optional<double> payload_bits;
};

Codelength codelength(const CompressorHandle& handle, const SymbolString& x);

// Codelength of the rendered pair under the handle's pair convention
// (plain byte concatenation unless separator_mode is set on the builtin).
Codelength pair_codelength(const CompressorHandle& handle, const SymbolString& x,
                           const SymbolString& y);

// Runs the external command with `input` on stdin and returns its stdout.
// Throws ExternalProcessError when the process exits nonzero (with its
// stderr attached) or produces empty output.
std::vector<unsigned char> external_compress(const std::string& command_template,
                                             std::span<const unsigned char> input);

}  // namespace entkit
