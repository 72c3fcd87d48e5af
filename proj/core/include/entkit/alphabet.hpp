#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entkit {

// A finite, ordered list of distinct symbol tokens.
//
// Tokens are small nonnegative integers. Strings read from files use byte
// values 0..255; synthetic tokens above 255 are reserved for symbols that
// have no byte rendering (e.g. the pair separator).
class Alphabet {
 public:
  // The size-1 placeholder alphabet {0}.
  Alphabet() : Alphabet(std::vector<int>{0}) {}

  explicit Alphabet(std::vector<int> symbols);

  // Distinct bytes of `data` in first-occurrence order.
  // Empty input yields the size-1 placeholder alphabet {0}.
  static Alphabet infer(std::span<const unsigned char> data);
  static Alphabet infer(std::string_view text);

  // Alphabet listing exactly the characters of `symbols`, in order.
  static Alphabet from_characters(std::string_view symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  int symbol(std::size_t index) const { return symbols_.at(index); }
  const std::vector<int>& symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> index_of(int symbol) const;
  bool contains(int symbol) const { return index_of(symbol).has_value(); }

  // This alphabet plus one synthetic separator symbol appended at the end.
  Alphabet with_separator() const;
  // Token the separator would use: one past the largest current token.
  int separator_symbol() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<int> symbols_;
  std::unordered_map<int, std::size_t> index_;
};

// An immutable string of alphabet indices together with its alphabet.
class SymbolString {
 public:
  SymbolString(Alphabet alphabet, std::vector<std::uint16_t> indices);

  // Maps each byte to its alphabet index. Throws UnknownSymbolError with the
  // first offending position if a byte is not in the alphabet.
  static SymbolString parse(std::span<const unsigned char> bytes, const Alphabet& alphabet);
  static SymbolString parse(std::string_view text, const Alphabet& alphabet);

  // Parses with an alphabet inferred from the input itself.
  static SymbolString parse_with_inferred_alphabet(std::span<const unsigned char> bytes);
  static SymbolString parse_with_inferred_alphabet(std::string_view text);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::uint16_t operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::uint16_t>& indices() const noexcept { return indices_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  // Inverse of parse: maps indices back to byte values. Throws Error if a
  // symbol token has no byte rendering (token > 255).
  std::vector<unsigned char> render() const;
  std::string render_text() const;

  // Same index sequence reinterpreted over a wider alphabet that must agree
  // with the current one on a prefix of its symbol list.
  SymbolString widened(const Alphabet& wider) const;

 private:
  Alphabet alphabet_;
  std::vector<std::uint16_t> indices_;
};

// Plain concatenation. Both strings must share one alphabet.
SymbolString concat(const SymbolString& x, const SymbolString& y);

// Concatenation x | sep | y over the separator-extended alphabet.
SymbolString concat_with_separator(const SymbolString& x, const SymbolString& y);

}  // namespace entkit
