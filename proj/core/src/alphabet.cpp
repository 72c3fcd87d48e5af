#include "entkit/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

#include "entkit/errors.hpp"

namespace entkit {

namespace {
constexpr std::size_t kMaxAlphabetSize = 4096;
}

Alphabet::Alphabet(std::vector<int> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw std::invalid_argument("alphabet must contain at least one symbol");
  }
  if (symbols_.size() > kMaxAlphabetSize) {
    throw std::invalid_argument("alphabet too large");
  }
  index_.reserve(symbols_.size());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] < 0) {
      throw std::invalid_argument("alphabet symbols must be nonnegative");
    }
    if (!index_.emplace(symbols_[i], i).second) {
      throw std::invalid_argument("alphabet symbols must be distinct");
    }
  }
}

Alphabet Alphabet::infer(std::span<const unsigned char> data) {
  if (data.empty()) {
    return Alphabet({0});
  }
  bool seen[256] = {};
  std::vector<int> symbols;
  for (unsigned char b : data) {
    if (!seen[b]) {
      seen[b] = true;
      symbols.push_back(b);
    }
  }
  return Alphabet(std::move(symbols));
}

Alphabet Alphabet::infer(std::string_view text) {
  return infer(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

Alphabet Alphabet::from_characters(std::string_view symbols) {
  std::vector<int> tokens;
  tokens.reserve(symbols.size());
  for (char c : symbols) {
    tokens.push_back(static_cast<unsigned char>(c));
  }
  return Alphabet(std::move(tokens));
}

std::optional<std::size_t> Alphabet::index_of(int symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::separator_symbol() const {
  return *std::max_element(symbols_.begin(), symbols_.end()) + 1;
}

Alphabet Alphabet::with_separator() const {
  std::vector<int> symbols = symbols_;
  symbols.push_back(separator_symbol());
  return Alphabet(std::move(symbols));
}

SymbolString::SymbolString(Alphabet alphabet, std::vector<std::uint16_t> indices)
    : alphabet_(std::move(alphabet)), indices_(std::move(indices)) {
  for (std::uint16_t idx : indices_) {
    if (idx >= alphabet_.size()) {
      throw std::invalid_argument("symbol index out of alphabet range");
    }
  }
}

SymbolString SymbolString::parse(std::span<const unsigned char> bytes, const Alphabet& alphabet) {
  std::vector<std::uint16_t> indices;
  indices.reserve(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    auto idx = alphabet.index_of(bytes[i]);
    if (!idx) {
      throw UnknownSymbolError(i, bytes[i]);
    }
    indices.push_back(static_cast<std::uint16_t>(*idx));
  }
  return SymbolString(alphabet, std::move(indices));
}

SymbolString SymbolString::parse(std::string_view text, const Alphabet& alphabet) {
  return parse(std::span<const unsigned char>(
                   reinterpret_cast<const unsigned char*>(text.data()), text.size()),
               alphabet);
}

SymbolString SymbolString::parse_with_inferred_alphabet(std::span<const unsigned char> bytes) {
  return parse(bytes, Alphabet::infer(bytes));
}

SymbolString SymbolString::parse_with_inferred_alphabet(std::string_view text) {
  return parse(text, Alphabet::infer(text));
}

std::vector<unsigned char> SymbolString::render() const {
  std::vector<unsigned char> bytes;
  bytes.reserve(indices_.size());
  for (std::uint16_t idx : indices_) {
    int symbol = alphabet_.symbol(idx);
    if (symbol > 255) {
      throw Error("symbol token " + std::to_string(symbol) + " has no byte rendering");
    }
    bytes.push_back(static_cast<unsigned char>(symbol));
  }
  return bytes;
}

std::string SymbolString::render_text() const {
  auto bytes = render();
  return std::string(bytes.begin(), bytes.end());
}

SymbolString SymbolString::widened(const Alphabet& wider) const {
  if (wider.size() < alphabet_.size()) {
    throw std::invalid_argument("widened alphabet must not shrink");
  }
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (wider.symbol(i) != alphabet_.symbol(i)) {
      throw std::invalid_argument("widened alphabet must extend the current one");
    }
  }
  return SymbolString(wider, indices_);
}

SymbolString concat(const SymbolString& x, const SymbolString& y) {
  if (!(x.alphabet() == y.alphabet())) {
    throw std::invalid_argument("concat requires a shared alphabet");
  }
  std::vector<std::uint16_t> indices;
  indices.reserve(x.size() + y.size());
  indices.insert(indices.end(), x.indices().begin(), x.indices().end());
  indices.insert(indices.end(), y.indices().begin(), y.indices().end());
  return SymbolString(x.alphabet(), std::move(indices));
}

SymbolString concat_with_separator(const SymbolString& x, const SymbolString& y) {
  if (!(x.alphabet() == y.alphabet())) {
    throw std::invalid_argument("concat requires a shared alphabet");
  }
  Alphabet extended = x.alphabet().with_separator();
  std::vector<std::uint16_t> indices;
  indices.reserve(x.size() + y.size() + 1);
  indices.insert(indices.end(), x.indices().begin(), x.indices().end());
  indices.push_back(static_cast<std::uint16_t>(extended.size() - 1));
  indices.insert(indices.end(), y.indices().begin(), y.indices().end());
  return SymbolString(std::move(extended), std::move(indices));
}

}  // namespace entkit
