#include "entkit/huffman.hpp"

#include <algorithm>
#include <cstring>
#include <queue>

#include "entkit/bitmath.hpp"
#include "entkit/errors.hpp"

namespace entkit {

namespace {

constexpr unsigned char kMagic0 = 0xEB;
constexpr unsigned char kMagic1 = 0x01;

// Appends bits most-significant first and zero-pads the final byte.
class BitWriter {
 public:
  void put(std::uint64_t value, unsigned bits) {
    for (unsigned i = bits; i > 0; --i) {
      acc_ = (acc_ << 1) | ((value >> (i - 1)) & 1);
      if (++fill_ == 8) {
        bytes_.push_back(static_cast<unsigned char>(acc_));
        acc_ = 0;
        fill_ = 0;
      }
    }
    bit_count_ += bits;
  }

  std::uint64_t bit_count() const noexcept { return bit_count_; }

  std::vector<unsigned char> finish() {
    if (fill_ > 0) {
      bytes_.push_back(static_cast<unsigned char>(acc_ << (8 - fill_)));
      acc_ = 0;
      fill_ = 0;
    }
    return std::move(bytes_);
  }

 private:
  std::vector<unsigned char> bytes_;
  std::uint64_t acc_ = 0;
  unsigned fill_ = 0;
  std::uint64_t bit_count_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const unsigned char> bytes, std::uint64_t bit_limit)
      : bytes_(bytes), bit_limit_(bit_limit) {}

  bool next(unsigned& bit) {
    if (pos_ >= bit_limit_) return false;
    bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return true;
  }

  std::uint64_t read_or_throw(unsigned bits, const char* what) {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < bits; ++i) {
      unsigned bit = 0;
      if (!next(bit)) throw TruncatedPayloadError(what);
      value = (value << 1) | bit;
    }
    return value;
  }

 private:
  std::span<const unsigned char> bytes_;
  std::uint64_t bit_limit_;
  std::uint64_t pos_ = 0;
};

void put_u16le(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u64le(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

struct ParsedHeader {
  Alphabet alphabet;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t header_bits = 0;   // exact, pre-padding
  std::size_t header_bytes = 0;    // padded size on disk
};

ParsedHeader parse_header(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12) throw CorruptHeaderError("shorter than the fixed fields");
  if (bytes[0] != kMagic0 || bytes[1] != kMagic1) throw CorruptHeaderError("bad magic");

  const std::size_t sigma = bytes[2] | (static_cast<std::size_t>(bytes[3]) << 8);
  if (sigma == 0) throw CorruptHeaderError("empty alphabet");
  const std::size_t fixed = 12 + 2 * sigma;
  if (bytes.size() < fixed) throw CorruptHeaderError("symbol list cut short");

  std::vector<int> symbols(sigma);
  for (std::size_t i = 0; i < sigma; ++i) {
    symbols[i] = bytes[4 + 2 * i] | (static_cast<int>(bytes[5 + 2 * i]) << 8);
  }

  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) {
    n = (n << 8) | bytes[4 + 2 * sigma + static_cast<std::size_t>(i)];
  }
  if (n == 0) throw CorruptHeaderError("zero-length string");

  const unsigned width = ceil_log2(n + 1);
  const std::uint64_t count_bits = static_cast<std::uint64_t>(sigma) * width;
  const std::size_t count_bytes = static_cast<std::size_t>((count_bits + 7) / 8);
  if (bytes.size() < fixed + count_bytes) throw CorruptHeaderError("count area cut short");

  BitReader reader(bytes.subspan(fixed), count_bits);
  std::vector<std::uint64_t> counts(sigma);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < sigma; ++i) {
    counts[i] = reader.read_or_throw(width, "count field");
    sum += counts[i];
  }
  if (sum != n) throw CorruptHeaderError("counts do not sum to the string length");

  try {
    return ParsedHeader{Alphabet(std::move(symbols)), n, std::move(counts),
                        8 * static_cast<std::uint64_t>(fixed) + count_bits,
                        fixed + count_bytes};
  } catch (const std::invalid_argument& e) {
    throw CorruptHeaderError(e.what());
  }
}

}  // namespace

std::vector<unsigned char> CompressedBlob::to_bytes() const {
  std::vector<unsigned char> bytes;
  bytes.reserve(header_bytes.size() + payload_bytes.size());
  bytes.insert(bytes.end(), header_bytes.begin(), header_bytes.end());
  bytes.insert(bytes.end(), payload_bytes.begin(), payload_bytes.end());
  return bytes;
}

std::vector<unsigned> huffman_code_lengths(std::span<const std::uint64_t> counts) {
  std::vector<unsigned> lengths(counts.size(), 0);

  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) positive.push_back(i);
  }
  if (positive.size() <= 1) return lengths;

  // Nodes are merged lowest (weight, creation sequence) first; leaves are
  // created in symbol-index order, so equal count tables always merge the
  // same way on every platform.
  struct Node {
    std::uint64_t weight;
    std::size_t seq;
    int left;   // node index, or -1 for a leaf
    int right;
    std::size_t symbol;  // leaves only
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * positive.size());
  using Entry = std::pair<std::pair<std::uint64_t, std::size_t>, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t i = 0; i < positive.size(); ++i) {
    nodes.push_back({counts[positive[i]], i, -1, -1, positive[i]});
    queue.push({{counts[positive[i]], i}, static_cast<int>(i)});
  }
  std::size_t next_seq = positive.size();
  while (queue.size() > 1) {
    auto [ka, a] = queue.top();
    queue.pop();
    auto [kb, b] = queue.top();
    queue.pop();
    nodes.push_back({ka.first + kb.first, next_seq, a, b, 0});
    queue.push({{ka.first + kb.first, next_seq}, static_cast<int>(nodes.size() - 1)});
    ++next_seq;
  }

  std::vector<std::pair<int, unsigned>> stack{{queue.top().second, 0}};
  while (!stack.empty()) {
    auto [idx, depth] = stack.back();
    stack.pop_back();
    const Node& node = nodes[static_cast<std::size_t>(idx)];
    if (node.left < 0) {
      lengths[node.symbol] = depth;
    } else {
      stack.push_back({node.left, depth + 1});
      stack.push_back({node.right, depth + 1});
    }
  }
  return lengths;
}

std::vector<std::uint32_t> canonical_codes(std::span<const unsigned> lengths) {
  std::vector<std::size_t> coded;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] > 0) coded.push_back(i);
  }
  std::sort(coded.begin(), coded.end(), [&](std::size_t a, std::size_t b) {
    return lengths[a] != lengths[b] ? lengths[a] < lengths[b] : a < b;
  });

  std::vector<std::uint32_t> codes(lengths.size(), 0);
  std::uint32_t code = 0;
  unsigned prev_len = 0;
  for (std::size_t sym : coded) {
    code <<= (lengths[sym] - prev_len);
    codes[sym] = code;
    ++code;
    prev_len = lengths[sym];
  }
  return codes;
}

CompressedBlob huffman_compress(const SymbolString& x) {
  const std::uint64_t n = x.size();
  if (n == 0) throw EmptyInputError();

  const Alphabet& alphabet = x.alphabet();
  const std::size_t sigma = alphabet.size();
  std::vector<std::uint64_t> counts(sigma, 0);
  for (std::size_t i = 0; i < x.size(); ++i) ++counts[x[i]];

  CompressedBlob blob;

  std::vector<unsigned char>& header = blob.header_bytes;
  header.push_back(kMagic0);
  header.push_back(kMagic1);
  put_u16le(header, static_cast<std::uint16_t>(sigma));
  for (std::size_t i = 0; i < sigma; ++i) {
    put_u16le(header, static_cast<std::uint16_t>(alphabet.symbol(i)));
  }
  put_u64le(header, n);
  const unsigned width = ceil_log2(n + 1);
  BitWriter count_writer;
  for (std::uint64_t c : counts) count_writer.put(c, width);
  std::uint64_t count_bits = count_writer.bit_count();
  auto count_bytes = count_writer.finish();
  header.insert(header.end(), count_bytes.begin(), count_bytes.end());
  blob.header_bits = 8 * static_cast<std::uint64_t>(12 + 2 * sigma) + count_bits;

  const std::vector<unsigned> lengths = huffman_code_lengths(counts);
  const std::vector<std::uint32_t> codes = canonical_codes(lengths);
  BitWriter payload_writer;
  for (std::size_t i = 0; i < x.size(); ++i) {
    payload_writer.put(codes[x[i]], lengths[x[i]]);
  }
  blob.payload_bits = payload_writer.bit_count();
  blob.payload_bytes = payload_writer.finish();
  return blob;
}

SymbolString huffman_decompress(const CompressedBlob& blob) {
  ParsedHeader header = parse_header(blob.header_bytes);

  const std::vector<unsigned> lengths = huffman_code_lengths(header.counts);
  std::uint64_t expected_bits = 0;
  for (std::size_t i = 0; i < header.counts.size(); ++i) {
    expected_bits += header.counts[i] * lengths[i];
  }
  if (blob.payload_bytes.size() < (expected_bits + 7) / 8) {
    throw TruncatedPayloadError("payload shorter than the counts require");
  }
  if (blob.payload_bytes.size() > (expected_bits + 7) / 8) {
    throw CorruptHeaderError("payload longer than the counts allow");
  }

  std::vector<std::uint16_t> indices;
  indices.reserve(header.n);

  unsigned max_len = 0;
  for (unsigned l : lengths) max_len = std::max(max_len, l);
  if (max_len == 0) {
    // Single coded symbol: the payload is empty and the header determines
    // everything.
    std::size_t sym = 0;
    for (std::size_t i = 0; i < header.counts.size(); ++i) {
      if (header.counts[i] > 0) sym = i;
    }
    indices.assign(header.n, static_cast<std::uint16_t>(sym));
    return SymbolString(std::move(header.alphabet), std::move(indices));
  }

  // Canonical decoding tables: symbols grouped by code length, plus the
  // first canonical code value at each length.
  std::vector<std::vector<std::uint16_t>> at_length(max_len + 1);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] > 0) at_length[lengths[i]].push_back(static_cast<std::uint16_t>(i));
  }
  std::vector<std::uint64_t> first_code(max_len + 2, 0);
  std::uint64_t code = 0;
  for (unsigned l = 1; l <= max_len; ++l) {
    first_code[l] = code;
    code = (code + at_length[l].size()) << 1;
  }

  BitReader reader(blob.payload_bytes, expected_bits);
  for (std::uint64_t produced = 0; produced < header.n; ++produced) {
    std::uint64_t acc = 0;
    unsigned len = 0;
    for (;;) {
      unsigned bit = 0;
      if (!reader.next(bit)) throw TruncatedPayloadError("codeword cut short");
      acc = (acc << 1) | bit;
      ++len;
      if (len > max_len) throw CorruptHeaderError("invalid codeword in payload");
      const std::uint64_t offset = acc - first_code[len];
      if (acc >= first_code[len] && offset < at_length[len].size()) {
        indices.push_back(at_length[len][offset]);
        break;
      }
    }
  }
  return SymbolString(std::move(header.alphabet), std::move(indices));
}

CompressedBlob parse_blob(std::span<const unsigned char> bytes) {
  ParsedHeader header = parse_header(bytes);

  const std::vector<unsigned> lengths = huffman_code_lengths(header.counts);
  std::uint64_t expected_bits = 0;
  for (std::size_t i = 0; i < header.counts.size(); ++i) {
    expected_bits += header.counts[i] * lengths[i];
  }
  const std::size_t expected_payload_bytes = static_cast<std::size_t>((expected_bits + 7) / 8);
  if (bytes.size() < header.header_bytes + expected_payload_bytes) {
    throw TruncatedPayloadError("blob shorter than header plus payload");
  }
  if (bytes.size() > header.header_bytes + expected_payload_bytes) {
    throw CorruptHeaderError("trailing bytes after payload");
  }

  CompressedBlob blob;
  blob.header_bytes.assign(bytes.begin(), bytes.begin() + static_cast<long>(header.header_bytes));
  blob.payload_bytes.assign(bytes.begin() + static_cast<long>(header.header_bytes), bytes.end());
  blob.header_bits = header.header_bits;
  blob.payload_bits = expected_bits;
  return blob;
}

}  // namespace entkit
