#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entkit/alphabet.hpp"

namespace entkit {

// Output of the built-in coder, split into the self-describing header and
// the entropy-bearing payload.
//
// header_bits and payload_bits are the exact pre-padding sizes; the stored
// byte vectors are each zero-padded up to a whole byte. A blob file is
// header_bytes followed by payload_bytes; see docs/blob_format.md.
struct CompressedBlob {
  std::vector<unsigned char> header_bytes;
  std::vector<unsigned char> payload_bytes;
  std::uint64_t header_bits = 0;
  std::uint64_t payload_bits = 0;

  std::uint64_t total_bits_padded() const noexcept {
    return 8 * (header_bytes.size() + payload_bytes.size());
  }
  std::vector<unsigned char> to_bytes() const;
};

// Deterministic code lengths for a count vector: zero-count symbols get
// length 0 (no codeword); a lone nonzero symbol gets length 0 (the payload
// is empty and the string is reconstructed from the header alone);
// otherwise standard optimal prefix-code lengths with ties resolved by
// symbol index, so equal count tables always produce identical codes.
std::vector<unsigned> huffman_code_lengths(std::span<const std::uint64_t> counts);

// Canonical codewords for the given lengths: codes are assigned in
// (length, symbol index) order, shorter codes and lower indices first.
std::vector<std::uint32_t> canonical_codes(std::span<const unsigned> lengths);

// Encodes x with a static canonical prefix code built from its own symbol
// counts over its declared alphabet. Requires x nonempty.
CompressedBlob huffman_compress(const SymbolString& x);

// Inverse of huffman_compress. Throws CorruptHeaderError or
// TruncatedPayloadError on malformed input.
SymbolString huffman_decompress(const CompressedBlob& blob);

// Splits a serialized blob back into header and payload, validating sizes.
CompressedBlob parse_blob(std::span<const unsigned char> bytes);

}  // namespace entkit
