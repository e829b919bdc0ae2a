#pragma once

#include <cstdint>
#include <vector>

namespace protolife::info {

// Deterministic LZ codec, fully pinned so the byte stream is reproducible
// across implementations:
//   - 4-byte big-endian header: uncompressed length.
//   - Token stream, bit-packed MSB-first, final byte zero-padded.
//   - Literal: flag bit 0, then the byte (8 bits).
//   - Match:   flag bit 1, 15-bit distance d in [1, 32767] back from the
//     current position, 8-bit (length - 3) with length in [3, 258].
//     Overlapping forward copies (d < length) are allowed.
//   - Encoder: greedy longest match at every position over the previous
//     32767 bytes; ties broken by the smallest distance; positions with no
//     match of length >= 3 emit a literal.
std::vector<std::uint8_t> lz_compress(const std::vector<std::uint8_t>& payload);

// Throws RuntimeFailure on a corrupt stream.
std::vector<std::uint8_t> lz_decompress(const std::vector<std::uint8_t>& stream);

// Upper-bound proxy for the algorithmic information of the payload:
// 8 x compressed size, in bits.
std::uint64_t algorithmic_info_proxy(const std::vector<std::uint8_t>& payload);

}  // namespace protolife::info
