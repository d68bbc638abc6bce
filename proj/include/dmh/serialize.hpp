#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dmh/sketch.hpp"

namespace dmh {

// Binary sketch record, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "DMHS"
//   4       2     version (1)
//   6       2     kind (1 = minhash, 2 = one-bit)
//   8       4     k
//   12      8     seed
//   20      ...   minhash: k x 8-byte fingerprints
//                 one-bit: ceil(k / 8) bytes, bit j at byte j / 8, bit j % 8
//
// Records can be concatenated in one stream.

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SketchKind : std::uint16_t { minhash = 1, one_bit = 2 };

inline constexpr std::uint16_t sketch_format_version = 1;
inline constexpr std::size_t sketch_header_size = 20;

using AnySketch = std::variant<MinHashSketch, OneBitSketch>;

[[nodiscard]] std::vector<std::uint8_t> encode_sketch(const MinHashSketch& s);
[[nodiscard]] std::vector<std::uint8_t> encode_sketch(const OneBitSketch& s);

/// Decodes the record at the front of `bytes`; `consumed` receives its size.
/// Throws format_error on bad magic, unknown version or kind, truncation.
[[nodiscard]] AnySketch decode_sketch(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

void write_sketch(std::ostream& out, const AnySketch& s);

/// Reads records until end of stream.
[[nodiscard]] std::vector<AnySketch> read_sketches(std::istream& in);

} // namespace dmh
