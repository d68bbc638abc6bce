#include "dmh/serialize.hpp"

#include <istream>
#include <iterator>
#include <ostream>
#include <string>

namespace dmh {

namespace {

constexpr std::uint8_t magic[4] = {'D', 'M', 'H', 'S'};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t bytes) {
    for (std::size_t b = 0; b < bytes; ++b) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, std::size_t bytes) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < bytes; ++b) {
        v |= static_cast<std::uint64_t>(in[offset + b]) << (8 * b);
    }
    return v;
}

std::vector<std::uint8_t> header(SketchKind kind, std::size_t k, std::uint64_t seed) {
    if (k > 0xffffffffULL) {
        throw format_error("sketch length does not fit the 32-bit header field");
    }
    std::vector<std::uint8_t> out(std::begin(magic), std::end(magic));
    put_le(out, sketch_format_version, 2);
    put_le(out, static_cast<std::uint16_t>(kind), 2);
    put_le(out, k, 4);
    put_le(out, seed, 8);
    return out;
}

std::size_t payload_size(SketchKind kind, std::size_t k) {
    return kind == SketchKind::minhash ? 8 * k : (k + 7) / 8;
}

} // namespace

std::vector<std::uint8_t> encode_sketch(const MinHashSketch& s) {
    auto out = header(SketchKind::minhash, s.k(), s.seed);
    for (auto v : s.values) {
        put_le(out, v, 8);
    }
    return out;
}

std::vector<std::uint8_t> encode_sketch(const OneBitSketch& s) {
    auto out = header(SketchKind::one_bit, s.k, s.seed);
    for (std::size_t byte = 0; byte < (s.k + 7) / 8; ++byte) {
        out.push_back(static_cast<std::uint8_t>(s.words[byte / 8] >> (8 * (byte % 8))));
    }
    return out;
}

AnySketch decode_sketch(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
    if (bytes.size() < sketch_header_size) {
        throw format_error("truncated sketch header");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (bytes[i] != magic[i]) {
            throw format_error("bad sketch magic");
        }
    }
    const auto version = get_le(bytes, 4, 2);
    if (version != sketch_format_version) {
        throw format_error("unsupported sketch format version " + std::to_string(version));
    }
    const auto raw_kind = get_le(bytes, 6, 2);
    if (raw_kind != 1 && raw_kind != 2) {
        throw format_error("unknown sketch kind " + std::to_string(raw_kind));
    }
    const auto kind = static_cast<SketchKind>(raw_kind);
    const auto k = static_cast<std::size_t>(get_le(bytes, 8, 4));
    const auto seed = get_le(bytes, 12, 8);
    const std::size_t total = sketch_header_size + payload_size(kind, k);
    if (bytes.size() < total) {
        throw format_error("truncated sketch payload");
    }
    if (consumed != nullptr) {
        *consumed = total;
    }
    if (kind == SketchKind::minhash) {
        MinHashSketch s;
        s.seed = seed;
        s.values.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            s.values.push_back(get_le(bytes, sketch_header_size + 8 * j, 8));
        }
        return s;
    }
    OneBitSketch s;
    s.k = k;
    s.seed = seed;
    s.words.assign((k + 63) / 64, 0);
    for (std::size_t byte = 0; byte < (k + 7) / 8; ++byte) {
        s.words[byte / 8] |= static_cast<std::uint64_t>(bytes[sketch_header_size + byte]) << (8 * (byte % 8));
    }
    if (k % 64 != 0) {
        s.words.back() &= (std::uint64_t{1} << (k % 64)) - 1;
    }
    return s;
}

void write_sketch(std::ostream& out, const AnySketch& s) {
    const auto bytes = std::visit([](const auto& v) { return encode_sketch(v); }, s);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw format_error("failed to write sketch");
    }
}

std::vector<AnySketch> read_sketches(std::istream& in) {
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<AnySketch> out;
    std::size_t offset = 0;
    while (offset < bytes.size()) {
        std::size_t used = 0;
        out.push_back(decode_sketch(std::span(bytes).subspan(offset), &used));
        offset += used;
    }
    return out;
}

} // namespace dmh
