#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nilnike/errors.hpp"

namespace nilnike {

// Canonical element encoding is a platform tag byte followed by each
// coordinate as big-endian bytes of fixed width ceil(bitlen(modulus)/8).

inline std::size_t coord_width(const mpz_class& modulus) {
    return (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
}

inline void append_coord(std::vector<std::uint8_t>& out, const mpz_class& value,
                         std::size_t width) {
    std::vector<std::uint8_t> buf(width, 0);
    std::size_t count = 0;
    mpz_export(buf.data(), &count, 1 /*big-endian*/, 1, 0, 0, value.get_mpz_t());
    // mpz_export writes `count` bytes from the front; shift right-justified.
    if (count > width) fail("BadElement", "coordinate wider than its fixed width");
    if (count < width) {
        std::vector<std::uint8_t> shifted(width, 0);
        for (std::size_t i = 0; i < count; ++i) shifted[width - count + i] = buf[i];
        buf = std::move(shifted);
    }
    out.insert(out.end(), buf.begin(), buf.end());
}

inline mpz_class read_coord(std::span<const std::uint8_t> bytes, std::size_t index,
                            std::size_t width) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), width, 1, 1, 0, 0, bytes.data() + index * width);
    return v;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

inline std::vector<std::uint8_t> from_hex(const std::string& s) {
    if (s.size() % 2 != 0) fail("BadElement", "hex string has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        fail("BadElement", "invalid hex digit");
    };
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
    return out;
}

} // namespace nilnike
