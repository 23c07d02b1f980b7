#pragma once

#include <cstdint>
#include <vector>

#include "cubelsh/errors.hpp"
#include "cubelsh/rng.hpp"

namespace cubelsh {

/// A packed vector of d bits. Bit j (0-based) of the vector lives in byte j/8
/// at position j%8, i.e. bits are packed LSB-first within each byte.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::uint32_t bit_count)
        : bit_count_(bit_count), bytes_((bit_count + 7) / 8, 0) {}
    BitVector(std::uint32_t bit_count, std::vector<std::uint8_t> bytes);

    std::uint32_t bit_count() const { return bit_count_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    bool get(std::uint32_t j) const { return (bytes_[j >> 3] >> (j & 7)) & 1u; }
    void set(std::uint32_t j, bool value) {
        if (value) bytes_[j >> 3] |= std::uint8_t(1u << (j & 7));
        else bytes_[j >> 3] &= std::uint8_t(~(1u << (j & 7)));
    }
    void flip(std::uint32_t j) { bytes_[j >> 3] ^= std::uint8_t(1u << (j & 7)); }

    bool operator==(const BitVector& other) const {
        return bit_count_ == other.bit_count_ && bytes_ == other.bytes_;
    }

private:
    std::uint32_t bit_count_ = 0;
    std::vector<std::uint8_t> bytes_;
};

/// Number of differing bits; lengths must match.
std::uint32_t hamming_distance(const BitVector& x, const BitVector& y);

/// Uniformly random d-bit vector.
BitVector random_bit_vector(std::uint32_t bit_count, Rng& rng);

/// Copy of x with exactly `flips` distinct coordinates inverted. The result is
/// at Hamming distance `flips`, i.e. correlation 1 - 2*flips/d.
BitVector flip_distinct_bits(const BitVector& x, std::uint32_t flips, Rng& rng);

/// Copy of x where each bit flips independently with probability (1-alpha)/2.
BitVector correlated_bit_vector(const BitVector& x, double alpha, Rng& rng);

} // namespace cubelsh
