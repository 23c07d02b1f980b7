#include "cubelsh/bits.hpp"

#include <bit>
#include <string>

namespace cubelsh {

BitVector::BitVector(std::uint32_t bit_count, std::vector<std::uint8_t> bytes)
    : bit_count_(bit_count), bytes_(std::move(bytes)) {
    if (bytes_.size() != (bit_count_ + 7) / 8) {
        throw InvalidArgument("bit vector of " + std::to_string(bit_count) + " bits needs " +
                              std::to_string((bit_count + 7) / 8) + " bytes, got " +
                              std::to_string(bytes_.size()));
    }
    // padding bits beyond bit_count must be zero so equality and hashing are exact
    if (bit_count_ % 8 != 0 && !bytes_.empty()) {
        const std::uint8_t mask = std::uint8_t(0xFFu << (bit_count_ % 8));
        if (bytes_.back() & mask) {
            throw InvalidArgument("padding bits past bit " + std::to_string(bit_count) +
                                  " must be zero");
        }
    }
}

std::uint32_t hamming_distance(const BitVector& x, const BitVector& y) {
    if (x.bit_count() != y.bit_count()) {
        throw InvalidArgument("hamming distance needs equal lengths, got " +
                              std::to_string(x.bit_count()) + " and " +
                              std::to_string(y.bit_count()));
    }
    std::uint32_t distance = 0;
    for (std::size_t i = 0; i < x.bytes().size(); ++i) {
        distance += std::popcount(static_cast<unsigned>(x.bytes()[i] ^ y.bytes()[i]));
    }
    return distance;
}

BitVector random_bit_vector(std::uint32_t bit_count, Rng& rng) {
    BitVector v(bit_count);
    for (std::uint32_t j = 0; j < bit_count; ++j) {
        if (rng.bernoulli(0.5)) v.set(j, true);
    }
    return v;
}

BitVector flip_distinct_bits(const BitVector& x, std::uint32_t flips, Rng& rng) {
    if (flips > x.bit_count()) {
        throw InvalidArgument("cannot flip " + std::to_string(flips) + " of " +
                              std::to_string(x.bit_count()) + " bits");
    }
    // Floyd's sampling of `flips` distinct coordinates
    std::vector<bool> chosen(x.bit_count(), false);
    BitVector y = x;
    for (std::uint32_t i = x.bit_count() - flips; i < x.bit_count(); ++i) {
        std::uint32_t j = static_cast<std::uint32_t>(rng.next_below(i + 1));
        if (chosen[j]) j = i;
        chosen[j] = true;
        y.flip(j);
    }
    return y;
}

BitVector correlated_bit_vector(const BitVector& x, double alpha, Rng& rng) {
    if (alpha < -1.0 || alpha > 1.0) {
        throw InvalidArgument("correlation must lie in [-1, 1]");
    }
    const double flip_probability = (1.0 - alpha) / 2.0;
    BitVector y = x;
    for (std::uint32_t j = 0; j < x.bit_count(); ++j) {
        if (rng.bernoulli(flip_probability)) y.flip(j);
    }
    return y;
}

} // namespace cubelsh
