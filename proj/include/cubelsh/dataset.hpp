#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cubelsh/bits.hpp"
#include "cubelsh/rng.hpp"

namespace cubelsh {

/// n bit-packed rows of d bits each. Rows are stored back to back, each
/// occupying ceil(d/8) bytes with bits packed LSB-first (see BitVector).
class BinaryDataset {
public:
    explicit BinaryDataset(std::uint32_t dimension);

    /// n uniformly random rows.
    static BinaryDataset random(std::uint64_t count, std::uint32_t dimension, Rng& rng);

    std::uint32_t dimension() const { return dimension_; }
    std::uint64_t count() const { return count_; }
    std::size_t row_bytes() const { return (dimension_ + 7) / 8; }

    void append(const BitVector& row);

    bool bit(std::uint64_t row, std::uint32_t coordinate) const {
        const std::uint8_t byte = data_[row * row_bytes() + (coordinate >> 3)];
        return (byte >> (coordinate & 7)) & 1u;
    }

    std::span<const std::uint8_t> row_view(std::uint64_t row) const {
        return {data_.data() + row * row_bytes(), row_bytes()};
    }

    BitVector row(std::uint64_t index) const;

    /// Exact Hamming distance between a row and an external vector of the same width.
    std::uint32_t distance_to_row(std::uint64_t row, const BitVector& q) const;

private:
    std::uint32_t dimension_;
    std::uint64_t count_ = 0;
    std::vector<std::uint8_t> data_;
};

/// File format: magic "BDS1", u32 dimension, u64 count, then the packed rows.
void save_dataset(const BinaryDataset& data, std::ostream& out);
void save_dataset(const BinaryDataset& data, const std::string& path);
BinaryDataset load_dataset(std::istream& in);
BinaryDataset load_dataset(const std::string& path);

} // namespace cubelsh
