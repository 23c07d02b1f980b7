#include "cubelsh/dataset.hpp"

#include <bit>
#include <fstream>

#include "cubelsh/binary_io.hpp"
#include "cubelsh/errors.hpp"

namespace cubelsh {

BinaryDataset::BinaryDataset(std::uint32_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw InvalidArgument("dataset dimension must be positive");
}

BinaryDataset BinaryDataset::random(std::uint64_t count, std::uint32_t dimension, Rng& rng) {
    BinaryDataset data(dimension);
    data.data_.reserve(count * data.row_bytes());
    for (std::uint64_t i = 0; i < count; ++i) {
        data.append(random_bit_vector(dimension, rng));
    }
    return data;
}

void BinaryDataset::append(const BitVector& row) {
    if (row.bit_count() != dimension_) {
        throw InvalidArgument("row has " + std::to_string(row.bit_count()) +
                              " bits, dataset dimension is " + std::to_string(dimension_));
    }
    data_.insert(data_.end(), row.bytes().begin(), row.bytes().end());
    ++count_;
}

BitVector BinaryDataset::row(std::uint64_t index) const {
    if (index >= count_) {
        throw InvalidArgument("row " + std::to_string(index) + " out of range [0, " +
                              std::to_string(count_) + ")");
    }
    const auto view = row_view(index);
    return BitVector(dimension_, std::vector<std::uint8_t>(view.begin(), view.end()));
}

std::uint32_t BinaryDataset::distance_to_row(std::uint64_t row, const BitVector& q) const {
    if (q.bit_count() != dimension_) {
        throw InvalidArgument("query has " + std::to_string(q.bit_count()) +
                              " bits, dataset dimension is " + std::to_string(dimension_));
    }
    const auto view = row_view(row);
    std::uint32_t distance = 0;
    for (std::size_t i = 0; i < view.size(); ++i) {
        distance += std::popcount(static_cast<unsigned>(view[i] ^ q.bytes()[i]));
    }
    return distance;
}

namespace {
constexpr char kDatasetMagic[4] = {'B', 'D', 'S', '1'};
}

void save_dataset(const BinaryDataset& data, std::ostream& out) {
    io::write_bytes(out, kDatasetMagic, 4);
    io::write_u32(out, data.dimension());
    io::write_u64(out, data.count());
    for (std::uint64_t i = 0; i < data.count(); ++i) {
        const auto view = data.row_view(i);
        io::write_bytes(out, view.data(), view.size());
    }
    if (!out) throw FormatError("dataset rows", "write failed");
}

void save_dataset(const BinaryDataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("dataset file", "cannot open '" + path + "' for writing");
    save_dataset(data, out);
}

BinaryDataset load_dataset(std::istream& in) {
    char magic[4];
    io::read_bytes(in, magic, 4, "dataset magic");
    if (std::memcmp(magic, kDatasetMagic, 4) != 0) {
        throw FormatError("dataset magic", "expected 'BDS1'");
    }
    const std::uint32_t dimension = io::read_u32(in, "dataset header");
    const std::uint64_t count = io::read_u64(in, "dataset header");
    if (dimension == 0) throw FormatError("dataset header", "dimension must be positive");

    BinaryDataset data(dimension);
    std::vector<std::uint8_t> row((dimension + 7) / 8);
    for (std::uint64_t i = 0; i < count; ++i) {
        io::read_bytes(in, row.data(), row.size(), "dataset rows");
        if (dimension % 8 != 0) {
            const std::uint8_t mask = std::uint8_t(0xFFu << (dimension % 8));
            if (row.back() & mask) {
                throw FormatError("dataset rows",
                                  "row " + std::to_string(i) + " has nonzero padding bits");
            }
        }
        data.append(BitVector(dimension, row));
    }
    return data;
}

BinaryDataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("dataset file", "cannot open '" + path + "' for reading");
    return load_dataset(in);
}

} // namespace cubelsh
