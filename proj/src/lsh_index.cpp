#include "cubelsh/lsh_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cubelsh/binary_io.hpp"
#include "cubelsh/errors.hpp"
#include "cubelsh/rho.hpp"

namespace cubelsh {

IndexParams::IndexParams(std::uint32_t dimension_value, std::uint32_t key_bits_value,
                         std::uint32_t table_count_value, std::uint64_t seed_value,
                         double alpha_value, double beta_value)
    : dimension(dimension_value),
      key_bits(key_bits_value),
      table_count(table_count_value),
      seed(seed_value),
      alpha(alpha_value),
      beta(beta_value) {
    if (dimension == 0) throw InvalidArgument("index dimension must be positive");
    if (key_bits == 0 || table_count == 0) {
        throw InvalidArgument("index needs k >= 1 sampled bits and L >= 1 tables");
    }
    if (!(beta >= 0.0) || !(beta < alpha) || !(alpha < 1.0)) {
        throw InvalidArgument("index correlations require 0 <= beta < alpha < 1, got alpha=" +
                              std::to_string(alpha) + ", beta=" + std::to_string(beta));
    }
}

IndexParams derive_params(std::uint64_t n, std::uint32_t dimension, double alpha, double beta,
                          std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("parameter derivation needs n >= 2");
    if (!(beta >= 0.0) || !(beta < alpha) || !(alpha < 1.0)) {
        throw InvalidArgument("parameter derivation requires 0 <= beta < alpha < 1");
    }
    const double p_beta = (1.0 + beta) / 2.0;
    const double k_real = std::log(static_cast<double>(n)) / std::log(1.0 / p_beta);
    const auto k = static_cast<std::uint32_t>(std::max(1.0, std::ceil(k_real)));

    const double exponent = bitsampling_rho(RhoParams(alpha, beta));
    const double l_real = std::pow(static_cast<double>(n), exponent);
    const auto L = static_cast<std::uint32_t>(std::max(1.0, std::ceil(l_real)));

    return {dimension, k, L, seed, alpha, beta};
}

namespace {

std::vector<std::vector<std::uint32_t>> sample_coordinates(const IndexParams& params) {
    Rng root(params.seed);
    std::vector<std::vector<std::uint32_t>> coordinates(params.table_count);
    for (auto& table_coords : coordinates) {
        Rng table_rng = root.split();
        table_coords.resize(params.key_bits);
        for (auto& c : table_coords) {
            c = static_cast<std::uint32_t>(table_rng.next_below(params.dimension));
        }
    }
    return coordinates;
}

std::string pack_key(const BitVector& v, const std::vector<std::uint32_t>& coords) {
    std::string key((coords.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (v.get(coords[i])) key[i >> 3] |= char(1u << (i & 7));
    }
    return key;
}

std::string pack_key_from_row(const BinaryDataset& data, std::uint64_t row,
                              const std::vector<std::uint32_t>& coords) {
    std::string key((coords.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (data.bit(row, coords[i])) key[i >> 3] |= char(1u << (i & 7));
    }
    return key;
}

} // namespace

LshIndex LshIndex::build(const BinaryDataset& data, const IndexParams& params) {
    if (data.dimension() != params.dimension) {
        throw InvalidArgument("dataset dimension " + std::to_string(data.dimension()) +
                              " does not match index dimension " +
                              std::to_string(params.dimension));
    }
    LshIndex index;
    index.params_ = params;
    index.coordinates_ = sample_coordinates(params);
    index.tables_.resize(params.table_count);
    index.indexed_rows_ = data.count();

    for (std::uint32_t t = 0; t < params.table_count; ++t) {
        auto& table = index.tables_[t];
        table.reserve(data.count());
        for (std::uint64_t row = 0; row < data.count(); ++row) {
            table[pack_key_from_row(data, row, index.coordinates_[t])].push_back(row);
        }
    }
    return index;
}

std::string LshIndex::key_for(const BitVector& v, std::uint32_t table) const {
    if (v.bit_count() != params_.dimension) {
        throw InvalidArgument("vector has " + std::to_string(v.bit_count()) +
                              " bits, index dimension is " + std::to_string(params_.dimension));
    }
    if (table >= params_.table_count) {
        throw InvalidArgument("table index out of range");
    }
    return pack_key(v, coordinates_[table]);
}

std::vector<QueryHit> LshIndex::query(const BinaryDataset& data, const BitVector& q,
                                      std::optional<std::uint32_t> radius) const {
    if (q.bit_count() != params_.dimension) {
        throw InvalidArgument("query has " + std::to_string(q.bit_count()) +
                              " bits, index dimension is " + std::to_string(params_.dimension));
    }
    if (data.dimension() != params_.dimension) {
        throw InvalidArgument("dataset dimension does not match the index");
    }

    std::vector<std::uint64_t> candidates;
    for (std::uint32_t t = 0; t < params_.table_count; ++t) {
        const auto bucket = tables_[t].find(pack_key(q, coordinates_[t]));
        if (bucket != tables_[t].end()) {
            candidates.insert(candidates.end(), bucket->second.begin(), bucket->second.end());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<QueryHit> hits;
    hits.reserve(candidates.size());
    for (std::uint64_t row : candidates) {
        const std::uint32_t distance = data.distance_to_row(row, q);
        if (!radius || distance <= *radius) {
            hits.push_back({row, distance});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const QueryHit& a, const QueryHit& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.row < b.row;
    });
    return hits;
}

CollisionRate LshIndex::measure_collision_rate(
    std::span<const std::pair<BitVector, BitVector>> pairs, bool per_table) const {
    CollisionRate result;
    if (per_table) result.per_table.assign(params_.table_count, 0.0);
    std::uint64_t collisions = 0;
    for (std::uint32_t t = 0; t < params_.table_count; ++t) {
        std::uint64_t table_collisions = 0;
        for (const auto& [x, y] : pairs) {
            if (key_for(x, t) == key_for(y, t)) ++table_collisions;
        }
        collisions += table_collisions;
        if (per_table && !pairs.empty()) {
            result.per_table[t] = static_cast<double>(table_collisions) / pairs.size();
        }
    }
    result.events = pairs.size() * params_.table_count;
    result.rate = result.events ? static_cast<double>(collisions) / result.events : 0.0;
    return result;
}

double collision_rate_sigma(std::uint32_t dimension, std::uint32_t distance,
                            std::uint32_t key_bits, std::uint64_t pairs, std::uint32_t tables) {
    if (pairs == 0 || tables == 0) throw InvalidArgument("sigma needs pairs >= 1 and tables >= 1");
    if (2 * distance > dimension) {
        throw InvalidArgument("sigma is defined for distances up to d/2 (nonnegative correlation)");
    }
    const double d = dimension;
    const double p = std::pow((d - distance) / d, key_bits);

    // E[f^2] over the shared coordinate sample: two independent r-subsets must
    // both be avoided; their overlap H is hypergeometric.
    const auto log_choose = [](double n, double k) {
        return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    };
    double second_moment = 0.0;
    for (std::uint32_t h = 0; h <= distance; ++h) {
        const double log_prob = log_choose(distance, h) +
                                log_choose(d - distance, distance - h) - log_choose(d, distance);
        const double avoided = (d - 2.0 * distance + h) / d;
        second_moment += std::exp(log_prob) * std::pow(avoided, key_bits);
    }
    const double table_variance = std::max(0.0, second_moment - p * p);

    const double events = static_cast<double>(pairs) * tables;
    const double variance = p * (1.0 - p) / events +
                            table_variance * (static_cast<double>(pairs) - 1.0) /
                                (static_cast<double>(pairs) * tables);
    return std::sqrt(variance);
}

// --- serialization -----------------------------------------------------------

namespace {

constexpr char kIndexMagic[4] = {'B', 'L', 'I', '1'};
constexpr std::uint32_t kIndexVersion = 1;
constexpr std::uint32_t kSectionParams = 1;
constexpr std::uint32_t kSectionCoordinates = 2;
constexpr std::uint32_t kSectionTables = 3;

void write_section(std::ostream& out, std::uint32_t id, const std::string& payload) {
    io::write_u32(out, id);
    io::write_u64(out, payload.size());
    io::write_bytes(out, payload.data(), payload.size());
    io::write_u32(out, io::crc32(reinterpret_cast<const std::uint8_t*>(payload.data()),
                                 payload.size()));
}

std::string read_section(std::istream& in, std::uint32_t expected_id, const std::string& name) {
    const std::uint32_t id = io::read_u32(in, name);
    if (id != expected_id) {
        throw FormatError(name, "unexpected section id " + std::to_string(id) + " (expected " +
                                    std::to_string(expected_id) + ")");
    }
    const std::uint64_t length = io::read_u64(in, name);
    if (length > (std::uint64_t{1} << 32)) {
        throw FormatError(name, "section length " + std::to_string(length) + " is implausible");
    }
    std::string payload(length, '\0');
    io::read_bytes(in, payload.data(), length, name);
    const std::uint32_t stored_crc = io::read_u32(in, name);
    const std::uint32_t actual_crc =
        io::crc32(reinterpret_cast<const std::uint8_t*>(payload.data()), payload.size());
    if (stored_crc != actual_crc) {
        throw FormatError(name, "checksum mismatch");
    }
    return payload;
}

} // namespace

void save_index(const LshIndex& index, std::ostream& out) {
    io::write_bytes(out, kIndexMagic, 4);
    io::write_u32(out, kIndexVersion);

    {
        std::ostringstream payload(std::ios::binary);
        io::write_u32(payload, index.params_.dimension);
        io::write_u32(payload, index.params_.key_bits);
        io::write_u32(payload, index.params_.table_count);
        io::write_u64(payload, index.params_.seed);
        io::write_f64(payload, index.params_.alpha);
        io::write_f64(payload, index.params_.beta);
        io::write_u64(payload, index.indexed_rows_);
        write_section(out, kSectionParams, payload.str());
    }
    {
        std::ostringstream payload(std::ios::binary);
        for (const auto& table_coords : index.coordinates_) {
            for (std::uint32_t c : table_coords) io::write_u32(payload, c);
        }
        write_section(out, kSectionCoordinates, payload.str());
    }
    {
        std::ostringstream payload(std::ios::binary);
        for (const auto& table : index.tables_) {
            io::write_u64(payload, table.size());
            std::vector<const std::string*> keys;
            keys.reserve(table.size());
            for (const auto& [key, rows] : table) keys.push_back(&key);
            std::sort(keys.begin(), keys.end(),
                      [](const std::string* a, const std::string* b) { return *a < *b; });
            for (const std::string* key : keys) {
                io::write_bytes(payload, key->data(), key->size());
                const auto& rows = table.at(*key);
                io::write_u64(payload, rows.size());
                for (std::uint64_t row : rows) io::write_u64(payload, row);
            }
        }
        write_section(out, kSectionTables, payload.str());
    }
    if (!out) throw FormatError("tables", "write failed");
}

void save_index(const LshIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("index file", "cannot open '" + path + "' for writing");
    save_index(index, out);
}

LshIndex load_index(std::istream& in) {
    char magic[4];
    io::read_bytes(in, magic, 4, "header");
    if (std::memcmp(magic, kIndexMagic, 4) != 0) {
        throw FormatError("header", "expected magic 'BLI1'");
    }
    const std::uint32_t version = io::read_u32(in, "header");
    if (version != kIndexVersion) {
        throw FormatError("header", "unsupported version " + std::to_string(version));
    }

    LshIndex index;
    {
        std::istringstream payload(read_section(in, kSectionParams, "params"), std::ios::binary);
        const std::uint32_t dimension = io::read_u32(payload, "params");
        const std::uint32_t key_bits = io::read_u32(payload, "params");
        const std::uint32_t table_count = io::read_u32(payload, "params");
        const std::uint64_t seed = io::read_u64(payload, "params");
        const double alpha = io::read_f64(payload, "params");
        const double beta = io::read_f64(payload, "params");
        try {
            index.params_ = IndexParams(dimension, key_bits, table_count, seed, alpha, beta);
        } catch (const InvalidArgument& error) {
            throw FormatError("params", error.what());
        }
        index.indexed_rows_ = io::read_u64(payload, "params");
    }
    {
        std::istringstream payload(read_section(in, kSectionCoordinates, "coordinates"),
                                   std::ios::binary);
        index.coordinates_.resize(index.params_.table_count);
        for (auto& table_coords : index.coordinates_) {
            table_coords.resize(index.params_.key_bits);
            for (auto& c : table_coords) {
                c = io::read_u32(payload, "coordinates");
                if (c >= index.params_.dimension) {
                    throw FormatError("coordinates", "coordinate " + std::to_string(c) +
                                                         " out of range for d=" +
                                                         std::to_string(index.params_.dimension));
                }
            }
        }
    }
    {
        std::istringstream payload(read_section(in, kSectionTables, "tables"), std::ios::binary);
        const std::size_t key_bytes = (index.params_.key_bits + 7) / 8;
        index.tables_.resize(index.params_.table_count);
        for (auto& table : index.tables_) {
            const std::uint64_t buckets = io::read_u64(payload, "tables");
            table.reserve(buckets);
            for (std::uint64_t b = 0; b < buckets; ++b) {
                std::string key(key_bytes, '\0');
                io::read_bytes(payload, key.data(), key_bytes, "tables");
                const std::uint64_t rows = io::read_u64(payload, "tables");
                const auto [bucket, inserted] = table.emplace(std::move(key),
                                                              std::vector<std::uint64_t>{});
                if (!inserted) {
                    throw FormatError("tables", "duplicate bucket key in table");
                }
                bucket->second.resize(rows);
                for (auto& row : bucket->second) row = io::read_u64(payload, "tables");
            }
        }
    }
    return index;
}

LshIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("index file", "cannot open '" + path + "' for reading");
    return load_index(in);
}

} // namespace cubelsh
