#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cubelsh/benchmark.hpp"
#include "cubelsh/lsh_index.hpp"

using namespace cubelsh;

TEST_SUITE_BEGIN("lshindex");

TEST_CASE("hamming distance") {
    Rng rng(3);
    const BitVector x = random_bit_vector(64, rng);
    CHECK(hamming_distance(x, x) == 0);

    // complement pair at d = 16
    BitVector y(16);
    BitVector z(16);
    for (std::uint32_t j = 0; j < 16; ++j) y.set(j, true);
    CHECK(hamming_distance(y, z) == 16);

    BitVector a(4), b(4);
    a.set(1, true);
    a.set(3, true); // 0b1010
    b.set(1, true);
    b.set(2, true); // 0b0110
    CHECK(hamming_distance(a, b) == 2);

    CHECK_THROWS_AS(hamming_distance(a, y), InvalidArgument);
}

TEST_CASE("hamming distance agrees with a bit-by-bit loop") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.next_below(200));
        const BitVector x = random_bit_vector(d, rng);
        const BitVector y = random_bit_vector(d, rng);
        std::uint32_t expected = 0;
        for (std::uint32_t j = 0; j < d; ++j) expected += x.get(j) != y.get(j);
        CHECK(hamming_distance(x, y) == expected);
    }
}

TEST_CASE("flip_distinct_bits lands at the exact distance") {
    Rng rng(7);
    for (std::uint32_t r : {0u, 1u, 7u, 32u, 64u}) {
        const BitVector x = random_bit_vector(64, rng);
        CHECK(hamming_distance(x, flip_distinct_bits(x, r, rng)) == r);
    }
    const BitVector x = random_bit_vector(8, rng);
    CHECK_THROWS_AS(flip_distinct_bits(x, 9, rng), InvalidArgument);
}

TEST_CASE("parameter derivation reproduces the worked closed forms") {
    const IndexParams params = derive_params(10000, 128, 0.9, 0.5);
    CHECK(params.key_bits == 33);  // ceil(ln 1e4 / ln(1/0.75)) = ceil(32.0157)
    CHECK(params.table_count == 6); // ceil(1e4^0.178299) = ceil(5.1665)

    const IndexParams tiny = derive_params(2, 8, 0.5, 0.0);
    CHECK(tiny.key_bits == 1); // ceil(ln 2 / ln 2)

    CHECK_THROWS_AS(derive_params(1, 8, 0.9, 0.5), InvalidArgument);
    CHECK_THROWS_AS(derive_params(100, 8, 0.5, 0.9), InvalidArgument);
}

TEST_CASE("derived table count is nonincreasing in alpha") {
    std::uint32_t previous = UINT32_MAX;
    for (double alpha = 0.55; alpha < 1.0; alpha += 0.05) {
        const IndexParams params = derive_params(10000, 64, alpha, 0.5);
        CHECK(params.table_count <= previous);
        previous = params.table_count;
    }
    CHECK(derive_params(10000, 64, 0.99, 0.5).table_count <= 2);
}

TEST_CASE("index params validate their region") {
    CHECK_THROWS_AS(IndexParams(64, 0, 4, 1, 0.9, 0.5), InvalidArgument);
    CHECK_THROWS_AS(IndexParams(64, 4, 0, 1, 0.9, 0.5), InvalidArgument);
    CHECK_THROWS_AS(IndexParams(64, 4, 4, 1, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(IndexParams(64, 4, 4, 1, 0.4, 0.5), InvalidArgument);
}

TEST_CASE("build determinism and the empty index") {
    Rng rng(11);
    const BinaryDataset data = BinaryDataset::random(500, 48, rng);
    const IndexParams params(48, 8, 4, 99, 0.8, 0.4);
    const LshIndex first = LshIndex::build(data, params);
    const LshIndex second = LshIndex::build(data, params);
    CHECK(first == second);

    const LshIndex empty = LshIndex::build(BinaryDataset(48), params);
    CHECK(empty.indexed_rows() == 0);
    CHECK(empty.query(BinaryDataset(48), random_bit_vector(48, rng)).empty());

    CHECK_THROWS_AS(LshIndex::build(BinaryDataset(32), params), InvalidArgument);
}

TEST_CASE("duplicate rows share every bucket") {
    Rng rng(13);
    const BitVector row = random_bit_vector(32, rng);
    BinaryDataset data(32);
    data.append(row);
    data.append(row);
    const LshIndex index = LshIndex::build(data, IndexParams(32, 6, 3, 5, 0.8, 0.4));
    for (std::uint32_t t = 0; t < 3; ++t) {
        CHECK(index.key_for(row, t) == index.key_for(row, t));
    }
    const std::vector<QueryHit> hits = index.query(data, row);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].row == 0);
    CHECK(hits[0].distance == 0);
    CHECK(hits[1].row == 1);
}

TEST_CASE("an indexed row is always returned at distance zero") {
    Rng rng(17);
    const BinaryDataset data = BinaryDataset::random(200, 64, rng);
    const LshIndex index = LshIndex::build(data, IndexParams(64, 10, 5, 23, 0.9, 0.5));
    for (std::uint64_t row : {0ull, 57ull, 199ull}) {
        const std::vector<QueryHit> hits = index.query(data, data.row(row));
        REQUIRE(!hits.empty());
        CHECK(hits.front().distance == 0);
        bool found = false;
        for (const QueryHit& hit : hits) found = found || hit.row == row;
        CHECK(found);
    }
}

TEST_CASE("query soundness: every candidate shares a full key with the query") {
    Rng rng(19);
    const BinaryDataset data = BinaryDataset::random(400, 40, rng);
    const LshIndex index = LshIndex::build(data, IndexParams(40, 6, 4, 31, 0.8, 0.3));
    for (int trial = 0; trial < 20; ++trial) {
        const BitVector q = random_bit_vector(40, rng);
        for (const QueryHit& hit : index.query(data, q)) {
            bool shares = false;
            for (std::uint32_t t = 0; t < 4 && !shares; ++t) {
                shares = index.key_for(q, t) == index.key_for(data.row(hit.row), t);
            }
            CHECK(shares);
        }
    }
}

TEST_CASE("radius filter and ordering") {
    Rng rng(23);
    BinaryDataset data(16);
    const BitVector base = random_bit_vector(16, rng);
    data.append(base);                                // distance 0
    data.append(flip_distinct_bits(base, 3, rng));    // distance 3
    data.append(flip_distinct_bits(base, 9, rng));    // distance 9
    // k=1 single-bit keys, many tables: every row collides somewhere
    const LshIndex index = LshIndex::build(data, IndexParams(16, 1, 32, 7, 0.9, 0.1));

    const std::vector<QueryHit> all = index.query(data, base);
    REQUIRE(all.size() == 3);
    CHECK(all[0].distance == 0);
    CHECK(all[1].distance == 3);
    CHECK(all[2].distance == 9);

    const std::vector<QueryHit> within = index.query(data, base, 3);
    REQUIRE(within.size() == 2);
    CHECK(within.back().distance == 3);

    CHECK_THROWS_AS(index.query(data, random_bit_vector(8, rng)), InvalidArgument);
}

TEST_CASE("collision rates match ((1+a)/2)^k within 3 sigma") {
    // d = 200 realizes all three correlations as integer distances
    const std::uint32_t d = 200;
    Rng rng(29);
    std::uint64_t pair_count = 2000;
    const std::uint32_t tables = 60;
    for (double alpha : {0.5, 0.8, 0.9}) {
        const auto r = static_cast<std::uint32_t>(std::llround(d * (1.0 - alpha) / 2.0));
        for (std::uint32_t k : {4u, 8u, 16u}) {
            const LshIndex index =
                LshIndex::build(BinaryDataset(d), IndexParams(d, k, tables, 1234, 0.95, 0.05));
            std::vector<std::pair<BitVector, BitVector>> pairs;
            pairs.reserve(pair_count);
            for (std::uint64_t i = 0; i < pair_count; ++i) {
                BitVector x = random_bit_vector(d, rng);
                BitVector y = flip_distinct_bits(x, r, rng);
                pairs.emplace_back(std::move(x), std::move(y));
            }
            const CollisionRate measured = index.measure_collision_rate(pairs, true);
            CHECK(measured.events == pair_count * tables);
            CHECK(measured.events >= 100000);
            CHECK(measured.per_table.size() == tables);

            const double expected = std::pow((1.0 + alpha) / 2.0, k);
            const double sigma = collision_rate_sigma(d, r, k, pair_count, tables);
            CHECK(std::abs(measured.rate - expected) <= 3.0 * sigma);
        }
    }
}

TEST_CASE("uncorrelated pairs collide at (1/2)^k") {
    // distance d/2 is correlation 0
    const std::uint32_t d = 16, r = 8, k = 4, tables = 50;
    Rng rng(33);
    const LshIndex index = LshIndex::build(BinaryDataset(d), IndexParams(d, k, tables, 8, 0.9, 0.1));
    std::vector<std::pair<BitVector, BitVector>> pairs;
    for (int i = 0; i < 4000; ++i) {
        BitVector x = random_bit_vector(d, rng);
        pairs.emplace_back(x, flip_distinct_bits(x, r, rng));
    }
    const CollisionRate measured = index.measure_collision_rate(pairs);
    const double sigma = collision_rate_sigma(d, r, k, 4000, tables);
    CHECK(std::abs(measured.rate - 1.0 / 16.0) <= 3.0 * sigma);
}

TEST_CASE("collision sigma shrinks with more tables and dominates the binomial floor") {
    const double few_tables = collision_rate_sigma(160, 8, 33, 2000, 6);
    const double many_tables = collision_rate_sigma(160, 8, 33, 2000, 60);
    CHECK(many_tables < few_tables);
    const double p = std::pow(152.0 / 160.0, 33);
    const double binomial_only = std::sqrt(p * (1.0 - p) / (2000.0 * 6));
    CHECK(few_tables > binomial_only); // shared coordinate draws add variance
}

TEST_CASE("identical pairs always collide") {
    Rng rng(31);
    const LshIndex index = LshIndex::build(BinaryDataset(64), IndexParams(64, 16, 8, 3, 0.9, 0.5));
    std::vector<std::pair<BitVector, BitVector>> pairs;
    for (int i = 0; i < 100; ++i) {
        const BitVector x = random_bit_vector(64, rng);
        pairs.emplace_back(x, x);
    }
    CHECK(index.measure_collision_rate(pairs).rate == 1.0);
}

TEST_CASE("dataset save/load round trip") {
    Rng rng(37);
    const BinaryDataset data = BinaryDataset::random(100, 37, rng);
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_dataset(data, stream);
    const BinaryDataset loaded = load_dataset(stream);
    REQUIRE(loaded.count() == data.count());
    REQUIRE(loaded.dimension() == data.dimension());
    for (std::uint64_t i = 0; i < data.count(); ++i) {
        CHECK(loaded.row(i) == data.row(i));
    }
}

TEST_CASE("dataset format is little-endian with the documented header") {
    BinaryDataset data(5);
    BitVector row(5);
    row.set(0, true);
    row.set(4, true);
    data.append(row);
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_dataset(data, stream);
    const std::string bytes = stream.str();
    REQUIRE(bytes.size() == 4 + 4 + 8 + 1);
    CHECK(bytes.substr(0, 4) == "BDS1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 5); // u32 dimension, little-endian
    CHECK(static_cast<unsigned char>(bytes[5]) == 0);
    CHECK(static_cast<unsigned char>(bytes[8]) == 1); // u64 count
    CHECK(static_cast<unsigned char>(bytes[16]) == 0b00010001); // LSB-first row bits
}

TEST_CASE("index save/load round trip preserves queries byte-exactly") {
    Rng rng(41);
    const BinaryDataset data = BinaryDataset::random(300, 56, rng);
    const LshIndex index = LshIndex::build(data, IndexParams(56, 9, 5, 77, 0.85, 0.35));

    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_index(index, stream);
    const LshIndex loaded = load_index(stream);
    CHECK(loaded == index);
    CHECK(loaded.indexed_rows() == index.indexed_rows());

    for (int trial = 0; trial < 10; ++trial) {
        const BitVector q = random_bit_vector(56, rng);
        CHECK(loaded.query(data, q) == index.query(data, q));
    }

    // identical contents serialize to identical bytes
    std::stringstream second(std::ios::in | std::ios::out | std::ios::binary);
    save_index(loaded, second);
    CHECK(second.str() == stream.str());
}

TEST_CASE("index header bytes are endian-fixed") {
    const LshIndex index = LshIndex::build(BinaryDataset(300), IndexParams(300, 2, 1, 0, 0.9, 0.5));
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_index(index, stream);
    const std::string bytes = stream.str();
    CHECK(bytes.substr(0, 4) == "BLI1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 1); // u32 version, little-endian
    CHECK(static_cast<unsigned char>(bytes[5]) == 0);
    // params section: id 1, length 44, then d = 300 = 0x012C little-endian
    CHECK(static_cast<unsigned char>(bytes[8]) == 1);
    CHECK(static_cast<unsigned char>(bytes[12]) == 44);
    CHECK(static_cast<unsigned char>(bytes[20]) == 0x2C);
    CHECK(static_cast<unsigned char>(bytes[21]) == 0x01);
}

TEST_CASE("index format errors name the failed section") {
    Rng rng(43);
    const BinaryDataset data = BinaryDataset::random(50, 24, rng);
    const LshIndex index = LshIndex::build(data, IndexParams(24, 5, 3, 9, 0.8, 0.2));
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_index(index, stream);
    const std::string bytes = stream.str();

    {
        std::stringstream truncated(bytes.substr(0, bytes.size() - 7),
                                    std::ios::in | std::ios::binary);
        try {
            load_index(truncated);
            FAIL("expected FormatError");
        } catch (const FormatError& error) {
            CHECK(error.section == "tables");
        }
    }
    {
        std::string corrupt = bytes;
        corrupt[20] ^= 0x01; // inside the params payload
        std::stringstream broken(corrupt, std::ios::in | std::ios::binary);
        try {
            load_index(broken);
            FAIL("expected FormatError");
        } catch (const FormatError& error) {
            CHECK(error.section == "params");
            CHECK(std::string(error.what()).find("checksum") != std::string::npos);
        }
    }
    {
        std::string wrong_version = bytes;
        wrong_version[4] = 2;
        std::stringstream versioned(wrong_version, std::ios::in | std::ios::binary);
        try {
            load_index(versioned);
            FAIL("expected FormatError");
        } catch (const FormatError& error) {
            CHECK(error.section == "header");
        }
    }
}

TEST_CASE("planted distance split matches the correlation convention") {
    const PlantedDistanceSplit split = planted_distance_split(128, 0.9);
    CHECK(split.low == 6);
    CHECK(split.high == 7);
    CHECK(split.high_probability == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(alpha_exact_dimension(128, 0.9) == 140);
    CHECK(alpha_exact_dimension(128, 0.5) == 128);
}

TEST_CASE("small planted benchmark behaves sanely") {
    BenchConfig config;
    config.n = 2000;
    config.d = 64;
    config.alpha = 0.9;
    config.beta = 0.5;
    config.planted = 50;
    config.seed = 4242;
    config.collision_pairs = 2000;

    const BenchReport report = run_planted_benchmark(config);
    CHECK(report.params.key_bits >= 1);
    CHECK(report.params.table_count >= 1);
    CHECK(report.recall >= 0.0);
    CHECK(report.recall <= 1.0);
    // measured recall within 4 binomial sigmas of the closed-form expectation
    const double sigma =
        std::sqrt(report.expected_recall * (1.0 - report.expected_recall) / config.planted);
    CHECK(std::abs(report.recall - report.expected_recall) <= 4.0 * sigma + 1e-9);
    REQUIRE(!report.collision.empty());
    for (const CollisionStratum& stratum : report.collision) {
        CHECK(stratum.within_3_sigma());
    }
}

TEST_SUITE_END();
