#include "cubelsh/boolean_function.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cubelsh {

int monomial_sign(PointIndex p, std::uint32_t subset_mask) {
    return std::popcount(p & subset_mask) & 1 ? -1 : +1;
}

namespace {

void check_dimension(int dimension) {
    if (dimension < 1 || dimension > kMaxFunctionDimension) {
        throw InvalidArgument("dimension must be in [1, " +
                              std::to_string(kMaxFunctionDimension) + "], got " +
                              std::to_string(dimension));
    }
}

} // namespace

BooleanFunction::BooleanFunction(int dimension, std::vector<std::int8_t> table)
    : dimension_(dimension), table_(std::move(table)) {
    check_dimension(dimension);
    const std::size_t expected = std::size_t{1} << dimension;
    if (table_.size() != expected) {
        throw InvalidArgument("truth table for d=" + std::to_string(dimension) + " must have " +
                              std::to_string(expected) + " entries, got " +
                              std::to_string(table_.size()));
    }
    for (std::size_t p = 0; p < table_.size(); ++p) {
        if (table_[p] != 1 && table_[p] != -1) {
            throw InvalidArgument("truth table entry at point " + std::to_string(p) +
                                  " must be +1 or -1, got " + std::to_string(int(table_[p])));
        }
    }
}

int BooleanFunction::evaluate(PointIndex x) const {
    if (x >= table_.size()) {
        throw InvalidArgument("point index " + std::to_string(x) + " out of range for d=" +
                              std::to_string(dimension_));
    }
    return table_[x];
}

BooleanFunction make_dictator(int dimension, int i, int sign) {
    check_dimension(dimension);
    if (i < 1 || i > dimension) {
        throw InvalidArgument("dictator coordinate " + std::to_string(i) +
                              " out of range [1, " + std::to_string(dimension) + "]");
    }
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("dictator sign must be +1 or -1");
    }
    std::vector<std::int8_t> table(std::size_t{1} << dimension);
    for (PointIndex p = 0; p < table.size(); ++p) {
        table[p] = static_cast<std::int8_t>(sign * coordinate(p, i));
    }
    return {dimension, std::move(table)};
}

BooleanFunction make_parity(int dimension, const std::vector<int>& subset) {
    check_dimension(dimension);
    std::uint32_t mask = 0;
    for (int i : subset) {
        if (i < 1 || i > dimension) {
            throw InvalidArgument("parity subset member " + std::to_string(i) +
                                  " out of range [1, " + std::to_string(dimension) + "]");
        }
        mask |= 1u << (i - 1);
    }
    std::vector<std::int8_t> table(std::size_t{1} << dimension);
    for (PointIndex p = 0; p < table.size(); ++p) {
        table[p] = static_cast<std::int8_t>(monomial_sign(p, mask));
    }
    return {dimension, std::move(table)};
}

BooleanFunction make_majority(int dimension) {
    check_dimension(dimension);
    if (dimension % 2 == 0) {
        throw InvalidArgument("majority requires odd dimension, got " + std::to_string(dimension));
    }
    std::vector<std::int8_t> table(std::size_t{1} << dimension);
    for (PointIndex p = 0; p < table.size(); ++p) {
        int sum = 0;
        for (int j = 1; j <= dimension; ++j) sum += coordinate(p, j);
        table[p] = sum > 0 ? 1 : -1;
    }
    return {dimension, std::move(table)};
}

BooleanFunction make_from_table(int dimension, std::vector<std::int8_t> table) {
    return {dimension, std::move(table)};
}

BooleanFunction make_random(int dimension, Rng& rng) {
    check_dimension(dimension);
    std::vector<std::int8_t> table(std::size_t{1} << dimension);
    for (auto& entry : table) entry = rng.bernoulli(0.5) ? 1 : -1;
    return {dimension, std::move(table)};
}

CorrelatedPair sample_correlated_pair(int dimension, double alpha, Rng& rng) {
    check_dimension(dimension);
    if (alpha < -1.0 || alpha > 1.0) {
        throw InvalidArgument("correlation must lie in [-1, 1], got " + std::to_string(alpha));
    }
    const PointIndex x = static_cast<PointIndex>(rng.next_below(std::uint64_t{1} << dimension));
    const double flip_probability = (1.0 - alpha) / 2.0;
    PointIndex y = x;
    for (int j = 0; j < dimension; ++j) {
        if (rng.bernoulli(flip_probability)) y ^= PointIndex{1} << j;
    }
    return {x, y, alpha};
}

std::uint64_t function_count(int dimension) {
    check_dimension(dimension);
    if (dimension > 4) {
        std::string count = dimension == 5 ? "4294967296 (2^32)" : "2^(2^" + std::to_string(dimension) + ")";
        throw UnsupportedScale("exhaustive enumeration at d=" + std::to_string(dimension) +
                               " would visit " + count + " functions; supported only for d <= 4");
    }
    return std::uint64_t{1} << (std::uint64_t{1} << dimension);
}

BooleanFunction function_from_ordinal(int dimension, std::uint64_t ordinal) {
    const std::uint64_t count = function_count(dimension);
    if (ordinal >= count) {
        throw InvalidArgument("function ordinal " + std::to_string(ordinal) +
                              " out of range [0, " + std::to_string(count) + ")");
    }
    const std::size_t points = std::size_t{1} << dimension;
    std::vector<std::int8_t> table(points);
    for (std::size_t p = 0; p < points; ++p) {
        table[p] = (ordinal >> p) & 1u ? -1 : +1;
    }
    return {dimension, std::move(table)};
}

std::uint64_t ordinal_of(const BooleanFunction& f) {
    if (f.dimension() > 4) {
        throw UnsupportedScale("function ordinals are defined only for d <= 4");
    }
    std::uint64_t ordinal = 0;
    for (std::size_t p = 0; p < f.size(); ++p) {
        if (f.table()[p] == -1) ordinal |= std::uint64_t{1} << p;
    }
    return ordinal;
}

FunctionRange::FunctionRange(int dimension, std::uint64_t first, std::uint64_t last)
    : dimension_(dimension), first_(first), last_(last) {
    const std::uint64_t count = function_count(dimension);
    if (first > last || last > count) {
        throw InvalidArgument("invalid enumeration subrange [" + std::to_string(first) + ", " +
                              std::to_string(last) + ") for d=" + std::to_string(dimension));
    }
}

FunctionRange FunctionRange::subrange(std::uint64_t first, std::uint64_t last) const {
    if (first < first_ || last > last_) {
        throw InvalidArgument("subrange must lie within the parent range");
    }
    return {dimension_, first, last};
}

void write_table(const BooleanFunction& f, std::ostream& out) {
    out << "d=" << f.dimension() << '\n';
    for (std::size_t p = 0; p < f.size(); ++p) {
        if (p) out << ' ';
        out << (f.table()[p] == 1 ? "+1" : "-1");
    }
    out << '\n';
}

BooleanFunction read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("truth-table header", "line 1: expected 'd=<int>', got end of input");
    }
    if (line.rfind("d=", 0) != 0) {
        throw FormatError("truth-table header", "line 1: expected 'd=<int>', got '" + line + "'");
    }
    int dimension = 0;
    try {
        std::size_t used = 0;
        dimension = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw FormatError("truth-table header", "line 1: cannot parse dimension from '" + line + "'");
    }
    if (dimension < 1 || dimension > kMaxFunctionDimension) {
        throw FormatError("truth-table header",
                          "line 1: dimension " + std::to_string(dimension) + " out of range [1, " +
                              std::to_string(kMaxFunctionDimension) + "]");
    }

    if (!std::getline(in, line)) {
        throw FormatError("truth-table entries", "line 2: expected table entries, got end of input");
    }
    std::istringstream entries(line);
    std::vector<std::int8_t> table;
    table.reserve(std::size_t{1} << dimension);
    std::string token;
    while (entries >> token) {
        if (token == "+1" || token == "1") {
            table.push_back(1);
        } else if (token == "-1") {
            table.push_back(-1);
        } else {
            throw FormatError("truth-table entries",
                              "line 2: entry " + std::to_string(table.size() + 1) +
                                  " must be +1 or -1, got '" + token + "'");
        }
    }
    const std::size_t expected = std::size_t{1} << dimension;
    if (table.size() != expected) {
        throw FormatError("truth-table entries", "line 2: expected " + std::to_string(expected) +
                                                     " entries, got " + std::to_string(table.size()));
    }
    return {dimension, std::move(table)};
}

} // namespace cubelsh
