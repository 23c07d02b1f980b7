#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubelsh/errors.hpp"
#include "cubelsh/rng.hpp"

namespace cubelsh {

/// Index of a point of {-1,+1}^d, encoded in [0, 2^d).
///
/// Coordinate convention used throughout: coordinate j (1-based) of the point
/// with index p is +1 when bit (j-1) of p is 0 and -1 when that bit is 1.
using PointIndex = std::uint32_t;

/// Dense truth tables cap the dimension; 2^20 entries is the desk-scale limit.
inline constexpr int kMaxFunctionDimension = 20;

/// Coordinate j (1-based) of point p as +1/-1.
inline int coordinate(PointIndex p, int j) {
    return (p >> (j - 1)) & 1u ? -1 : +1;
}

/// The monomial x^S = prod_{j in S} x_j at point p, for S given as a bitmask
/// (bit j-1 set means j in S). Equals (-1)^popcount(p & S).
int monomial_sign(PointIndex p, std::uint32_t subset_mask);

/// A function {-1,+1}^d -> {-1,+1} stored as its truth table, indexed by PointIndex.
class BooleanFunction {
public:
    /// Wraps a table verbatim; rejects wrong length and entries other than +/-1.
    BooleanFunction(int dimension, std::vector<std::int8_t> table);

    int dimension() const { return dimension_; }
    std::size_t size() const { return table_.size(); }
    const std::vector<std::int8_t>& table() const { return table_; }

    /// Table lookup; range-checks the point index.
    int evaluate(PointIndex x) const;

    bool operator==(const BooleanFunction& other) const {
        return dimension_ == other.dimension_ && table_ == other.table_;
    }

private:
    int dimension_;
    std::vector<std::int8_t> table_;
};

/// f(x) = sign * x_i.
BooleanFunction make_dictator(int dimension, int i, int sign);

/// f(x) = prod_{i in S} x_i; the empty set yields the constant +1 function.
BooleanFunction make_parity(int dimension, const std::vector<int>& subset);

/// Majority of the coordinates; dimension must be odd so ties cannot occur.
BooleanFunction make_majority(int dimension);

/// Wraps an explicit truth table (same checks as the constructor).
BooleanFunction make_from_table(int dimension, std::vector<std::int8_t> table);

/// Uniformly random truth table on d bits.
BooleanFunction make_random(int dimension, Rng& rng);

/// A pair (x, y) where y was drawn from the alpha-noisy neighborhood of x.
struct CorrelatedPair {
    PointIndex x;
    PointIndex y;
    double correlation;
};

/// x uniform on [0, 2^d); each coordinate of y independently keeps the value of
/// x's coordinate with probability (1+alpha)/2 and flips otherwise.
CorrelatedPair sample_correlated_pair(int dimension, double alpha, Rng& rng);

// --- exhaustive enumeration (d <= 4) ---------------------------------------

/// Number of Boolean functions on d bits, 2^(2^d). Throws UnsupportedScale for
/// d > 4, naming the count that would be required.
std::uint64_t function_count(int dimension);

/// The ordinal-th function in ascending truth-table order: bit p of the ordinal
/// is 1 exactly when the table entry at point p is -1.
BooleanFunction function_from_ordinal(int dimension, std::uint64_t ordinal);

/// Ordinal of a function under the same order (inverse of function_from_ordinal).
std::uint64_t ordinal_of(const BooleanFunction& f);

/// Lazily yields every Boolean function on d bits exactly once, in ascending
/// truth-table order. Subranges of ordinals can be enumerated independently,
/// so consumers may partition the range for parallel work.
class FunctionRange {
public:
    explicit FunctionRange(int dimension)
        : FunctionRange(dimension, 0, function_count(dimension)) {}
    FunctionRange(int dimension, std::uint64_t first, std::uint64_t last);

    class iterator {
    public:
        iterator(int dimension, std::uint64_t ordinal) : dimension_(dimension), ordinal_(ordinal) {}
        BooleanFunction operator*() const { return function_from_ordinal(dimension_, ordinal_); }
        iterator& operator++() { ++ordinal_; return *this; }
        bool operator!=(const iterator& other) const { return ordinal_ != other.ordinal_; }
        std::uint64_t ordinal() const { return ordinal_; }

    private:
        int dimension_;
        std::uint64_t ordinal_;
    };

    iterator begin() const { return {dimension_, first_}; }
    iterator end() const { return {dimension_, last_}; }
    FunctionRange subrange(std::uint64_t first, std::uint64_t last) const;

private:
    int dimension_;
    std::uint64_t first_;
    std::uint64_t last_;
};

inline FunctionRange enumerate_functions(int dimension) { return FunctionRange(dimension); }

// --- text serialization -----------------------------------------------------

/// Writes the two-line text form: "d=<int>" then 2^d space-separated +1/-1
/// entries in PointIndex order.
void write_table(const BooleanFunction& f, std::ostream& out);

/// Parses the text form; FormatError diagnostics carry the offending line number.
BooleanFunction read_table(std::istream& in);

} // namespace cubelsh
