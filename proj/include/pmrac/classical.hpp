#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmrac::classical {

/// Deterministic n -> m RAC strategy: an encoding table over all 2^n inputs
/// and a decoding table over all (message, y) pairs.
struct ClassicalStrategy {
    int n = 0;                       // input bits
    int m = 0;                       // message bits
    std::vector<int> encoding;       // size 2^n, values in [0, 2^m)
    std::vector<std::vector<int>> decoding;  // [message][y] -> bit
};

/// Exact success count over the n * 2^n equally likely (x, y) trials.
struct RationalScore {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    std::string to_fraction() const;
    friend auto operator<=>(const RationalScore& a, const RationalScore& b) {
        return a.numerator * b.denominator <=> b.numerator * a.denominator;
    }
    friend bool operator==(const RationalScore& a, const RationalScore& b) {
        return a.numerator * b.denominator == b.numerator * a.denominator;
    }
};

RationalScore evaluate_classical(const ClassicalStrategy& s);

/// Majority best-response decoder for a fixed encoding; ties decode to 0.
std::vector<std::vector<int>> optimal_decoder(const std::vector<int>& encoding, int n, int m);

enum class Execution { Serial, Parallel };

/// Maximum of evaluate_classical over all 2^(m 2^n) deterministic encodings
/// with majority decoding. Refuses when the encoding count exceeds 2^20;
/// m >= n short-circuits to the exact identity-encoding optimum of 1.
/// Serial and parallel execution produce identical results.
RationalScore enumerate_bound(int n, int m, Execution exec = Execution::Serial);

}  // namespace pmrac::classical
