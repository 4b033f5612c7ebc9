#include "pmrac/classical.hpp"

#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pmrac::classical {

namespace {

void validate(const ClassicalStrategy& s) {
    const int inputs = 1 << s.n;
    const int messages = 1 << s.m;
    if (s.n < 1 || s.m < 0) throw std::invalid_argument("classical strategy: need n >= 1, m >= 0");
    if (static_cast<int>(s.encoding.size()) != inputs)
        throw std::invalid_argument("classical strategy: encoding must cover all 2^n inputs");
    for (int e : s.encoding)
        if (e < 0 || e >= messages) throw std::invalid_argument("classical strategy: message out of range");
    if (static_cast<int>(s.decoding.size()) != messages)
        throw std::invalid_argument("classical strategy: decoding must cover all messages");
    for (const auto& row : s.decoding) {
        if (static_cast<int>(row.size()) != s.n)
            throw std::invalid_argument("classical strategy: decoding row must cover all y");
        for (int b : row)
            if (b != 0 && b != 1) throw std::invalid_argument("classical strategy: decoded bit must be 0/1");
    }
}

int bit_of(int x, int y, int n) { return (x >> (n - 1 - y)) & 1; }

// Success count for one encoding under majority decoding, without
// materializing the decoder: per (message, y), majority wins, ties count
// as bit 0 (both choices score the same, so the count is unaffected).
std::int64_t majority_score(const std::vector<int>& encoding, int n, int m) {
    const int inputs = 1 << n;
    const int messages = 1 << m;
    std::int64_t score = 0;
    for (int y = 0; y < n; ++y) {
        std::vector<int> ones(messages, 0), total(messages, 0);
        for (int x = 0; x < inputs; ++x) {
            ++total[encoding[x]];
            ones[encoding[x]] += bit_of(x, y, n);
        }
        for (int c = 0; c < messages; ++c) score += std::max(ones[c], total[c] - ones[c]);
    }
    return score;
}

}  // namespace

std::string RationalScore::to_fraction() const {
    const std::int64_t g = std::gcd(numerator, denominator);
    const std::int64_t num = numerator / (g ? g : 1), den = denominator / (g ? g : 1);
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

RationalScore evaluate_classical(const ClassicalStrategy& s) {
    validate(s);
    const int inputs = 1 << s.n;
    std::int64_t hits = 0;
    for (int x = 0; x < inputs; ++x)
        for (int y = 0; y < s.n; ++y)
            if (s.decoding[s.encoding[x]][y] == bit_of(x, y, s.n)) ++hits;
    return {hits, static_cast<std::int64_t>(s.n) * inputs};
}

std::vector<std::vector<int>> optimal_decoder(const std::vector<int>& encoding, int n, int m) {
    const int inputs = 1 << n;
    const int messages = 1 << m;
    std::vector<std::vector<int>> dec(messages, std::vector<int>(n, 0));
    for (int y = 0; y < n; ++y) {
        std::vector<int> ones(messages, 0), total(messages, 0);
        for (int x = 0; x < inputs; ++x) {
            ++total[encoding[x]];
            ones[encoding[x]] += bit_of(x, y, n);
        }
        for (int c = 0; c < messages; ++c) dec[c][y] = 2 * ones[c] > total[c] ? 1 : 0;
    }
    return dec;
}

RationalScore enumerate_bound(int n, int m, Execution exec) {
    if (n < 1 || m < 0) throw std::invalid_argument("enumerate_bound: need n >= 1, m >= 0");
    const int inputs = 1 << n;
    const std::int64_t denom = static_cast<std::int64_t>(n) * inputs;
    if (m >= n) return {denom, denom};  // identity encoding is exact

    const double log2_count = static_cast<double>(m) * inputs;
    if (log2_count > 20)
        throw std::invalid_argument(
            "enumerate_bound: 2^(m*2^n) encodings exceed the 2^20 guard; "
            "feasible e.g. (n,m) in {(2,*), (3,1), (3,2)}");
    const std::int64_t count = std::int64_t{1} << static_cast<int>(log2_count);
    const int messages = 1 << m;

    // Best (score, encoding index); ties resolve to the smallest index so
    // serial and parallel runs agree.
    std::int64_t best_score = -1, best_idx = -1;

    auto scan = [&](std::int64_t lo, std::int64_t hi, std::int64_t& bs, std::int64_t& bi) {
        std::vector<int> enc(inputs);
        for (std::int64_t idx = lo; idx < hi; ++idx) {
            std::int64_t t = idx;
            for (int x = 0; x < inputs; ++x) {
                enc[x] = static_cast<int>(t % messages);
                t /= messages;
            }
            const std::int64_t sc = majority_score(enc, n, m);
            if (sc > bs) {
                bs = sc;
                bi = idx;
            }
        }
    };

    if (exec == Execution::Serial) {
        scan(0, count, best_score, best_idx);
    } else {
#ifdef _OPENMP
#pragma omp parallel
        {
            std::int64_t ls = -1, li = -1;
            const int nt = omp_get_num_threads(), tid = omp_get_thread_num();
            const std::int64_t chunk = (count + nt - 1) / nt;
            scan(std::min(count, tid * chunk), std::min(count, (tid + 1) * chunk), ls, li);
#pragma omp critical
            {
                if (ls > best_score || (ls == best_score && li < best_idx)) {
                    best_score = ls;
                    best_idx = li;
                }
            }
        }
#else
        scan(0, count, best_score, best_idx);
#endif
    }
    return {best_score, denom};
}

}  // namespace pmrac::classical
