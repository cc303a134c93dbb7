#include "airec/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "airec/errors.hpp"

namespace airec {

namespace {

constexpr std::size_t kExactLimit = 20;  // exact distribution up to here

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Exact two-sided p-value: probability, over all 2^n equiprobable sign
// assignments of the observed ranks, that min(T+, T-) <= W. Ranks are doubled
// so average ranks from ties stay integral.
double exact_p_value(const std::vector<std::int64_t>& doubled_ranks, std::int64_t doubled_w) {
    const std::size_t n = doubled_ranks.size();
    std::int64_t total = 0;
    for (std::int64_t r : doubled_ranks) total += r;

    // subset-sum counts over T+ (doubled)
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    for (std::int64_t r : doubled_ranks) {
        for (std::int64_t s = total; s >= r; --s) {
            counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
        }
    }

    double low_tail = 0.0;
    for (std::int64_t s = 0; s <= doubled_w; ++s) low_tail += counts[static_cast<std::size_t>(s)];

    // min(T+, T-) <= W counts both tails; the midpoint (T+ = T- = W) would be
    // counted twice
    double hits = 2.0 * low_tail;
    if (2 * doubled_w == total) hits -= counts[static_cast<std::size_t>(doubled_w)];
    return hits / std::ldexp(1.0, static_cast<int>(n));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("paired samples differ in size: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }

    WilcoxonResult result;
    result.n_effective = diffs.size();
    if (diffs.empty()) {
        // all-zero differences: degenerate, nothing to test
        result.statistic = 0.0;
        result.p_value = 1.0;
        result.significant_at_95 = false;
        return result;
    }

    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });

    // average ranks, doubled to stay integral; collect tie group sizes
    std::vector<std::int64_t> doubled_rank(n, 0);
    std::vector<std::size_t> tie_sizes;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
        const std::int64_t doubled_avg = static_cast<std::int64_t>(i + 1 + j);  // 2*(i+1+j)/2
        for (std::size_t k = i; k < j; ++k) doubled_rank[order[k]] = doubled_avg;
        tie_sizes.push_back(j - i);
        i = j;
    }

    std::int64_t doubled_pos = 0;
    std::int64_t doubled_neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (diffs[k] > 0) {
            doubled_pos += doubled_rank[k];
        } else {
            doubled_neg += doubled_rank[k];
        }
    }
    const std::int64_t doubled_w = std::min(doubled_pos, doubled_neg);
    result.statistic = static_cast<double>(doubled_w) / 2.0;

    if (n <= kExactLimit) {
        std::vector<std::int64_t> ranks(doubled_rank);
        result.p_value = exact_p_value(ranks, doubled_w);
    } else {
        const double dn = static_cast<double>(n);
        const double mean = dn * (dn + 1.0) / 4.0;
        double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
        for (std::size_t t : tie_sizes) {
            const double dt = static_cast<double>(t);
            variance -= (dt * dt * dt - dt) / 48.0;
        }
        const double z = (result.statistic - mean + 0.5) / std::sqrt(variance);
        result.p_value = std::min(1.0, 2.0 * normal_cdf(z));
    }

    result.significant_at_95 = result.p_value < 0.05;
    return result;
}

}  // namespace airec
