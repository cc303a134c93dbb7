#pragma once

#include <cstddef>
#include <span>

namespace airec {

struct WilcoxonResult {
    double statistic = 0.0;       // W = min(positive-rank sum, negative-rank sum)
    std::size_t n_effective = 0;  // pairs remaining after dropping zero differences
    double p_value = 1.0;         // two-sided
    bool significant_at_95 = false;
};

/// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped;
/// tied |differences| get average ranks. The p-value is exact (distribution
/// of min rank sums over all sign assignments) for n_effective <= 20 and a
/// normal approximation with continuity and tie correction above. All-zero
/// differences give the degenerate result p = 1, not significant.
/// Throws LengthMismatch when the samples differ in size.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

}  // namespace airec
