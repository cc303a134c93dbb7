#include "airec/similarity.hpp"

#include <cmath>

#include "airec/errors.hpp"

namespace airec {

namespace {
// Grid-valued votes make exact zero deviation sums common; the tolerance only
// absorbs rounding in the product.
constexpr double kZeroVarianceTol = 1e-15;
}  // namespace

void SimilarityParams::validate() const {
    if (overlap_penalty < 1) throw InvalidParams("overlap_penalty must be >= 1");
    if (no_overlap_default < -1 || no_overlap_default > 1 || zero_variance_default < -1 ||
        zero_variance_default > 1) {
        throw InvalidParams("similarity defaults must lie in [-1, 1]");
    }
}

std::vector<MovieId> overlap(const UserProfile& u, const UserProfile& v) {
    std::vector<MovieId> common;
    auto iu = u.votes().begin();
    auto iv = v.votes().begin();
    while (iu != u.votes().end() && iv != v.votes().end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            common.push_back(iu->first);
            ++iu;
            ++iv;
        }
    }
    return common;
}

Correlation pearson(const UserProfile& u, const UserProfile& v, const SimilarityParams& params) {
    if (u.empty() || v.empty()) throw EmptyProfile("pearson requires non-empty profiles");

    const double mean_u = u.mean_vote();
    const double mean_v = v.mean_vote();

    double cross = 0.0;
    double dev_u = 0.0;
    double dev_v = 0.0;
    std::size_t n = 0;

    auto iu = u.votes().begin();
    auto iv = v.votes().begin();
    while (iu != u.votes().end() && iv != v.votes().end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            const double du = iu->second.value() - mean_u;
            const double dv = iv->second.value() - mean_v;
            cross += du * dv;
            dev_u += du * du;
            dev_v += dv * dv;
            ++n;
            ++iu;
            ++iv;
        }
    }

    double r;
    if (n == 0) {
        r = params.no_overlap_default;
    } else if (dev_u * dev_v <= kZeroVarianceTol) {
        r = params.zero_variance_default;
    } else {
        r = cross / std::sqrt(dev_u * dev_v);
    }
    if (n < static_cast<std::size_t>(params.overlap_penalty)) {
        r *= static_cast<double>(n) / static_cast<double>(params.overlap_penalty);
    }
    return Correlation{r, n};
}

}  // namespace airec
