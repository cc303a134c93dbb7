#pragma once

#include <cstddef>
#include <vector>

#include "airec/types.hpp"

namespace airec {

struct SimilarityParams {
    double no_overlap_default = 0.0;    // r when the overlap is empty
    double zero_variance_default = 0.0; // r when a deviation sum vanishes
    int overlap_penalty = 100;          // P: correlations on n < P common votes scale by n/P

    void validate() const;  // throws InvalidParams
};

struct Correlation {
    double r = 0.0;
    std::size_t n_overlap = 0;
};

/// Movies voted by both users, sorted.
std::vector<MovieId> overlap(const UserProfile& u, const UserProfile& v);

/// Amended Pearson correlation over the overlapping votes, using full-profile
/// means. Amendments, in order: empty overlap -> no_overlap_default; zero
/// deviation product -> zero_variance_default; n < P -> scale by n/P.
/// Throws EmptyProfile if either profile has no votes.
Correlation pearson(const UserProfile& u, const UserProfile& v, const SimilarityParams& params = {});

/// Match strength between antigen and antibody: |r|, in [0, 1].
inline double match_strength(const Correlation& c) { return c.r < 0 ? -c.r : c.r; }

}  // namespace airec
