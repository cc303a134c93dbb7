#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "airec/immune.hpp"
#include "airec/similarity.hpp"
#include "airec/types.hpp"

namespace airec {

enum class NeighborhoodSource {
    simple_pearson,
    ais,
};

struct NeighborhoodMember {
    UserProfile profile;
    double correlation = 0.0;  // r_uv, signed
    double weight = 0.0;       // r_uv for SP, r_uv * x_v for the AIS
};

/// Final reviewer set feeding prediction. Self-contained: member profiles are
/// copies, so the neighborhood outlives the dataset it came from.
struct Neighborhood {
    std::vector<NeighborhoodMember> members;
    NeighborhoodSource source = NeighborhoodSource::simple_pearson;
    std::size_t reviewers_examined = 0;
};

struct Prediction {
    MovieId movie_id = 0;
    double value = 0.0;  // clamped to [0, 1]
    std::size_t n_contributors = 0;
    bool fallback = false;  // weight sum underflowed; value is the user mean
};

/// Top-k reviewers by |r| among those who voted on the target movie, ties
/// broken by earlier stream position. Weights are the signed correlations.
/// May return fewer than k members.
Neighborhood select_neighbors_sp(const UserProfile& train,
                                 std::span<const UserProfile* const> reviewers, std::size_t k,
                                 MovieId target_movie, const SimilarityParams& params = {});

/// Neighborhood selection through the immune network: run the streaming
/// selection loop on `train` as antigen, mature, and keep every surviving
/// antibody with weight r * concentration. When target_movie is given, only
/// reviewers who voted on it are admitted (parity with the SP rule).
Neighborhood select_neighbors_ais(const UserProfile& train,
                                  std::span<const UserProfile* const> reviewers,
                                  const ImmuneParams& immune_params,
                                  const SimilarityParams& sim_params,
                                  std::optional<MovieId> target_movie = std::nullopt,
                                  std::ostream* trace = nullptr);

/// Weighted-average vote prediction over the members that rated the movie:
/// p = mean(u) + sum(w*(v_i - mean(v))) / sum(|w|), clamped to [0, 1].
/// nullopt when no member voted on the movie. When the weight denominator
/// underflows, falls back to the user mean and sets the fallback flag.
/// literal_denominator uses the signed weight sum instead of sum(|w|).
std::optional<Prediction> predict(const UserProfile& train, const Neighborhood& hood,
                                  MovieId movie, bool literal_denominator = false);

/// Every film rated by any member, scored by predict() and sorted by value
/// descending, ties broken by ascending movie id.
std::vector<std::pair<MovieId, double>> recommend(const UserProfile& train,
                                                  const Neighborhood& hood,
                                                  bool literal_denominator = false);

}  // namespace airec
