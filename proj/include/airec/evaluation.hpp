#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "airec/dataset.hpp"
#include "airec/immune.hpp"
#include "airec/predictor.hpp"
#include "airec/similarity.hpp"
#include "airec/types.hpp"

namespace airec {

/// One test user's leave-one-vote-out outcome. abs_error is absent when no
/// member voted on the reserved film; kendall_tau is absent when fewer than
/// two recommended films overlap the user's own votes.
struct PerUserMetrics {
    UserId user_id = 0;
    std::optional<double> abs_error;
    std::size_t n_recommendations = 0;
    std::size_t overlap_size = 0;
    std::optional<double> kendall_tau;
    std::size_t reviewers_examined = 0;
    std::size_t neighborhood_size = 0;
    bool fallback_used = false;
};

/// Mean absolute error over a non-empty list of absolute errors.
double mae(std::span<const double> errors);  // throws EmptyInput

struct RankedVote {
    MovieId movie_id = 0;
    double actual = 0.0;
    double predicted = 0.0;
};

struct KendallResult {
    double tau = 0.0;
    std::size_t n_discordant = 0;
};

/// Kendall's tau between the actual and predicted orderings of the films.
/// Both lists are ranked by vote descending, ties broken by ascending movie
/// id; tau = 1 - 4*N_D/(n*(n-1)) with N_D the number of discordant pairs.
/// Throws TooFewPairs for n < 2.
KendallResult kendall_tau(std::span<const RankedVote> pairs);

enum class PredictorKind {
    simple_pearson,
    ais,
};

struct PredictorConfig {
    PredictorKind kind = PredictorKind::ais;
    std::size_t sp_neighbors = 20;  // k for the Simple Pearson predictor
    ImmuneParams immune;
    SimilarityParams similarity;
    bool target_vote_filter = true;    // AIS admits only reviewers who voted the reserved film
    bool literal_denominator = false;  // signed weight sum in the prediction formula
    std::size_t min_votes = 10;        // test-user eligibility threshold

    void validate() const;  // throws InvalidParams
};

/// Reserve a vote, build the neighborhood per config, predict the reserved
/// film, recommend, and score. Deterministic in (inputs, seed).
/// Throws ProfileTooSmall for ineligible test profiles.
PerUserMetrics evaluate_user(const UserProfile& test,
                             std::span<const UserProfile* const> reviewers,
                             const PredictorConfig& config, std::uint64_t seed,
                             std::ostream* trace = nullptr);

struct MetricStat {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

/// Per-run aggregates over test users. Optional metrics are averaged only
/// over users where they are present; absent entirely when no user had one.
struct RunMetrics {
    std::string fingerprint;
    std::uint64_t seed = 0;
    std::size_t n_test_users = 0;
    std::optional<MetricStat> abs_error;
    MetricStat recommendations;
    MetricStat overlap;
    std::optional<MetricStat> tau;
    MetricStat reviewers_examined;
    MetricStat neighborhood_size;
    std::size_t no_prediction_count = 0;
    std::size_t missing_tau_count = 0;
};

struct RunResult {
    RunMetrics metrics;
    std::vector<PerUserMetrics> per_user;
};

/// One full run of the leave-one-vote-out protocol: split test users and the
/// reviewer stream from the run seed (one permutation shared by all test
/// users), evaluate each test user with a seed derived from (run seed, user
/// id), and aggregate. Throws NotEnoughUsers via the split.
RunResult run_experiment(const Dataset& dataset, std::size_t n_test, std::size_t max_reviewers,
                         const PredictorConfig& config, std::uint64_t seed,
                         std::ostream* trace = nullptr);

/// Cross-run aggregate: unweighted mean and sample standard deviation of the
/// run means, per metric.
struct RunAggregate {
    std::string fingerprint;
    std::size_t n_runs = 0;
    bool single_run = false;  // flagged: stddevs are 0 by convention
    std::optional<MetricStat> abs_error;
    MetricStat recommendations;
    MetricStat overlap;
    std::optional<MetricStat> tau;
    MetricStat reviewers_examined;
    MetricStat neighborhood_size;
    std::size_t no_prediction_count = 0;  // summed
    std::size_t missing_tau_count = 0;    // summed
};

/// Throws EmptyInput for no runs, ConfigMismatch when fingerprints differ.
RunAggregate aggregate_runs(std::span<const RunMetrics> runs);

/// Deterministic one-line description of a run configuration; equal strings
/// mean comparable runs.
std::string config_fingerprint(const PredictorConfig& config, std::size_t n_test,
                               std::size_t max_reviewers);

}  // namespace airec
