#include "airec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "airec/rng.hpp"

namespace airec {

double mae(std::span<const double> errors) {
    if (errors.empty()) throw EmptyInput("mae of an empty error list");
    double sum = 0.0;
    for (double e : errors) sum += e;
    return sum / static_cast<double>(errors.size());
}

namespace {

// inversion counting by merge sort; the ranks are a permutation (the
// tie-broken orderings are strict), so equal elements never occur
std::size_t count_inversions(std::vector<std::size_t>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> buffer(n);
    std::size_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo;
            std::size_t b = mid;
            std::size_t out = lo;
            while (a < mid && b < hi) {
                if (values[a] <= values[b]) {
                    buffer[out++] = values[a++];
                } else {
                    inversions += mid - a;
                    buffer[out++] = values[b++];
                }
            }
            while (a < mid) buffer[out++] = values[a++];
            while (b < hi) buffer[out++] = values[b++];
            std::copy(buffer.begin() + static_cast<long>(lo), buffer.begin() + static_cast<long>(hi),
                      values.begin() + static_cast<long>(lo));
        }
    }
    return inversions;
}

std::vector<std::size_t> order_by(const std::span<const RankedVote>& pairs,
                                  double RankedVote::* field) {
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pairs[a].*field != pairs[b].*field) return pairs[a].*field > pairs[b].*field;
        return pairs[a].movie_id < pairs[b].movie_id;  // vote desc, movie id asc
    });
    return order;
}

double stddev_sample(std::span<const double> values, double mean) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

MetricStat stat_of(const std::vector<double>& values) {
    MetricStat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    s.stddev = stddev_sample(values, s.mean);
    return s;
}

}  // namespace

KendallResult kendall_tau(std::span<const RankedVote> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) throw TooFewPairs("kendall_tau needs at least 2 pairs");

    const std::vector<std::size_t> actual_order = order_by(pairs, &RankedVote::actual);
    const std::vector<std::size_t> predicted_order = order_by(pairs, &RankedVote::predicted);

    // neighborhood rank of each film, then read off in antigen rank order
    std::vector<std::size_t> predicted_rank(n);
    for (std::size_t rank = 0; rank < n; ++rank) predicted_rank[predicted_order[rank]] = rank + 1;

    std::vector<std::size_t> sequence(n);
    for (std::size_t i = 0; i < n; ++i) sequence[i] = predicted_rank[actual_order[i]];

    const std::size_t discordant = count_inversions(sequence);
    const double tau = 1.0 - 4.0 * static_cast<double>(discordant) /
                                 (static_cast<double>(n) * static_cast<double>(n - 1));
    return KendallResult{tau, discordant};
}

void PredictorConfig::validate() const {
    immune.validate();
    similarity.validate();
    if (kind == PredictorKind::simple_pearson && sp_neighbors < 1) {
        throw InvalidParams("sp_neighbors must be >= 1");
    }
    if (min_votes < 2) throw InvalidParams("min_votes must be >= 2 (a vote is reserved)");
}

PerUserMetrics evaluate_user(const UserProfile& test,
                             std::span<const UserProfile* const> reviewers,
                             const PredictorConfig& config, std::uint64_t seed,
                             std::ostream* trace) {
    if (test.size() < std::max<std::size_t>(config.min_votes, 2)) {
        throw ProfileTooSmall("test user " + std::to_string(test.id()) + " has " +
                              std::to_string(test.size()) + " votes, needs " +
                              std::to_string(std::max<std::size_t>(config.min_votes, 2)));
    }

    const ReservedVote reserved = reserve_vote(test, seed);

    Neighborhood hood;
    if (config.kind == PredictorKind::simple_pearson) {
        hood = select_neighbors_sp(reserved.training, reviewers, config.sp_neighbors,
                                   reserved.movie_id, config.similarity);
    } else {
        hood = select_neighbors_ais(reserved.training, reviewers, config.immune,
                                    config.similarity,
                                    config.target_vote_filter
                                        ? std::optional<MovieId>(reserved.movie_id)
                                        : std::nullopt,
                                    trace);
    }

    PerUserMetrics metrics;
    metrics.user_id = test.id();
    metrics.reviewers_examined = hood.reviewers_examined;
    metrics.neighborhood_size = hood.members.size();

    const auto prediction =
        predict(reserved.training, hood, reserved.movie_id, config.literal_denominator);
    if (prediction) {
        metrics.abs_error = std::abs(reserved.score.value() - prediction->value);
        metrics.fallback_used = prediction->fallback;
    }

    const auto recommendations = recommend(reserved.training, hood, config.literal_denominator);
    metrics.n_recommendations = recommendations.size();

    // films the user has actually seen, scored against the full profile
    std::vector<RankedVote> overlap_votes;
    for (const auto& [movie, predicted] : recommendations) {
        if (const auto actual = test.vote_for(movie)) {
            overlap_votes.push_back(RankedVote{movie, actual->value(), predicted});
        }
    }
    metrics.overlap_size = overlap_votes.size();
    if (overlap_votes.size() >= 2) {
        metrics.kendall_tau = kendall_tau(overlap_votes).tau;
    }
    return metrics;
}

std::string config_fingerprint(const PredictorConfig& config, std::size_t n_test,
                               std::size_t max_reviewers) {
    std::ostringstream out;
    out.precision(17);
    if (config.kind == PredictorKind::simple_pearson) {
        out << "sp;k=" << config.sp_neighbors;
    } else {
        const ImmuneParams& im = config.immune;
        out << "ais;k1=" << im.stimulation << ";k2=" << im.suppression
            << ";k3=" << im.death_rate << ";N=" << im.pool_capacity
            << ";init=" << im.init_concentration << ";max=" << im.max_concentration
            << ";min=" << im.min_concentration << ";y=" << im.antigen_concentration
            << ";window=" << im.stability_window << ";cap=" << im.maturation_cap;
    }
    out << ";P=" << config.similarity.overlap_penalty
        << ";d0=" << config.similarity.no_overlap_default
        << ";dv=" << config.similarity.zero_variance_default
        << ";filter=" << (config.target_vote_filter ? 1 : 0)
        << ";literal=" << (config.literal_denominator ? 1 : 0)
        << ";min_votes=" << config.min_votes << ";n_test=" << n_test
        << ";max_reviewers=" << max_reviewers;
    return out.str();
}

RunResult run_experiment(const Dataset& dataset, std::size_t n_test, std::size_t max_reviewers,
                         const PredictorConfig& config, std::uint64_t seed,
                         std::ostream* trace) {
    config.validate();
    const Split split = split_test_users(dataset, n_test, max_reviewers, seed, config.min_votes);

    RunResult result;
    result.per_user.reserve(split.test_users.size());
    for (const UserProfile* test : split.test_users) {
        const std::uint64_t user_seed = rng::mix(seed, static_cast<std::uint64_t>(test->id()));
        result.per_user.push_back(
            evaluate_user(*test, split.reviewers, config, user_seed, trace));
    }

    RunMetrics& m = result.metrics;
    m.fingerprint = config_fingerprint(config, n_test, max_reviewers);
    m.seed = seed;
    m.n_test_users = result.per_user.size();

    std::vector<double> errors, recs, overlaps, taus, examined, sizes;
    for (const PerUserMetrics& u : result.per_user) {
        if (u.abs_error) {
            errors.push_back(*u.abs_error);
        } else {
            ++m.no_prediction_count;
        }
        recs.push_back(static_cast<double>(u.n_recommendations));
        overlaps.push_back(static_cast<double>(u.overlap_size));
        if (u.kendall_tau) {
            taus.push_back(*u.kendall_tau);
        } else {
            ++m.missing_tau_count;
        }
        examined.push_back(static_cast<double>(u.reviewers_examined));
        sizes.push_back(static_cast<double>(u.neighborhood_size));
    }
    if (!errors.empty()) m.abs_error = stat_of(errors);
    m.recommendations = stat_of(recs);
    m.overlap = stat_of(overlaps);
    if (!taus.empty()) m.tau = stat_of(taus);
    m.reviewers_examined = stat_of(examined);
    m.neighborhood_size = stat_of(sizes);
    return result;
}

RunAggregate aggregate_runs(std::span<const RunMetrics> runs) {
    if (runs.empty()) throw EmptyInput("aggregate_runs over no runs");
    for (const RunMetrics& run : runs) {
        if (run.fingerprint != runs.front().fingerprint) {
            throw ConfigMismatch("runs with different configurations: '" + run.fingerprint +
                                 "' vs '" + runs.front().fingerprint + "'");
        }
    }

    RunAggregate agg;
    agg.fingerprint = runs.front().fingerprint;
    agg.n_runs = runs.size();
    agg.single_run = runs.size() == 1;

    auto collect = [&](auto getter) {
        std::vector<double> means;
        for (const RunMetrics& run : runs) {
            if (auto value = getter(run)) means.push_back(*value);
        }
        return means;
    };
    auto optional_stat = [&](auto getter) -> std::optional<MetricStat> {
        const std::vector<double> means = collect(getter);
        if (means.empty()) return std::nullopt;
        return stat_of(means);
    };

    agg.abs_error = optional_stat([](const RunMetrics& r) -> std::optional<double> {
        if (!r.abs_error) return std::nullopt;
        return r.abs_error->mean;
    });
    agg.tau = optional_stat([](const RunMetrics& r) -> std::optional<double> {
        if (!r.tau) return std::nullopt;
        return r.tau->mean;
    });
    agg.recommendations = stat_of(collect(
        [](const RunMetrics& r) -> std::optional<double> { return r.recommendations.mean; }));
    agg.overlap = stat_of(
        collect([](const RunMetrics& r) -> std::optional<double> { return r.overlap.mean; }));
    agg.reviewers_examined = stat_of(collect(
        [](const RunMetrics& r) -> std::optional<double> { return r.reviewers_examined.mean; }));
    agg.neighborhood_size = stat_of(collect(
        [](const RunMetrics& r) -> std::optional<double> { return r.neighborhood_size.mean; }));

    for (const RunMetrics& run : runs) {
        agg.no_prediction_count += run.no_prediction_count;
        agg.missing_tau_count += run.missing_tau_count;
    }
    return agg;
}

}  // namespace airec
