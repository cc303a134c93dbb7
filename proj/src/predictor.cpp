#include "airec/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "airec/errors.hpp"

namespace airec {

namespace {
// below this the weight sum carries no usable signal and prediction falls
// back to the user mean
constexpr double kWeightUnderflow = 1e-12;
}  // namespace

Neighborhood select_neighbors_sp(const UserProfile& train,
                                 std::span<const UserProfile* const> reviewers, std::size_t k,
                                 MovieId target_movie, const SimilarityParams& params) {
    struct Candidate {
        const UserProfile* profile;
        double r;
        std::size_t position;
    };
    std::vector<Candidate> candidates;

    std::size_t position = 0;
    for (const UserProfile* reviewer : reviewers) {
        const std::size_t pos = position++;
        if (!reviewer->has_vote(target_movie)) continue;
        const Correlation c = pearson(train, *reviewer, params);
        candidates.push_back(Candidate{reviewer, c.r, pos});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        const double abs_a = std::abs(a.r);
        const double abs_b = std::abs(b.r);
        if (abs_a != abs_b) return abs_a > abs_b;
        return a.position < b.position;  // first come, first served
    });
    if (candidates.size() > k) candidates.resize(k);

    Neighborhood hood;
    hood.source = NeighborhoodSource::simple_pearson;
    hood.reviewers_examined = reviewers.size();
    hood.members.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        hood.members.push_back(NeighborhoodMember{*c.profile, c.r, c.r});
    }
    return hood;
}

Neighborhood select_neighbors_ais(const UserProfile& train,
                                  std::span<const UserProfile* const> reviewers,
                                  const ImmuneParams& immune_params,
                                  const SimilarityParams& sim_params,
                                  std::optional<MovieId> target_movie, std::ostream* trace) {
    ImmuneNetwork net(train, immune_params, sim_params);
    net.set_trace(trace);

    std::function<bool(const UserProfile&)> admit;
    if (target_movie) {
        admit = [movie = *target_movie](const UserProfile& p) { return p.has_vote(movie); };
    }
    net.run_selection(reviewers, admit);
    if (!net.pool().empty()) net.mature();

    Neighborhood hood;
    hood.source = NeighborhoodSource::ais;
    hood.reviewers_examined = net.reviewers_examined();
    hood.members.reserve(net.pool().size());
    for (const Antibody& ab : net.pool()) {
        hood.members.push_back(
            NeighborhoodMember{*ab.profile, ab.correlation, ab.correlation * ab.concentration});
    }
    return hood;
}

std::optional<Prediction> predict(const UserProfile& train, const Neighborhood& hood,
                                  MovieId movie, bool literal_denominator) {
    double numerator = 0.0;
    double denominator = 0.0;
    std::size_t contributors = 0;

    for (const NeighborhoodMember& member : hood.members) {
        const auto vote = member.profile.vote_for(movie);
        if (!vote) continue;
        ++contributors;
        numerator += member.weight * (vote->value() - member.profile.mean_vote());
        denominator += literal_denominator ? member.weight : std::abs(member.weight);
    }
    if (contributors == 0) return std::nullopt;

    Prediction p;
    p.movie_id = movie;
    p.n_contributors = contributors;
    if (std::abs(denominator) < kWeightUnderflow) {
        p.value = std::clamp(train.mean_vote(), 0.0, 1.0);
        p.fallback = true;
    } else {
        p.value = std::clamp(train.mean_vote() + numerator / denominator, 0.0, 1.0);
    }
    return p;
}

std::vector<std::pair<MovieId, double>> recommend(const UserProfile& train,
                                                  const Neighborhood& hood,
                                                  bool literal_denominator) {
    std::vector<MovieId> candidates;
    for (const NeighborhoodMember& member : hood.members) {
        for (const auto& [movie, score] : member.profile.votes()) candidates.push_back(movie);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::pair<MovieId, double>> ranked;
    ranked.reserve(candidates.size());
    for (MovieId movie : candidates) {
        const auto p = predict(train, hood, movie, literal_denominator);
        // every candidate has at least one contributor by construction
        ranked.emplace_back(movie, p->value);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return ranked;
}

}  // namespace airec
