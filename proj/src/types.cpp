#include "airec/types.hpp"

#include <algorithm>
#include <cmath>

namespace airec {

VoteScore VoteScore::from_index(int index) {
    if (index < 0 || index > kGridSteps) {
        throw InvalidParams("vote grid index out of range: " + std::to_string(index));
    }
    return VoteScore(index);
}

std::optional<VoteScore> VoteScore::from_value(double v, double tol) {
    const double scaled = v * kGridSteps;
    const double nearest = std::floor(scaled + 0.5);
    if (nearest < 0 || nearest > kGridSteps) return std::nullopt;
    if (std::abs(scaled - nearest) > tol * kGridSteps) return std::nullopt;
    return VoteScore(static_cast<int>(nearest));
}

VoteScore VoteScore::snap(double v) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    // round half-up
    const int index = static_cast<int>(std::floor(clamped * kGridSteps + 0.5));
    return VoteScore(std::min(index, static_cast<int>(kGridSteps)));
}

UserProfile::UserProfile(UserId id, std::vector<Vote> votes) : id_(id), votes_(std::move(votes)) {
    std::sort(votes_.begin(), votes_.end(),
              [](const Vote& a, const Vote& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < votes_.size(); ++i) {
        if (votes_[i].first == votes_[i - 1].first) {
            throw DuplicateVote("user " + std::to_string(id) + " votes twice on movie " +
                                std::to_string(votes_[i].first));
        }
    }
    if (!votes_.empty()) {
        double sum = 0.0;
        for (const Vote& v : votes_) sum += v.second.value();
        mean_ = sum / static_cast<double>(votes_.size());
    }
}

std::optional<VoteScore> UserProfile::vote_for(MovieId movie) const {
    auto it = std::lower_bound(votes_.begin(), votes_.end(), movie,
                               [](const Vote& v, MovieId m) { return v.first < m; });
    if (it == votes_.end() || it->first != movie) return std::nullopt;
    return it->second;
}

UserProfile UserProfile::without(MovieId movie) const {
    std::vector<Vote> rest;
    rest.reserve(votes_.size());
    for (const Vote& v : votes_) {
        if (v.first != movie) rest.push_back(v);
    }
    return UserProfile(id_, std::move(rest));
}

bool operator==(const UserProfile& a, const UserProfile& b) {
    return a.id() == b.id() && a.votes() == b.votes();
}

Dataset::Dataset(std::vector<UserProfile> profiles) : profiles_(std::move(profiles)) {
    std::sort(profiles_.begin(), profiles_.end(),
              [](const UserProfile& a, const UserProfile& b) { return a.id() < b.id(); });
    for (std::size_t i = 1; i < profiles_.size(); ++i) {
        if (profiles_[i].id() == profiles_[i - 1].id()) {
            throw DuplicateVote("duplicate user id " + std::to_string(profiles_[i].id()));
        }
    }
    for (const UserProfile& p : profiles_) {
        for (const auto& [movie, score] : p.votes()) movie_ids_.push_back(movie);
    }
    std::sort(movie_ids_.begin(), movie_ids_.end());
    movie_ids_.erase(std::unique(movie_ids_.begin(), movie_ids_.end()), movie_ids_.end());
}

const UserProfile* Dataset::find(UserId id) const {
    auto it = std::lower_bound(profiles_.begin(), profiles_.end(), id,
                               [](const UserProfile& p, UserId u) { return p.id() < u; });
    if (it == profiles_.end() || it->id() != id) return nullptr;
    return &*it;
}

bool operator==(const Dataset& a, const Dataset& b) { return a.profiles_ == b.profiles_; }

}  // namespace airec
