#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "airec/errors.hpp"

namespace airec {

using UserId = std::int64_t;
using MovieId = std::int64_t;

/// A vote on the six-value grid {0, 0.2, 0.4, 0.6, 0.8, 1.0}, stored as the
/// grid index so equality and round-trips are exact.
class VoteScore {
public:
    static constexpr int kGridSteps = 5;

    VoteScore() = default;

    /// Grid index 0..5 (0 -> 0.0, 5 -> 1.0).
    static VoteScore from_index(int index);

    /// Accepts a value already on the grid (within tol of a grid point);
    /// returns nullopt for anything else.
    static std::optional<VoteScore> from_value(double v, double tol = 1e-9);

    /// Clamps to [0,1] and rounds half-up to the nearest grid value.
    static VoteScore snap(double v);

    double value() const { return static_cast<double>(index_) / kGridSteps; }
    int index() const { return index_; }

    friend bool operator==(VoteScore a, VoteScore b) { return a.index_ == b.index_; }
    friend bool operator!=(VoteScore a, VoteScore b) { return a.index_ != b.index_; }

private:
    explicit VoteScore(int index) : index_(static_cast<std::uint8_t>(index)) {}
    std::uint8_t index_ = 0;
};

/// A user's sparse vote vector, kept sorted by movie id. Immutable after
/// construction; the full-profile mean vote is cached here because it is
/// reused by every pairing the user takes part in.
class UserProfile {
public:
    using Vote = std::pair<MovieId, VoteScore>;

    UserProfile() = default;
    UserProfile(UserId id, std::vector<Vote> votes);

    UserId id() const { return id_; }
    const std::vector<Vote>& votes() const { return votes_; }
    std::size_t size() const { return votes_.size(); }
    bool empty() const { return votes_.empty(); }

    std::optional<VoteScore> vote_for(MovieId movie) const;
    bool has_vote(MovieId movie) const { return vote_for(movie).has_value(); }

    /// Mean vote over all films in the profile, 0 for an empty profile.
    double mean_vote() const { return mean_; }

    /// Copy of this profile with one movie's vote removed.
    UserProfile without(MovieId movie) const;

private:
    UserId id_ = 0;
    std::vector<Vote> votes_;
    double mean_ = 0.0;
};

/// Immutable collection of user profiles, sorted by user id.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<UserProfile> profiles);

    const std::vector<UserProfile>& profiles() const { return profiles_; }
    std::size_t size() const { return profiles_.size(); }
    bool empty() const { return profiles_.empty(); }

    const UserProfile* find(UserId id) const;

    /// Union of all movie ids voted by any profile, sorted.
    const std::vector<MovieId>& movie_ids() const { return movie_ids_; }

    friend bool operator==(const Dataset& a, const Dataset& b);

private:
    std::vector<UserProfile> profiles_;
    std::vector<MovieId> movie_ids_;
};

bool operator==(const UserProfile& a, const UserProfile& b);

}  // namespace airec
