#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "airec/types.hpp"

namespace airec {

/// Declares what the score column of a vote file contains.
enum class VoteScale {
    unit_grid,     // decimal literals already on {0, 0.2, ..., 1.0}
    zero_to_five,  // integers 0..5, mapped by score/5
};

/// Parameters of the synthetic dataset generator. Movies are split into
/// genres; each user holds a per-genre taste of +/-affinity_spread, votes are
/// 0.5 + taste + gaussian noise, clamped and snapped to the grid. Users that
/// agree in taste signs are thereby positively correlated.
struct GeneratorParams {
    std::size_t n_users = 0;
    std::size_t n_movies = 0;
    std::size_t n_genres = 1;
    std::size_t votes_per_user_min = 1;
    std::size_t votes_per_user_max = 1;
    double affinity_spread = 0.0;
    double noise_spread = 0.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws InvalidParams
};

/// Parses a vote file: CSV, header `user_id,movie_id,score`, LF endings.
/// Throws MalformedLine (with line number), OffGridScore, DuplicateVote.
Dataset parse_votes(std::istream& in, VoteScale scale);

/// Writes the format parse_votes accepts (unit_grid scale), rows sorted by
/// (user_id, movie_id). parse_votes(write_votes(d)) == d.
void write_votes(const Dataset& dataset, std::ostream& out);
std::string write_votes(const Dataset& dataset);

/// Deterministic synthetic dataset; identical params and seed give identical
/// datasets.
Dataset generate_synthetic(const GeneratorParams& params);

/// Result of the test/reviewer split. Pointers refer into the dataset.
struct Split {
    std::vector<const UserProfile*> test_users;
    std::vector<const UserProfile*> reviewers;  // seeded permutation, truncated
};

/// Draws n_test test users uniformly from profiles with >= min_votes votes,
/// then permutes all remaining profiles (eligible or not) into the reviewer
/// stream, truncated to max_reviewers. Throws NotEnoughUsers when fewer than
/// n_test + 1 profiles are eligible.
Split split_test_users(const Dataset& dataset, std::size_t n_test, std::size_t max_reviewers,
                       std::uint64_t seed, std::size_t min_votes = 10);

/// One reserved vote plus the training remainder of the profile.
struct ReservedVote {
    UserProfile training;
    MovieId movie_id;
    VoteScore score;
};

/// Hides one uniformly chosen vote. Throws ProfileTooSmall for profiles with
/// fewer than two votes.
ReservedVote reserve_vote(const UserProfile& profile, std::uint64_t seed);

}  // namespace airec
