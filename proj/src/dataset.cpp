#include "airec/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "airec/rng.hpp"

namespace airec {

namespace {

constexpr std::string_view kHeader = "user_id,movie_id,score";

// grid index -> canonical text, so round-trips are byte-stable
constexpr std::array<std::string_view, 6> kScoreText = {"0", "0.2", "0.4", "0.6", "0.8", "1"};

std::int64_t parse_id(std::string_view field, std::size_t line_no, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0) {
        throw MalformedLine(line_no, std::string(what) + " is not a nonnegative integer: '" +
                                         std::string(field) + "'");
    }
    return value;
}

VoteScore parse_score(std::string_view field, VoteScale scale, std::size_t line_no) {
    if (scale == VoteScale::zero_to_five) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            throw MalformedLine(line_no, "score is not an integer: '" + std::string(field) + "'");
        }
        if (value < 0 || value > 5) {
            throw OffGridScore("line " + std::to_string(line_no) + ": integer score " +
                               std::string(field) + " outside 0..5");
        }
        return VoteScore::from_index(value);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw MalformedLine(line_no, "score is not a number: '" + std::string(field) + "'");
    }
    auto score = VoteScore::from_value(value);
    if (!score) {
        throw OffGridScore("line " + std::to_string(line_no) + ": score " + std::string(field) +
                           " is not on the vote grid {0, 0.2, 0.4, 0.6, 0.8, 1.0}");
    }
    return *score;
}

}  // namespace

void GeneratorParams::validate() const {
    if (n_genres < 1) throw InvalidParams("n_genres must be at least 1");
    if (votes_per_user_min < 1 || votes_per_user_min > votes_per_user_max ||
        votes_per_user_max > n_movies) {
        throw InvalidParams("votes_per_user range must satisfy 1 <= min <= max <= n_movies");
    }
    if (affinity_spread < 0 || noise_spread < 0) {
        throw InvalidParams("spreads must be nonnegative");
    }
}

Dataset parse_votes(std::istream& in, VoteScale scale) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw MalformedLine(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw MalformedLine(1, "expected header '" + std::string(kHeader) + "'");
    }

    std::unordered_map<UserId, std::vector<UserProfile::Vote>> rows;
    std::unordered_map<UserId, std::unordered_set<MovieId>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::string_view view(line);
        const auto c1 = view.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
        if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos) {
            throw MalformedLine(line_no, "expected exactly 3 comma-separated fields");
        }

        const UserId user = parse_id(view.substr(0, c1), line_no, "user_id");
        const MovieId movie = parse_id(view.substr(c1 + 1, c2 - c1 - 1), line_no, "movie_id");
        const VoteScore score = parse_score(view.substr(c2 + 1), scale, line_no);

        if (!seen[user].insert(movie).second) {
            throw DuplicateVote("line " + std::to_string(line_no) + ": duplicate vote of user " +
                                std::to_string(user) + " on movie " + std::to_string(movie));
        }
        rows[user].emplace_back(movie, score);
    }

    std::vector<UserProfile> profiles;
    profiles.reserve(rows.size());
    for (auto& [user, votes] : rows) profiles.emplace_back(user, std::move(votes));
    return Dataset(std::move(profiles));
}

void write_votes(const Dataset& dataset, std::ostream& out) {
    out << kHeader << '\n';
    for (const UserProfile& profile : dataset.profiles()) {
        for (const auto& [movie, score] : profile.votes()) {
            out << profile.id() << ',' << movie << ',' << kScoreText[score.index()] << '\n';
        }
    }
}

std::string write_votes(const Dataset& dataset) {
    std::ostringstream out;
    write_votes(dataset, out);
    return out.str();
}

Dataset generate_synthetic(const GeneratorParams& params) {
    params.validate();
    rng::Engine eng(params.seed);

    std::vector<std::size_t> genre_of(params.n_movies);
    for (std::size_t m = 0; m < params.n_movies; ++m) genre_of[m] = eng.below(params.n_genres);

    std::vector<UserProfile> profiles;
    profiles.reserve(params.n_users);
    std::vector<std::size_t> movie_order(params.n_movies);
    std::vector<double> affinity(params.n_genres);

    for (std::size_t u = 0; u < params.n_users; ++u) {
        // taste per genre: +spread or -spread, so sign-aligned users correlate
        for (double& a : affinity) a = (eng.coin() ? 1.0 : -1.0) * params.affinity_spread;

        const std::size_t count =
            params.votes_per_user_min +
            eng.below(params.votes_per_user_max - params.votes_per_user_min + 1);

        std::iota(movie_order.begin(), movie_order.end(), std::size_t{0});
        std::vector<std::size_t> picked(count);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + eng.below(params.n_movies - i);
            std::swap(movie_order[i], movie_order[j]);
            picked[i] = movie_order[i];
        }
        std::sort(picked.begin(), picked.end());

        std::vector<UserProfile::Vote> votes;
        votes.reserve(count);
        for (std::size_t m : picked) {
            double raw = 0.5 + affinity[genre_of[m]];
            if (params.noise_spread > 0) raw += eng.normal(params.noise_spread);
            votes.emplace_back(static_cast<MovieId>(m + 1), VoteScore::snap(raw));
        }
        profiles.emplace_back(static_cast<UserId>(u + 1), std::move(votes));
    }
    return Dataset(std::move(profiles));
}

Split split_test_users(const Dataset& dataset, std::size_t n_test, std::size_t max_reviewers,
                       std::uint64_t seed, std::size_t min_votes) {
    std::vector<const UserProfile*> eligible;
    for (const UserProfile& p : dataset.profiles()) {
        if (p.size() >= min_votes) eligible.push_back(&p);
    }
    if (eligible.size() < n_test + 1) {
        throw NotEnoughUsers("need " + std::to_string(n_test + 1) + " eligible profiles, have " +
                             std::to_string(eligible.size()));
    }

    rng::Engine eng(seed);
    eng.shuffle(eligible);

    Split split;
    split.test_users.assign(eligible.begin(), eligible.begin() + static_cast<long>(n_test));
    std::unordered_set<const UserProfile*> chosen(split.test_users.begin(),
                                                  split.test_users.end());

    for (const UserProfile& p : dataset.profiles()) {
        if (!chosen.count(&p)) split.reviewers.push_back(&p);
    }
    eng.shuffle(split.reviewers);
    if (split.reviewers.size() > max_reviewers) split.reviewers.resize(max_reviewers);
    return split;
}

ReservedVote reserve_vote(const UserProfile& profile, std::uint64_t seed) {
    if (profile.size() < 2) {
        throw ProfileTooSmall("profile " + std::to_string(profile.id()) +
                              " has fewer than 2 votes");
    }
    rng::Engine eng(seed);
    const auto& vote = profile.votes()[eng.below(profile.size())];
    return ReservedVote{profile.without(vote.first), vote.first, vote.second};
}

}  // namespace airec
