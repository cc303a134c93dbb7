#include <doctest.h>

#include <set>
#include <sstream>

#include "airec/dataset.hpp"
#include "airec/similarity.hpp"

using namespace airec;

namespace {

Dataset parse_text(const std::string& text, VoteScale scale = VoteScale::unit_grid) {
    std::istringstream in(text);
    return parse_votes(in, scale);
}

}  // namespace

TEST_CASE("vote scores snap half-up and reject off-grid values") {
    CHECK(VoteScore::snap(0.5).value() == doctest::Approx(0.6));
    CHECK(VoteScore::snap(0.49).value() == doctest::Approx(0.4));
    CHECK(VoteScore::snap(-3.0).value() == 0.0);
    CHECK(VoteScore::snap(7.0).value() == 1.0);
    CHECK(VoteScore::from_value(0.8).has_value());
    CHECK(!VoteScore::from_value(0.3).has_value());
    CHECK(!VoteScore::from_value(1.2).has_value());
}

TEST_CASE("parse_votes ingests unit-grid rows") {
    const Dataset d = parse_text("user_id,movie_id,score\n1,7,0.8\n");
    REQUIRE(d.size() == 1);
    const UserProfile* p = d.find(1);
    REQUIRE(p != nullptr);
    REQUIRE(p->size() == 1);
    CHECK(p->vote_for(7)->value() == doctest::Approx(0.8));
}

TEST_CASE("parse_votes maps the 0-5 integer scale by score/5") {
    const Dataset d = parse_text("user_id,movie_id,score\n1,7,4\n", VoteScale::zero_to_five);
    CHECK(d.find(1)->vote_for(7)->value() == doctest::Approx(0.8));
    CHECK_THROWS_AS(parse_text("user_id,movie_id,score\n1,7,6\n", VoteScale::zero_to_five),
                    OffGridScore);
}

TEST_CASE("parse_votes rejects off-grid scores") {
    CHECK_THROWS_AS(parse_text("user_id,movie_id,score\n1,7,0.3\n"), OffGridScore);
}

TEST_CASE("parse_votes reports malformed lines with their number") {
    try {
        parse_text("user_id,movie_id,score\n1,7,0.8\n1,8\n");
        FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
        CHECK(e.line_no == 3);
    }
    CHECK_THROWS_AS(parse_text("not,a,header\n"), MalformedLine);
    CHECK_THROWS_AS(parse_text("user_id,movie_id,score\n-1,7,0.8\n"), MalformedLine);
    CHECK_THROWS_AS(parse_text("user_id,movie_id,score\nx,7,0.8\n"), MalformedLine);
}

TEST_CASE("parse_votes rejects duplicate (user, movie) rows") {
    CHECK_THROWS_AS(parse_text("user_id,movie_id,score\n1,7,0.8\n1,7,0.8\n"), DuplicateVote);
}

TEST_CASE("write_votes emits header only for an empty dataset") {
    CHECK(write_votes(Dataset{}) == "user_id,movie_id,score\n");
}

TEST_CASE("write_votes emits sorted rows") {
    const Dataset d = parse_text("user_id,movie_id,score\n1,7,0.8\n");
    CHECK(write_votes(d) == "user_id,movie_id,score\n1,7,0.8\n");
}

TEST_CASE("parse/write round-trip is the identity on generated datasets") {
    GeneratorParams params;
    params.n_users = 40;
    params.n_movies = 25;
    params.n_genres = 3;
    params.votes_per_user_min = 2;
    params.votes_per_user_max = 12;
    params.affinity_spread = 0.25;
    params.noise_spread = 0.1;
    params.seed = 99;
    const Dataset d = generate_synthetic(params);
    const std::string text = write_votes(d);
    const Dataset back = parse_text(text);
    CHECK(back == d);
    CHECK(write_votes(back) == text);
}

TEST_CASE("generator with all randomness disabled votes 0.6 everywhere") {
    GeneratorParams params;
    params.n_users = 5;
    params.n_movies = 6;
    params.votes_per_user_min = 3;
    params.votes_per_user_max = 6;
    params.seed = 7;
    const Dataset d = generate_synthetic(params);
    for (const UserProfile& p : d.profiles()) {
        for (const auto& [movie, score] : p.votes()) CHECK(score.value() == doctest::Approx(0.6));
    }
}

TEST_CASE("generator is deterministic in the seed") {
    GeneratorParams params;
    params.n_users = 30;
    params.n_movies = 20;
    params.n_genres = 4;
    params.votes_per_user_min = 1;
    params.votes_per_user_max = 10;
    params.affinity_spread = 0.3;
    params.noise_spread = 0.05;
    params.seed = 123;
    CHECK(write_votes(generate_synthetic(params)) == write_votes(generate_synthetic(params)));
    params.seed = 124;
    CHECK(write_votes(generate_synthetic(params)) != write_votes(generate_synthetic(GeneratorParams{
                                                        30, 20, 4, 1, 10, 0.3, 0.05, 123})));
}

TEST_CASE("generator validates its parameters") {
    GeneratorParams params;
    params.n_users = 3;
    params.n_movies = 4;
    params.votes_per_user_min = 2;
    params.votes_per_user_max = 5;  // exceeds n_movies
    CHECK_THROWS_AS(generate_synthetic(params), InvalidParams);
    params.votes_per_user_max = 4;
    params.n_genres = 0;
    CHECK_THROWS_AS(generate_synthetic(params), InvalidParams);
    params.n_genres = 1;
    params.affinity_spread = -0.1;
    CHECK_THROWS_AS(generate_synthetic(params), InvalidParams);
}

TEST_CASE("noise-free generated data contains exactly correlated sign-aligned pairs") {
    // full overlap, two genres: equal sign patterns give r = +1, opposite -1
    GeneratorParams params;
    params.n_users = 14;
    params.n_movies = 8;
    params.n_genres = 2;
    params.votes_per_user_min = 8;
    params.votes_per_user_max = 8;
    params.affinity_spread = 0.3;
    params.noise_spread = 0.0;
    params.seed = 5;
    const Dataset d = generate_synthetic(params);

    SimilarityParams sim;
    sim.overlap_penalty = 1;  // raw correlations
    bool found_plus = false;
    bool found_minus = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const double r = pearson(d.profiles()[i], d.profiles()[j], sim).r;
            if (r == 1.0) found_plus = true;
            if (r == -1.0) found_minus = true;
        }
    }
    CHECK(found_plus);
    CHECK(found_minus);
}

TEST_CASE("split draws disjoint test users and reviewers") {
    GeneratorParams params;
    params.n_users = 30;
    params.n_movies = 15;
    params.votes_per_user_min = 5;
    params.votes_per_user_max = 15;
    params.seed = 11;
    const Dataset d = generate_synthetic(params);

    const Split split = split_test_users(d, 10, 1000, 42, 3);
    CHECK(split.test_users.size() == 10);
    CHECK(split.reviewers.size() == 20);
    std::set<const UserProfile*> test_set(split.test_users.begin(), split.test_users.end());
    for (const UserProfile* r : split.reviewers) CHECK(!test_set.count(r));

    SUBCASE("n_test = 0 gives a permutation of all profiles") {
        const Split all = split_test_users(d, 0, 1000, 42, 3);
        CHECK(all.test_users.empty());
        CHECK(all.reviewers.size() == d.size());
    }
    SUBCASE("max_reviewers truncates the stream") {
        const Split t = split_test_users(d, 10, 7, 42, 3);
        CHECK(t.reviewers.size() == 7);
    }
    SUBCASE("deterministic in the seed") {
        const Split again = split_test_users(d, 10, 1000, 42, 3);
        CHECK(again.test_users == split.test_users);
        CHECK(again.reviewers == split.reviewers);
        const Split other = split_test_users(d, 10, 1000, 43, 3);
        CHECK(other.test_users != split.test_users);
    }
}

TEST_CASE("split demands n_test + 1 eligible profiles") {
    const Dataset d = parse_text(
        "user_id,movie_id,score\n1,1,0.2\n1,2,0.4\n2,1,0.6\n2,2,0.8\n3,1,0\n3,2,1\n");
    const Split split = split_test_users(d, 1, 100, 1, 2);
    CHECK(split.test_users.size() == 1);
    CHECK(split.reviewers.size() == 2);
    CHECK_THROWS_AS(split_test_users(d, 3, 100, 1, 2), NotEnoughUsers);
    // only ineligible profiles -> even n_test = 0 is refused
    CHECK_THROWS_AS(split_test_users(d, 0, 100, 1, 5), NotEnoughUsers);
}

TEST_CASE("reserve_vote partitions the profile") {
    const Dataset d = parse_text("user_id,movie_id,score\n1,1,0.2\n1,2,0.8\n");
    const UserProfile& p = *d.find(1);

    const ReservedVote rv = reserve_vote(p, 3);
    CHECK(rv.training.size() == 1);
    CHECK(!rv.training.has_vote(rv.movie_id));
    CHECK(p.vote_for(rv.movie_id) == rv.score);

    SUBCASE("deterministic in the seed") {
        for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
            const ReservedVote a = reserve_vote(p, seed);
            const ReservedVote b = reserve_vote(p, seed);
            CHECK(a.movie_id == b.movie_id);
            CHECK(a.training == b.training);
        }
    }
    SUBCASE("profiles with one vote are refused") {
        const UserProfile single(9, {{1, VoteScore::from_index(2)}});
        CHECK_THROWS_AS(reserve_vote(single, 1), ProfileTooSmall);
    }
}
