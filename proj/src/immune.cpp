#include "airec/immune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "airec/errors.hpp"

namespace airec {

void ImmuneParams::validate() const {
    if (stimulation < 0 || suppression < 0 || death_rate < 0) {
        throw InvalidParams("rate constants must be nonnegative");
    }
    if (pool_capacity < 1) throw InvalidParams("pool_capacity must be >= 1");
    if (!(init_concentration > 0) || !(init_concentration < max_concentration)) {
        throw InvalidParams("need 0 < init_concentration < max_concentration");
    }
    if (min_concentration < 0 || min_concentration >= init_concentration) {
        throw InvalidParams("need 0 <= min_concentration < init_concentration");
    }
    if (antigen_concentration < 0) throw InvalidParams("antigen_concentration must be >= 0");
    if (stability_window < 1) throw InvalidParams("stability_window must be >= 1");
}

ImmuneNetwork::ImmuneNetwork(UserProfile antigen, ImmuneParams params, SimilarityParams sim_params)
    : antigen_(std::move(antigen)), params_(params), sim_params_(sim_params) {
    params_.validate();
    sim_params_.validate();
}

bool ImmuneNetwork::add_antibody(const UserProfile& reviewer) {
    if (pool_.size() >= params_.pool_capacity) {
        throw PoolFull("pool is at capacity " + std::to_string(params_.pool_capacity));
    }

    Antibody ab;
    ab.profile = &reviewer;
    ab.concentration = params_.init_concentration;
    ab.correlation = pearson(reviewer, antigen_, sim_params_).r;
    ab.match = std::abs(ab.correlation);

    std::vector<double> row(pool_.size() + 1, 0.0);
    for (std::size_t j = 0; j < pool_.size(); ++j) {
        const double m = std::abs(pearson(reviewer, *pool_[j].profile, sim_params_).r);
        row[j] = m;
        peer_[j].push_back(m);
    }
    row.back() = 1.0;  // self match, never used by the suppression sum
    peer_.push_back(std::move(row));
    pool_.push_back(ab);

    ++reviewers_examined_;
    stable_iterations_ = 0;  // pool size changed
    return true;
}

std::size_t ImmuneNetwork::iterate() {
    if (pool_.empty()) throw EmptyPool("iterate on an empty pool");

    const std::size_t n = pool_.size();
    const double y = params_.antigen_concentration;
    const double suppression_scale = params_.suppression / static_cast<double>(n);

    // canonical accumulation order (by antibody user id) keeps the step
    // independent of pool layout
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pool_[a].profile->id() < pool_[b].profile->id();
    });

    std::vector<double> snapshot(n);
    for (std::size_t i = 0; i < n; ++i) snapshot[i] = pool_[i].concentration;

    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = snapshot[i];
        double peer_sum = 0.0;
        for (std::size_t j : order) {
            if (j != i) peer_sum += peer_[i][j] * snapshot[j];
        }
        const double delta = params_.stimulation * pool_[i].match * x * y -
                             suppression_scale * x * peer_sum - params_.death_rate * x;
        next[i] = std::clamp(x + delta, 0.0, params_.max_concentration);
    }

    ++total_iterations_;
    for (std::size_t i = 0; i < n; ++i) pool_[i].concentration = next[i];

    if (trace_) {
        for (std::size_t i : order) {
            *trace_ << total_iterations_ << ',' << pool_[i].profile->id() << ','
                    << pool_[i].concentration << '\n';
        }
    }

    // drop everything under the removal threshold
    std::vector<std::size_t> keep;
    keep.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (pool_[i].concentration >= params_.min_concentration) keep.push_back(i);
    }
    const std::size_t removed = n - keep.size();
    if (removed > 0) {
        std::vector<Antibody> new_pool;
        new_pool.reserve(keep.size());
        std::vector<std::vector<double>> new_peer(keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a) {
            new_pool.push_back(pool_[keep[a]]);
            new_peer[a].resize(keep.size());
            for (std::size_t b = 0; b < keep.size(); ++b) {
                new_peer[a][b] = peer_[keep[a]][keep[b]];
            }
        }
        pool_ = std::move(new_pool);
        peer_ = std::move(new_peer);
        stable_iterations_ = 0;
    } else {
        ++stable_iterations_;
    }
    return removed;
}

void ImmuneNetwork::run_selection(std::span<const UserProfile* const> reviewers,
                                  const std::function<bool(const UserProfile&)>& admit) {
    for (const UserProfile* reviewer : reviewers) {
        if (stable()) break;
        if (admit && !admit(*reviewer)) {
            ++reviewers_examined_;
            continue;
        }
        add_antibody(*reviewer);
        while (pool_.size() >= params_.pool_capacity && !stable()) {
            iterate();
        }
    }
}

MaturationOutcome ImmuneNetwork::mature() {
    if (pool_.empty()) throw EmptyPool("mature on an empty pool");

    for (Antibody& ab : pool_) ab.concentration = params_.init_concentration;

    std::size_t steps = 0;
    while (true) {
        if (pool_.empty()) {
            maturation_outcome_ = MaturationOutcome::emptied;
            break;
        }
        const bool saturated = std::any_of(pool_.begin(), pool_.end(), [&](const Antibody& ab) {
            return ab.concentration >= params_.max_concentration;
        });
        if (saturated) {
            maturation_outcome_ = MaturationOutcome::saturated;
            break;
        }
        if (steps >= params_.maturation_cap) {
            maturation_outcome_ = MaturationOutcome::capped;
            break;
        }
        iterate();
        ++steps;
    }
    return maturation_outcome_;
}

}  // namespace airec
