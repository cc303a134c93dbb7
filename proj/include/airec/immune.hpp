#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "airec/similarity.hpp"
#include "airec/types.hpp"

namespace airec {

struct ImmuneParams {
    double stimulation = 0.2;             // k1
    double suppression = 0.0;             // k2
    double death_rate = 0.1;              // k3
    std::size_t pool_capacity = 100;      // N
    double init_concentration = 10.0;
    double max_concentration = 100.0;
    double min_concentration = 0.01;      // removal threshold
    double antigen_concentration = 10.0;  // y, constant
    std::size_t stability_window = 10;    // consecutive size-constant iterations
    std::size_t maturation_cap = 10000;   // iteration guard for mature()

    void validate() const;  // throws InvalidParams
};

/// A reviewer profile held in the pool with its time-varying concentration.
/// The profile pointer refers to caller-owned storage that must outlive the
/// network.
struct Antibody {
    const UserProfile* profile = nullptr;
    double concentration = 0.0;
    double correlation = 0.0;  // r against the antigen
    double match = 0.0;        // |r| against the antigen
};

enum class MaturationOutcome {
    not_run,    // mature() has not been called
    saturated,  // an antibody reached max_concentration
    capped,     // maturation_cap iterations elapsed without saturation
    emptied,    // every antibody decayed out of the pool
};

/// Antibody pool with idiotypic dynamics. One synchronous discrete step
/// changes each concentration by
///
///   dx_i = k1*m_i*x_i*y - (k2/N)*x_i*sum_j(m_ij*x_j) - k3*x_i
///
/// where m_i is the antigen match, m_ij the antibody-antibody match (self
/// excluded), y the antigen concentration and N the live pool size. Updated
/// concentrations are clamped to [0, max]; antibodies below the removal
/// threshold leave the pool. A network is confined to one thread; distinct
/// networks are independent.
class ImmuneNetwork {
public:
    ImmuneNetwork(UserProfile antigen, ImmuneParams params, SimilarityParams sim_params = {});

    /// Inserts a reviewer at init_concentration, computing its antigen match
    /// and the pairwise matches against the pool. Counts the reviewer as
    /// examined and resets the stability counter. Throws PoolFull at
    /// capacity.
    bool add_antibody(const UserProfile& reviewer);

    /// One synchronous step over a frozen snapshot of the concentrations.
    /// Returns the number of antibodies removed. Throws EmptyPool.
    std::size_t iterate();

    /// Streaming selection loop: add reviewers one at a time; whenever the
    /// pool is full, iterate until it shrinks or the stability window is
    /// reached. `admit` filters reviewers (empty = admit all); rejected
    /// reviewers still count as examined.
    void run_selection(std::span<const UserProfile* const> reviewers,
                       const std::function<bool(const UserProfile&)>& admit = {});

    /// Affinity maturation: reset every concentration to the initial value,
    /// then iterate until some antibody saturates, the pool empties, or
    /// maturation_cap iterations elapse. Throws EmptyPool.
    MaturationOutcome mature();

    const UserProfile& antigen() const { return antigen_; }
    const ImmuneParams& params() const { return params_; }
    const std::vector<Antibody>& pool() const { return pool_; }

    bool stable() const { return stable_iterations_ >= params_.stability_window; }
    std::size_t stable_iterations() const { return stable_iterations_; }
    std::size_t reviewers_examined() const { return reviewers_examined_; }
    std::size_t total_iterations() const { return total_iterations_; }
    MaturationOutcome maturation_outcome() const { return maturation_outcome_; }

    /// Cached pairwise match m_ij for the current pool layout.
    double peer_match(std::size_t i, std::size_t j) const { return peer_[i][j]; }

    /// When set, every iteration appends `iteration,antibody_user_id,
    /// concentration` rows (post-update, including antibodies about to be
    /// removed).
    void set_trace(std::ostream* out) { trace_ = out; }

private:
    UserProfile antigen_;
    ImmuneParams params_;
    SimilarityParams sim_params_;
    std::vector<Antibody> pool_;
    std::vector<std::vector<double>> peer_;  // symmetric m_ij cache
    std::size_t stable_iterations_ = 0;
    std::size_t reviewers_examined_ = 0;
    std::size_t total_iterations_ = 0;
    MaturationOutcome maturation_outcome_ = MaturationOutcome::not_run;
    std::ostream* trace_ = nullptr;
};

}  // namespace airec
