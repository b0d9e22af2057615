// SPDX-License-Identifier: Apache-2.0
//
// Uplink pilot training with full pilot reuse and per-antenna MMSE estimation.

#pragma once

#include <span>
#include <vector>

#include "fdmimo/channel.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/kernels.hpp"
#include "fdmimo/random.hpp"

namespace fdmimo {

enum class Link { up, down };

/// Second-order statistics of one MMSE estimate.
struct MmseStats {
    double lambda = 0.0;   // noise + P_tr * sum over cells of the pilot-sharing gains
    double est_var = 0.0;  // per-entry variance of the estimate
    double err_var = 0.0;  // per-entry variance of the error
    double scale = 0.0;    // P_tr * beta_serving / lambda, applied to the observation
};

/// `betas[l]` is the gain from the pilot-sharing user of cell l to the
/// estimating BS, `serving` indexes the own cell. Throws std::invalid_argument
/// for a nonpositive serving gain, negative gains or nonpositive powers.
MmseStats mmse_stats(std::span<const double> betas, int serving, double train_power, double noise);

/// Gains seen by BS j on the pilot of its user k, one per cell.
std::vector<double> pilot_betas(const LargeScaleProfile& profile, Link link, int j, int k);

/// Post-correlation training observation sum_l g_{jlk} + noise / sqrt(P_tr)
/// with noise ~ CN(0, noise_bs I). Full-duplex users are trained once through
/// their uplink channel. Throws std::out_of_range for a bad user index.
void training_observation(const ChannelRealization& real, const SystemConfig& cfg, Link link, int j,
                          int k, Rng& rng, std::span<cplx> out);

/// Same observation with an explicit unit-free noise vector n (the caller's draw).
void training_observation(const ChannelRealization& real, const SystemConfig& cfg, Link link, int j,
                          int k, std::span<const cplx> noise, std::span<cplx> out);

/// In-place MMSE estimate: scales the observation by stats.scale.
void mmse_estimate(std::span<cplx> observation, const MmseStats& stats);

/// Serving-cell estimates for every user of every cell.
class ChannelEstimateSet {
public:
    ChannelEstimateSet() = default;
    ChannelEstimateSet(const LargeScaleProfile& profile, const SystemConfig& cfg);

    int cells() const { return cells_; }
    int antennas() const { return antennas_; }

    const MmseStats& stats(Link link, int j, int k) const {
        return link == Link::up ? ul_stats_[idx(j, k, ul_users_)] : dl_stats_[idx(j, k, dl_users_)];
    }
    std::span<const cplx> g_hat(Link link, int j, int k) const;
    std::span<cplx> g_hat(Link link, int j, int k);

    double lambda(Link link, int j, int k) const { return stats(link, j, k).lambda; }
    double est_var(Link link, int j, int k) const { return stats(link, j, k).est_var; }
    double err_var(Link link, int j, int k) const { return stats(link, j, k).err_var; }

    /// Redraws training noise and recomputes every estimate.
    void estimate(const ChannelRealization& real, const SystemConfig& cfg, Rng& rng);

private:
    std::size_t idx(int j, int k, int users) const { return static_cast<std::size_t>(j) * users + k; }

    int cells_ = 0, antennas_ = 0, ul_users_ = 0, dl_users_ = 0, fd_users_ = 0;
    std::vector<MmseStats> ul_stats_, dl_stats_;
    std::vector<cplx> ul_hat_, dl_hat_;
};

}  // namespace fdmimo
