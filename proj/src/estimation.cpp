// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdmimo {

MmseStats mmse_stats(std::span<const double> betas, int serving, double train_power, double noise) {
    if (serving < 0 || static_cast<std::size_t>(serving) >= betas.size())
        throw std::out_of_range("mmse_stats: serving cell out of range");
    if (!(train_power > 0.0) || !(noise > 0.0))
        throw std::invalid_argument("mmse_stats: training power and noise must be > 0");
    double sum = 0.0;
    for (double b : betas) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("mmse_stats: gains must be finite and >= 0");
        sum += b;
    }
    const double beta = betas[serving];
    if (!(beta > 0.0)) throw std::invalid_argument("mmse_stats: serving gain must be > 0");

    MmseStats s;
    s.lambda = noise + train_power * sum;
    s.scale = train_power * beta / s.lambda;
    s.est_var = s.scale * beta;
    s.err_var = beta - s.est_var;
    return s;
}

std::vector<double> pilot_betas(const LargeScaleProfile& p, Link link, int j, int k) {
    std::vector<double> b(p.cells());
    for (int l = 0; l < p.cells(); ++l) b[l] = link == Link::up ? p.ul(j, l, k) : p.dl(j, l, k);
    return b;
}

namespace {

void check_user(const ChannelRealization& real, Link link, int j, int k) {
    const int users = link == Link::up ? real.ul_users() : real.dl_users();
    if (j < 0 || j >= real.cells() || k < 0 || k >= users)
        throw std::out_of_range("training_observation: user (" + std::to_string(j) + ", " +
                                std::to_string(k) + ") out of range");
}

void contaminated_sum(const ChannelRealization& real, Link link, int j, int k, std::span<cplx> out) {
    std::fill(out.begin(), out.end(), cplx{});
    for (int l = 0; l < real.cells(); ++l)
        kernels::axpy(1.0, link == Link::up ? real.ul(j, l, k) : real.dl(j, l, k), out);
}

}  // namespace

void training_observation(const ChannelRealization& real, const SystemConfig& cfg, Link link, int j,
                          int k, Rng& rng, std::span<cplx> out) {
    check_user(real, link, j, k);
    contaminated_sum(real, link, j, k, out);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s = std::sqrt(cfg.noise_bs / (2.0 * cfg.train_power));
    for (auto& y : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        y += cplx{s * re, s * im};
    }
}

void training_observation(const ChannelRealization& real, const SystemConfig& cfg, Link link, int j,
                          int k, std::span<const cplx> noise, std::span<cplx> out) {
    check_user(real, link, j, k);
    if (noise.size() != out.size()) throw std::invalid_argument("training_observation: noise length mismatch");
    contaminated_sum(real, link, j, k, out);
    kernels::axpy(1.0 / std::sqrt(cfg.train_power), noise, out);
}

void mmse_estimate(std::span<cplx> observation, const MmseStats& stats) {
    kernels::scale(stats.scale, observation);
}

ChannelEstimateSet::ChannelEstimateSet(const LargeScaleProfile& p, const SystemConfig& cfg)
    : cells_(p.cells()),
      antennas_(cfg.antennas),
      ul_users_(p.ul_users()),
      dl_users_(p.dl_users()),
      fd_users_(p.fd_users()) {
    const auto L = static_cast<std::size_t>(cells_);
    ul_stats_.resize(L * ul_users_);
    dl_stats_.resize(L * dl_users_);
    for (int j = 0; j < cells_; ++j) {
        for (int n = 0; n < ul_users_; ++n)
            ul_stats_[idx(j, n, ul_users_)] = mmse_stats(pilot_betas(p, Link::up, j, n), j, cfg.train_power, cfg.noise_bs);
        for (int k = 0; k < dl_users_; ++k)
            dl_stats_[idx(j, k, dl_users_)] = k < fd_users_
                ? ul_stats_[idx(j, k, ul_users_)]
                : mmse_stats(pilot_betas(p, Link::down, j, k), j, cfg.train_power, cfg.noise_bs);
    }
    ul_hat_.resize(L * ul_users_ * antennas_);
    dl_hat_.resize(L * dl_users_ * antennas_);
}

std::span<const cplx> ChannelEstimateSet::g_hat(Link link, int j, int k) const {
    const auto M = static_cast<std::size_t>(antennas_);
    return link == Link::up ? std::span<const cplx>(ul_hat_.data() + idx(j, k, ul_users_) * M, M)
                            : std::span<const cplx>(dl_hat_.data() + idx(j, k, dl_users_) * M, M);
}

std::span<cplx> ChannelEstimateSet::g_hat(Link link, int j, int k) {
    const auto M = static_cast<std::size_t>(antennas_);
    return link == Link::up ? std::span<cplx>(ul_hat_.data() + idx(j, k, ul_users_) * M, M)
                            : std::span<cplx>(dl_hat_.data() + idx(j, k, dl_users_) * M, M);
}

void ChannelEstimateSet::estimate(const ChannelRealization& real, const SystemConfig& cfg, Rng& rng) {
    if (real.antennas() != antennas_ || real.cells() != cells_)
        throw std::invalid_argument("ChannelEstimateSet: realization dimensions differ");
    for (int j = 0; j < cells_; ++j) {
        for (int n = 0; n < ul_users_; ++n) {
            auto out = g_hat(Link::up, j, n);
            training_observation(real, cfg, Link::up, j, n, rng, out);
            mmse_estimate(out, stats(Link::up, j, n));
        }
        for (int k = 0; k < dl_users_; ++k) {
            auto out = g_hat(Link::down, j, k);
            if (k < fd_users_) {
                auto src = g_hat(Link::up, j, k);
                std::copy(src.begin(), src.end(), out.begin());
                continue;
            }
            training_observation(real, cfg, Link::down, j, k, rng, out);
            mmse_estimate(out, stats(Link::down, j, k));
        }
    }
}

}  // namespace fdmimo
