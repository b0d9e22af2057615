// SPDX-License-Identifier: Apache-2.0
//
// Trial-parallel Monte Carlo engine. BS-BS matrices are never materialized:
// for a fixed combiner x, V^H x is CN(0, beta_b |x|^2 I), so each uplink user
// draws one M-vector per interfering BS instead of an M x M matrix.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fdmimo/kernels.hpp"
#include "fdmimo/rates.hpp"

namespace fdmimo {

namespace {

constexpr int kBlock = 16;

struct Series {
    std::vector<double> ul, dl;  // user * trials + t
};

struct Plan {
    const LargeScaleProfile& p;
    const SystemConfig& cfg;
    McRequest req;
    int trials;
    std::uint64_t seed;
    std::vector<double> scale_p, scale_ip;  // per-cell P_d / (K_d gamma)
    Series fd_p, tdd_p, fd_ip, tdd_ip;
};

struct Workspace {
    ChannelRealization real;
    ChannelEstimateSet est;
    std::vector<cplx> z;
    std::vector<double> ue_ue, residual;  // per downlink user

    Workspace(const LargeScaleProfile& p, const SystemConfig& cfg)
        : real(p.cells(), cfg.antennas, p.ul_users(), p.dl_users(), false),
          est(p, cfg),
          z(cfg.antennas),
          ue_ue(static_cast<std::size_t>(p.cells()) * p.dl_users()),
          residual(ue_ue.size()) {}
};

inline double rate(double sinr) { return std::log2(1.0 + sinr); }

// Sum over k of |z^H w_k|^2 for the serving-cell downlink precoders of cell l.
double projected(std::span<const cplx> z, const Workspace& ws, int l, Csi csi) {
    double s = 0.0;
    for (int k = 0; k < ws.real.dl_users(); ++k)
        s += std::norm(kernels::dot(z, csi == Csi::perfect ? ws.real.dl(l, l, k) : ws.est.g_hat(Link::down, l, k)));
    return s;
}

void uplink(Plan& plan, Workspace& ws, int t, Csi csi, Rng* bs_rng) {
    const auto& p = plan.p;
    const auto& cfg = plan.cfg;
    const int L = p.cells();
    const int Ku = p.ul_users();
    const double Pu = cfg.effective_ul_power();
    const double Pd = cfg.effective_dl_power();
    const auto& scale = csi == Csi::perfect ? plan.scale_p : plan.scale_ip;
    Series* fd = plan.req.fd ? (csi == Csi::perfect ? &plan.fd_p : &plan.fd_ip) : nullptr;
    Series* tdd = plan.req.tdd ? (csi == Csi::perfect ? &plan.tdd_p : &plan.tdd_ip) : nullptr;

    for (int j = 0; j < L; ++j) {
        for (int n = 0; n < Ku; ++n) {
            auto x = csi == Csi::perfect ? ws.real.ul(j, j, n) : ws.est.g_hat(Link::up, j, n);
            const double nx = kernels::norm2(x);
            SinrTerms s;
            s.signal = Pu * nx * nx;
            if (csi == Csi::imperfect) s.estimation = Pu * std::norm(kernels::dot(x, ws.real.ul(j, j, n)) - nx);
            double inter = 0.0;
            for (int l = 0; l < L; ++l)
                for (int m = 0; m < Ku; ++m)
                    if (l != j || m != n) inter += std::norm(kernels::dot(x, ws.real.ul(j, l, m)));
            s.interference = Pu * inter;
            s.noise = nx * cfg.noise_bs;
            const std::size_t u = static_cast<std::size_t>(j) * Ku + n;
            if (tdd) tdd->ul[u * plan.trials + t] = rate(s.sinr(Duplex::tdd));
            if (!fd) continue;
            if (bs_rng && Pd > 0.0) {
                double bb = 0.0;
                for (int l = 0; l < L; ++l) {
                    if (l == j) continue;
                    fill_complex_normal(*bs_rng, p.bs(j, l), ws.z);
                    bb += scale[l] * projected(ws.z, ws, l, csi);
                }
                s.bs_bs = nx * bb;
            }
            s.residual = nx * cfg.kappa * Pd * p.bs(j, j);
            fd->ul[u * plan.trials + t] = rate(s.sinr(Duplex::fd));
        }
    }
}

void downlink(Plan& plan, Workspace& ws, int t, Csi csi) {
    const auto& p = plan.p;
    const auto& cfg = plan.cfg;
    const int L = p.cells();
    const int Kd = p.dl_users();
    const double M = cfg.antennas;
    const auto& scale = csi == Csi::perfect ? plan.scale_p : plan.scale_ip;
    Series* fd = plan.req.fd ? (csi == Csi::perfect ? &plan.fd_p : &plan.fd_ip) : nullptr;
    Series* tdd = plan.req.tdd ? (csi == Csi::perfect ? &plan.tdd_p : &plan.tdd_ip) : nullptr;

    for (int l = 0; l < L; ++l) {
        for (int k = 0; k < Kd; ++k) {
            auto g = ws.real.dl(l, l, k);
            SinrTerms s;
            if (csi == Csi::perfect) {
                const double ng = kernels::norm2(g);
                s.signal = scale[l] * ng * ng;
            } else {
                const double mean_gain = M * ws.est.est_var(Link::down, l, k);
                s.signal = scale[l] * mean_gain * mean_gain;
                s.estimation = scale[l] * std::norm(kernels::dot(ws.est.g_hat(Link::down, l, k), g) - mean_gain);
            }
            double inter = 0.0;
            for (int j = 0; j < L; ++j) {
                auto h = ws.real.dl(j, l, k);
                double acc = 0.0;
                for (int i = 0; i < Kd; ++i) {
                    if (j == l && i == k) continue;
                    auto w = csi == Csi::perfect ? ws.real.dl(j, j, i) : ws.est.g_hat(Link::down, j, i);
                    acc += std::norm(kernels::dot(w, h));
                }
                inter += scale[j] * acc;
            }
            s.interference = inter;
            s.noise = cfg.ue_noise();
            const std::size_t u = static_cast<std::size_t>(l) * Kd + k;
            s.ue_ue = ws.ue_ue[u];
            s.residual = ws.residual[u];
            if (tdd) tdd->dl[u * plan.trials + t] = rate(s.sinr(Duplex::tdd));
            if (fd) fd->dl[u * plan.trials + t] = rate(s.sinr(Duplex::fd));
        }
    }
}

void run_trial(Plan& plan, Workspace& ws, int t) {
    const auto& p = plan.p;
    const auto& cfg = plan.cfg;
    Rng ch = make_stream(plan.seed, static_cast<std::uint64_t>(t), Stream::channels);
    realize_channels_into(ws.real, p, ch);

    if (plan.req.fd) {
        const double Pu = cfg.effective_ul_power();
        for (int l = 0; l < p.cells(); ++l)
            for (int k = 0; k < p.dl_users(); ++k) {
                const bool fd_user = k < p.fd_users();
                double s = 0.0;
                for (int j = 0; j < p.cells(); ++j)
                    for (int n = 0; n < p.ul_users(); ++n)
                        if (!(fd_user && j == l && n == k)) s += std::norm(ws.real.ue(l, k, j, n));
                const std::size_t u = static_cast<std::size_t>(l) * p.dl_users() + k;
                ws.ue_ue[u] = Pu * s;
                ws.residual[u] = fd_user ? cfg.kappa * Pu * p.ue(l, k, l, k) : 0.0;
            }
    }

    if (plan.req.perfect) {
        Rng bs = make_stream(plan.seed, static_cast<std::uint64_t>(t), Stream::bs_bs_perfect);
        uplink(plan, ws, t, Csi::perfect, plan.req.fd ? &bs : nullptr);
        downlink(plan, ws, t, Csi::perfect);
    }
    if (plan.req.imperfect) {
        Rng tr = make_stream(plan.seed, static_cast<std::uint64_t>(t), Stream::training);
        ws.est.estimate(ws.real, cfg, tr);
        Rng bs = make_stream(plan.seed, static_cast<std::uint64_t>(t), Stream::bs_bs_imperfect);
        uplink(plan, ws, t, Csi::imperfect, plan.req.fd ? &bs : nullptr);
        downlink(plan, ws, t, Csi::imperfect);
    }
}

std::vector<MeanStat> reduce(const std::vector<double>& samples, int users, int trials) {
    std::vector<MeanStat> out(users);
    for (int u = 0; u < users; ++u)
        out[u] = mean_stat(std::span<const double>(samples.data() + static_cast<std::size_t>(u) * trials,
                                                   static_cast<std::size_t>(trials)));
    return out;
}

}  // namespace

McRates simulate_rates(const LargeScaleProfile& p, const SystemConfig& cfg, const McRequest& req,
                       const McOptions& opts) {
    require_valid(cfg);
    if (!p.matches(cfg)) throw std::invalid_argument("simulate_rates: profile dimensions do not match the system");
    if (const auto chk = p.check(); !chk.ok()) throw std::invalid_argument("simulate_rates: " + chk.describe());
    if (opts.trials < 1) throw std::invalid_argument("simulate_rates: trials must be >= 1");

    const int L = p.cells();
    const std::size_t ul_n = static_cast<std::size_t>(L) * p.ul_users() * opts.trials;
    const std::size_t dl_n = static_cast<std::size_t>(L) * p.dl_users() * opts.trials;

    Plan plan{p, cfg, req, opts.trials, opts.seed, {}, {}, {}, {}, {}, {}};
    const PerCellFactors f = PerCellFactors::compute(p, cfg);
    for (int l = 0; l < L; ++l) {
        plan.scale_p.push_back(f.dl_scale(cfg, l, Csi::perfect));
        plan.scale_ip.push_back(f.dl_scale(cfg, l, Csi::imperfect));
    }
    auto alloc = [&](bool on, Series& s) {
        if (!on) return;
        s.ul.assign(ul_n, 0.0);
        s.dl.assign(dl_n, 0.0);
    };
    alloc(req.perfect && req.fd, plan.fd_p);
    alloc(req.perfect && req.tdd, plan.tdd_p);
    alloc(req.imperfect && req.fd, plan.fd_ip);
    alloc(req.imperfect && req.tdd, plan.tdd_ip);

    const int blocks = (opts.trials + kBlock - 1) / kBlock;
    int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, blocks);

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            Workspace ws(p, cfg);
            for (int b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                const int end = std::min(opts.trials, (b + 1) * kBlock);
                for (int t = b * kBlock; t < end; ++t) run_trial(plan, ws, t);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(blocks);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    McRates out;
    out.trials = opts.trials;
    auto finish = [&](const Series& s, UserSeries& dst) {
        if (s.ul.empty() && s.dl.empty()) return;
        dst.ul = reduce(s.ul, L * p.ul_users(), opts.trials);
        dst.dl = reduce(s.dl, L * p.dl_users(), opts.trials);
    };
    finish(plan.fd_p, out.fd_perfect);
    finish(plan.tdd_p, out.tdd_perfect);
    finish(plan.fd_ip, out.fd_imperfect);
    finish(plan.tdd_ip, out.tdd_imperfect);
    return out;
}

}  // namespace fdmimo
