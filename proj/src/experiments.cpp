// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fdmimo/units.hpp"

namespace fdmimo {

namespace {

int resolve_threads(int requested) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return requested > 0 ? requested : std::max(1, hw);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class F>
void parallel_for(int n, int threads, F&& fn) {
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto worker = [&] {
        try {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure) failure = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

double sum_stderr(const std::vector<double>& se, double overhead) {
    double s = 0.0;
    for (double v : se) s += v;
    return overhead * s;
}

ExperimentResult make_result(const std::string& experiment, std::uint64_t seed, const std::string& digest,
                             std::vector<std::string> columns) {
    ExperimentResult r;
    r.experiment = experiment;
    r.config_digest = digest;
    r.seed = seed;
    r.columns = std::move(columns);
    return r;
}

std::int64_t i64(int v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::uint64_t drop_seed(std::uint64_t seed, int drop) {
    Rng r = make_stream(seed, static_cast<std::uint64_t>(drop), Stream::drop);
    return r();
}

Drop make_drop(const ScenarioParams& params, std::uint64_t seed) {
    Drop d;
    d.topology = build_topology(params, seed);
    Rng shadow = make_stream(seed, 0, Stream::shadowing);
    d.profile = large_scale_from_topology(d.topology, params, shadow);
    return d;
}

DropRates run_drop(const ScenarioParams& params, const Drop& drop, int antennas, double kappa_db,
                   std::uint64_t seed, const McOptions& mc) {
    const SystemConfig cfg = params.system(antennas, kappa_db);
    McOptions opts = mc;
    opts.seed = seed;
    auto [fd, tdd] = fd_tdd_rates(drop.profile, cfg, Csi::imperfect, opts);
    return {std::move(fd), std::move(tdd)};
}

DropRates run_drop(const ScenarioParams& params, int antennas, double kappa_db, std::uint64_t seed,
                   const McOptions& mc) {
    return run_drop(params, make_drop(params, seed), antennas, kappa_db, seed, mc);
}

MeanStat GainSeries::ul_gain() const { return ratio_stat(fd_ul, tdd_ul); }
MeanStat GainSeries::dl_gain() const { return ratio_stat(fd_dl, tdd_dl); }

std::vector<GainSeries> gain_sweep(const ScenarioParams& params, const std::vector<SweepPoint>& points, int drops,
                                   std::uint64_t seed, const McOptions& mc) {
    if (drops < 1) throw std::invalid_argument("gain_sweep: drops must be >= 1");
    std::vector<GainSeries> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        out[p].point = points[p];
        for (auto* v : {&out[p].fd_ul, &out[p].tdd_ul, &out[p].fd_dl, &out[p].tdd_dl}) v->assign(drops, 0.0);
    }
    const int threads = resolve_threads(mc.threads);
    const int outer = std::min(threads, drops);
    McOptions inner = mc;
    inner.threads = outer > 1 ? 1 : threads;
    parallel_for(drops, outer, [&](int d) {
        const std::uint64_t s = drop_seed(seed, d);
        const Drop drop = make_drop(params, s);
        for (std::size_t p = 0; p < points.size(); ++p) {
            const DropRates r = run_drop(params, drop, points[p].antennas, points[p].kappa_db, s, inner);
            out[p].fd_ul[d] = r.fd.ul_sum_se();
            out[p].tdd_ul[d] = r.tdd.ul_sum_se();
            out[p].fd_dl[d] = r.fd.dl_sum_se();
            out[p].tdd_dl[d] = r.tdd.dl_sum_se();
        }
    });
    return out;
}

ExperimentResult gain_table(const std::string& experiment, const std::vector<GainSeries>& series,
                            std::uint64_t seed, const std::string& digest) {
    ExperimentResult r = make_result(experiment, seed, digest,
                                     {"row", "antennas", "kappa_db", "drop", "fd_ul_se", "tdd_ul_se", "fd_dl_se",
                                      "tdd_dl_se", "ul_gain", "dl_gain", "ul_gain_ci95", "dl_gain_ci95"});
    for (const auto& s : series) {
        for (std::size_t d = 0; d < s.fd_ul.size(); ++d)
            r.add_row({std::string("drop"), i64(s.point.antennas), s.point.kappa_db, static_cast<std::int64_t>(d),
                       s.fd_ul[d], s.tdd_ul[d], s.fd_dl[d], s.tdd_dl[d], s.fd_ul[d] / s.tdd_ul[d],
                       s.fd_dl[d] / s.tdd_dl[d], 0.0, 0.0});
    }
    for (const auto& s : series) {
        const MeanStat ul = s.ul_gain(), dl = s.dl_gain();
        r.add_row({std::string("mean"), i64(s.point.antennas), s.point.kappa_db, std::int64_t{-1},
                   mean_stat(s.fd_ul).mean, mean_stat(s.tdd_ul).mean, mean_stat(s.fd_dl).mean,
                   mean_stat(s.tdd_dl).mean, ul.mean, dl.mean, ul.ci95(), dl.ci95()});
    }
    return r;
}

ExperimentResult experiment_gain_vs_m(const ScenarioParams& params, const std::vector<int>& m_list,
                                      double kappa_db, int drops, std::uint64_t seed, const McOptions& mc,
                                      const std::string& digest) {
    std::vector<SweepPoint> pts;
    for (int m : m_list) pts.push_back({m, kappa_db});
    return gain_table("gain-vs-m", gain_sweep(params, pts, drops, seed, mc), seed, digest);
}

ExperimentResult experiment_gain_vs_kappa(const ScenarioParams& params, const std::vector<double>& kappa_db_list,
                                          int antennas, int drops, std::uint64_t seed, const McOptions& mc,
                                          const std::string& digest) {
    std::vector<SweepPoint> pts;
    for (double k : kappa_db_list) pts.push_back({antennas, k});
    return gain_table("gain-vs-kappa", gain_sweep(params, pts, drops, seed, mc), seed, digest);
}

HomogeneousConfig tightness_config(int antennas) {
    HomogeneousConfig h;
    h.beta = 0.3;
    h.users = 5;
    h.base.cells = 7;
    h.base.antennas = antennas;
    h.base.ul_power = db_to_linear(10.0);
    h.base.train_power = db_to_linear(10.0);
    h.base.dl_power = db_to_linear(20.0);
    h.base.kappa = db_to_linear(-50.0);
    h.base.coherence = 196;
    h.base.pilot_fd = h.users;
    return h;
}

std::vector<TightnessPoint> tightness_at(const HomogeneousConfig& h0, int antennas, const McOptions& mc) {
    HomogeneousConfig h = h0;
    h.base.antennas = antennas;
    const SystemConfig cfg = h.system();
    const LargeScaleProfile profile = expand_homogeneous(h);
    const McRates r = simulate_rates(profile, cfg, McRequest{true, true, true, false}, mc);
    const double L = cfg.cells;
    std::vector<TightnessPoint> out;
    for (const Csi csi : {Csi::perfect, Csi::imperfect}) {
        const UserSeries& s = csi == Csi::perfect ? r.fd_perfect : r.fd_imperfect;
        const RateReport rep = make_report(cfg, Duplex::fd, csi, r.trials, s.ul, s.dl);
        const SePair bound = homogeneous_rates(h, csi);
        out.push_back({antennas, csi, "ul", rep.ul_sum_se() / L, sum_stderr(rep.ul_stderr, rep.ul_overhead) / L,
                       bound.ul});
        out.push_back({antennas, csi, "dl", rep.dl_sum_se() / L, sum_stderr(rep.dl_stderr, rep.dl_overhead) / L,
                       bound.dl});
    }
    return out;
}

ExperimentResult experiment_tightness(const HomogeneousConfig& h, const std::vector<int>& m_list,
                                      const McOptions& mc, const std::string& digest) {
    ExperimentResult r = make_result("tightness", mc.seed, digest,
                                     {"antennas", "csi", "link", "mc_se", "mc_se_stderr", "bound_se", "relative_gap"});
    for (int m : m_list)
        for (const auto& p : tightness_at(h, m, mc))
            r.add_row({i64(p.antennas), std::string(to_string(p.csi)), p.link, p.mc_se, p.mc_stderr, p.bound_se,
                       p.relative_gap()});
    return r;
}

GainReport power_scaling_gain(const HomogeneousConfig& h0, int antennas, const PowerScalingSchedule& schedule,
                              Csi csi, const McOptions& mc) {
    HomogeneousConfig h = h0;
    h.base = schedule.apply(h0.base, antennas);
    const SystemConfig cfg = h.system();
    const SePair fd = homogeneous_rates(h, csi);
    const RateReport tdd = tdd_rates_mc(expand_homogeneous(h), cfg, csi, mc);
    const double L = cfg.cells;
    const double tu = tdd.ul_sum_se() / L, td = tdd.dl_sum_se() / L;
    if (!(tu > 0.0) || !(td > 0.0)) throw std::domain_error("power_scaling_gain: TDD spectral efficiency is zero");
    GainReport g;
    g.antennas = antennas;
    g.scaling = schedule.law;
    g.csi = csi;
    g.gain_ul = fd.ul / tu;
    g.gain_dl = fd.dl / td;
    g.ul_stderr = g.gain_ul * sum_stderr(tdd.ul_stderr, tdd.ul_overhead) / L / tu;
    g.dl_stderr = g.gain_dl * sum_stderr(tdd.dl_stderr, tdd.dl_overhead) / L / td;
    g.reference_ul = asymptotic_gain_ul(cfg, csi);
    g.reference_dl = asymptotic_gain_dl(cfg, csi);
    return g;
}

ExperimentResult experiment_power_scaling(const HomogeneousConfig& h, const std::vector<int>& m_list, Csi csi,
                                          const McOptions& mc, const std::string& digest) {
    ExperimentResult r = make_result("power-scaling", mc.seed, digest,
                                     {"antennas", "csi", "scaling", "ul_gain", "ul_gain_stderr", "dl_gain",
                                      "dl_gain_stderr", "reference_ul", "reference_dl"});
    PowerScalingSchedule scaled{h.base.ul_power, h.base.dl_power, h.base.train_power,
                                csi == Csi::perfect ? PowerScaling::inverse_m : PowerScaling::inverse_sqrt_m};
    PowerScalingSchedule fixed = scaled;
    fixed.law = PowerScaling::none;
    for (int m : m_list)
        for (const auto& s : {scaled, fixed}) {
            const GainReport g = power_scaling_gain(h, m, s, csi, mc);
            r.add_row({i64(m), std::string(to_string(csi)), std::string(to_string(s.law)), g.gain_ul, g.ul_stderr,
                       g.gain_dl, g.dl_stderr, g.reference_ul, g.reference_dl});
        }
    return r;
}

ExperimentResult experiment_tradeoff(const HomogeneousConfig& h, const std::vector<int>& m_tdd_list,
                                     const std::vector<double>& gain_grid, Csi csi, const McOptions& mc,
                                     const std::string& digest) {
    ExperimentResult r = make_result("tradeoff", mc.seed, digest,
                                     {"csi", "link", "m_tdd", "se_gain", "m_fd", "antenna_reduction", "reachable",
                                      "tdd_se"});
    for (const auto& p : antenna_reduction_curve(h, m_tdd_list, gain_grid, csi, mc))
        r.add_row({std::string(to_string(csi)), p.link, i64(p.m_tdd), p.se_gain, i64(p.m_fd), p.antenna_reduction,
                   std::int64_t{p.reachable ? 1 : 0}, p.tdd_se});
    return r;
}

ExperimentResult experiment_rates(const LargeScaleProfile& profile, const SystemConfig& cfg, Csi csi,
                                  const McOptions& mc, const std::string& digest) {
    ExperimentResult r = make_result("rates", mc.seed, digest,
                                     {"system", "csi", "cell", "user", "class", "rate", "stderr"});
    const auto [fd, tdd] = fd_tdd_rates(profile, cfg, csi, mc);
    for (const RateReport* rep : {&fd, &tdd}) {
        const std::string sys = to_string(rep->system);
        for (int c = 0; c < rep->cells; ++c) {
            for (int n = 0; n < rep->ul_users; ++n) {
                const std::size_t i = static_cast<std::size_t>(c) * rep->ul_users + n;
                r.add_row({sys, std::string(to_string(csi)), i64(c), i64(n),
                           std::string("ul_") + to_string(rep->ul_class(n)), rep->ul_rate[i], rep->ul_stderr[i]});
            }
            for (int k = 0; k < rep->dl_users; ++k) {
                const std::size_t i = static_cast<std::size_t>(c) * rep->dl_users + k;
                r.add_row({sys, std::string(to_string(csi)), i64(c), i64(k),
                           std::string("dl_") + to_string(rep->dl_class(k)), rep->dl_rate[i], rep->dl_stderr[i]});
            }
        }
    }
    return r;
}

}  // namespace fdmimo
