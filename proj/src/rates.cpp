// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/rates.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fdmimo/format.hpp"
#include "fdmimo/kernels.hpp"

namespace fdmimo {

const char* to_string(Duplex d) { return d == Duplex::fd ? "fd" : "tdd"; }
const char* to_string(Csi c) { return c == Csi::perfect ? "perfect" : "imperfect"; }
const char* to_string(UserClass c) { return c == UserClass::fd ? "fd" : "hd"; }

Csi csi_from_string(const std::string& name) {
    if (name == "perfect") return Csi::perfect;
    if (name == "imperfect") return Csi::imperfect;
    throw std::invalid_argument("unknown CSI mode '" + name + "' (expected perfect or imperfect)");
}

PerCellFactors PerCellFactors::compute(const LargeScaleProfile& p, const SystemConfig& cfg) {
    const int L = p.cells();
    const int Kd = p.dl_users();
    const double M = cfg.antennas;
    PerCellFactors f;
    f.gamma.assign(L, 0.0);
    f.gamma_tilde.assign(L, 0.0);
    f.eta.assign(L, 0.0);
    f.eta_tilde.assign(L, 0.0);
    if (Kd == 0) return f;
    for (int l = 0; l < L; ++l) {
        double sum_beta = 0.0;
        double sum_ratio = 0.0;
        for (int i = 0; i < Kd; ++i) {
            const MmseStats s = mmse_stats(pilot_betas(p, Link::down, l, i), l, cfg.train_power, cfg.noise_bs);
            sum_beta += p.dl(l, l, i);
            sum_ratio += p.dl(l, l, i) * p.dl(l, l, i) / s.lambda;
        }
        f.gamma[l] = M * sum_beta / Kd;
        f.gamma_tilde[l] = M / Kd * cfg.train_power * sum_ratio;
        f.eta[l] = 1.0 / (M * sum_beta);
        f.eta_tilde[l] = 1.0 / sum_ratio;
    }
    return f;
}

double PerCellFactors::dl_scale(const SystemConfig& cfg, int l, Csi csi) const {
    const double g = csi == Csi::perfect ? gamma[l] : gamma_tilde[l];
    if (cfg.dl_users() == 0 || g == 0.0) return 0.0;
    return cfg.effective_dl_power() / (cfg.dl_users() * g);
}

double SinrTerms::denominator(Duplex d) const {
    double den = estimation + interference + noise;
    if (d == Duplex::fd) den += bs_bs + ue_ue + residual;
    return den;
}

namespace {

void check_class(const LargeScaleProfile& p, int l, int k, UserClass cls) {
    if (l < 0 || l >= p.cells() || k < 0 || k >= p.dl_users())
        throw std::out_of_range("downlink user index out of range");
    const bool is_fd = k < p.fd_users();
    if (is_fd != (cls == UserClass::fd))
        throw std::invalid_argument("downlink user class does not match its slot");
}

void check_ul(const LargeScaleProfile& p, int j, int n) {
    if (j < 0 || j >= p.cells() || n < 0 || n >= p.ul_users())
        throw std::out_of_range("uplink user index out of range");
}

// x^H V w for column-major V.
cplx bilinear(std::span<const cplx> x, std::span<const cplx> V, std::span<const cplx> w) {
    const std::size_t M = x.size();
    cplx acc{};
    for (std::size_t c = 0; c < M; ++c) acc += kernels::dot(x, V.subspan(c * M, M)) * w[c];
    return acc;
}

double ue_ue_sum(const ChannelRealization& real, const SystemConfig& cfg, int l, int k, bool fd_user) {
    double s = 0.0;
    for (int j = 0; j < real.cells(); ++j)
        for (int n = 0; n < real.ul_users(); ++n) {
            if (fd_user && j == l && n == k) continue;
            s += std::norm(real.ue(l, k, j, n));
        }
    return cfg.effective_ul_power() * s;
}

double bs_bs_full(const ChannelRealization& real, const SystemConfig& cfg, const PerCellFactors& f,
                  std::span<const cplx> x, int j, Csi csi, const ChannelEstimateSet* est) {
    double total = 0.0;
    if (cfg.effective_dl_power() == 0.0) return 0.0;
    std::vector<cplx> w(real.antennas());
    for (int l = 0; l < real.cells(); ++l) {
        if (l == j) continue;
        double s = 0.0;
        for (int k = 0; k < real.dl_users(); ++k) {
            auto g = csi == Csi::perfect ? real.dl(l, l, k) : est->g_hat(Link::down, l, k);
            for (std::size_t m = 0; m < w.size(); ++m) w[m] = std::conj(g[m]);
            s += std::norm(bilinear(x, real.bs(j, l), w));
        }
        total += f.dl_scale(cfg, l, csi) * s;
    }
    return total;
}

}  // namespace

SinrTerms ul_terms_perfect(const ChannelRealization& real, const LargeScaleProfile& p, const SystemConfig& cfg,
                           const PerCellFactors& f, int j, int n) {
    check_ul(p, j, n);
    auto x = real.ul(j, j, n);
    const double nx = kernels::norm2(x);
    if (!(nx > 0.0)) throw std::domain_error("ul_terms_perfect: zero-norm channel");
    const double Pu = cfg.effective_ul_power();
    SinrTerms t;
    t.signal = Pu * nx * nx;
    for (int l = 0; l < real.cells(); ++l)
        for (int m = 0; m < real.ul_users(); ++m)
            if (l != j || m != n) t.interference += std::norm(kernels::dot(x, real.ul(j, l, m)));
    t.interference *= Pu;
    t.bs_bs = bs_bs_full(real, cfg, f, x, j, Csi::perfect, nullptr);
    t.residual = nx * cfg.kappa * cfg.effective_dl_power() * p.bs(j, j);
    t.noise = nx * cfg.noise_bs;
    return t;
}

SinrTerms dl_terms_perfect(const ChannelRealization& real, const LargeScaleProfile& p, const SystemConfig& cfg,
                           const PerCellFactors& f, int l, int k, UserClass cls) {
    check_class(p, l, k, cls);
    auto g = real.dl(l, l, k);
    const double ng = kernels::norm2(g);
    if (!(ng > 0.0)) throw std::domain_error("dl_terms_perfect: zero-norm channel");
    SinrTerms t;
    t.signal = f.dl_scale(cfg, l, Csi::perfect) * ng * ng;
    for (int j = 0; j < real.cells(); ++j) {
        double s = 0.0;
        for (int i = 0; i < real.dl_users(); ++i)
            if (j != l || i != k) s += std::norm(kernels::dot(real.dl(j, j, i), real.dl(j, l, k)));
        t.interference += f.dl_scale(cfg, j, Csi::perfect) * s;
    }
    const bool fd_user = cls == UserClass::fd;
    t.ue_ue = ue_ue_sum(real, cfg, l, k, fd_user);
    if (fd_user) t.residual = cfg.kappa * cfg.effective_ul_power() * p.ue(l, k, l, k);
    t.noise = cfg.ue_noise();
    return t;
}

SinrTerms ul_terms_imperfect(const ChannelRealization& real, const ChannelEstimateSet& est,
                             const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f,
                             int j, int n) {
    check_ul(p, j, n);
    auto x = est.g_hat(Link::up, j, n);
    const double nx = kernels::norm2(x);
    if (!(nx > 0.0)) throw std::domain_error("ul_terms_imperfect: zero-norm estimate");
    const double Pu = cfg.effective_ul_power();
    SinrTerms t;
    t.signal = Pu * nx * nx;
    t.estimation = Pu * std::norm(kernels::dot(x, real.ul(j, j, n)) - nx);
    for (int l = 0; l < real.cells(); ++l)
        for (int m = 0; m < real.ul_users(); ++m)
            if (l != j || m != n) t.interference += std::norm(kernels::dot(x, real.ul(j, l, m)));
    t.interference *= Pu;
    t.bs_bs = bs_bs_full(real, cfg, f, x, j, Csi::imperfect, &est);
    t.residual = nx * cfg.kappa * cfg.effective_dl_power() * p.bs(j, j);
    t.noise = nx * cfg.noise_bs;
    return t;
}

SinrTerms dl_terms_imperfect(const ChannelRealization& real, const ChannelEstimateSet& est,
                             const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f,
                             int l, int k, UserClass cls) {
    check_class(p, l, k, cls);
    const double scale = f.dl_scale(cfg, l, Csi::imperfect);
    const double mean_gain = cfg.antennas * est.est_var(Link::down, l, k);
    const cplx mu = kernels::dot(est.g_hat(Link::down, l, k), real.dl(l, l, k));
    SinrTerms t;
    t.signal = scale * mean_gain * mean_gain;
    t.estimation = scale * std::norm(mu - mean_gain);
    for (int j = 0; j < real.cells(); ++j) {
        double s = 0.0;
        for (int i = 0; i < real.dl_users(); ++i)
            if (j != l || i != k) s += std::norm(kernels::dot(est.g_hat(Link::down, j, i), real.dl(j, l, k)));
        t.interference += f.dl_scale(cfg, j, Csi::imperfect) * s;
    }
    const bool fd_user = cls == UserClass::fd;
    t.ue_ue = ue_ue_sum(real, cfg, l, k, fd_user);
    if (fd_user) t.residual = cfg.kappa * cfg.effective_ul_power() * p.ue(l, k, l, k);
    t.noise = cfg.ue_noise();
    return t;
}

double ul_sinr_fd_perfect(const ChannelRealization& real, const LargeScaleProfile& p, const SystemConfig& cfg,
                          const PerCellFactors& f, int j, int n) {
    return ul_terms_perfect(real, p, cfg, f, j, n).sinr(Duplex::fd);
}

double dl_sinr_fd_perfect(const ChannelRealization& real, const LargeScaleProfile& p, const SystemConfig& cfg,
                          const PerCellFactors& f, int l, int k, UserClass cls) {
    return dl_terms_perfect(real, p, cfg, f, l, k, cls).sinr(Duplex::fd);
}

std::vector<double> dl_rates_from_moments(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi) {
    const int L = p.cells();
    const int Kd = p.dl_users();
    const int Ku = p.ul_users();
    const double M = cfg.antennas;
    const double Ptr = cfg.train_power;
    const double Pu = cfg.effective_ul_power();
    // a: variance of the precoding vector entries, lam: pilot normalizer.
    std::vector<double> a(static_cast<std::size_t>(L) * Kd), lam(a.size());
    std::vector<double> scale(L);
    for (int j = 0; j < L; ++j) {
        double sum_a = 0.0;
        for (int i = 0; i < Kd; ++i) {
            const std::size_t id = static_cast<std::size_t>(j) * Kd + i;
            if (csi == Csi::perfect) {
                a[id] = p.dl(j, j, i);
            } else {
                const MmseStats s = mmse_stats(pilot_betas(p, Link::down, j, i), j, Ptr, cfg.noise_bs);
                a[id] = s.est_var;
                lam[id] = s.lambda;
            }
            sum_a += a[id];
        }
        scale[j] = Kd > 0 ? cfg.effective_dl_power() / (M * sum_a) : 0.0;
    }

    std::vector<double> rates(a.size());
    for (int l = 0; l < L; ++l) {
        for (int k = 0; k < Kd; ++k) {
            const std::size_t lk = static_cast<std::size_t>(l) * Kd + k;
            const double b = p.dl(l, l, k);
            const double mean_gain = M * a[lk];
            const double signal = scale[l] * mean_gain * mean_gain;
            const double variance = scale[l] * M * a[lk] * b;

            double other = 0.0;
            for (int j = 0; j < L; ++j) {
                const double bjlk = p.dl(j, l, k);
                double s = 0.0;
                for (int i = 0; i < Kd; ++i) {
                    if (i == k) continue;
                    s += M * bjlk * a[static_cast<std::size_t>(j) * Kd + i];
                }
                if (j != l) {
                    const std::size_t jk = static_cast<std::size_t>(j) * Kd + k;
                    if (csi == Csi::perfect) {
                        s += M * bjlk * a[jk];
                    } else {
                        const double c = Ptr * p.dl(j, j, k) / lam[jk];
                        s += c * c * M * (M * bjlk * bjlk + bjlk * lam[jk] / Ptr);
                    }
                }
                other += scale[j] * s;
            }

            const bool fd_user = k < p.fd_users();
            double ue = 0.0;
            for (int j = 0; j < L; ++j)
                for (int n = 0; n < Ku; ++n)
                    if (!(fd_user && j == l && n == k)) ue += Pu * p.ue(l, k, j, n);
            const double residual = fd_user ? cfg.kappa * Pu * p.ue(l, k, l, k) : 0.0;

            rates[lk] = std::log2(1.0 + signal / (variance + other + ue + residual + cfg.ue_noise()));
        }
    }
    return rates;
}

double RateReport::ul_sum_se() const {
    double s = 0.0;
    for (double v : ul_se_per_cell) s += v;
    return s;
}

double RateReport::dl_sum_se() const {
    double s = 0.0;
    for (double v : dl_se_per_cell) s += v;
    return s;
}

RateReport make_report(const SystemConfig& cfg, Duplex system, Csi csi, int trials,
                       const std::vector<MeanStat>& ul, const std::vector<MeanStat>& dl) {
    RateReport r;
    r.system = system;
    r.csi = csi;
    r.cells = cfg.cells;
    r.ul_users = cfg.ul_users();
    r.dl_users = cfg.dl_users();
    r.fd_users = cfg.fd_users;
    r.trials = trials;
    const double T = cfg.coherence;
    if (system == Duplex::tdd) r.time_share = 0.5;
    if (csi == Csi::imperfect) {
        if (system == Duplex::fd) {
            r.ul_overhead = r.dl_overhead = (T - cfg.fd_pilot_length()) / T;
        } else {
            r.ul_overhead = (T - cfg.tdd_ul_pilot_length()) / T;
            r.dl_overhead = (T - cfg.tdd_dl_pilot_length()) / T;
        }
    }
    auto fill = [&](const std::vector<MeanStat>& src, int users, double overhead, std::vector<double>& rate,
                    std::vector<double>& se, std::vector<double>& cell_se) {
        rate.resize(src.size());
        se.resize(src.size());
        cell_se.assign(cfg.cells, 0.0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            rate[i] = r.time_share * src[i].mean;
            se[i] = r.time_share * src[i].std_error;
        }
        for (int c = 0; c < cfg.cells; ++c) {
            std::vector<double> row(rate.begin() + static_cast<std::ptrdiff_t>(c) * users,
                                    rate.begin() + static_cast<std::ptrdiff_t>(c + 1) * users);
            cell_se[c] = overhead * pairwise_sum(row);
        }
    };
    fill(ul, r.ul_users, r.ul_overhead, r.ul_rate, r.ul_stderr, r.ul_se_per_cell);
    fill(dl, r.dl_users, r.dl_overhead, r.dl_rate, r.dl_stderr, r.dl_se_per_cell);
    return r;
}

RateReport fd_rates_perfect_mc(const LargeScaleProfile& p, const SystemConfig& cfg, const McOptions& opts) {
    const McRates mc = simulate_rates(p, cfg, {true, false, true, false}, opts);
    return make_report(cfg, Duplex::fd, Csi::perfect, mc.trials, mc.fd_perfect.ul, mc.fd_perfect.dl);
}

std::vector<MeanStat> ul_rate_fd_imperfect_mc(const LargeScaleProfile& p, const SystemConfig& cfg,
                                              const McOptions& opts) {
    return simulate_rates(p, cfg, {false, true, true, false}, opts).fd_imperfect.ul;
}

std::vector<double> dl_rate_fd_imperfect(const LargeScaleProfile& p, const SystemConfig& cfg) {
    require_valid(cfg);
    return dl_rates_from_moments(p, cfg, Csi::imperfect);
}

std::vector<MeanStat> dl_rate_fd_imperfect_mc(const LargeScaleProfile& p, const SystemConfig& cfg,
                                              const McOptions& opts) {
    return simulate_rates(p, cfg, {false, true, true, false}, opts).fd_imperfect.dl;
}

namespace {

std::vector<MeanStat> exact(const std::vector<double>& v) {
    std::vector<MeanStat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i], 0.0, 1};
    return out;
}

}  // namespace

RateReport fd_rates_imperfect(const LargeScaleProfile& p, const SystemConfig& cfg, const McOptions& opts) {
    const auto ul = ul_rate_fd_imperfect_mc(p, cfg, opts);
    return make_report(cfg, Duplex::fd, Csi::imperfect, opts.trials, ul, exact(dl_rate_fd_imperfect(p, cfg)));
}

RateReport tdd_rates_mc(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi, const McOptions& opts) {
    McRequest req{csi == Csi::perfect, csi == Csi::imperfect, false, true};
    const McRates mc = simulate_rates(p, cfg, req, opts);
    const UserSeries& s = csi == Csi::perfect ? mc.tdd_perfect : mc.tdd_imperfect;
    return make_report(cfg, Duplex::tdd, csi, mc.trials, s.ul, s.dl);
}

std::pair<RateReport, RateReport> fd_tdd_rates(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi,
                                               const McOptions& opts) {
    McRequest req{csi == Csi::perfect, csi == Csi::imperfect, true, true};
    const McRates mc = simulate_rates(p, cfg, req, opts);
    if (csi == Csi::perfect)
        return {make_report(cfg, Duplex::fd, csi, mc.trials, mc.fd_perfect.ul, mc.fd_perfect.dl),
                make_report(cfg, Duplex::tdd, csi, mc.trials, mc.tdd_perfect.ul, mc.tdd_perfect.dl)};
    return {make_report(cfg, Duplex::fd, csi, mc.trials, mc.fd_imperfect.ul,
                        exact(dl_rates_from_moments(p, cfg, Csi::imperfect))),
            make_report(cfg, Duplex::tdd, csi, mc.trials, mc.tdd_imperfect.ul, mc.tdd_imperfect.dl)};
}

void write_rate_csv_header(std::ostream& os) { os << "system,csi,cell,user,class,rate,stderr\n"; }

void write_rate_csv_rows(std::ostream& os, const RateReport& r) {
    auto rows = [&](const char* link, int users, const std::vector<double>& rate, const std::vector<double>& se) {
        for (int c = 0; c < r.cells; ++c)
            for (int u = 0; u < users; ++u) {
                const std::size_t i = static_cast<std::size_t>(c) * users + u;
                os << to_string(r.system) << ',' << to_string(r.csi) << ',' << c << ',' << u << ',' << link
                   << '_' << (u < r.fd_users ? "fd" : "hd") << ',' << format_number(rate[i]) << ','
                   << format_number(se[i]) << '\n';
            }
    };
    rows("ul", r.ul_users, r.ul_rate, r.ul_stderr);
    rows("dl", r.dl_users, r.dl_rate, r.dl_stderr);
}

}  // namespace fdmimo
