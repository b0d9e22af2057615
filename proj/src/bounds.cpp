// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdmimo {

namespace {

void require_closed_form(const LargeScaleProfile& p, const SystemConfig& cfg) {
    require_valid(cfg, {.closed_form = true});
    if (!p.matches(cfg)) throw std::invalid_argument("profile dimensions do not match the system");
    if (const auto chk = p.check(); !chk.ok()) throw std::invalid_argument("invalid profile: " + chk.describe());
}

double ue_sum(const LargeScaleProfile& p, const SystemConfig& cfg, int l, int k) {
    double s = 0.0;
    for (int j = 0; j < p.cells(); ++j)
        for (int n = 0; n < p.ul_users(); ++n) s += p.ue(l, k, j, n);
    return cfg.effective_ul_power() * s;
}

std::size_t at(int cell, int user, int users) { return static_cast<std::size_t>(cell) * users + user; }

}  // namespace

namespace prop1 {

double i_up(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n) {
    double users = 0.0;
    for (int l = 0; l < p.cells(); ++l)
        for (int m = 0; m < p.ul_users(); ++m)
            if (l != j || m != n) users += p.ul(j, l, m);
    double bs = 0.0;
    for (int l = 0; l < p.cells(); ++l)
        if (l != j) bs += p.bs(j, l);
    return cfg.effective_ul_power() * users + cfg.effective_dl_power() * bs;
}

double i_down(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f, int l, int k) {
    const double M = cfg.antennas;
    const double Pd = cfg.effective_dl_power();
    double own = 0.0;
    for (int i = 0; i < p.dl_users(); ++i)
        if (i != k) own += f.eta[l] * Pd * p.dl(l, l, k) * p.dl(l, l, i) * (M - 2.0);
    double cross = 0.0;
    for (int j = 0; j < p.cells(); ++j)
        if (j != l) cross += p.dl(j, l, k);
    return own + Pd * cross + ue_sum(p, cfg, l, k);
}

}  // namespace prop1

namespace prop2 {

double lambda(const LargeScaleProfile& p, const SystemConfig& cfg, Link link, int j, int k) {
    return mmse_stats(pilot_betas(p, link, j, k), j, cfg.train_power, cfg.noise_bs).lambda;
}

double estimation_term(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n) {
    double cross = 0.0;
    for (int l = 0; l < p.cells(); ++l)
        if (l != j) cross += p.ul(j, l, n);
    return cfg.effective_ul_power() * p.ul(j, j, n) * (cfg.noise_bs + cfg.train_power * cross);
}

double i_up(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n) {
    const double M = cfg.antennas;
    const double Ptr = cfg.train_power;
    double total = 0.0;
    for (int l = 0; l < p.cells(); ++l) {
        if (l == j) continue;
        const double b = p.ul(j, l, n);
        double others = 0.0;
        for (int l1 = 0; l1 < p.cells(); ++l1)
            if (l1 != l) others += p.ul(j, l1, n);
        total += (M + 1.0) * b * b + others * b + b * cfg.noise_bs / Ptr;
    }
    return Ptr * cfg.effective_ul_power() * total;
}

namespace {
double n_tilde_impl(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n, bool fd) {
    const double Pd = cfg.effective_dl_power();
    double bs = 0.0;
    for (int l = 0; l < p.cells(); ++l)
        if (l != j) bs += p.bs(j, l);
    double users = 0.0;
    for (int l = 0; l < p.cells(); ++l)
        for (int m = 0; m < p.ul_users(); ++m)
            if (m != n) users += p.ul(j, l, m);
    double inner = cfg.effective_ul_power() * users + cfg.noise_bs;
    if (fd) inner += Pd * bs + cfg.kappa * Pd * p.bs(j, j);
    return lambda(p, cfg, Link::up, j, n) * inner;
}
}  // namespace

double n_tilde(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n) {
    return n_tilde_impl(p, cfg, j, n, true);
}

DownTerms i_down(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f, int l, int k) {
    const double M = cfg.antennas;
    const double Ptr = cfg.train_power;
    const double Pd = cfg.effective_dl_power();
    const double s2 = cfg.noise_bs;
    DownTerms t;
    const double lam_lk = lambda(p, cfg, Link::down, l, k);
    const double b = p.dl(l, l, k);
    t.variance = f.eta_tilde[l] * Pd * b * b * b / lam_lk;
    for (int j = 0; j < p.cells(); ++j) {
        const double bjlk = p.dl(j, l, k);
        if (j != l) {
            const double lam = lambda(p, cfg, Link::down, j, k);
            const double bjjk = p.dl(j, j, k);
            t.contaminated += f.eta_tilde[j] * Ptr * Pd * (M + 1.0) * bjlk * bjlk * bjjk * bjjk / (lam * lam);
            double others = 0.0;
            for (int l1 = 0; l1 < p.cells(); ++l1)
                if (l1 != l) others += p.dl(j, l1, k);
            t.contaminated_noise += f.eta_tilde[j] * Pd * bjjk * bjjk * (s2 + Ptr * others) * bjlk / (lam * lam);
        }
        for (int i = 0; i < p.dl_users(); ++i) {
            if (i == k) continue;
            const double bjji = p.dl(j, j, i);
            t.other_beams += f.eta_tilde[j] * Pd * bjji * bjji * bjlk / lambda(p, cfg, Link::down, j, i);
        }
    }
    t.ue_ue = ue_sum(p, cfg, l, k);
    return t;
}

}  // namespace prop2

ClosedFormRates prop1_rates(const LargeScaleProfile& p, const SystemConfig& cfg) {
    return prop1_rates(p, cfg, PerCellFactors::compute(p, cfg));
}

ClosedFormRates prop1_rates(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f) {
    require_closed_form(p, cfg);
    const int L = p.cells();
    const double M = cfg.antennas;
    const double Pu = cfg.effective_ul_power();
    const double Pd = cfg.effective_dl_power();
    ClosedFormRates r;
    r.ul.resize(static_cast<std::size_t>(L) * p.ul_users());
    r.dl.resize(static_cast<std::size_t>(L) * p.dl_users());
    for (int j = 0; j < L; ++j)
        for (int n = 0; n < p.ul_users(); ++n) {
            const double num = Pu * (M - 1.0) * p.ul(j, j, n);
            const double den = prop1::i_up(p, cfg, j, n) + cfg.noise_bs + cfg.kappa * Pd * p.bs(j, j);
            r.ul[at(j, n, p.ul_users())] = std::log2(1.0 + num / den);
        }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < p.dl_users(); ++k) {
            const double b = p.dl(l, l, k);
            const double num = f.eta[l] * Pd * (M - 1.0) * (M - 2.0) * b * b;
            double den = prop1::i_down(p, cfg, f, l, k) + cfg.ue_noise();
            if (k < p.fd_users()) {
                const double self = Pu * p.ue(l, k, l, k);
                den += -self + cfg.kappa * self;
            }
            r.dl[at(l, k, p.dl_users())] = std::log2(1.0 + num / den);
        }
    return r;
}

ClosedFormRates prop2_rates(const LargeScaleProfile& p, const SystemConfig& cfg) {
    return prop2_rates(p, cfg, PerCellFactors::compute(p, cfg));
}

ClosedFormRates prop2_rates(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f) {
    require_closed_form(p, cfg);
    const int L = p.cells();
    const double M = cfg.antennas;
    const double Ptr = cfg.train_power;
    const double Pu = cfg.effective_ul_power();
    const double Pd = cfg.effective_dl_power();
    ClosedFormRates r;
    r.ul.resize(static_cast<std::size_t>(L) * p.ul_users());
    r.dl.resize(static_cast<std::size_t>(L) * p.dl_users());
    for (int j = 0; j < L; ++j)
        for (int n = 0; n < p.ul_users(); ++n) {
            const double b = p.ul(j, j, n);
            const double num = Ptr * Pu * (M - 1.0) * b * b;
            const double den = prop2::estimation_term(p, cfg, j, n) + prop2::i_up(p, cfg, j, n) +
                               prop2::n_tilde(p, cfg, j, n);
            r.ul[at(j, n, p.ul_users())] = std::log2(1.0 + num / den);
        }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < p.dl_users(); ++k) {
            const double b = p.dl(l, l, k);
            const double lam = prop2::lambda(p, cfg, Link::down, l, k);
            const double num = f.eta_tilde[l] * Ptr * Pd * M * b * b * b * b;
            double inner = prop2::i_down(p, cfg, f, l, k).total() + cfg.ue_noise();
            if (k < p.fd_users()) {
                const double self = Pu * p.ue(l, k, l, k);
                inner += -self + cfg.kappa * self;
            }
            r.dl[at(l, k, p.dl_users())] = std::log2(1.0 + num / (lam * lam * inner));
        }
    return r;
}

ClosedFormRates tdd_closed_form(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi) {
    require_closed_form(p, cfg);
    const PerCellFactors f = PerCellFactors::compute(p, cfg);
    const int L = p.cells();
    const double M = cfg.antennas;
    const double Ptr = cfg.train_power;
    const double Pu = cfg.effective_ul_power();
    const double Pd = cfg.effective_dl_power();
    ClosedFormRates r;
    r.ul.resize(static_cast<std::size_t>(L) * p.ul_users());
    r.dl.resize(static_cast<std::size_t>(L) * p.dl_users());
    for (int j = 0; j < L; ++j)
        for (int n = 0; n < p.ul_users(); ++n) {
            const double b = p.ul(j, j, n);
            double sinr = 0.0;
            if (csi == Csi::perfect) {
                double users = 0.0;
                for (int l = 0; l < L; ++l)
                    for (int m = 0; m < p.ul_users(); ++m)
                        if (l != j || m != n) users += p.ul(j, l, m);
                sinr = Pu * (M - 1.0) * b / (Pu * users + cfg.noise_bs);
            } else {
                const double den = prop2::estimation_term(p, cfg, j, n) + prop2::i_up(p, cfg, j, n) +
                                   prop2::n_tilde_impl(p, cfg, j, n, false);
                sinr = Ptr * Pu * (M - 1.0) * b * b / den;
            }
            r.ul[at(j, n, p.ul_users())] = std::log2(1.0 + sinr);
        }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < p.dl_users(); ++k) {
            const double b = p.dl(l, l, k);
            double sinr = 0.0;
            if (csi == Csi::perfect) {
                const double ue = prop1::i_down(p, cfg, f, l, k) - ue_sum(p, cfg, l, k);
                sinr = f.eta[l] * Pd * (M - 1.0) * (M - 2.0) * b * b / (ue + cfg.ue_noise());
            } else {
                const auto t = prop2::i_down(p, cfg, f, l, k);
                const double lam = prop2::lambda(p, cfg, Link::down, l, k);
                const double inner = t.total() - t.ue_ue + cfg.ue_noise();
                sinr = f.eta_tilde[l] * Ptr * Pd * M * b * b * b * b / (lam * lam * inner);
            }
            r.dl[at(l, k, p.dl_users())] = std::log2(1.0 + sinr);
        }
    return r;
}

HomogeneousTerms homogeneous_terms(const HomogeneousConfig& h) {
    const SystemConfig c = h.system();
    const double L = c.cells;
    const double K = h.users;
    const double M = c.antennas;
    const double Pu = c.ul_power;
    const double Pd = c.dl_power;
    const double Ptr = c.train_power;
    const double kappa = c.kappa;
    HomogeneousTerms t;
    t.L_bar = 1.0 + (L - 1.0) * h.beta;
    const double Lb = t.L_bar;
    t.V = M * K * (K - 1.0 + (L - 1.0) * K * h.beta) * Pu;
    t.J = Pd * (1.0 + Ptr * Lb) * (Lb - 1.0) + Pu * K * Lb + Ptr * (1.0 + kappa * Pd) * Lb + kappa * Pd + 1.0;
    t.U1 = Pd * (1.0 + (K - 1.0) * Lb) + K * (Pu * (K - 1.0) + Pu * (Lb - 1.0) * K + 1.0 + kappa * Pu);
    t.U2 = Ptr * Pd * (M * h.beta + Lb) + Pd;
    return t;
}

SePair homogeneous_rates(const HomogeneousConfig& h, Csi csi) {
    const SystemConfig c = h.system();
    require_valid(c, {.closed_form = true});
    const double L = c.cells;
    const double K = h.users;
    const double M = c.antennas;
    const double Pu = c.ul_power;
    const double Pd = c.dl_power;
    const double Ptr = c.train_power;
    const double kappa = c.kappa;
    const double beta = h.beta;
    const HomogeneousTerms t = homogeneous_terms(h);
    SePair r;
    if (csi == Csi::perfect) {
        r.ul = K * std::log2(1.0 + Pu * (M - 1.0) /
                                       (Pu * (K - 1.0) + (L - 1.0) * beta * (Pu * K + Pd) + kappa * Pd + 1.0));
        r.dl = K * std::log2(1.0 + Pd * (M - 1.0) * (M - 2.0) /
                                       (Pd * (K - 1.0) * (M - 2.0) + M * K * (L - 1.0) * beta * Pd + t.V +
                                        M * K * (kappa * Pu + 1.0)));
    } else {
        const double T = c.coherence;
        const double pre = K * (T - c.fd_pilot_length()) / T;
        const double Lb = t.L_bar;
        r.ul = pre * std::log2(1.0 + Ptr * Pu * (M - 1.0) /
                                         (Ptr * Pu * (K * Lb * Lb - 1.0 + beta * (Lb - 1.0) * M) + t.J));
        r.dl = pre * std::log2(1.0 + Ptr * Pd * M / ((1.0 + Ptr * Lb) * t.U1 + (Lb - 1.0) * t.U2));
    }
    return r;
}

ClosedFormRates asymptotic_rates(const LargeScaleProfile& p, const SystemConfig& cfg,
                                 const PowerScalingSchedule& s, Csi csi) {
    if (csi == Csi::perfect && s.law != PowerScaling::inverse_m)
        throw std::invalid_argument("asymptotic_rates: perfect CSI limits need the 1/M power law");
    if (csi == Csi::imperfect && s.law != PowerScaling::inverse_sqrt_m)
        throw std::invalid_argument("asymptotic_rates: imperfect CSI limits need the 1/sqrt(M) power law");
    const int L = p.cells();
    const double sb = cfg.noise_bs;
    const double sd = cfg.ue_noise();
    ClosedFormRates r;
    r.ul.resize(static_cast<std::size_t>(L) * p.ul_users());
    r.dl.resize(static_cast<std::size_t>(L) * p.dl_users());
    const double Eu = p.ul_users() > 0 ? s.ul_energy : 0.0;
    const double Ed = p.dl_users() > 0 ? s.dl_energy : 0.0;

    std::vector<double> Z(L, 0.0);
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < p.dl_users(); ++i) Z[l] += p.dl(l, l, i) * p.dl(l, l, i) / sb;

    for (int j = 0; j < L; ++j)
        for (int n = 0; n < p.ul_users(); ++n) {
            const double b = p.ul(j, j, n);
            double sinr;
            if (csi == Csi::perfect) {
                sinr = b * Eu / sb;
            } else {
                double cross = 0.0;
                for (int l = 0; l < L; ++l)
                    if (l != j) cross += p.ul(j, l, n) * p.ul(j, l, n);
                const double e = s.train_energy * Eu;
                sinr = e * b * b / (e * cross + sb * sb);
            }
            r.ul[at(j, n, p.ul_users())] = std::log2(1.0 + sinr);
        }
    for (int l = 0; l < L; ++l) {
        double sum_beta = 0.0;
        for (int i = 0; i < p.dl_users(); ++i) sum_beta += p.dl(l, l, i);
        for (int k = 0; k < p.dl_users(); ++k) {
            const double b = p.dl(l, l, k);
            double sinr;
            if (csi == Csi::perfect) {
                sinr = b * b * Ed / (sum_beta * sd);
            } else {
                const double e = s.train_energy * Ed;
                double cross = 0.0;
                for (int j = 0; j < L; ++j)
                    if (j != l) cross += e * p.dl(j, j, k) * p.dl(j, j, k) * p.dl(j, l, k) * p.dl(j, l, k) / Z[j];
                sinr = e * b * b * b * b / (Z[l] * (cross + sb * sb * sd));
            }
            r.dl[at(l, k, p.dl_users())] = std::log2(1.0 + sinr);
        }
    }
    return r;
}

double asymptotic_gain_ul(const SystemConfig& cfg, Csi csi) {
    if (csi == Csi::perfect) return 2.0;
    const double T = cfg.coherence;
    return 2.0 * (T - cfg.fd_pilot_length()) / (T - cfg.tdd_ul_pilot_length());
}

double asymptotic_gain_dl(const SystemConfig& cfg, Csi csi) {
    if (csi == Csi::perfect) return 2.0;
    const double T = cfg.coherence;
    return 2.0 * (T - cfg.fd_pilot_length()) / (T - cfg.tdd_dl_pilot_length());
}

namespace {

// Delta-method standard error of a / b.
double ratio_se(double a, double b, double se_a, double se_b) {
    const double r = a / b;
    return std::abs(r) * std::sqrt((a != 0.0 ? (se_a / a) * (se_a / a) : 0.0) + (se_b / b) * (se_b / b));
}

double sum_se(const std::vector<double>& se, double overhead) {
    double s = 0.0;
    for (double v : se) s += v;
    return overhead * s;
}

}  // namespace

GainReport fd_gain(const RateReport& fd, const RateReport& tdd, const SystemConfig& cfg, PowerScaling scaling) {
    if (fd.cells != tdd.cells || fd.ul_users != tdd.ul_users || fd.dl_users != tdd.dl_users)
        throw std::invalid_argument("fd_gain: user populations differ");
    GainReport g;
    g.antennas = cfg.antennas;
    g.scaling = scaling;
    g.csi = fd.csi;
    const double tu = tdd.ul_sum_se();
    const double td = tdd.dl_sum_se();
    if ((fd.ul_users > 0 && !(tu > 0.0)) || (fd.dl_users > 0 && !(td > 0.0)))
        throw std::domain_error("fd_gain: TDD spectral efficiency is zero");
    if (fd.ul_users > 0) {
        g.gain_ul = fd.ul_sum_se() / tu;
        g.ul_stderr = ratio_se(fd.ul_sum_se(), tu, sum_se(fd.ul_stderr, fd.ul_overhead),
                               sum_se(tdd.ul_stderr, tdd.ul_overhead));
    }
    if (fd.dl_users > 0) {
        g.gain_dl = fd.dl_sum_se() / td;
        g.dl_stderr = ratio_se(fd.dl_sum_se(), td, sum_se(fd.dl_stderr, fd.dl_overhead),
                               sum_se(tdd.dl_stderr, tdd.dl_overhead));
    }
    g.reference_ul = asymptotic_gain_ul(cfg, fd.csi);
    g.reference_dl = asymptotic_gain_dl(cfg, fd.csi);
    return g;
}

RateReport closed_form_report(const SystemConfig& cfg, Duplex system, Csi csi, const ClosedFormRates& r) {
    auto wrap = [](const std::vector<double>& v) {
        std::vector<MeanStat> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i], 0.0, 1};
        return out;
    };
    return make_report(cfg, system, csi, 0, wrap(r.ul), wrap(r.dl));
}

GainReport closed_form_gain(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi, PowerScaling scaling) {
    const ClosedFormRates fd = csi == Csi::perfect ? prop1_rates(p, cfg) : prop2_rates(p, cfg);
    const ClosedFormRates tdd = tdd_closed_form(p, cfg, csi);
    return fd_gain(closed_form_report(cfg, Duplex::fd, csi, fd), closed_form_report(cfg, Duplex::tdd, csi, tdd), cfg,
                   scaling);
}

WishartMoments wishart_inverse_moments(int m, int n) {
    if (m < 1 || n <= m) throw std::invalid_argument("wishart_inverse_moments: n > m >= 1 required");
    const double d = n - m;
    WishartMoments w;
    w.tr_inv_mean = m / d;
    w.tr_inv_sq_mean = n == m + 1 ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(m) * n / (d * d * d - d);
    return w;
}

std::vector<TradeoffPoint> antenna_reduction_curve(const HomogeneousConfig& h, const std::vector<int>& m_tdd_list,
                                                   const std::vector<double>& gain_grid, Csi csi,
                                                   const McOptions& opts) {
    std::vector<TradeoffPoint> out;
    const LargeScaleProfile profile = expand_homogeneous(h);
    const double L = h.base.cells;
    auto fd_se = [&](int M, bool ul) {
        HomogeneousConfig hm = h;
        hm.base.antennas = M;
        const SePair s = homogeneous_rates(hm, csi);
        return ul ? s.ul : s.dl;
    };
    for (int m_tdd : m_tdd_list) {
        if (m_tdd < kMinAntennas) throw std::invalid_argument("antenna_reduction_curve: M_tdd >= 3 required");
        SystemConfig cfg = h.system();
        cfg.antennas = m_tdd;
        const RateReport tdd = tdd_rates_mc(profile, cfg, csi, opts);
        for (const bool ul : {true, false}) {
            const double tdd_se = (ul ? tdd.ul_sum_se() : tdd.dl_sum_se()) / L;
            if (fd_se(kMinAntennas, ul) > fd_se(kMaxAntennas, ul))
                throw std::runtime_error("antenna_reduction_curve: full-duplex SE is not monotone in M");
            for (double g : gain_grid) {
                TradeoffPoint pt;
                pt.link = ul ? "ul" : "dl";
                pt.m_tdd = m_tdd;
                pt.se_gain = g;
                pt.tdd_se = tdd_se;
                const int m_fd = min_antennas([&](int M) { return fd_se(M, ul); }, g * tdd_se);
                pt.reachable = m_fd <= kMaxAntennas;
                pt.m_fd = pt.reachable ? m_fd : 0;
                pt.antenna_reduction = pt.reachable ? static_cast<double>(m_tdd) / m_fd : 0.0;
                out.push_back(pt);
            }
        }
    }
    return out;
}

}  // namespace fdmimo
