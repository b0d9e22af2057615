// SPDX-License-Identifier: Apache-2.0
//
// Closed-form rate lower bounds, their homogeneous specializations, large-array
// limits, gain ratios and the gain/antenna-reduction tradeoff.

#pragma once

#include <string>
#include <vector>

#include "fdmimo/config.hpp"
#include "fdmimo/rates.hpp"

namespace fdmimo {

/// Per-user rates in bits/s/Hz without time-share or pilot prefactors,
/// index cell * users + user.
struct ClosedFormRates {
    std::vector<double> ul;
    std::vector<double> dl;
};

/// Named intermediate terms of the perfect-CSI bound.
namespace prop1 {
double i_up(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n);
double i_down(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f, int l, int k);
}  // namespace prop1

/// Named intermediate terms of the imperfect-CSI bound.
namespace prop2 {
double lambda(const LargeScaleProfile& p, const SystemConfig& cfg, Link link, int j, int k);
double estimation_term(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n);
double i_up(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n);
double n_tilde(const LargeScaleProfile& p, const SystemConfig& cfg, int j, int n);

struct DownTerms {
    double variance = 0.0;        // own-beam gain uncertainty
    double contaminated = 0.0;    // same pilot in other cells, coherent part
    double contaminated_noise = 0.0;
    double other_beams = 0.0;     // non-matching pilots, all cells
    double ue_ue = 0.0;
    double total() const { return variance + contaminated + contaminated_noise + other_beams + ue_ue; }
};
DownTerms i_down(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f, int l, int k);
}  // namespace prop2

/// Throws std::invalid_argument when M < 3 or the configuration is invalid.
ClosedFormRates prop1_rates(const LargeScaleProfile& p, const SystemConfig& cfg);
ClosedFormRates prop1_rates(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f);
ClosedFormRates prop2_rates(const LargeScaleProfile& p, const SystemConfig& cfg);
ClosedFormRates prop2_rates(const LargeScaleProfile& p, const SystemConfig& cfg, const PerCellFactors& f);

/// The same bounds with the full-duplex-only terms (BS-BS, UE-UE, transmitter
/// noise) removed: the TDD counterparts, still without the 1/2 time share.
ClosedFormRates tdd_closed_form(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi);

struct HomogeneousTerms {
    double L_bar = 0.0;
    double V = 0.0;
    double J = 0.0;
    double U1 = 0.0;
    double U2 = 0.0;
};

HomogeneousTerms homogeneous_terms(const HomogeneousConfig& h);

/// Per-cell spectral efficiency (bits/s/Hz/cell) of the all-full-duplex
/// homogeneous network, pilot overhead included for imperfect CSI.
struct SePair {
    double ul = 0.0;
    double dl = 0.0;
};
SePair homogeneous_rates(const HomogeneousConfig& h, Csi csi);

/// Large-array limits under the matching power-scaling law: 1/M for perfect
/// CSI, 1/sqrt(M) for imperfect. Noise comes from `cfg`. Throws
/// std::invalid_argument on a mismatched law.
ClosedFormRates asymptotic_rates(const LargeScaleProfile& p, const SystemConfig& cfg,
                                 const PowerScalingSchedule& schedule, Csi csi);

struct GainReport {
    double gain_ul = 0.0;
    double gain_dl = 0.0;
    double ul_stderr = 0.0;  // propagated from the Monte Carlo standard errors
    double dl_stderr = 0.0;
    int antennas = 0;
    PowerScaling scaling = PowerScaling::none;
    Csi csi = Csi::perfect;
    double reference_ul = 0.0;  // large-array limit of the gain
    double reference_dl = 0.0;
};

/// Limit gains: 2 with perfect CSI, 2(T - tau)/(T - tau_u) and
/// 2(T - tau)/(T - tau_d) with imperfect CSI.
double asymptotic_gain_ul(const SystemConfig& cfg, Csi csi);
double asymptotic_gain_dl(const SystemConfig& cfg, Csi csi);

/// Ratio of summed per-cell spectral efficiencies. Throws std::invalid_argument
/// on mismatched populations and std::domain_error on a zero TDD rate.
GainReport fd_gain(const RateReport& fd, const RateReport& tdd, const SystemConfig& cfg,
                   PowerScaling scaling = PowerScaling::none);

/// Gain of the closed-form bounds against their TDD counterparts.
GainReport closed_form_gain(const LargeScaleProfile& p, const SystemConfig& cfg, Csi csi,
                            PowerScaling scaling = PowerScaling::none);

/// Report of closed-form rates with the usual prefactors.
RateReport closed_form_report(const SystemConfig& cfg, Duplex system, Csi csi, const ClosedFormRates& r);

struct WishartMoments {
    double tr_inv_mean = 0.0;     // E[tr W^-1] = m / (n - m)
    double tr_inv_sq_mean = 0.0;  // E[tr W^-2] = m n / ((n - m)^3 - (n - m)), infinite when n = m + 1
};

/// Complex central Wishart W ~ W_m(n, I). Throws std::invalid_argument unless n > m >= 1.
WishartMoments wishart_inverse_moments(int m, int n);

struct TradeoffPoint {
    std::string link;  // "ul" or "dl"
    int m_tdd = 0;
    int m_fd = 0;
    double se_gain = 0.0;
    double antenna_reduction = 0.0;  // m_tdd / m_fd
    bool reachable = true;
    double tdd_se = 0.0;
};

inline constexpr int kMinAntennas = 3;
inline constexpr int kMaxAntennas = 10'000'000;

/// Smallest integer M in [lo, hi] with se(M) >= target, assuming se is
/// nondecreasing. Returns hi + 1 when even se(hi) falls short.
template <class F>
int min_antennas(F&& se, double target, int lo = kMinAntennas, int hi = kMaxAntennas) {
    const double goal = target * (1.0 - 1e-12);
    if (se(hi) < goal) return hi + 1;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (se(mid) >= goal)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

/// For every M_tdd and target gain g, the smallest full-duplex array whose
/// closed-form spectral efficiency reaches g times the simulated TDD one.
std::vector<TradeoffPoint> antenna_reduction_curve(const HomogeneousConfig& h, const std::vector<int>& m_tdd_list,
                                                   const std::vector<double>& gain_grid, Csi csi,
                                                   const McOptions& opts);

}  // namespace fdmimo
