// SPDX-License-Identifier: Apache-2.0
//
// Instantaneous SINRs and Monte Carlo ergodic rates of full-duplex and TDD
// multi-cell MIMO with MRC uplink reception and conjugate downlink precoding.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fdmimo/channel.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/estimation.hpp"
#include "fdmimo/stats.hpp"

namespace fdmimo {

enum class Duplex { fd, tdd };
enum class Csi { perfect, imperfect };
enum class UserClass { fd, hd };

const char* to_string(Duplex d);
const char* to_string(Csi c);
const char* to_string(UserClass c);
Csi csi_from_string(const std::string& name);

/// Per-cell precoder normalizations.
struct PerCellFactors {
    std::vector<double> gamma;        // M * sum_k beta_d,llk / K_d
    std::vector<double> gamma_tilde;  // (M / K_d) * sum_i P_tr beta_d,lli^2 / lambda_d,li
    std::vector<double> eta;          // 1 / (M * sum_i beta_d,lli)
    std::vector<double> eta_tilde;    // (sum_i beta_d,lli^2 / lambda_d,li)^-1

    /// All zero for a cell without downlink users.
    static PerCellFactors compute(const LargeScaleProfile& profile, const SystemConfig& cfg);

    /// Per-stream power scale P_d / (K_d gamma) of cell l.
    double dl_scale(const SystemConfig& cfg, int l, Csi csi) const;
};

/// Nonnegative SINR components. The denominator is a plain sum, so raising any
/// interference term can only lower the SINR.
struct SinrTerms {
    double signal = 0.0;
    double estimation = 0.0;    // estimation-error or beamforming-gain uncertainty
    double interference = 0.0;  // other streams of the multi-user MIMO links
    double bs_bs = 0.0;         // full-duplex only: downlink of other BSs into uplink
    double ue_ue = 0.0;         // full-duplex only: uplink UEs into downlink UEs
    double residual = 0.0;      // full-duplex only: transmitter noise after SI cancellation
    double noise = 0.0;

    double denominator(Duplex d) const;
    double sinr(Duplex d) const { return signal / denominator(d); }
};

/// Uplink user n of cell j, perfect CSI. The BS-BS term uses the full V matrices
/// of `real`, which must have been drawn when L > 1 and P_d > 0.
SinrTerms ul_terms_perfect(const ChannelRealization& real, const LargeScaleProfile& profile,
                           const SystemConfig& cfg, const PerCellFactors& f, int j, int n);

/// Downlink user k of cell l, perfect CSI. Throws std::invalid_argument when the
/// class disagrees with the user slot (full-duplex users occupy k < K_f).
SinrTerms dl_terms_perfect(const ChannelRealization& real, const LargeScaleProfile& profile,
                           const SystemConfig& cfg, const PerCellFactors& f, int l, int k, UserClass cls);

/// Uplink with MMSE estimates treated as the true channel.
SinrTerms ul_terms_imperfect(const ChannelRealization& real, const ChannelEstimateSet& est,
                             const LargeScaleProfile& profile, const SystemConfig& cfg,
                             const PerCellFactors& f, int j, int n);

/// Downlink effective-noise form: the mean beamforming gain is the signal and
/// its fluctuation joins the noise.
SinrTerms dl_terms_imperfect(const ChannelRealization& real, const ChannelEstimateSet& est,
                             const LargeScaleProfile& profile, const SystemConfig& cfg,
                             const PerCellFactors& f, int l, int k, UserClass cls);

double ul_sinr_fd_perfect(const ChannelRealization& real, const LargeScaleProfile& profile,
                          const SystemConfig& cfg, const PerCellFactors& f, int j, int n);
double dl_sinr_fd_perfect(const ChannelRealization& real, const LargeScaleProfile& profile,
                          const SystemConfig& cfg, const PerCellFactors& f, int l, int k, UserClass cls);

struct McOptions {
    int trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency
};

/// What one Monte Carlo pass evaluates. Every enabled quantity shares the
/// same channel draws.
struct McRequest {
    bool perfect = true;
    bool imperfect = false;
    bool fd = true;
    bool tdd = true;
};

/// E[log2(1 + SINR)] per user, index cell * users + user, no prefactors.
struct UserSeries {
    std::vector<MeanStat> ul;
    std::vector<MeanStat> dl;
};

struct McRates {
    int trials = 0;
    UserSeries fd_perfect;
    UserSeries tdd_perfect;
    UserSeries fd_imperfect;  // downlink in the effective-noise form
    UserSeries tdd_imperfect;
};

/// Trial t draws from streams (seed, t, purpose), so results do not depend on
/// the thread count.
McRates simulate_rates(const LargeScaleProfile& profile, const SystemConfig& cfg, const McRequest& req,
                       const McOptions& opts);

/// Downlink rates from the closed-form moments of the effective channel gain.
/// With Csi::perfect the estimate equals the channel.
std::vector<double> dl_rates_from_moments(const LargeScaleProfile& profile, const SystemConfig& cfg, Csi csi);

struct RateReport {
    Duplex system = Duplex::fd;
    Csi csi = Csi::perfect;
    int cells = 0;
    int ul_users = 0;
    int dl_users = 0;
    int fd_users = 0;
    int trials = 0;
    double time_share = 1.0;   // 1/2 for TDD, already inside the rates
    double ul_overhead = 1.0;  // pilot overhead factor
    double dl_overhead = 1.0;
    std::vector<double> ul_rate, ul_stderr;  // index cell * ul_users + user
    std::vector<double> dl_rate, dl_stderr;
    std::vector<double> ul_se_per_cell, dl_se_per_cell;

    double ul_sum_se() const;
    double dl_sum_se() const;
    UserClass dl_class(int k) const { return k < fd_users ? UserClass::fd : UserClass::hd; }
    UserClass ul_class(int n) const { return n < fd_users ? UserClass::fd : UserClass::hd; }
};

/// Fills prefactors and per-cell spectral efficiencies from per-user ergodic
/// values without prefactors.
RateReport make_report(const SystemConfig& cfg, Duplex system, Csi csi, int trials,
                       const std::vector<MeanStat>& ul, const std::vector<MeanStat>& dl);

/// Full-duplex perfect-CSI rates by Monte Carlo.
RateReport fd_rates_perfect_mc(const LargeScaleProfile& profile, const SystemConfig& cfg, const McOptions& opts);

/// Full-duplex imperfect-CSI uplink by Monte Carlo, one entry per user.
std::vector<MeanStat> ul_rate_fd_imperfect_mc(const LargeScaleProfile& profile, const SystemConfig& cfg,
                                              const McOptions& opts);

/// Full-duplex imperfect-CSI downlink from closed-form moments.
std::vector<double> dl_rate_fd_imperfect(const LargeScaleProfile& profile, const SystemConfig& cfg);

/// Full-duplex imperfect-CSI downlink averaging the effective-noise SINR.
std::vector<MeanStat> dl_rate_fd_imperfect_mc(const LargeScaleProfile& profile, const SystemConfig& cfg,
                                              const McOptions& opts);

/// Full-duplex imperfect-CSI report: Monte Carlo uplink, moment-based downlink.
RateReport fd_rates_imperfect(const LargeScaleProfile& profile, const SystemConfig& cfg, const McOptions& opts);

RateReport tdd_rates_mc(const LargeScaleProfile& profile, const SystemConfig& cfg, Csi csi, const McOptions& opts);

/// Full-duplex and TDD reports from one shared set of draws.
std::pair<RateReport, RateReport> fd_tdd_rates(const LargeScaleProfile& profile, const SystemConfig& cfg,
                                               Csi csi, const McOptions& opts);

/// CSV columns system,csi,cell,user,class,rate,stderr; one row per user and link.
void write_rate_csv_header(std::ostream& os);
void write_rate_csv_rows(std::ostream& os, const RateReport& r);

}  // namespace fdmimo
