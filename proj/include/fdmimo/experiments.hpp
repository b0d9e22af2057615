// SPDX-License-Identifier: Apache-2.0
//
// End-to-end experiments. Each is a pure function of its inputs and seed and
// returns an ExperimentResult ready for emission.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdmimo/bounds.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/emit.hpp"
#include "fdmimo/rates.hpp"
#include "fdmimo/scenario.hpp"
#include "fdmimo/stats.hpp"
#include "fdmimo/topology.hpp"

namespace fdmimo {

/// Seed of drop `d` under a master seed.
std::uint64_t drop_seed(std::uint64_t seed, int drop);

/// Topology and large-scale profile of one drop. They depend only on the
/// scenario geometry and the drop seed, never on M or kappa.
struct Drop {
    Topology topology;
    LargeScaleProfile profile;
};

Drop make_drop(const ScenarioParams& params, std::uint64_t drop_seed);

struct DropRates {
    RateReport fd;
    RateReport tdd;
};

/// Imperfect-CSI full-duplex and TDD rates of one drop. The Monte Carlo seed
/// is the drop seed; `mc.seed` is ignored.
DropRates run_drop(const ScenarioParams& params, int antennas, double kappa_db, std::uint64_t drop_seed,
                   const McOptions& mc);
DropRates run_drop(const ScenarioParams& params, const Drop& drop, int antennas, double kappa_db,
                   std::uint64_t drop_seed, const McOptions& mc);

struct SweepPoint {
    int antennas = 100;
    double kappa_db = -60.0;
};

/// Network sum spectral efficiencies (bits/s/Hz) of every drop at one point.
struct GainSeries {
    SweepPoint point;
    std::vector<double> fd_ul, tdd_ul, fd_dl, tdd_dl;

    /// Ratio of drop-averaged sum spectral efficiencies.
    MeanStat ul_gain() const;
    MeanStat dl_gain() const;
};

/// Every point is evaluated on the same drops, so points can be compared pairwise.
std::vector<GainSeries> gain_sweep(const ScenarioParams& params, const std::vector<SweepPoint>& points, int drops,
                                   std::uint64_t seed, const McOptions& mc);

/// Per-drop rows (per-drop ratios) followed by one aggregate row per point.
ExperimentResult gain_table(const std::string& experiment, const std::vector<GainSeries>& series,
                            std::uint64_t seed, const std::string& digest);

inline constexpr double kGainVsMKappaDb = -60.0;
inline constexpr int kGainVsKappaAntennas = 100;

ExperimentResult experiment_gain_vs_m(const ScenarioParams& params, const std::vector<int>& m_list,
                                      double kappa_db, int drops, std::uint64_t seed, const McOptions& mc,
                                      const std::string& digest = "");
ExperimentResult experiment_gain_vs_kappa(const ScenarioParams& params, const std::vector<double>& kappa_db_list,
                                          int antennas, int drops, std::uint64_t seed, const McOptions& mc,
                                          const std::string& digest = "");

/// Homogeneous network of the bound-tightness study: L = 7, beta = 0.3, K = 5,
/// P_tr = P_u = 10 dB, P_d = 20 dB, kappa = -50 dB, T = 196, tau = K.
HomogeneousConfig tightness_config(int antennas = 100);

struct TightnessPoint {
    int antennas = 0;
    Csi csi = Csi::perfect;
    std::string link;      // "ul" or "dl"
    double mc_se = 0.0;    // per-cell spectral efficiency, Monte Carlo
    double mc_stderr = 0.0;
    double bound_se = 0.0; // per-cell spectral efficiency, closed form
    double relative_gap() const { return (mc_se - bound_se) / mc_se; }
};

/// Four points (perfect/imperfect CSI, uplink/downlink) at one array size.
std::vector<TightnessPoint> tightness_at(const HomogeneousConfig& h, int antennas, const McOptions& mc);

ExperimentResult experiment_tightness(const HomogeneousConfig& h, const std::vector<int>& m_list,
                                      const McOptions& mc, const std::string& digest = "");

/// Full-duplex closed form against simulated TDD on the homogeneous network,
/// with powers fixed or scaled by the law matching `csi`.
GainReport power_scaling_gain(const HomogeneousConfig& h, int antennas, const PowerScalingSchedule& schedule,
                              Csi csi, const McOptions& mc);

ExperimentResult experiment_power_scaling(const HomogeneousConfig& h, const std::vector<int>& m_list, Csi csi,
                                          const McOptions& mc, const std::string& digest = "");

ExperimentResult experiment_tradeoff(const HomogeneousConfig& h, const std::vector<int>& m_tdd_list,
                                     const std::vector<double>& gain_grid, Csi csi, const McOptions& mc,
                                     const std::string& digest = "");

/// Full-duplex and TDD rates of one explicit network.
ExperimentResult experiment_rates(const LargeScaleProfile& profile, const SystemConfig& cfg, Csi csi,
                                  const McOptions& mc, const std::string& digest = "");

}  // namespace fdmimo
