// SPDX-License-Identifier: Apache-2.0
//
// Small-cell evaluation scenario: twelve full-duplex pico BSs dropped in a
// hexagon, half-duplex UEs dropped around each BS.

#pragma once

#include <vector>

#include "fdmimo/channel.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/units.hpp"

namespace fdmimo {

struct ScenarioParams {
    double hex_radius_m = 300.0;
    int n_bs = 12;
    double ue_drop_radius_m = 40.0;
    int ul_ues_per_bs = 5;
    int dl_ues_per_bs = 5;

    double bs_power_dbm = 24.0;
    double ue_power_dbm = 23.0;
    double bs_antenna_gain_dbi = 5.0;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_bs_db = 9.0;
    double noise_figure_ue_db = 5.0;
    double bandwidth_hz = 2.0e7;
    int coherence = 196;

    std::vector<double> kappa_db_list{-50.0, -60.0, -70.0, -80.0};
    std::vector<int> m_list{20, 50, 100, 300, 500};

    double min_bs_bs_m = 40.0;
    double min_bs_ue_m = 10.0;
    double min_ue_ue_m = 3.0;

    // Single-slope models over distances in meters. BS-UE is 140.7 + 36.7 log10(R_km);
    // BS-BS and UE-UE are the non-line-of-sight laws 169.36 + 40 log10(R_km) and
    // 175.78 + 40 log10(R_km). All are calibration inputs.
    PathlossModel bs_ue{30.6, 36.7, 10.0, 0.0, LinkClass::bs_ue};
    PathlossModel bs_bs{49.36, 40.0, 12.0, 0.0, LinkClass::bs_bs};
    PathlossModel ue_ue{55.78, 40.0, 6.0, 0.0, LinkClass::ue_ue};
    double si_loss_db = 40.0;

    int retry_budget = 100000;

    double noise_bs_w() const;
    double noise_ue_w() const;

    /// System parameters for one drop at a given array size and dynamic range.
    SystemConfig system(int antennas, double kappa_db) const;

    PathlossModel self_model() const { return {0.0, 0.0, 0.0, si_loss_db, LinkClass::self}; }
};

}  // namespace fdmimo
