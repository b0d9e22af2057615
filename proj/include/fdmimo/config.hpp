// SPDX-License-Identifier: Apache-2.0
//
// System parameters, large-scale fading profiles and their validation.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fdmimo {

/// Scalar parameters of a multi-cell full-duplex network.
///
/// Powers are linear watts (or normalized linear units when the noise is
/// normalized to one). Conversions from dB happen only in config_io.
struct SystemConfig {
    int cells = 1;
    int antennas = 1;
    int fd_users = 0;     // full-duplex UEs per cell, occupy user slots [0, fd_users)
    int hd_ul_users = 0;  // half-duplex uplink UEs per cell
    int hd_dl_users = 0;  // half-duplex downlink UEs per cell

    double ul_power = 1.0;     // per uplink user
    double dl_power = 1.0;     // per BS, summed over its downlink streams
    double train_power = 1.0;  // per user pilot power
    double kappa = 0.0;        // transmitter-noise to signal power ratio

    double noise_bs = 1.0;              // BS receiver noise (uplink data and training)
    std::optional<double> noise_ue;     // UE receiver noise, defaults to noise_bs

    int coherence = 196;                // symbols per coherence block
    std::optional<int> pilot_fd;        // defaults to total_users()
    std::optional<int> pilot_tdd_ul;    // defaults to ul_users()
    std::optional<int> pilot_tdd_dl;    // defaults to dl_users()

    int ul_users() const { return fd_users + hd_ul_users; }
    int dl_users() const { return fd_users + hd_dl_users; }
    int total_users() const { return ul_users() + dl_users() - fd_users; }

    double ue_noise() const { return noise_ue.value_or(noise_bs); }

    int fd_pilot_length() const { return pilot_fd.value_or(total_users()); }
    int tdd_ul_pilot_length() const { return pilot_tdd_ul.value_or(ul_users()); }
    int tdd_dl_pilot_length() const { return pilot_tdd_dl.value_or(dl_users()); }

    // A BS with no downlink users transmits nothing, and likewise for uplink.
    double effective_dl_power() const { return dl_users() > 0 ? dl_power : 0.0; }
    double effective_ul_power() const { return ul_users() > 0 ? ul_power : 0.0; }
};

struct Violation {
    std::string field;
    std::string rule;
};

struct ValidationResult {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

struct ValidationScope {
    bool closed_form = false;  // closed-form bounds need M >= 3
};

ValidationResult validate(const SystemConfig& config, ValidationScope scope = {});

/// Throws std::invalid_argument listing every violation.
void require_valid(const SystemConfig& config, ValidationScope scope = {});

/// Large-scale fading gains of an L-cell network.
///
///   ul(j, l, n)    uplink user n of cell l  -> BS j
///   dl(j, l, k)    BS j -> downlink user k of cell l
///   bs(j, l)       BS l -> BS j, bs(j, j) is the self-interference channel
///   ue(l, k, j, n) uplink user n of cell j -> downlink user k of cell l
class LargeScaleProfile {
public:
    LargeScaleProfile() = default;
    LargeScaleProfile(int cells, int ul_users, int dl_users, int fd_users);

    int cells() const { return cells_; }
    int ul_users() const { return ul_users_; }
    int dl_users() const { return dl_users_; }
    int fd_users() const { return fd_users_; }

    double& ul(int j, int l, int n) { return ul_[idx3(j, l, n, ul_users_)]; }
    double ul(int j, int l, int n) const { return ul_[idx3(j, l, n, ul_users_)]; }
    double& dl(int j, int l, int k) { return dl_[idx3(j, l, k, dl_users_)]; }
    double dl(int j, int l, int k) const { return dl_[idx3(j, l, k, dl_users_)]; }
    double& bs(int j, int l) { return bs_[static_cast<std::size_t>(j) * cells_ + l]; }
    double bs(int j, int l) const { return bs_[static_cast<std::size_t>(j) * cells_ + l]; }
    double& ue(int l, int k, int j, int n) { return ue_[idx4(l, k, j, n)]; }
    double ue(int l, int k, int j, int n) const { return ue_[idx4(l, k, j, n)]; }

    /// Sets both directions of a full-duplex user's serving-link gains.
    void set_fd_link(int j, int l, int i, double gain);

    /// Entries are finite and nonnegative, serving-cell gains are positive and
    /// full-duplex users have reciprocal uplink/downlink gains.
    ValidationResult check() const;

    /// Whether the dimensions agree with a SystemConfig.
    bool matches(const SystemConfig& config) const;

private:
    std::size_t idx3(int j, int l, int n, int users) const {
        return (static_cast<std::size_t>(j) * cells_ + l) * users + n;
    }
    std::size_t idx4(int l, int k, int j, int n) const {
        return ((static_cast<std::size_t>(l) * dl_users_ + k) * cells_ + j) * ul_users_ + n;
    }

    int cells_ = 0;
    int ul_users_ = 0;
    int dl_users_ = 0;
    int fd_users_ = 0;
    std::vector<double> ul_;
    std::vector<double> dl_;
    std::vector<double> bs_;
    std::vector<double> ue_;
};

/// Symmetric network: unit gains inside a cell, `beta` across cells, noise 1,
/// every user full-duplex.
struct HomogeneousConfig {
    double beta = 0.3;
    int users = 5;
    SystemConfig base;  // cells, antennas, powers, kappa, coherence, pilots

    SystemConfig system() const;
};

LargeScaleProfile expand_homogeneous(const HomogeneousConfig& h);

enum class PowerScaling { none, inverse_m, inverse_sqrt_m };

/// Per-node powers shrinking with the array size as E/M or E/sqrt(M).
struct PowerScalingSchedule {
    double ul_energy = 1.0;
    double dl_energy = 1.0;
    double train_energy = 1.0;
    PowerScaling law = PowerScaling::none;

    SystemConfig apply(SystemConfig config, int antennas) const;
};

const char* to_string(PowerScaling law);
PowerScaling power_scaling_from_string(const std::string& name);

}  // namespace fdmimo
