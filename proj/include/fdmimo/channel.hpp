// SPDX-License-Identifier: Apache-2.0
//
// Large-scale gain composition and small-scale Rayleigh channel draws.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdmimo/config.hpp"
#include "fdmimo/kernels.hpp"
#include "fdmimo/random.hpp"

namespace fdmimo {

enum class LinkClass { bs_ue, bs_bs, ue_ue, self };

const char* to_string(LinkClass c);

/// Single-slope log-distance pathloss: A + B*log10(d / 1 m) dB.
struct PathlossModel {
    double offset_db = 0.0;           // A
    double slope_db_per_decade = 0.0; // B
    double shadowing_std_db = 0.0;
    double extra_loss_db = 0.0;       // fixed isolation, used by the self class
    LinkClass link = LinkClass::bs_ue;
};

/// Linear power gain of one link. Self links ignore distance and apply only
/// the fixed extra loss. Throws std::invalid_argument for a nonpositive
/// distance on a propagation link.
double compose_large_scale(const PathlossModel& model, double distance_m, double shadow_db,
                           double antenna_gain_dbi);

/// One coherence block of complex small-scale channels, large-scale gains
/// already applied. Matrices are column-major with contiguous columns.
class ChannelRealization {
public:
    ChannelRealization() = default;
    ChannelRealization(int cells, int antennas, int ul_users, int dl_users, bool with_bs_bs);

    int cells() const { return cells_; }
    int antennas() const { return antennas_; }
    int ul_users() const { return ul_users_; }
    int dl_users() const { return dl_users_; }
    bool has_bs_bs() const { return !bs_.empty(); }

    /// Column n of G_u[j][l]: uplink user n of cell l seen at BS j.
    std::span<const cplx> ul(int j, int l, int n) const { return {ul_.data() + ul_off(j, l, n), size_t(antennas_)}; }
    std::span<cplx> ul(int j, int l, int n) { return {ul_.data() + ul_off(j, l, n), size_t(antennas_)}; }
    /// Column k of G_d[j][l]: BS j to downlink user k of cell l.
    std::span<const cplx> dl(int j, int l, int k) const { return {dl_.data() + dl_off(j, l, k), size_t(antennas_)}; }
    std::span<cplx> dl(int j, int l, int k) { return {dl_.data() + dl_off(j, l, k), size_t(antennas_)}; }
    /// V[j][l], M x M column-major, only when drawn.
    std::span<const cplx> bs(int j, int l) const;
    /// F entry: uplink user n of cell j to downlink user k of cell l.
    cplx ue(int l, int k, int j, int n) const { return ue_[ue_off(l, k, j, n)]; }
    cplx& ue(int l, int k, int j, int n) { return ue_[ue_off(l, k, j, n)]; }

    std::span<cplx> bs_mutable(int j, int l);

private:
    std::size_t ul_off(int j, int l, int n) const {
        return ((static_cast<std::size_t>(j) * cells_ + l) * ul_users_ + n) * antennas_;
    }
    std::size_t dl_off(int j, int l, int k) const {
        return ((static_cast<std::size_t>(j) * cells_ + l) * dl_users_ + k) * antennas_;
    }
    std::size_t ue_off(int l, int k, int j, int n) const {
        return ((static_cast<std::size_t>(l) * dl_users_ + k) * cells_ + j) * ul_users_ + n;
    }

    int cells_ = 0, antennas_ = 0, ul_users_ = 0, dl_users_ = 0;
    std::vector<cplx> ul_, dl_, bs_, ue_;
};

/// Redraws every entry of `out` from CN(0, beta). Full-duplex users' downlink
/// columns are copies of their uplink columns (reciprocity). BS-BS matrices are
/// drawn last, so skipping them leaves all other draws unchanged.
void realize_channels_into(ChannelRealization& out, const LargeScaleProfile& profile, Rng& rng);

ChannelRealization realize_channels(const LargeScaleProfile& profile, int antennas, Rng& rng,
                                    bool with_bs_bs = true);
ChannelRealization realize_channels(const LargeScaleProfile& profile, int antennas,
                                    std::uint64_t seed, bool with_bs_bs = true);

}  // namespace fdmimo
