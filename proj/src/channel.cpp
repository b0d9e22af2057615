// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdmimo {

const char* to_string(LinkClass c) {
    switch (c) {
        case LinkClass::bs_ue: return "bs_ue";
        case LinkClass::bs_bs: return "bs_bs";
        case LinkClass::ue_ue: return "ue_ue";
        case LinkClass::self: return "self";
    }
    return "?";
}

double compose_large_scale(const PathlossModel& model, double distance_m, double shadow_db,
                           double antenna_gain_dbi) {
    double loss_db = model.extra_loss_db;
    if (model.link != LinkClass::self) {
        if (!(distance_m > 0.0))
            throw std::invalid_argument("compose_large_scale: distance must be > 0");
        loss_db += model.offset_db + model.slope_db_per_decade * std::log10(distance_m);
    }
    return std::pow(10.0, (-loss_db + antenna_gain_dbi + shadow_db) / 10.0);
}

ChannelRealization::ChannelRealization(int cells, int antennas, int ul_users, int dl_users,
                                       bool with_bs_bs)
    : cells_(cells), antennas_(antennas), ul_users_(ul_users), dl_users_(dl_users) {
    const auto L = static_cast<std::size_t>(cells);
    const auto M = static_cast<std::size_t>(antennas);
    ul_.resize(L * L * ul_users * M);
    dl_.resize(L * L * dl_users * M);
    ue_.resize(L * dl_users * L * ul_users);
    if (with_bs_bs) bs_.resize(L * L * M * M);
}

std::span<const cplx> ChannelRealization::bs(int j, int l) const {
    if (bs_.empty()) throw std::logic_error("ChannelRealization: BS-BS channels were not drawn");
    const auto M = static_cast<std::size_t>(antennas_);
    return {bs_.data() + (static_cast<std::size_t>(j) * cells_ + l) * M * M, M * M};
}

std::span<cplx> ChannelRealization::bs_mutable(int j, int l) {
    const auto M = static_cast<std::size_t>(antennas_);
    return {bs_.data() + (static_cast<std::size_t>(j) * cells_ + l) * M * M, M * M};
}

void realize_channels_into(ChannelRealization& out, const LargeScaleProfile& p, Rng& rng) {
    const int L = p.cells();
    const int Ku = p.ul_users();
    const int Kd = p.dl_users();
    const int Kf = p.fd_users();
    for (int j = 0; j < L; ++j) {
        for (int l = 0; l < L; ++l) {
            for (int n = 0; n < Ku; ++n) fill_complex_normal(rng, p.ul(j, l, n), out.ul(j, l, n));
            for (int k = 0; k < Kd; ++k) {
                if (k < Kf) {
                    auto src = out.ul(j, l, k);
                    std::copy(src.begin(), src.end(), out.dl(j, l, k).begin());
                } else {
                    fill_complex_normal(rng, p.dl(j, l, k), out.dl(j, l, k));
                }
            }
        }
    }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < Kd; ++k)
            for (int j = 0; j < L; ++j)
                for (int n = 0; n < Ku; ++n) out.ue(l, k, j, n) = complex_normal(rng, p.ue(l, k, j, n));
    if (out.has_bs_bs()) {
        for (int j = 0; j < L; ++j)
            for (int l = 0; l < L; ++l) fill_complex_normal(rng, p.bs(j, l), out.bs_mutable(j, l));
    }
}

ChannelRealization realize_channels(const LargeScaleProfile& profile, int antennas, Rng& rng,
                                    bool with_bs_bs) {
    ChannelRealization r(profile.cells(), antennas, profile.ul_users(), profile.dl_users(), with_bs_bs);
    realize_channels_into(r, profile, rng);
    return r;
}

ChannelRealization realize_channels(const LargeScaleProfile& profile, int antennas,
                                    std::uint64_t seed, bool with_bs_bs) {
    Rng rng = make_stream(seed, 0, Stream::channels);
    return realize_channels(profile, antennas, rng, with_bs_bs);
}

}  // namespace fdmimo
