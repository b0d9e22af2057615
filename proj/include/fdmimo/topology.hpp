// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdmimo/config.hpp"
#include "fdmimo/random.hpp"
#include "fdmimo/scenario.hpp"

namespace fdmimo {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Flat-top regular hexagon of circumradius `radius` centred at the origin.
bool inside_hexagon(Point p, double radius);

struct Topology {
    double hex_radius = 0.0;
    std::vector<Point> bs;
    std::vector<std::vector<Point>> ul_ues;  // per cell
    std::vector<std::vector<Point>> dl_ues;  // per cell

    /// Empty when every placement and minimum-distance rule holds.
    std::vector<std::string> violations(const ScenarioParams& params) const;
};

class InfeasibleTopology : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejection-samples BSs in the hexagon and UEs in a disc around their BS until
/// every minimum distance holds. Throws InfeasibleTopology once an entity
/// exhausts the retry budget.
Topology build_topology(const ScenarioParams& params, std::uint64_t seed);

/// Pathloss, independent log-normal shadowing and antenna gains for every link
/// of a drop. The antenna gain counts once per BS endpoint; each physical link
/// gets one shadowing draw.
LargeScaleProfile large_scale_from_topology(const Topology& topo, const ScenarioParams& params,
                                            Rng& rng);

/// CSV with columns entity,cell,x,y.
void write_topology_csv(std::ostream& os, const Topology& topo);

}  // namespace fdmimo
