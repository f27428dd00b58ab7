// Sharp-interface energies of droplet configurations (v = eta^{-d} on the
// droplets, 0 elsewhere):
//   3-D: eta sigma int|grad v| + eta ||v - mean v||^2_{H^-1}
//   2-D: sigma eta int|grad v| + |log eta|^{-1} ||v - mean v||^2_{H^-1}
// The perimeter part is analytic. Ball-based values are upper bounds for the
// true minimal energies.
#pragma once

#include "okas/droplets.hpp"
#include "okas/grid.hpp"
#include "okas/scaling.hpp"

namespace okas {

// v = eta^{-d} times the cell coverage of the droplets; boundary cells are
// averaged over subsamples^d points.
ScalarField rasterize(const DropletConfiguration& config, const TorusGrid& grid, int subsamples = 3);

// Throws std::invalid_argument when a radius is below 4 grid spacings or the
// parameters disagree with the configuration.
EnergyBreakdown sharp_energy_grid(const DropletConfiguration& config, const TorusGrid& grid, const ScalingParams& p);

// 3-D: (2/5)(3/4pi)^{2/3} m^{5/3}, the Coulomb self-energy of a unit-density
// ball of volume m. 2-D: f0(m) = (m^2 / 8pi)(3 - 2 log(m / pi)).
double ball_self_energy_free(double m, int dim);

struct AsymptoticEnergy {
    double leading = 0.0;
    double correction = 0.0;
    double total() const { return leading + correction; }
};

// 3-D: leading = sum f(m_i); correction = eta [g(0) sum m_i^2 + sum_{i != j} m_i m_j G].
// 2-D: leading = sum e0_2d(m_i); correction = |log eta|^{-1} [sum (f0(m_i) + m_i^2 g(0))
//      + (1/2) sum_{i != j} m_i m_j G].
// Throws std::invalid_argument unless max radius / min center separation < 1/4
// (a droplet's own image counts at separation 1).
AsymptoticEnergy sharp_energy_asymptotic(const DropletConfiguration& config, const ScalingParams& p);

}  // namespace okas
