// Second-order effective energies of point configurations and their
// minimization over positions.
//
//   3-D: F0 = g(0) sum m_i^2 + sum_{i != j} m_i m_j G(x_i - x_j)
//   2-D: F0 = n (f0(m) + m^2 g(0)) + (m^2 / 2) sum_{i != j} G(x_i - x_j), equal masses m
// Both are +infinity unless the weights are admissible (see effective.hpp) and
// the points are distinct.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "okas/green.hpp"

namespace okas {

inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

// Gated energy: the infinite sentinel for inadmissible weights or coincident points.
double F0_energy(const AtomicMeasure& mu, double sigma);

// The same formula without the admissibility gate (2-D uses the first weight
// as the common mass and requires equal weights). Throws for coincident points.
double F0_structure(const AtomicMeasure& mu);

// sum_{i != j} G(x_i - x_j) and its gradient with respect to every x_i.
double pair_sum(const std::vector<Vec3>& points, int dim);
std::vector<Vec3> pair_sum_gradient(const std::vector<Vec3>& points, int dim);

struct InteractionResult {
    double energy = 0.0;  // F0_structure at the optimum
    std::vector<Vec3> positions;
    double gradient_norm = 0.0;
    int restarts_used = 0;
    std::vector<double> best_so_far;  // best energy after each restart
};

struct OptimizeOptions {
    int max_iterations = 20000;
    double gradient_tol = 1e-8;
};

// Minimizes the pair sum over n torus points of mass m by gradient descent
// (Barzilai-Borwein steps with Armijo backtracking), keeping the best of
// `restarts` random starts. Starts are uniform with rejection below the
// separation 0.1 / n^{1/d}. Deterministic given seed.
InteractionResult optimize_positions(int n, double m, int dim, int restarts, std::uint64_t seed,
                                     const OptimizeOptions& opt = {});

struct LatticeReport {
    std::vector<double> nn_distances;  // per point, sorted ascending
    double mean = 0.0;
    double cv = 0.0;                   // std / mean of the NN distances
    std::vector<int> angle_histogram;  // 2-D: NN directions folded into [0, pi), 12 bins
};

LatticeReport lattice_report(const std::vector<Vec3>& positions, int dim);

}  // namespace okas
