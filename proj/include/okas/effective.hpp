// First-order effective energies.
//
// 3-D: f(m) = sigma (36 pi)^{1/3} m^{2/3} + (2/5)(3/4pi)^{2/3} m^{5/3} is the
// energy of one ball of volume m; e0 is taken as inf_n n f(m/n), which is a
// conjecture (balls minimize up to m*, beyond that the mass splits). Every
// 3-D value derived from it is conjecture-dependent.
//
// 2-D: e0_2d(m) = m^2/4pi + 2 sigma sqrt(pi m) is explicit, and its lower
// semicontinuous envelope is the best equal split.
#pragma once

#include <cstdint>
#include <vector>

#include "okas/green.hpp"

namespace okas {

double f_ball(double m, double sigma);

struct E0Value {
    double value = 0.0;
    int n_opt = 1;
    // Ball minimizer exists for the whole mass (m <= m*).
    bool minimizer_exists = true;
    // Each of the n_opt pieces is below m*.
    bool pieces_below_m_star = true;
    bool conjectured = true;
};

// min over 1 <= n <= n_max of n f(m / n); n_max doubles while the argmin sits
// on the boundary.
E0Value e0_conjectured(double m, double sigma, int n_max = 64);

// Positive root of f(m) - 2 f(m/2), by bisection to 1e-10.
double m_star(double sigma);

// Sum of e0_conjectured over the weights. Position independent.
double E0_energy(const AtomicMeasure& mu, double sigma);

double e0_2d(double m, double sigma);

struct EnvelopeValue {
    double value = 0.0;
    int n_opt = 1;
};

// min over 1 <= n <= n_max of n e0_2d(m / n), doubling n_max as above.
EnvelopeValue e0_2d_envelope(double m, double sigma, int n_max = 64);

// Root of 2 e0_2d(m/2) - e0_2d(m): below it one disk beats any split.
double split_threshold_2d(double sigma);

// Masses below this bound can only occur as a single droplet in an optimal
// 2-D partition.
double singleton_mass_bound_2d();

struct WeightPartition {
    std::vector<double> masses;
    double total = 0.0;
    double energy = 0.0;
};

struct PartitionSearch {
    WeightPartition best;           // best equal split
    double best_perturbed = 0.0;    // lowest energy among the unequal trials
    int trials = 0;
    bool equal_split_unbeaten = true;
    bool singleton_rule_holds = true;
};

// Exhaustive equal splits n <= n_max plus `perturbations` random unequal
// partitions (piece counts near n_opt, random relative perturbations).
PartitionSearch partition_bruteforce(double M, double sigma, int n_max, int perturbations, std::uint64_t seed = 1);

// 3-D: every m_i <= m* and sum e0(m_i) = e0(sum m_i) (conjecture-dependent).
// 2-D: all masses equal, the equal split is optimal for the total, and the
// piece mass is not itself worth splitting.
bool weights_admissible(const std::vector<double>& masses, int dim, double sigma);

}  // namespace okas
