// Periodic Green's function of -Laplace on the unit torus,
//
//     -Laplace G = delta - 1,   int_T G = 0,
//
// evaluated by Ewald summation. With screening parameter a the function splits as
//
//     G(x) = sum_{k != 0} exp(-pi^2 |k|^2 / a^2) cos(2 pi k.x) / (4 pi^2 |k|^2)   (long range)
//          + sum_L s(|x + L|)                                                   (short range)
//          - 1 / (4 a^2)                                                        (background)
//
// where s(r) = erfc(a r) / (4 pi r) in 3-D and s(r) = E1(a^2 r^2) / (4 pi) in 2-D.
// The free-space kernels are 1/(4 pi |x|) (3-D) and -(1/2pi) log|x| (2-D); the
// regular part g(x) = G(x) - kernel(x) is smooth near the origin and g(0) is
// obtained from the analytic small-r limit of s - kernel.
#pragma once

#include <vector>

#include "okas/grid.hpp"

namespace okas {

// Weighted point set sum_i m_i delta_{x_i}.
struct AtomicMeasure {
    int dim = 3;
    std::vector<Vec3> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
    double total_mass() const;
    // Smallest pairwise torus distance (infinity for fewer than two points).
    double min_separation() const;
};

class EwaldEvaluator {
public:
    // Defaults: splitting sqrt(pi); 3 real / 9 reciprocal shells in 3-D,
    // 6 / 12 in 2-D.
    explicit EwaldEvaluator(int dim);
    EwaldEvaluator(int dim, double splitting, int real_shells, int recip_shells);

    int dim() const { return dim_; }
    double splitting() const { return alpha_; }
    int real_shells() const { return real_shells_; }
    int recip_shells() const { return recip_shells_; }

    // G(x). Throws std::domain_error at the origin (mod the lattice); use
    // regular_at_zero() there.
    double value(const Vec3& x) const;
    Vec3 gradient(const Vec3& x) const;

    // g(x) = G(x) - kernel(x) with x taken in [-1/2, 1/2)^d. Finite at 0.
    double regular(const Vec3& x) const;
    double regular_at_zero() const;

    double free_kernel(double r) const;

    // Ewald pieces, exposed for independent cross-checks.
    double long_range(const Vec3& x) const;
    double screened_kernel(double r) const;
    double background() const;

private:
    struct Mode {
        Vec3 k2pi;     // 2 pi k
        double coeff;  // 2 exp(-pi^2 k^2 / a^2) / (4 pi^2 k^2), half-space
    };

    double short_range_images(const Vec3& x, bool skip_origin) const;
    double screened_derivative(double r) const;
    // s(r) - kernel(r), stable for r -> 0.
    double screened_minus_kernel(double r) const;

    int dim_;
    double alpha_;
    int real_shells_;
    int recip_shells_;
    double real_cutoff_;
    std::vector<Vec3> images_;
    std::vector<Mode> modes_;
};

// Shared default evaluator for dimension 2 or 3.
const EwaldEvaluator& default_evaluator(int dim);

double green_value(const Vec3& x, int dim);
double regular_part(const Vec3& x, int dim);
double regular_part_at_zero(int dim);

// sum_{i != j} m_i m_j G(x_i - x_j), plus sum_i m_i^2 g(0) when include_self.
// Throws std::invalid_argument for coincident points.
double pair_energy(const AtomicMeasure& mu, bool include_self);
double pair_energy(const AtomicMeasure& mu, bool include_self, const EwaldEvaluator& green);

// ||f||^2_{H^-1} / ( ||f||^2_{L1} (1 + log(||f||_inf / ||f||_{L1})) ) for a
// zero-mean, nonzero 2-D field. The supremum over a population estimates the
// constant of the logarithmic interpolation inequality.
double interp_ratio(const ScalarField& field);

// int exp(|phi|) for a 2-D phi normalised so that int |Laplace_h phi| = 1
// (discrete Laplacian). phi == 0 returns 1. Throws std::invalid_argument when
// the normalisation is off by more than 1e-8.
double brezis_merle_check(const ScalarField& phi);

struct ExponentialBound {
    double log_constant = 0.0;       // C with |G(y)| <= C - log|y| / (2 pi) on the square
    double kernel_integral = 0.0;    // int_{(-1/2,1/2)^2} |y|^{-1/(2 pi)} dy
    double bound = 0.0;              // C0 = exp(C) * kernel_integral
};

// Constructive constant for int exp(|phi|) <= C0. C is the sampled supremum of
// |g^(2)| over the closed square (samples_per_axis^2 points, origin included).
ExponentialBound exponential_integrability_bound(int samples_per_axis = 201);

}  // namespace okas
