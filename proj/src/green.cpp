#include "okas/green.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace okas {

namespace {

constexpr double pi = std::numbers::pi;

// Ein(t) = int_0^t (1 - e^{-u}) / u du = E1(t) + log t + gamma.
double ein(double t)
{
    if (t < 1.0) {
        double term = t;
        double sum = t;
        for (int k = 2; k < 40; ++k) {
            term *= -t / k;
            sum += term / k;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return boost::math::expint(1, t) + std::log(t) + std::numbers::egamma;
}

// Real-space terms beyond a r = 7 are below 1e-21 and are skipped.
constexpr double kScreenedRange = 7.0;
// Reciprocal terms with pi^2 k^2 / a^2 > 50 are below 2e-22 and are skipped.
constexpr double kGaussianExponentCap = 50.0;

}  // namespace

double AtomicMeasure::total_mass() const
{
    double s = 0.0;
    for (double m : weights) s += m;
    return s;
}

double AtomicMeasure::min_separation() const
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::min(best, torus_distance(points[i], points[j], dim));
        }
    }
    return best;
}

EwaldEvaluator::EwaldEvaluator(int dim)
    : EwaldEvaluator(dim, std::sqrt(pi), dim == 3 ? 3 : 6, dim == 3 ? 9 : 12)
{
}

EwaldEvaluator::EwaldEvaluator(int dim, double splitting, int real_shells, int recip_shells)
    : dim_(dim), alpha_(splitting), real_shells_(real_shells), recip_shells_(recip_shells)
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("EwaldEvaluator: dimension must be 2 or 3");
    if (!(splitting > 0.0) || real_shells < 1 || recip_shells < 1) {
        throw std::invalid_argument("EwaldEvaluator: splitting must be positive and cutoffs >= 1");
    }
    real_cutoff_ = kScreenedRange / alpha_;

    const int rs = real_shells_;
    const int zr = dim == 3 ? rs : 0;
    for (int i = -rs; i <= rs; ++i) {
        for (int j = -rs; j <= rs; ++j) {
            for (int l = -zr; l <= zr; ++l) {
                const Vec3 L{double(i), double(j), double(l)};
                // Images farther than the screening range from every point of
                // the fundamental cell contribute nothing at double precision.
                if (norm(L, dim) - 0.5 * std::sqrt(double(dim)) > real_cutoff_) continue;
                // Images are stored as +-L pairs (half space plus origin) so
                // that the sum is exactly even in x.
                const bool upper = i > 0 || (i == 0 && (j > 0 || (j == 0 && l >= 0)));
                if (upper) images_.push_back(L);
            }
        }
    }

    const int ks = recip_shells_;
    const int zk = dim == 3 ? ks : 0;
    for (int i = -ks; i <= ks; ++i) {
        for (int j = -ks; j <= ks; ++j) {
            for (int l = -zk; l <= zk; ++l) {
                // Half space: first nonzero component positive.
                const bool positive = i > 0 || (i == 0 && (j > 0 || (j == 0 && l > 0)));
                if (!positive) continue;
                const double kk = double(i) * i + double(j) * j + double(l) * l;
                const double expo = pi * pi * kk / (alpha_ * alpha_);
                if (expo > kGaussianExponentCap) continue;
                modes_.push_back({Vec3{2 * pi * i, 2 * pi * j, 2 * pi * l},
                                  2.0 * std::exp(-expo) / (4.0 * pi * pi * kk)});
            }
        }
    }
}

double EwaldEvaluator::free_kernel(double r) const
{
    return dim_ == 3 ? 1.0 / (4.0 * pi * r) : -std::log(r) / (2.0 * pi);
}

double EwaldEvaluator::screened_kernel(double r) const
{
    if (dim_ == 3) return std::erfc(alpha_ * r) / (4.0 * pi * r);
    return boost::math::expint(1, alpha_ * alpha_ * r * r) / (4.0 * pi);
}

double EwaldEvaluator::screened_derivative(double r) const
{
    if (dim_ == 3) {
        return -std::erfc(alpha_ * r) / (4.0 * pi * r * r) -
               alpha_ * std::exp(-alpha_ * alpha_ * r * r) / (2.0 * pi * std::sqrt(pi) * r);
    }
    return -std::exp(-alpha_ * alpha_ * r * r) / (2.0 * pi * r);
}

double EwaldEvaluator::screened_minus_kernel(double r) const
{
    if (dim_ == 3) {
        if (r < 1e-8) return -alpha_ / (2.0 * pi * std::sqrt(pi));
        return -std::erf(alpha_ * r) / (4.0 * pi * r);
    }
    return (-std::numbers::egamma - 2.0 * std::log(alpha_) + ein(alpha_ * alpha_ * r * r)) / (4.0 * pi);
}

double EwaldEvaluator::background() const { return 1.0 / (4.0 * alpha_ * alpha_); }

double EwaldEvaluator::long_range(const Vec3& x) const
{
    double s = 0.0;
    for (const Mode& m : modes_) {
        s += m.coeff * std::cos(m.k2pi[0] * x[0] + m.k2pi[1] * x[1] + m.k2pi[2] * x[2]);
    }
    return s;
}

double EwaldEvaluator::short_range_images(const Vec3& x, bool skip_origin) const
{
    auto term = [&](double r) { return r > real_cutoff_ ? 0.0 : screened_kernel(r); };
    double s = 0.0;
    for (const Vec3& L : images_) {
        if (L[0] == 0.0 && L[1] == 0.0 && L[2] == 0.0) {
            if (!skip_origin) s += term(norm(x, dim_));
            continue;
        }
        const double rp = norm(Vec3{x[0] + L[0], x[1] + L[1], x[2] + L[2]}, dim_);
        const double rm = norm(Vec3{x[0] - L[0], x[1] - L[1], x[2] - L[2]}, dim_);
        s += term(rp) + term(rm);
    }
    return s;
}

double EwaldEvaluator::value(const Vec3& x) const
{
    const Vec3 w = wrap(x, dim_);
    if (norm(w, dim_) < 1e-14) {
        throw std::domain_error("green value: G is singular at the origin; use the regular part");
    }
    return long_range(w) + short_range_images(w, false) - background();
}

Vec3 EwaldEvaluator::gradient(const Vec3& x) const
{
    const Vec3 w = wrap(x, dim_);
    if (norm(w, dim_) < 1e-14) throw std::domain_error("green gradient: singular at the origin");
    Vec3 g{0.0, 0.0, 0.0};
    for (const Mode& m : modes_) {
        const double s = -m.coeff * std::sin(m.k2pi[0] * w[0] + m.k2pi[1] * w[1] + m.k2pi[2] * w[2]);
        for (int a = 0; a < dim_; ++a) g[a] += s * m.k2pi[a];
    }
    auto add = [&](const Vec3& y) {
        const double r = norm(y, dim_);
        if (r > real_cutoff_) return;
        const double dr = screened_derivative(r) / r;
        for (int a = 0; a < dim_; ++a) g[a] += dr * y[a];
    };
    for (const Vec3& L : images_) {
        add(Vec3{w[0] + L[0], w[1] + L[1], w[2] + L[2]});
        if (L[0] != 0.0 || L[1] != 0.0 || L[2] != 0.0) add(Vec3{w[0] - L[0], w[1] - L[1], w[2] - L[2]});
    }
    return g;
}

double EwaldEvaluator::regular(const Vec3& x) const
{
    const Vec3 w = wrap(x, dim_);
    return long_range(w) + short_range_images(w, true) - background() + screened_minus_kernel(norm(w, dim_));
}

double EwaldEvaluator::regular_at_zero() const { return regular(Vec3{0.0, 0.0, 0.0}); }

const EwaldEvaluator& default_evaluator(int dim)
{
    static const EwaldEvaluator two(2);
    static const EwaldEvaluator three(3);
    if (dim == 2) return two;
    if (dim == 3) return three;
    throw std::invalid_argument("default_evaluator: dimension must be 2 or 3");
}

double green_value(const Vec3& x, int dim) { return default_evaluator(dim).value(x); }
double regular_part(const Vec3& x, int dim) { return default_evaluator(dim).regular(x); }
double regular_part_at_zero(int dim) { return default_evaluator(dim).regular_at_zero(); }

double pair_energy(const AtomicMeasure& mu, bool include_self, const EwaldEvaluator& green)
{
    if (mu.points.size() != mu.weights.size()) {
        throw std::invalid_argument("pair_energy: points and weights differ in length");
    }
    if (mu.min_separation() < 1e-12) throw std::invalid_argument("pair_energy: coincident points");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = i + 1; j < mu.size(); ++j) {
            s += 2.0 * mu.weights[i] * mu.weights[j] * green.value(torus_delta(mu.points[i], mu.points[j], mu.dim));
        }
    }
    if (include_self) {
        const double g0 = green.regular_at_zero();
        for (double m : mu.weights) s += m * m * g0;
    }
    return s;
}

double pair_energy(const AtomicMeasure& mu, bool include_self)
{
    return pair_energy(mu, include_self, default_evaluator(mu.dim));
}

double interp_ratio(const ScalarField& field)
{
    if (field.grid().dim() != 2) throw std::invalid_argument("interp_ratio: field must be 2-D");
    const Norms nr = norms(field);
    if (nr.l1 == 0.0) throw std::invalid_argument("interp_ratio: field is identically zero");
    if (std::abs(field.mean()) > 1e-10 * nr.l1) {
        throw std::invalid_argument("interp_ratio: field must have zero mean");
    }
    return hminus1_sq(field) / (nr.l1 * nr.l1 * (1.0 + std::log(nr.linf / nr.l1)));
}

double brezis_merle_check(const ScalarField& phi)
{
    if (phi.grid().dim() != 2) throw std::invalid_argument("brezis_merle_check: field must be 2-D");
    const bool zero = std::all_of(phi.values().begin(), phi.values().end(), [](double v) { return v == 0.0; });
    if (zero) return 1.0;
    const double lap_l1 = norms(discrete_laplacian(phi)).l1;
    if (std::abs(lap_l1 - 1.0) > 1e-8) {
        throw std::invalid_argument("brezis_merle_check: int |Laplace phi| must be 1, got " +
                                    std::to_string(lap_l1));
    }
    long double s = 0.0L;
    for (double v : phi.values()) s += std::exp(std::abs(v));
    return static_cast<double>(s * phi.grid().cell_volume());
}

ExponentialBound exponential_integrability_bound(int samples_per_axis)
{
    const EwaldEvaluator& green = default_evaluator(2);
    ExponentialBound b;
    for (int i = 0; i < samples_per_axis; ++i) {
        for (int j = 0; j < samples_per_axis; ++j) {
            // Closed square: endpoints at +-1/2 included.
            const double x = -0.5 + double(i) / (samples_per_axis - 1);
            const double y = -0.5 + double(j) / (samples_per_axis - 1);
            // Evaluate g against the kernel at (x, y) itself, not the wrapped point.
            const double r = std::hypot(x, y);
            const double g = r > 0.0 ? green.value(Vec3{x, y, 0.0}) - green.free_kernel(r) : green.regular_at_zero();
            b.log_constant = std::max(b.log_constant, std::abs(g));
        }
    }
    // int over the square of r^{-a}: eight triangles 0 <= theta <= pi/4,
    // 0 <= r <= 1/(2 cos theta).
    const double a = 1.0 / (2.0 * pi);
    auto integrand = [a](double theta) { return std::pow(0.5 / std::cos(theta), 2.0 - a) / (2.0 - a); };
    b.kernel_integral = 8.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, pi / 4.0);
    b.bound = std::exp(b.log_constant) * b.kernel_integral;
    return b;
}

}  // namespace okas
