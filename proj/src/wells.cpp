#include "okas/wells.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace okas {

namespace {

using boost::math::quadrature::gauss_kronrod;

double invert_phi(double t)
{
    // phi is strictly increasing on [0, 1]; closed form is a cubic.
    if (t <= 0.0) return 0.0;
    if (t >= sigma()) return 1.0;
    auto f = [t](double s) { return phi_closed_form(s) - t; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, 1.0, f(0.0), f(1.0), tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

double well(double u) { return u * u * (1.0 - u) * (1.0 - u); }

double well_derivative(double u) { return 2.0 * u * (1.0 - u) * (1.0 - 2.0 * u); }

double well_rescaled(double v, double eta, int dim)
{
    const double e = std::pow(eta, dim);
    return v * v * (1.0 - e * v) * (1.0 - e * v);
}

double well_rescaled_derivative(double v, double eta, int dim)
{
    const double e = std::pow(eta, dim);
    return 2.0 * v * (1.0 - e * v) * (1.0 - 2.0 * e * v);
}

double surface_tension(double well_scale)
{
    auto integrand = [well_scale](double t) { return 2.0 * std::sqrt(well_scale * well(t)); };
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 10, 1e-14);
}

double sigma()
{
    static const double s = surface_tension();
    return s;
}

double clip01(double u) { return std::min(1.0, std::max(0.0, u)); }

double phi(double s)
{
    s = clip01(s);
    if (s == 0.0) return 0.0;
    auto integrand = [](double t) { return 2.0 * std::sqrt(well(t)); };
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, s, 10, 1e-14);
}

double phi_closed_form(double s)
{
    s = clip01(s);
    return s * s * (3.0 - 2.0 * s) / 3.0;
}

double optimal_profile(double t, double eps) { return 1.0 / (1.0 + std::exp(-t / eps)); }

double truncation_delta(double tau)
{
    if (!(tau > 0.0) || tau >= sigma()) throw std::invalid_argument("truncation_delta: need 0 < tau < sigma");
    // phi(1 - s) = sigma - phi(s), so the condition reads phi(2 delta) = tau / 2.
    return 0.5 * invert_phi(0.5 * tau);
}

double interfacial_energy(const ScalarField& u, double eps)
{
    long double w = 0.0L;
    for (double v : u.values()) w += well(v);
    return eps * gradient_sq_integral(u) + static_cast<double>(w * u.grid().cell_volume()) / eps;
}

double phi_variation(const ScalarField& u)
{
    const TorusGrid& g = u.grid();
    std::vector<double> p(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) p[i] = phi_closed_form(u[i]);
    const double inv2h = 0.5 / g.spacing();
    long double s = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index3 idx = g.index(i);
        double sq = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            Index3 pl = idx, mi = idx;
            ++pl[a];
            --mi[a];
            const double d = (p[g.flat(pl)] - p[g.flat(mi)]) * inv2h;
            sq += d * d;
        }
        s += std::sqrt(sq);
    }
    return static_cast<double>(s * g.cell_volume());
}

namespace {

// Signed distance to the nearest droplet boundary (negative inside).
double signed_distance(const DropletConfiguration& config, const Vec3& x)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < config.size(); ++i) {
        best = std::min(best, torus_distance(x, config.droplets()[i].center, config.dim()) - config.radius(i));
    }
    return best;
}

}  // namespace

ScalarField droplet_indicator(const DropletConfiguration& config, const TorusGrid& grid)
{
    if (config.dim() != grid.dim()) throw std::invalid_argument("droplet_indicator: dimension mismatch");
    ScalarField chi(grid);
    if (config.empty()) return chi;
    for (std::size_t i = 0; i < grid.size(); ++i) chi[i] = signed_distance(config, grid.node(i)) < 0.0 ? 1.0 : 0.0;
    return chi;
}

Mollified mollify_indicator(const DropletConfiguration& config, const TorusGrid& grid, double eps, double alpha)
{
    if (config.dim() != grid.dim()) throw std::invalid_argument("mollify_indicator: dimension mismatch");
    if (!(eps > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("mollify_indicator: eps and alpha must be positive");
    if (eps < 3.0 * grid.spacing()) {
        throw std::invalid_argument("mollify_indicator: eps under-resolved, need eps >= 3 h (n_cells >= " +
                                    std::to_string(static_cast<int>(std::ceil(3.0 / eps))) + ")");
    }
    if (!config.empty() && config.pair_gap() <= 10.0 * eps) {
        throw std::invalid_argument("mollify_indicator: droplets closer than 10 eps, profiles would overlap");
    }

    Mollified out{ScalarField(grid)};
    out.perimeter = config.perimeter();
    out.c0 = 2.0 * std::numbers::ln2 * (1.0 + alpha / sigma());
    if (config.empty()) {
        out.energy_bound_ok = true;
        out.l1_bound_ok = true;
        return out;
    }

    long double l1 = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = signed_distance(config, grid.node(i));
        const double u = optimal_profile(-s, eps);
        out.field[i] = u;
        l1 += std::abs((s < 0.0 ? 1.0 : 0.0) - u);
    }
    out.l1_distance = static_cast<double>(l1 * grid.cell_volume());
    out.interfacial = interfacial_energy(out.field, eps);
    out.energy_bound_ok = out.interfacial <= (sigma() + alpha) * out.perimeter;
    out.l1_bound_ok = out.l1_distance <= out.c0 * eps * out.perimeter;
    return out;
}

Thresholded threshold_to_sharp(const ScalarField& field, double delta)
{
    if (!(delta > 0.0) || delta >= 0.5) throw std::invalid_argument("threshold_to_sharp: delta must lie in (0, 1/2)");
    const TorusGrid& g = field.grid();
    std::vector<double> u(field.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = clip01(field[i]);
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    if (*lo == *hi) throw std::invalid_argument("threshold_to_sharp: constant field has no interface");

    constexpr int kLevels = 101;
    const double t0 = phi_closed_form(delta);
    const double t1 = phi_closed_form(1.0 - delta);
    std::vector<double> levels_t(kLevels), levels_u(kLevels);
    for (int k = 0; k < kLevels; ++k) {
        levels_t[k] = t0 + (t1 - t0) * k / (kLevels - 1);
        levels_u[k] = invert_phi(levels_t[k]);
    }

    // A face separates {u > L} from its complement iff min <= L < max over
    // its two cells; accumulate counts for all levels with a difference array.
    std::vector<long long> diff(kLevels + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index3 idx = g.index(i);
        for (int a = 0; a < g.dim(); ++a) {
            Index3 p = idx;
            ++p[a];
            const double x = u[i], y = u[g.flat(p)];
            if (x == y) continue;
            const double fmin = std::min(x, y), fmax = std::max(x, y);
            const auto first = std::lower_bound(levels_u.begin(), levels_u.end(), fmin) - levels_u.begin();
            const auto last = std::lower_bound(levels_u.begin(), levels_u.end(), fmax) - levels_u.begin();
            ++diff[first];
            --diff[last];
        }
    }
    long long run = 0, best = std::numeric_limits<long long>::max();
    int best_k = 0;
    for (int k = 0; k < kLevels; ++k) {
        run += diff[k];
        if (run < best) {
            best = run;
            best_k = k;
        }
    }

    Thresholded out{ScalarField(g)};
    out.level_phi = levels_t[best_k];
    out.level_u = levels_u[best_k];
    for (std::size_t i = 0; i < u.size(); ++i) out.indicator[i] = u[i] > out.level_u ? 1.0 : 0.0;
    out.perimeter = perimeter_estimate(out.indicator);
    return out;
}

}  // namespace okas
