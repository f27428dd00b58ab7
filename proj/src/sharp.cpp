#include "okas/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "okas/effective.hpp"
#include "okas/green.hpp"

namespace okas {

using std::numbers::pi;

namespace {

void check_match(const DropletConfiguration& config, const ScalingParams& p)
{
    p.validate();
    if (p.dim != config.dim()) throw std::invalid_argument("sharp: parameter dimension differs from configuration");
    if (std::abs(p.eta - config.eta()) > 1e-14 * p.eta) throw std::invalid_argument("sharp: eta differs from configuration");
}

}  // namespace

ScalarField rasterize(const DropletConfiguration& config, const TorusGrid& grid, int subsamples)
{
    if (config.dim() != grid.dim()) throw std::invalid_argument("rasterize: dimension mismatch");
    if (subsamples < 1) throw std::invalid_argument("rasterize: subsamples must be positive");
    const int d = grid.dim();
    const double h = grid.spacing();
    const double height = std::pow(config.eta(), -d);
    const double half_diag = 0.5 * h * std::sqrt(double(d));

    auto inside = [&](const Vec3& x) {
        for (std::size_t i = 0; i < config.size(); ++i) {
            if (torus_distance(x, config.droplets()[i].center, d) < config.radius(i)) return true;
        }
        return false;
    };

    ScalarField v(grid);
    const int sz = d == 3 ? subsamples : 1;
    const double total = std::pow(double(subsamples), d);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const Vec3 x = grid.node(n);
        double sd = 1e300;
        for (std::size_t i = 0; i < config.size(); ++i) {
            sd = std::min(sd, torus_distance(x, config.droplets()[i].center, d) - config.radius(i));
        }
        if (sd <= -half_diag) {
            v[n] = height;
        } else if (sd < half_diag) {
            int count = 0;
            for (int a = 0; a < subsamples; ++a) {
                for (int b = 0; b < subsamples; ++b) {
                    for (int c = 0; c < sz; ++c) {
                        const Vec3 y{x[0] + h * ((a + 0.5) / subsamples - 0.5), x[1] + h * ((b + 0.5) / subsamples - 0.5),
                                     d == 3 ? x[2] + h * ((c + 0.5) / subsamples - 0.5) : 0.0};
                        if (inside(y)) ++count;
                    }
                }
            }
            v[n] = height * count / total;
        }
    }
    return v;
}

EnergyBreakdown sharp_energy_grid(const DropletConfiguration& config, const TorusGrid& grid, const ScalingParams& p)
{
    check_match(config, p);
    if (config.empty()) return {};
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config.radius(i) < 4.0 * grid.spacing()) {
            throw std::invalid_argument("sharp_energy_grid: droplet radius below 4 grid spacings");
        }
    }
    const int d = config.dim();
    // int |grad v| = eta^{-d} * perimeter of the droplets
    const double tv = std::pow(p.eta, -d) * config.perimeter();
    const double interfacial = p.eta * p.sigma * tv;
    const double h = hminus1_sq(rasterize(config, grid));
    const double nonlocal = d == 3 ? p.eta * h : h / p.log_factor();
    return make_breakdown(interfacial, 0.0, nonlocal);
}

double ball_self_energy_free(double m, int dim)
{
    if (!(m > 0.0)) throw std::invalid_argument("ball_self_energy_free: mass must be positive");
    if (dim == 3) return 0.4 * std::pow(3.0 / (4.0 * pi), 2.0 / 3.0) * std::pow(m, 5.0 / 3.0);
    if (dim == 2) return m * m / (8.0 * pi) * (3.0 - 2.0 * std::log(m / pi));
    throw std::invalid_argument("ball_self_energy_free: dimension must be 2 or 3");
}

AsymptoticEnergy sharp_energy_asymptotic(const DropletConfiguration& config, const ScalingParams& p)
{
    check_match(config, p);
    const int d = config.dim();
    double rmax = 0.0;
    double sep = 1.0;
    for (std::size_t i = 0; i < config.size(); ++i) {
        rmax = std::max(rmax, config.radius(i));
        for (std::size_t j = i + 1; j < config.size(); ++j) {
            sep = std::min(sep, torus_distance(config.droplets()[i].center, config.droplets()[j].center, d));
        }
    }
    if (!(rmax / sep < 0.25)) throw std::invalid_argument("sharp_energy_asymptotic: radius/separation must be below 1/4");

    const EwaldEvaluator& green = default_evaluator(d);
    const double g0 = green.regular_at_zero();
    double pair = 0.0;
    for (std::size_t i = 0; i < config.size(); ++i) {
        for (std::size_t j = 0; j < config.size(); ++j) {
            if (i == j) continue;
            pair += config.droplets()[i].mass * config.droplets()[j].mass *
                    green.value(torus_delta(config.droplets()[i].center, config.droplets()[j].center, d));
        }
    }

    AsymptoticEnergy out;
    double self = 0.0;
    for (const auto& drop : config.droplets()) {
        if (d == 3) {
            out.leading += f_ball(drop.mass, p.sigma);
            self += g0 * drop.mass * drop.mass;
        } else {
            out.leading += e0_2d(drop.mass, p.sigma);
            self += ball_self_energy_free(drop.mass, 2) + g0 * drop.mass * drop.mass;
        }
    }
    out.correction = d == 3 ? p.eta * (self + pair) : (self + 0.5 * pair) / p.log_factor();
    return out;
}

}  // namespace okas
