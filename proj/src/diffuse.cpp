#include "okas/diffuse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "okas/effective.hpp"
#include "okas/wells.hpp"

namespace okas {

using std::numbers::pi;

namespace {

struct Coefficients {
    double A;  // gradient
    double B;  // well
    double C;  // H^-1
};

Coefficients coefficients(const ScalingParams& p)
{
    const double e3 = p.eta * p.eta * p.eta;
    if (p.dim == 3) return {p.eta * p.eps * e3, p.eta * e3 / p.eps, p.eta};
    return {p.eps * e3, e3 / p.eps, 1.0 / p.log_factor()};
}

double well_integral(const ScalarField& v, const ScalingParams& p)
{
    long double s = 0.0L;
    for (double x : v.values()) s += well_rescaled(x, p.eta, p.dim);
    return static_cast<double>(s * v.grid().cell_volume());
}

EnergyBreakdown evaluate(const SpectralField& spec, const ScalarField& v, const ScalingParams& p)
{
    const Coefficients c = coefficients(p);
    return make_breakdown(c.A * gradient_sq_integral(spec), c.B * well_integral(v, p), c.C * hminus1_sq(spec));
}

bool all_finite(const ScalarField& v)
{
    for (double x : v.values()) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

EnergyBreakdown energy_original(const ScalarField& u, double eps, double gamma)
{
    long double w = 0.0L;
    for (double x : u.values()) w += well(x);
    const SpectralField spec = to_spectral(u);
    return make_breakdown(eps * gradient_sq_integral(spec), static_cast<double>(w * u.grid().cell_volume()) / eps,
                          gamma * hminus1_sq(spec));
}

EnergyBreakdown energy_rescaled(const ScalarField& v, const ScalingParams& p)
{
    p.validate();
    if (v.grid().dim() != p.dim) throw std::invalid_argument("energy_rescaled: field dimension differs from parameters");
    return evaluate(to_spectral(v), v, p);
}

SecondOrder energy_second_order(const ScalarField& v, const ScalingParams& p)
{
    const double e = energy_rescaled(v, p).total;
    const double mass = v.integral();
    SecondOrder out;
    if (p.dim == 3) {
        out.first_order = e0_conjectured(mass, p.sigma).value;
        out.value = (e - out.first_order) / p.eta;
        out.conjectured = true;
    } else {
        out.first_order = e0_2d_envelope(mass, p.sigma).value;
        out.value = p.log_factor() * (e - out.first_order);
    }
    return out;
}

void project_mass(ScalarField& v, double mass) { v += mass - v.integral(); }

MinimizeResult minimize(const ScalarField& v0, const ScalingParams& p, const MinimizeOptions& opt)
{
    p.validate();
    if (v0.grid().dim() != p.dim) throw std::invalid_argument("minimize: field dimension differs from parameters");
    const Coefficients c = coefficients(p);
    const double S = 2.0 * c.B;
    double dt = opt.dt > 0.0 ? opt.dt : 0.1 * p.eps * p.eta * p.eta * p.eta;

    MinimizeResult res{v0, {}, 0, 0, false, {}};
    project_mass(res.field, p.mass);
    SpectralField spec = to_spectral(res.field);
    EnergyBreakdown current = evaluate(spec, res.field, p);
    res.trace.push_back({0, current, res.field.integral(), dt});

    const TorusGrid& g = res.field.grid();
    ScalarField wprime(g);
    for (int step = 1; step <= opt.steps; ++step) {
        for (std::size_t i = 0; i < g.size(); ++i) wprime[i] = well_rescaled_derivative(res.field[i], p.eta, p.dim);
        const SpectralField wspec = to_spectral(wprime);

        bool accepted = false;
        for (int tries = 0; tries <= opt.max_halvings; ++tries) {
            SpectralField next = spec;
            const auto& w = wspec.data();
            std::size_t idx = 0;
            next.for_each_mode([&](const WaveVector& k, std::complex<double>& coeff, double) {
                const double K = 4.0 * pi * pi * double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                if (K > 0.0) {
                    coeff = (coeff - dt * K * c.B * w[idx] + dt * S * K * coeff) /
                            (1.0 + dt * (2.0 * c.A * K * K + 2.0 * c.C + S * K));
                }
                ++idx;
            });
            ScalarField candidate = from_spectral(next);
            if (!all_finite(candidate)) {
                res.aborted = true;
                res.message = "non-finite field at step " + std::to_string(step);
                return res;
            }
            const EnergyBreakdown e = evaluate(next, candidate, p);
            if (e.total <= current.total + opt.increase_tol * std::abs(current.total)) {
                res.field = std::move(candidate);
                spec = std::move(next);
                current = e;
                accepted = true;
                ++res.accepted;
                break;
            }
            ++res.rejected;
            dt *= 0.5;
        }
        if (!accepted) {
            res.aborted = true;
            res.message = "step size underflow at step " + std::to_string(step);
            return res;
        }
        res.trace.push_back({step, current, res.field.integral(), dt});
    }
    return res;
}

}  // namespace okas
