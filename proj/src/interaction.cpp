#include "okas/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "okas/effective.hpp"
#include "okas/sharp.hpp"

namespace okas {

using std::numbers::pi;

namespace {

// Sum in sorted order so relabelling the particles cannot change the rounding.
double sorted_sum(std::vector<double> terms)
{
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

}  // namespace

double pair_sum(const std::vector<Vec3>& points, int dim)
{
    const EwaldEvaluator& green = default_evaluator(dim);
    std::vector<double> terms;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) terms.push_back(2.0 * green.value(torus_delta(points[i], points[j], dim)));
    }
    return sorted_sum(std::move(terms));
}

std::vector<Vec3> pair_sum_gradient(const std::vector<Vec3>& points, int dim)
{
    const EwaldEvaluator& green = default_evaluator(dim);
    std::vector<Vec3> grad(points.size(), Vec3{0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            // G is even, so grad G is odd: d/dx_i and d/dx_j carry opposite signs.
            const Vec3 g = green.gradient(torus_delta(points[i], points[j], dim));
            for (int a = 0; a < dim; ++a) {
                grad[i][a] += 2.0 * g[a];
                grad[j][a] -= 2.0 * g[a];
            }
        }
    }
    return grad;
}

double F0_structure(const AtomicMeasure& mu)
{
    if (mu.points.size() != mu.weights.size()) throw std::invalid_argument("F0: points and weights differ in length");
    if (mu.min_separation() < 1e-12) throw std::invalid_argument("F0: coincident points");
    const int d = mu.dim;
    if (d == 3) {
        const EwaldEvaluator& green = default_evaluator(3);
        std::vector<double> terms;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            terms.push_back(green.regular_at_zero() * mu.weights[i] * mu.weights[i]);
            for (std::size_t j = i + 1; j < mu.size(); ++j) {
                terms.push_back(2.0 * mu.weights[i] * mu.weights[j] * green.value(torus_delta(mu.points[i], mu.points[j], 3)));
            }
        }
        return sorted_sum(std::move(terms));
    }
    if (mu.size() == 0) return 0.0;
    const double m = mu.weights.front();
    for (double w : mu.weights) {
        if (std::abs(w - m) > 1e-12 * m) throw std::invalid_argument("F0: 2-D structure needs equal masses");
    }
    const double n = double(mu.size());
    return n * (ball_self_energy_free(m, 2) + m * m * regular_part_at_zero(2)) + 0.5 * m * m * pair_sum(mu.points, 2);
}

double F0_energy(const AtomicMeasure& mu, double sigma)
{
    if (!weights_admissible(mu.weights, mu.dim, sigma)) return kInfiniteEnergy;
    if (mu.size() > 1 && mu.min_separation() < 1e-12) return kInfiniteEnergy;
    return F0_structure(mu);
}

namespace {

double norm_all(const std::vector<Vec3>& v, int dim)
{
    double s = 0.0;
    for (const auto& x : v) {
        for (int a = 0; a < dim; ++a) s += x[a] * x[a];
    }
    return std::sqrt(s);
}

struct Descent {
    std::vector<Vec3> points;
    double value;
    double grad_norm;
};

Descent descend(std::vector<Vec3> x, int dim, const OptimizeOptions& opt)
{
    double f = pair_sum(x, dim);
    std::vector<Vec3> g = pair_sum_gradient(x, dim);
    double gn = norm_all(g, dim);
    double step = 1e-3;
    std::vector<Vec3> x_prev, g_prev;
    for (int it = 0; it < opt.max_iterations && gn > opt.gradient_tol; ++it) {
        if (!x_prev.empty()) {
            // Barzilai-Borwein step from the last displacement.
            double sy = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const Vec3 s = torus_delta(x[i], x_prev[i], dim);
                for (int a = 0; a < dim; ++a) {
                    ss += s[a] * s[a];
                    sy += s[a] * (g[i][a] - g_prev[i][a]);
                }
            }
            step = sy > 0.0 ? ss / sy : 1e-3;
        }
        // Armijo backtracking; the step is capped so no point moves more than 0.05.
        step = std::min(step, 0.05 / std::max(gn, 1e-300));
        std::vector<Vec3> trial(x.size());
        double ft = 0.0;
        bool ok = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                Vec3 y = x[i];
                for (int a = 0; a < dim; ++a) y[a] -= step * g[i][a];
                trial[i] = wrap(y, dim);
            }
            AtomicMeasure probe{dim, trial, std::vector<double>(trial.size(), 1.0)};
            if (probe.min_separation() > 1e-9) {
                ft = pair_sum(trial, dim);
                if (ft <= f - 1e-4 * step * gn * gn) {
                    ok = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!ok) break;
        x_prev = std::move(x);
        g_prev = std::move(g);
        x = trial;
        f = ft;
        g = pair_sum_gradient(x, dim);
        gn = norm_all(g, dim);
    }
    return {x, f, gn};
}

}  // namespace

InteractionResult optimize_positions(int n, double m, int dim, int restarts, std::uint64_t seed, const OptimizeOptions& opt)
{
    if (n < 1) throw std::invalid_argument("optimize_positions: need at least one point");
    if (dim != 2 && dim != 3) throw std::invalid_argument("optimize_positions: dimension must be 2 or 3");
    if (!(m > 0.0)) throw std::invalid_argument("optimize_positions: mass must be positive");
    restarts = std::max(restarts, 1);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const double min_sep = 0.1 / std::pow(double(n), 1.0 / dim);

    InteractionResult best;
    double best_pairs = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<Vec3> x;
        while (static_cast<int>(x.size()) < n) {
            const Vec3 c{u(rng), u(rng), dim == 3 ? u(rng) : 0.0};
            const bool far = std::all_of(x.begin(), x.end(), [&](const Vec3& y) { return torus_distance(c, y, dim) >= min_sep; });
            if (far) x.push_back(c);
        }
        const Descent dsc = n == 1 ? Descent{x, 0.0, 0.0} : descend(std::move(x), dim, opt);
        if (dsc.value < best_pairs) {
            best_pairs = dsc.value;
            best.positions = dsc.points;
            best.gradient_norm = dsc.grad_norm;
        }
        best.restarts_used = r + 1;
        AtomicMeasure mu{dim, best.positions, std::vector<double>(n, m)};
        best.energy = F0_structure(mu);
        best.best_so_far.push_back(best.energy);
    }
    return best;
}

LatticeReport lattice_report(const std::vector<Vec3>& positions, int dim)
{
    if (positions.size() < 2) throw std::invalid_argument("lattice_report: need at least two points");
    LatticeReport rep;
    if (dim == 2) rep.angle_histogram.assign(12, 0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Vec3 dir{0, 0, 0};
        for (std::size_t j = 0; j < positions.size(); ++j) {
            if (i == j) continue;
            const Vec3 dv = torus_delta(positions[j], positions[i], dim);
            const double dist = norm(dv, dim);
            if (dist < best) {
                best = dist;
                dir = dv;
            }
        }
        rep.nn_distances.push_back(best);
        if (dim == 2) {
            double ang = std::atan2(dir[1], dir[0]);
            if (ang < 0.0) ang += pi;
            if (ang >= pi) ang -= pi;
            rep.angle_histogram[std::min(11, static_cast<int>(ang / pi * 12.0))]++;
        }
    }
    std::sort(rep.nn_distances.begin(), rep.nn_distances.end());
    double s = 0.0, s2 = 0.0;
    for (double x : rep.nn_distances) {
        s += x;
        s2 += x * x;
    }
    const double k = double(rep.nn_distances.size());
    rep.mean = s / k;
    const double var = std::max(0.0, s2 / k - rep.mean * rep.mean);
    rep.cv = std::sqrt(var) / rep.mean;
    return rep;
}

}  // namespace okas
