#include "okas/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace okas {

using std::numbers::pi;

namespace {

template <typename Fn>
double bisect(Fn&& f, double lo, double hi, double tol)
{
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw std::runtime_error("bisection: root not bracketed");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// min_n n * e(m / n) with n_max doubling until the argmin is interior.
template <typename Fn>
std::pair<double, int> best_equal_split(double m, int n_max, Fn&& e)
{
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (m <= 0.0) return {0.0, 1};
    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 1;
        for (int n = 1; n <= n_max; ++n) {
            const double v = n * e(m / n);
            if (v < best) {
                best = v;
                arg = n;
            }
        }
        if (arg < n_max || n_max >= (1 << 20)) return {best, arg};
        n_max *= 2;
    }
}

}  // namespace

double f_ball(double m, double sigma)
{
    if (m < 0.0) throw std::invalid_argument("f_ball: negative mass");
    return sigma * std::cbrt(36.0 * pi) * std::pow(m, 2.0 / 3.0) +
           0.4 * std::pow(3.0 / (4.0 * pi), 2.0 / 3.0) * std::pow(m, 5.0 / 3.0);
}

double m_star(double sigma)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("m_star: sigma must be positive");
    // The root scales linearly in sigma; widen the bracket for extreme values.
    const double lo = std::min(1.0, 0.5 * sigma);
    const double hi = std::max(1e4, 1e3 * sigma);
    return bisect([sigma](double m) { return f_ball(m, sigma) - 2.0 * f_ball(0.5 * m, sigma); }, lo, hi, 1e-10);
}

E0Value e0_conjectured(double m, double sigma, int n_max)
{
    if (m < 0.0) throw std::invalid_argument("e0_conjectured: negative mass");
    const auto [value, n] = best_equal_split(m, n_max, [sigma](double x) { return f_ball(x, sigma); });
    const double ms = m_star(sigma);
    E0Value out;
    out.value = value;
    out.n_opt = n;
    out.minimizer_exists = m <= ms;
    out.pieces_below_m_star = m / n <= ms;
    return out;
}

double E0_energy(const AtomicMeasure& mu, double sigma)
{
    double s = 0.0;
    for (double m : mu.weights) s += e0_conjectured(m, sigma).value;
    return s;
}

double e0_2d(double m, double sigma)
{
    if (m < 0.0) throw std::invalid_argument("e0_2d: negative mass");
    return m * m / (4.0 * pi) + 2.0 * sigma * std::sqrt(pi * m);
}

EnvelopeValue e0_2d_envelope(double m, double sigma, int n_max)
{
    if (m < 0.0) throw std::invalid_argument("e0_2d_envelope: negative mass");
    const auto [value, n] = best_equal_split(m, n_max, [sigma](double x) { return e0_2d(x, sigma); });
    return {value, n};
}

double split_threshold_2d(double sigma)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("split_threshold_2d: sigma must be positive");
    auto f = [sigma](double m) { return 2.0 * e0_2d(0.5 * m, sigma) - e0_2d(m, sigma); };
    double hi = 1.0;
    while (f(hi) > 0.0) hi *= 2.0;
    return bisect(f, 1e-12, hi, 1e-12 * hi);
}

double singleton_mass_bound_2d() { return std::pow(2.0, -2.0 / 3.0) * pi; }

PartitionSearch partition_bruteforce(double M, double sigma, int n_max, int perturbations, std::uint64_t seed)
{
    if (!(M > 0.0)) throw std::invalid_argument("partition_bruteforce: M must be positive");
    const EnvelopeValue env = e0_2d_envelope(M, sigma, n_max);

    PartitionSearch out;
    out.best.total = M;
    out.best.energy = env.value;
    out.best.masses.assign(env.n_opt, M / env.n_opt);
    out.best_perturbed = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(std::max(1, env.n_opt - 1), env.n_opt + 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < perturbations; ++t) {
        // Mostly the optimal piece count, sometimes a neighbour.
        const int k = t % 2 == 0 ? std::max(env.n_opt, 2) : std::max(count(rng), 2);
        const double scale = std::pow(10.0, -3.0 + 3.0 * unit(rng)) * 0.9;
        std::vector<double> w(k);
        double sum = 0.0;
        for (double& x : w) {
            x = 1.0 + scale * (2.0 * unit(rng) - 1.0);
            sum += x;
        }
        double energy = 0.0;
        for (double& x : w) {
            x *= M / sum;
            energy += e0_2d(x, sigma);
        }
        ++out.trials;
        out.best_perturbed = std::min(out.best_perturbed, energy);
        if (energy < out.best.energy - 1e-10 * std::max(1.0, std::abs(out.best.energy))) out.equal_split_unbeaten = false;
    }

    const double piece = M / env.n_opt;
    if (piece < singleton_mass_bound_2d() && env.n_opt != 1) out.singleton_rule_holds = false;
    return out;
}

bool weights_admissible(const std::vector<double>& masses, int dim, double sigma)
{
    std::vector<double> nz;
    for (double m : masses) {
        if (m < 0.0) throw std::invalid_argument("weights_admissible: negative mass");
        if (m > 0.0) nz.push_back(m);
    }
    if (nz.empty()) return true;
    double total = 0.0;
    for (double m : nz) total += m;

    if (dim == 3) {
        const double ms = m_star(sigma);
        double sum = 0.0;
        for (double m : nz) {
            if (m > ms) return false;
            sum += e0_conjectured(m, sigma).value;
        }
        const double whole = e0_conjectured(total, sigma).value;
        return std::abs(sum - whole) <= 1e-9 * std::max(1.0, whole);
    }
    if (dim != 2) throw std::invalid_argument("weights_admissible: dimension must be 2 or 3");

    const double m = nz.front();
    for (double x : nz) {
        if (std::abs(x - m) > 1e-12 * m) return false;
    }
    const double split = nz.size() * e0_2d(m, sigma);
    const double best = e0_2d_envelope(total, sigma).value;
    if (split > best + 1e-10 * std::max(1.0, best)) return false;
    return e0_2d_envelope(m, sigma).n_opt == 1;
}

}  // namespace okas
