#include "okas/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "okas/diffuse.hpp"
#include "okas/effective.hpp"
#include "okas/interaction.hpp"
#include "okas/sharp.hpp"
#include "okas/wells.hpp"

namespace okas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_etas(const std::vector<double>& etas)
{
    if (etas.empty()) throw std::invalid_argument("eta list is empty");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!(etas[i] > 0.0 && etas[i] < 1.0)) throw std::invalid_argument("eta values must lie in (0, 1)");
        if (i > 0 && !(etas[i] < etas[i - 1])) throw std::invalid_argument("eta list must be strictly decreasing");
    }
}

DropletConfiguration equal_split(int dim, double eta, const std::vector<Vec3>& centers, double m)
{
    std::vector<Droplet> drops;
    for (const auto& c : centers) drops.push_back({c, m});
    return DropletConfiguration(dim, eta, std::move(drops));
}

std::ofstream open_out(const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(12);
    return out;
}

}  // namespace

Regime parse_regime(const std::string& s)
{
    if (s == "first") return Regime::first;
    if (s == "second") return Regime::second;
    throw std::invalid_argument("regime must be 'first' or 'second', got '" + s + "'");
}

std::string to_string(Regime r) { return r == Regime::first ? "first" : "second"; }

std::vector<double> slaving_schedule(const std::vector<double>& etas, int dim, double zeta, Regime regime)
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("slaving_schedule: dimension must be 2 or 3");
    check_etas(etas);
    std::vector<double> eps;
    for (double eta : etas) {
        if (dim == 3) {
            eps.push_back(std::pow(eta, 4.0 + zeta + 0.5));
        } else {
            const double L = std::abs(std::log(eta));
            eps.push_back(eta / std::pow(L, regime == Regime::first ? 2.0 : 3.0));
        }
    }
    return eps;
}

int suggested_cells(double eps, double r)
{
    int n = 8;
    while (1.0 / n > eps / 3.0 || 1.0 / n > r / 4.0) n *= 2;
    return n;
}

Recovery build_recovery(double M, int dim, double eta, const TorusGrid& grid, double sigma, double eps,
                        const RecoveryOptions& opt)
{
    if (!(M > 0.0)) throw std::invalid_argument("build_recovery: mass must be positive");
    if (grid.dim() != dim) throw std::invalid_argument("build_recovery: grid dimension differs");

    int n = 1;
    if (dim == 3) n = e0_conjectured(M, sigma).n_opt;
    else n = e0_2d_envelope(M, sigma).n_opt;
    const double m = M / n;
    const double r = droplet_radius(m, eta, dim);
    const double h = grid.spacing();
    if (eps < 3.0 * h || r < 4.0 * h) {
        std::ostringstream msg;
        msg << "build_recovery: droplets unresolved on " << grid.n() << " cells (eps = " << eps << ", radius = " << r
            << "), use at least " << suggested_cells(eps, r) << " cells";
        throw std::invalid_argument(msg.str());
    }

    std::vector<Vec3> centers{Vec3{0.0, 0.0, 0.0}};
    if (n > 1) centers = optimize_positions(n, m, dim, opt.restarts, opt.seed).positions;

    const double scale = std::pow(eta, -dim);
    auto mollify = [&](double s) { return mollify_indicator(equal_split(dim, eta, centers, s * m), grid, eps, eta); };
    auto excess = [&](double s) { return scale * mollify(s).field.integral() - M; };

    // int v grows with the droplet mass; bracket around 1 and refine.
    double lo = 0.9, hi = 1.1;
    double flo = excess(lo), fhi = excess(hi);
    for (int k = 0; k < 20 && flo > 0.0; ++k) {
        lo *= 0.8;
        flo = excess(lo);
    }
    for (int k = 0; k < 20 && fhi < 0.0; ++k) {
        hi *= 1.25;
        fhi = excess(hi);
    }
    if (flo > 0.0) throw std::runtime_error("build_recovery: profile tails alone exceed the mass, eps is too large for the droplet");
    if (fhi < 0.0) throw std::runtime_error("build_recovery: cannot bracket the mass correction");
    std::uintmax_t iters = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, flo, fhi,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
    const double s = 0.5 * (a + b);

    Mollified mol = mollify(s);
    Recovery out{equal_split(dim, eta, centers, m), std::move(mol.field), n, s, mol.interfacial, mol.energy_bound_ok,
                 mol.l1_bound_ok};
    out.field *= scale;
    if (std::abs(out.field.integral() - M) > opt.mass_tol) {
        throw std::runtime_error("build_recovery: mass correction missed the tolerance");
    }
    return out;
}

void SweepPlan::validate() const
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("plan: dimension must be 2 or 3");
    if (!(mass > 0.0)) throw std::invalid_argument("plan: mass must be positive");
    check_etas(etas);
    if (cells.empty() || (cells.size() != 1 && cells.size() != etas.size())) {
        throw std::invalid_argument("plan: give one grid size or one per eta");
    }
    const std::vector<double> eps = slaving_schedule(etas, dim, zeta, regime);
    for (std::size_t i = 0; i < etas.size(); ++i) {
        TorusGrid g(dim, cells_for(i));  // validates the cell count
        if (eps[i] < 3.0 * g.spacing()) {
            std::ostringstream msg;
            msg << "plan: eps = " << eps[i] << " at eta = " << etas[i] << " needs at least "
                << suggested_cells(eps[i], 1.0) << " cells";
            throw std::invalid_argument(msg.str());
        }
    }
}

int SweepPlan::cells_for(std::size_t i) const { return cells.size() == 1 ? cells.front() : cells.at(i); }

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y)
{
    LinearFit fit;
    if (x.size() != y.size()) throw std::invalid_argument("fit_linear: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) {
        fit.note = "fewer than two points";
        return fit;
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    // spread of x too small against its size: the (1, x) design is singular
    if (!(sxx > 1e-20 * std::max(1.0, mx * mx) * n) || !std::isfinite(sxy)) {
        fit.note = "ill-conditioned design";
        return fit;
    }
    fit.b = sxy / sxx;
    fit.a = my - fit.b * mx;
    for (std::size_t i = 0; i < n; ++i) fit.residuals.push_back(y[i] - (fit.a + fit.b * x[i]));
    fit.valid = true;
    return fit;
}

ExpansionReport expansion_check(const SweepPlan& plan)
{
    plan.validate();
    ExpansionReport rep;
    rep.plan = plan;
    const std::vector<double> eps = slaving_schedule(plan.etas, plan.dim, plan.zeta, plan.regime);
    rep.a_prediction = plan.dim == 3 ? e0_conjectured(plan.mass, plan.sigma).value
                                     : e0_2d_envelope(plan.mass, plan.sigma).value;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < plan.etas.size(); ++i) {
        SweepRow row;
        row.eta = plan.etas[i];
        row.eps = eps[i];
        row.cells = plan.cells_for(i);
        ScalingParams p;
        p.dim = plan.dim;
        p.eta = row.eta;
        p.eps = row.eps;
        p.mass = plan.mass;
        p.zeta = plan.zeta;
        p.sigma = plan.sigma;
        row.regime = p.regime();

        const TorusGrid grid(plan.dim, row.cells);
        const double ed = std::pow(row.eta, plan.dim);
        const double pre = plan.dim == 3 ? std::pow(row.eta, 4.0) / row.eps : std::pow(row.eta, 3.0) / row.eps;
        row.constant_formula = pre * plan.mass * plan.mass * (1.0 - ed * plan.mass) * (1.0 - ed * plan.mass);
        row.constant_energy = energy_rescaled(ScalarField::constant(grid, plan.mass), p).total;

        try {
            const Recovery rec = build_recovery(plan.mass, plan.dim, row.eta, grid, plan.sigma, row.eps,
                                                {plan.restarts, plan.seed, 1e-6});
            row.n_opt = rec.n_opt;
            row.energy_bound_ok = rec.energy_bound_ok;
            row.l1_bound_ok = rec.l1_bound_ok;
            row.recovery = energy_rescaled(rec.field, p);
            row.f0 = F0_energy(rec.config.atoms(), plan.sigma);
            try {
                row.sharp_prediction = sharp_energy_asymptotic(rec.config, p).total();
            } catch (const std::invalid_argument&) {
                row.sharp_prediction = kNaN;
            }
            if (plan.minimize) {
                MinimizeOptions mo;
                mo.steps = plan.minimize_steps;
                const MinimizeResult mr = minimize(rec.field, p, mo);
                row.minimized = mr.trace.back().energy;
            }
            xs.push_back(row.eta);
            ys.push_back(row.recovery.total);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
    }

    rep.fit = fit_linear(xs, ys);
    const bool all_built = std::all_of(rep.rows.begin(), rep.rows.end(), [](const SweepRow& r) { return r.error.empty(); });
    if (!all_built && rep.fit.note.empty()) rep.fit.note = "some sweep points failed";
    if (rep.fit.valid) rep.a_rel_error = std::abs(rep.fit.a - rep.a_prediction) / std::abs(rep.a_prediction);

    for (const auto& row : rep.rows) {
        if (row.error.empty()) rep.b_prediction = row.f0;
    }
    rep.b_sign_matches = rep.fit.valid && std::isfinite(rep.b_prediction) &&
                         (rep.fit.b > 0.0) == (rep.b_prediction > 0.0);

    rep.constant_above_recovery = all_built;
    for (const auto& row : rep.rows) {
        if (!row.error.empty()) continue;
        rep.limit_residuals.push_back(std::abs(row.recovery.total - rep.a_prediction));
        if (!(row.constant_energy > row.recovery.total)) rep.constant_above_recovery = false;
    }
    rep.residuals_shrink = all_built && rep.limit_residuals.size() >= 2;
    for (std::size_t i = 1; i < rep.limit_residuals.size(); ++i) {
        if (!(rep.limit_residuals[i] < rep.limit_residuals[i - 1])) rep.residuals_shrink = false;
    }
    return rep;
}

void write_summary_csv(const ExpansionReport& r, const std::filesystem::path& path)
{
    std::ofstream out = open_out(path);
    out << "eta,eps,cells,n_opt,E,interfacial,well,nonlocal,E_min,sharp_prediction,E_constant,E_constant_formula,F0,"
           "lower_ratio,upper_ratio_first,upper_ratio_second,energy_bound_ok,l1_bound_ok,error\n";
    for (const auto& row : r.rows) {
        out << row.eta << ',' << row.eps << ',' << row.cells << ',' << row.n_opt << ',';
        if (row.error.empty()) {
            out << row.recovery.total << ',' << row.recovery.interfacial << ',' << row.recovery.well << ','
                << row.recovery.nonlocal << ',';
        } else {
            out << ",,,,";
        }
        if (row.minimized) out << row.minimized->total;
        out << ',';
        if (row.error.empty()) out << row.sharp_prediction;
        out << ',' << row.constant_energy << ',' << row.constant_formula << ',';
        if (row.error.empty()) out << row.f0;
        out << ',' << row.regime.lower_ratio << ',' << row.regime.upper_ratio_first << ','
            << row.regime.upper_ratio_second << ',' << row.energy_bound_ok << ',' << row.l1_bound_ok << ',';
        std::string err = row.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out << err << '\n';
    }
}

void write_fit(const ExpansionReport& r, const std::filesystem::path& path)
{
    std::ofstream out = open_out(path);
    out << "dim = " << r.plan.dim << "\nmass = " << r.plan.mass << "\nregime = " << to_string(r.plan.regime)
        << "\nzeta = " << r.plan.zeta << "\nfit_valid = " << r.fit.valid << '\n';
    if (!r.fit.note.empty()) out << "fit_note = " << r.fit.note << '\n';
    if (r.fit.valid) {
        out << "a = " << r.fit.a << "\nb = " << r.fit.b << '\n';
        out << "residuals =";
        for (double x : r.fit.residuals) out << ' ' << x;
        out << '\n';
    }
    out << "a_prediction = " << r.a_prediction << (r.plan.dim == 3 ? "  # conjectured e0\n" : "  # envelope e0\n");
    out << "a_rel_error = " << r.a_rel_error << '\n';
    out << "b_prediction = " << r.b_prediction << "  # F0 at the recovery configuration\n";
    out << "b_sign_matches = " << r.b_sign_matches << '\n';
    out << "limit_residuals =";
    for (double x : r.limit_residuals) out << ' ' << x;
    out << "\nresiduals_shrink = " << r.residuals_shrink << '\n';
    out << "constant_above_recovery = " << r.constant_above_recovery << '\n';
}

void write_svg(const ExpansionReport& r, const std::filesystem::path& path)
{
    std::vector<double> xs, ys;
    for (const auto& row : r.rows) {
        if (!row.error.empty()) continue;
        xs.push_back(row.eta);
        ys.push_back(row.recovery.total);
    }
    double x0 = 0.0, x1 = 1.0, y0 = r.a_prediction, y1 = r.a_prediction;
    if (!xs.empty()) x1 = *std::max_element(xs.begin(), xs.end()) * 1.1;
    for (double y : ys) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (r.fit.valid) {
        y0 = std::min({y0, r.fit.a, r.fit.a + r.fit.b * x1});
        y1 = std::max({y1, r.fit.a, r.fit.a + r.fit.b * x1});
    }
    const double pad = 0.05 * std::max(y1 - y0, 1e-12);
    y0 -= pad;
    y1 += pad;

    constexpr double W = 480, H = 320, m = 50;
    auto X = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
    auto Y = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\"" << H - m
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">eta</text>\n";
    out << "<text x=\"12\" y=\"" << H / 2 << "\" transform=\"rotate(-90 12 " << H / 2 << ")\" text-anchor=\"middle\">E</text>\n";
    out << "<text x=\"" << m << "\" y=\"" << H - m + 16 << "\" font-size=\"10\">0</text>\n";
    out << "<text x=\"" << W - m << "\" y=\"" << H - m + 16 << "\" font-size=\"10\" text-anchor=\"end\">" << x1 << "</text>\n";
    out << "<text x=\"" << m - 4 << "\" y=\"" << Y(y1) << "\" font-size=\"10\" text-anchor=\"end\">" << y1 << "</text>\n";
    out << "<text x=\"" << m - 4 << "\" y=\"" << Y(y0) << "\" font-size=\"10\" text-anchor=\"end\">" << y0 << "</text>\n";
    out << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(r.a_prediction) << "\" x2=\"" << X(x1) << "\" y2=\""
        << Y(r.a_prediction) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    if (r.fit.valid) {
        out << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(r.fit.a) << "\" x2=\"" << X(x1) << "\" y2=\""
            << Y(r.fit.a + r.fit.b * x1) << "\" stroke=\"steelblue\"/>\n";
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << "<circle cx=\"" << X(xs[i]) << "\" cy=\"" << Y(ys[i]) << "\" r=\"4\" fill=\"crimson\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace okas
