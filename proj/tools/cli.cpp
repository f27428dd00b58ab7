#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "okas/diffuse.hpp"
#include "okas/droplets.hpp"
#include "okas/effective.hpp"
#include "okas/field_io.hpp"
#include "okas/green.hpp"
#include "okas/harness.hpp"
#include "okas/interaction.hpp"
#include "okas/sharp.hpp"
#include "okas/wells.hpp"

namespace okas::cli {

namespace fs = std::filesystem;

namespace {

Vec3 to_point(const std::vector<double>& c, int dim)
{
    if (static_cast<int>(c.size()) != dim) throw std::invalid_argument("--at needs " + std::to_string(dim) + " coordinates");
    return Vec3{c[0], c[1], dim == 3 ? c[2] : 0.0};
}

DropletConfiguration load_config(const fs::path& file, double eta)
{
    DropletList list = read_droplets(file);
    return DropletConfiguration(list.dim, eta, std::move(list.droplets));
}

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << std::setprecision(12);
    return f;
}

struct GreenArgs {
    int dim = 2;
    std::vector<double> at;
    bool self_constant = false;
};

void run_green(const GreenArgs& a, std::ostream& out)
{
    if (a.self_constant) {
        // Convergence in the number of shells, both sums cut at the same depth.
        out << "cutoff,value,delta\n";
        double prev = std::nan("");
        for (int c = 1; c <= 8; ++c) {
            const double v = EwaldEvaluator(a.dim, std::sqrt(std::numbers::pi), c, c).regular_at_zero();
            out << c << ',' << v << ',';
            if (std::isfinite(prev)) out << std::abs(v - prev);
            out << '\n';
            prev = v;
        }
        out << "g0=" << regular_part_at_zero(a.dim) << '\n';
        return;
    }
    if (a.at.empty()) throw std::invalid_argument("green: give --at or --self-constant");
    const Vec3 x = to_point(a.at, a.dim);
    out << "G=" << green_value(x, a.dim) << "\nregular=" << regular_part(x, a.dim) << '\n';
}

struct MollifyArgs {
    std::string config;
    double eta = 0.1;
    double eps = 0.01;
    double alpha = 0.05;
    int grid = 256;
    std::string out = "field.txt";
};

void run_mollify(const MollifyArgs& a, std::ostream& out)
{
    const DropletConfiguration config = load_config(a.config, a.eta);
    const TorusGrid grid(config.dim(), a.grid);
    const Mollified m = mollify_indicator(config, grid, a.eps, a.alpha);
    write_field(fs::path(a.out), m.field);
    const double sig = sigma();
    out << "perimeter,interfacial,energy_bound,energy_bound_ok,l1_distance,l1_bound,l1_bound_ok,c0\n";
    out << m.perimeter << ',' << m.interfacial << ',' << (sig + a.alpha) * m.perimeter << ',' << m.energy_bound_ok << ','
        << m.l1_distance << ',' << m.c0 * a.eps * m.perimeter << ',' << m.l1_bound_ok << ',' << m.c0 << '\n';
}

struct MinimizeArgs {
    int dim = 2;
    double eta = 0.2;
    double eps = 0.02;
    double mass = 1.0;
    int grid = 128;
    int steps = 500;
    double dt = 0.0;
    std::string init = "droplets";
    double noise = 0.0;
    std::uint64_t seed = 1;
    std::string out = "field.txt";
    std::string trace = "trace.csv";
};

void run_minimize(const MinimizeArgs& a, std::ostream& out)
{
    ScalingParams p;
    p.dim = a.dim;
    p.eta = a.eta;
    p.eps = a.eps;
    p.mass = a.mass;
    p.validate();
    const TorusGrid grid(a.dim, a.grid);

    ScalarField v0(grid);
    if (a.init == "const") {
        v0 = ScalarField::constant(grid, a.mass);
    } else if (a.init == "droplets") {
        v0 = build_recovery(a.mass, a.dim, a.eta, grid, p.sigma, a.eps).field;
    } else {
        v0 = read_field(fs::path(a.init));
        if (!(v0.grid() == grid)) throw std::invalid_argument("minimize: initial field grid differs from --dim/--grid");
    }
    if (a.noise > 0.0) {
        std::mt19937_64 rng(a.seed);
        std::normal_distribution<double> z(0.0, a.noise);
        for (double& x : v0.values()) x += z(rng);
    }

    MinimizeOptions opt;
    opt.steps = a.steps;
    opt.dt = a.dt;
    const MinimizeResult r = minimize(v0, p, opt);
    write_field(fs::path(a.out), r.field);
    std::ofstream t = open_out(a.trace);
    t << "step,interfacial,well,nonlocal,total,mass\n";
    for (const auto& row : r.trace) {
        t << row.step << ',' << row.energy.interfacial << ',' << row.energy.well << ',' << row.energy.nonlocal << ','
          << row.energy.total << ',' << row.mass << '\n';
    }
    out << "energy=" << r.trace.back().energy.total << "\naccepted=" << r.accepted << "\nrejected=" << r.rejected
        << "\ndt=" << r.trace.back().dt << '\n';
    if (r.aborted) {
        out << "aborted=" << r.message << '\n';
        throw std::runtime_error("minimize: " + r.message);
    }
}

struct SharpArgs {
    std::string config;
    double eta = 0.1;
    int grid = 256;
    std::string mode = "grid";
};

void run_sharp(const SharpArgs& a, std::ostream& out)
{
    const DropletConfiguration config = load_config(a.config, a.eta);
    ScalingParams p;
    p.dim = config.dim();
    p.eta = a.eta;
    p.mass = std::max(config.total_mass(), 1e-300);
    if (a.mode == "grid") {
        const EnergyBreakdown e = sharp_energy_grid(config, TorusGrid(config.dim(), a.grid), p);
        out << "interfacial=" << e.interfacial << "\nnonlocal=" << e.nonlocal << "\ntotal=" << e.total << '\n';
    } else {
        const AsymptoticEnergy e = sharp_energy_asymptotic(config, p);
        out << "leading=" << e.leading << "\ncorrection=" << e.correction << "\ntotal=" << e.total() << '\n';
    }
}

struct EffectiveArgs {
    int dim = 3;
    double mass = 1.0;
    double sigma = 1.0 / 3.0;
    std::string sweep;
};

void run_effective(const EffectiveArgs& a, std::ostream& out)
{
    if (a.dim == 3) {
        const E0Value e = e0_conjectured(a.mass, a.sigma);
        out << "value=" << e.value << "\nn_opt=" << e.n_opt << "\nminimizer_exists=" << e.minimizer_exists
            << "\npieces_below_m_star=" << e.pieces_below_m_star << "\nconjectured=" << e.conjectured
            << "\nm_star=" << m_star(a.sigma) << "\nadmissible=" << weights_admissible({a.mass}, 3, a.sigma) << '\n';
    } else if (a.dim == 2) {
        const EnvelopeValue e = e0_2d_envelope(a.mass, a.sigma);
        out << "e0=" << e0_2d(a.mass, a.sigma) << "\nvalue=" << e.value << "\nn_opt=" << e.n_opt
            << "\nsplit_threshold=" << split_threshold_2d(a.sigma) << "\nsingleton_bound=" << singleton_mass_bound_2d()
            << "\nadmissible=" << weights_admissible({a.mass}, 2, a.sigma) << '\n';
    } else {
        throw std::invalid_argument("effective: dimension must be 2 or 3");
    }
    if (a.sweep.empty()) return;

    double m0 = 0.0, m1 = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(a.sweep);
    if (!(in >> m0 >> c1 >> m1 >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 || !(m0 > 0.0) || !(m1 > m0)) {
        throw std::invalid_argument("--sweep expects m0:m1:steps with 0 < m0 < m1");
    }
    out << "m,value,n_opt\n";
    for (int i = 0; i <= steps; ++i) {
        const double m = m0 + (m1 - m0) * i / steps;
        if (a.dim == 3) {
            const E0Value e = e0_conjectured(m, a.sigma);
            out << m << ',' << e.value << ',' << e.n_opt << '\n';
        } else {
            const EnvelopeValue e = e0_2d_envelope(m, a.sigma);
            out << m << ',' << e.value << ',' << e.n_opt << '\n';
        }
    }
}

struct PlaceArgs {
    int dim = 2;
    int n = 2;
    double mass = 1.0;
    int restarts = 10;
    std::uint64_t seed = 1;
    std::string out;
};

void run_place(const PlaceArgs& a, std::ostream& out)
{
    const InteractionResult r = optimize_positions(a.n, a.mass, a.dim, a.restarts, a.seed);
    out << "energy=" << r.energy << "\ngradient_norm=" << r.gradient_norm << "\nrestarts_used=" << r.restarts_used << '\n';
    std::vector<double> nn(r.positions.size(), 0.0);
    if (r.positions.size() >= 2) {
        // per-point NN distance, in index order
        for (std::size_t i = 0; i < r.positions.size(); ++i) {
            double best = 1e300;
            for (std::size_t j = 0; j < r.positions.size(); ++j) {
                if (i != j) best = std::min(best, torus_distance(r.positions[i], r.positions[j], a.dim));
            }
            nn[i] = best;
        }
        const LatticeReport lat = lattice_report(r.positions, a.dim);
        out << "nn_mean=" << lat.mean << "\nnn_cv=" << lat.cv << '\n';
    }
    if (a.out.empty()) return;
    std::ofstream f = open_out(a.out);
    f << (a.dim == 3 ? "index,x,y,z,nn_distance\n" : "index,x,y,nn_distance\n");
    for (std::size_t i = 0; i < r.positions.size(); ++i) {
        f << i;
        for (int k = 0; k < a.dim; ++k) f << ',' << r.positions[i][k];
        f << ',' << nn[i] << '\n';
    }
}

struct ExpandArgs {
    int dim = 2;
    double mass = 1.0;
    std::vector<double> etas{0.25, 0.2, 0.15};
    double zeta = 1.0;
    std::string regime = "second";
    std::vector<int> grid{256};
    bool minimize = false;
    int steps = 200;
    int restarts = 10;
    std::uint64_t seed = 1;
    double sigma = 1.0 / 3.0;
    bool svg = false;
    std::string out = "report";
};

void run_expand(const ExpandArgs& a, std::ostream& out)
{
    SweepPlan plan;
    plan.dim = a.dim;
    plan.mass = a.mass;
    plan.etas = a.etas;
    plan.zeta = a.zeta;
    plan.regime = parse_regime(a.regime);
    plan.cells = a.grid;
    plan.sigma = a.sigma;
    plan.minimize = a.minimize;
    plan.minimize_steps = a.steps;
    plan.restarts = a.restarts;
    plan.seed = a.seed;
    const ExpansionReport r = expansion_check(plan);
    const fs::path dir(a.out);
    write_summary_csv(r, dir / "summary.csv");
    write_fit(r, dir / "fit.txt");
    if (a.svg) write_svg(r, dir / "energy.svg");
    out << "fit_valid=" << r.fit.valid << "\na=" << r.fit.a << "\nb=" << r.fit.b << "\na_prediction=" << r.a_prediction
        << "\na_rel_error=" << r.a_rel_error << "\nb_prediction=" << r.b_prediction << '\n';
    for (const auto& row : r.rows) {
        if (!row.error.empty()) out << "error at eta=" << row.eta << ": " << row.error << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"okas: energies of the small-volume-fraction Ohta-Kawasaki problem"};
    app.require_subcommand(1);
    // CLI11 reads config files only at the top level; sections name the subcommand ([expand])
    app.fallthrough();
    app.set_config("--config", "", "ini/toml file, one [subcommand] section with key = value lines mirroring the flags");

    GreenArgs ga;
    auto* green = app.add_subcommand("green", "periodic Green's function and its regular part");
    green->add_option("--dim", ga.dim)->check(CLI::IsMember({2, 3}));
    green->add_option("--at", ga.at, "point x,y[,z]")->delimiter(',');
    green->add_flag("--self-constant", ga.self_constant, "g(0) with a shell convergence table");

    MollifyArgs ma;
    auto* mol = app.add_subcommand("mollify", "diffuse profile of a droplet configuration");
    mol->add_option("--config", ma.config)->required()->check(CLI::ExistingFile);
    mol->add_option("--eta", ma.eta)->required();
    mol->add_option("--eps", ma.eps)->required();
    mol->add_option("--alpha", ma.alpha);
    mol->add_option("--grid", ma.grid);
    mol->add_option("--out", ma.out);

    MinimizeArgs na;
    auto* mini = app.add_subcommand("minimize", "H^-1 descent of the rescaled diffuse energy");
    mini->add_option("--dim", na.dim)->check(CLI::IsMember({2, 3}));
    mini->add_option("--eta", na.eta)->required();
    mini->add_option("--eps", na.eps)->required();
    mini->add_option("--mass", na.mass);
    mini->add_option("--grid", na.grid);
    mini->add_option("--steps", na.steps);
    mini->add_option("--dt", na.dt, "0 picks 0.1 eps eta^3");
    mini->add_option("--init", na.init, "const, droplets, or a field file");
    mini->add_option("--noise", na.noise, "Gaussian perturbation of the initial field");
    mini->add_option("--seed", na.seed);
    mini->add_option("--out", na.out);
    mini->add_option("--trace", na.trace);

    SharpArgs sa;
    auto* sharp = app.add_subcommand("sharp", "sharp-interface energy of a droplet configuration");
    sharp->add_option("--config", sa.config)->required()->check(CLI::ExistingFile);
    sharp->add_option("--eta", sa.eta)->required();
    sharp->add_option("--grid", sa.grid);
    sharp->add_option("--mode", sa.mode)->check(CLI::IsMember({"grid", "asymptotic"}));

    EffectiveArgs ea;
    auto* eff = app.add_subcommand("effective", "first-order effective energies");
    eff->add_option("--dim", ea.dim)->check(CLI::IsMember({2, 3}));
    eff->add_option("--mass", ea.mass)->required();
    eff->add_option("--sigma", ea.sigma);
    eff->add_option("--sweep", ea.sweep, "m0:m1:steps");

    PlaceArgs pa;
    auto* place = app.add_subcommand("place", "minimize the pair interaction over droplet positions");
    place->add_option("--dim", pa.dim)->check(CLI::IsMember({2, 3}));
    place->add_option("--n", pa.n)->required()->check(CLI::PositiveNumber);
    place->add_option("--mass", pa.mass);
    place->add_option("--restarts", pa.restarts);
    place->add_option("--seed", pa.seed);
    place->add_option("--out", pa.out);

    ExpandArgs xa;
    auto* expand = app.add_subcommand("expand", "eta sweep of recovery energies and the two-term fit");
    expand->add_option("--dim", xa.dim)->check(CLI::IsMember({2, 3}));
    expand->add_option("--mass", xa.mass);
    expand->add_option("--etas", xa.etas)->delimiter(',');
    expand->add_option("--zeta", xa.zeta);
    expand->add_option("--regime", xa.regime)->check(CLI::IsMember({"first", "second"}));
    expand->add_option("--grid", xa.grid)->delimiter(',');
    expand->add_flag("--minimize", xa.minimize);
    expand->add_option("--steps", xa.steps);
    expand->add_option("--restarts", xa.restarts);
    expand->add_option("--seed", xa.seed);
    expand->add_option("--sigma", xa.sigma);
    expand->add_flag("--svg", xa.svg);
    expand->add_option("--out", xa.out);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    out << std::setprecision(12);
    try {
        if (*green) run_green(ga, out);
        else if (*mol) run_mollify(ma, out);
        else if (*mini) run_minimize(na, out);
        else if (*sharp) run_sharp(sa, out);
        else if (*eff) run_effective(ea, out);
        else if (*place) run_place(pa, out);
        else if (*expand) run_expand(xa, out);
    } catch (const std::exception& e) {
        err << "okas: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace okas::cli
