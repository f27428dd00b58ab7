// Recovery configurations and the eta-sweep check of the two-term expansion
//   E(eta) ~ a + b eta,
// compared against the first-order energy (e0 in 3-D, its envelope in 2-D)
// and the second-order energy F0 at the recovery configuration.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "okas/droplets.hpp"
#include "okas/grid.hpp"
#include "okas/scaling.hpp"

namespace okas {

enum class Regime { first, second };

Regime parse_regime(const std::string& s);
std::string to_string(Regime r);

// 3-D: eps = eta^{4 + zeta + 1/2}. 2-D: eps = eta / |log eta|^2 (first) or
// eta / |log eta|^3 (second). Throws unless etas are strictly decreasing in (0, 1).
std::vector<double> slaving_schedule(const std::vector<double>& etas, int dim, double zeta, Regime regime);

struct RecoveryOptions {
    int restarts = 10;
    std::uint64_t seed = 1;
    double mass_tol = 1e-6;
};

struct Recovery {
    DropletConfiguration config;  // nominal masses, optimized positions
    ScalarField field;            // v = u / eta^d, int v = M
    int n_opt = 1;
    double mass_scale = 1.0;      // droplet masses used for the profile, relative to nominal
    double interfacial = 0.0;     // diffuse interfacial energy of u
    bool energy_bound_ok = false;
    bool l1_bound_ok = false;
};

// Equal split into n_opt droplets, positions from the F0 optimizer (a single
// droplet sits at the origin), profile from mollify_indicator with alpha = eta.
// The droplet radii are rescaled by a root-find until int v = M within mass_tol.
// Throws std::invalid_argument with a suggested grid size when eps < 3h or a
// radius is below 4h.
Recovery build_recovery(double M, int dim, double eta, const TorusGrid& grid, double sigma, double eps,
                        const RecoveryOptions& opt = {});

// Smallest power-of-two cell count that resolves eps by 3 cells and radius r by 4.
int suggested_cells(double eps, double r);

struct SweepPlan {
    int dim = 2;
    double mass = 1.0;
    std::vector<double> etas{0.25, 0.2, 0.15};
    double zeta = 1.0;
    Regime regime = Regime::second;
    std::vector<int> cells{256};  // one entry per eta, or one for all
    double sigma = 1.0 / 3.0;
    bool minimize = false;
    int minimize_steps = 200;
    int restarts = 10;
    std::uint64_t seed = 1;

    // Throws std::invalid_argument on inconsistent sizes, a non-decreasing eta
    // list, or a grid that leaves eps below 3 cells.
    void validate() const;
    int cells_for(std::size_t i) const;
};

struct SweepRow {
    double eta = 0.0;
    double eps = 0.0;
    int cells = 0;
    int n_opt = 0;
    EnergyBreakdown recovery;
    std::optional<EnergyBreakdown> minimized;
    double sharp_prediction = 0.0;  // leading + correction at the recovery configuration
    double constant_energy = 0.0;   // E(v = M) on the grid
    double constant_formula = 0.0;  // (eta^{d+1} or eta^3)/eps M^2 (1 - eta^d M)^2
    double f0 = 0.0;                // F0 at the recovery configuration
    RegimeReport regime;
    bool energy_bound_ok = false;
    bool l1_bound_ok = false;
    std::string error;              // non-empty when the point could not be built
};

struct LinearFit {
    bool valid = false;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> residuals;  // E - (a + b eta), sweep order
    std::string note;
};

struct ExpansionReport {
    SweepPlan plan;
    std::vector<SweepRow> rows;
    LinearFit fit;
    double a_prediction = 0.0;  // e0 (3-D, conjectured) or envelope (2-D) of M
    double b_prediction = 0.0;  // F0 at the recovery configuration of the last eta
    double a_rel_error = 0.0;
    // |E(eta) - a_prediction| in sweep order, and whether it shrinks with eta.
    std::vector<double> limit_residuals;
    bool residuals_shrink = false;
    bool b_sign_matches = false;
    bool constant_above_recovery = false;
};

ExpansionReport expansion_check(const SweepPlan& plan);

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

void write_summary_csv(const ExpansionReport& r, const std::filesystem::path& path);
void write_fit(const ExpansionReport& r, const std::filesystem::path& path);
void write_svg(const ExpansionReport& r, const std::filesystem::path& path);

}  // namespace okas
