// Double well W(u) = u^2 (1 - u)^2, its surface tension, the primitive
// phi(s) = 2 int_0^s sqrt(W), the 1-D optimal profile, mollification of
// droplet indicators and level-set thresholding back to sharp sets.
//
// The well is fixed with minima at 0 and 1; sqrt(W) = t(1 - t) on [0, 1] so
// sigma = 1/3 and phi(s) = s^2 (3 - 2s) / 3.
#pragma once

#include "okas/droplets.hpp"
#include "okas/grid.hpp"

namespace okas {

double well(double u);
double well_derivative(double u);
// v^2 (1 - eta^d v)^2 = W(eta^d v) / eta^{2d}.
double well_rescaled(double v, double eta, int dim);
double well_rescaled_derivative(double v, double eta, int dim);

// 2 int_0^1 sqrt(c W(t)) dt by adaptive quadrature (c scales the well).
double surface_tension(double well_scale = 1.0);
// Cached surface_tension(1).
double sigma();

// 2 int_0^s sqrt(W) by quadrature, s clipped to [0, 1].
double phi(double s);
double phi_closed_form(double s);
double clip01(double u);

// Logistic heteroclinic 1 / (1 + exp(-t / eps)): eps q' = sqrt(W(q)), q(0) = 1/2.
double optimal_profile(double t, double eps);

// delta in (0, 1/4) with phi(1 - 2 delta) - phi(2 delta) = sigma - tau.
double truncation_delta(double tau);

// int eps |grad u|^2 + W(u) / eps with the spectral gradient.
double interfacial_energy(const ScalarField& u, double eps);

// int |grad phi(clip u)| with centered differences.
double phi_variation(const ScalarField& u);

struct Mollified {
    ScalarField field;
    double c0 = 0.0;            // L1 constant C0(alpha) for the returned profile
    double perimeter = 0.0;     // exact perimeter of the droplets
    double interfacial = 0.0;   // int eps|grad u|^2 + W(u)/eps
    double l1_distance = 0.0;   // ||chi - u||_L1, node quadrature
    bool energy_bound_ok = false;  // interfacial <= (sigma + alpha) perimeter
    bool l1_bound_ok = false;      // l1_distance <= c0 eps perimeter
};

// Mollified indicator u = q(-s / eps) with s the signed torus distance to the
// nearest droplet boundary. The L1 constant is the one-dimensional defect
// int |H - q| = 2 eps log 2 per unit perimeter, widened by (1 + alpha/sigma).
// Both inequalities are evaluated on the output. Throws std::invalid_argument
// when two droplets come within 10 eps of each other or when eps < 3 h. A
// droplet against its own periodic image is only required not to overlap.
Mollified mollify_indicator(const DropletConfiguration& config, const TorusGrid& grid, double eps, double alpha);

// Indicator of the droplets sampled at the nodes.
ScalarField droplet_indicator(const DropletConfiguration& config, const TorusGrid& grid);

struct Thresholded {
    ScalarField indicator;
    double level_phi = 0.0;  // selected t
    double level_u = 0.0;    // phi^{-1}(t)
    double perimeter = 0.0;  // face-count perimeter of the indicator
};

// Clips to [0, 1], scans 101 levels t evenly in [phi(delta), phi(1 - delta)],
// and keeps the super-level set {phi(clip u) > t} with the smallest face-count
// perimeter (first one on ties). Throws std::invalid_argument for a constant
// field.
Thresholded threshold_to_sharp(const ScalarField& field, double delta = 0.01);

}  // namespace okas
