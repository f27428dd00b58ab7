// Diffuse-interface energies and a mass-conserving descent.
//
//   original:   eps int|grad u|^2 + (1/eps) int W(u) + gamma ||u - mean u||^2_{H^-1}
//   3-D:        eta [eps eta^3 int|grad v|^2 + (eta^3/eps) int Wt(v)] + eta ||v - mean v||^2
//   2-D:        eps eta^3 int|grad v|^2 + (eta^3/eps) int Wt(v) + |log eta|^{-1} ||v - mean v||^2
// with Wt(v) = v^2 (1 - eta^d v)^2. In 3-D E(v) = eta^-2 E_orig(eta^3 v) for
// gamma = eta^-3; in 2-D E(v) = eta^-1 E_orig(eta^2 v) for gamma = 1/(|log eta| eta^3).
#pragma once

#include <string>
#include <vector>

#include "okas/grid.hpp"
#include "okas/scaling.hpp"

namespace okas {

EnergyBreakdown energy_original(const ScalarField& u, double eps, double gamma);
EnergyBreakdown energy_rescaled(const ScalarField& v, const ScalingParams& p);

struct SecondOrder {
    double value = 0.0;
    double first_order = 0.0;  // e0 (3-D, conjectured) or envelope (2-D) at int v
    bool conjectured = false;
};

// 3-D: (E(v) - e0(int v)) / eta with the conjectured e0.
// 2-D: |log eta| (E(v) - envelope(int v)).
SecondOrder energy_second_order(const ScalarField& v, const ScalingParams& p);

// Shift v by a constant so that int v = mass.
void project_mass(ScalarField& v, double mass);

struct TraceRow {
    int step = 0;
    EnergyBreakdown energy;
    double mass = 0.0;
    double dt = 0.0;
};

struct MinimizeResult {
    ScalarField field;
    std::vector<TraceRow> trace;  // row 0 is the projected initial state
    int accepted = 0;
    int rejected = 0;
    bool aborted = false;  // non-finite values or dt underflow
    std::string message;
};

struct MinimizeOptions {
    int steps = 1000;
    double dt = 0.0;             // 0 selects 0.1 eps eta^3
    double increase_tol = 1e-9;  // relative energy increase tolerated per step
    int max_halvings = 40;
};

// Semi-implicit H^-1 descent. Per Fourier mode with K = 4 pi^2 |k|^2,
//   (1 + dt (2 A K^2 + 2 C + S K)) v_new = v - dt K B Wt'(v)^ + dt S K v,
// where E = A int|grad v|^2 + B int Wt(v) + C ||v||^2_{H^-1} and S = 2B
// stabilises the explicit well term. The zero mode is untouched, so mass is
// conserved; a step that raises the energy is retried with dt / 2.
MinimizeResult minimize(const ScalarField& v0, const ScalingParams& p, const MinimizeOptions& opt = {});

}  // namespace okas
