// Scaling parameters of the rescaled problem and the energy breakdown record.
//
//   3-D: gamma = eta^-3, mass constraint int u = M eta^3, lower-bound slaving
//        eps / eta^{4+zeta} -> 0.
//   2-D: gamma = 1 / (|log eta| eta^3), int u = M eta^2, lower-bound slaving
//        eps eta^{-3-zeta} -> 0; upper bound needs eps |log eta|^k / eta -> 0
//        with k = 1 (first order) or k = 2 (second order).
// A finite list cannot show a limit, so the validator flags a ratio >= 1.
#pragma once

#include <string>

namespace okas {

struct EnergyBreakdown {
    double interfacial = 0.0;
    double well = 0.0;
    double nonlocal = 0.0;
    double total = 0.0;
};

EnergyBreakdown make_breakdown(double interfacial, double well, double nonlocal);

struct RegimeReport {
    double lower_ratio = 0.0;         // 3-D eps/eta^{4+zeta}, 2-D eps eta^{-3-zeta}
    double upper_ratio_first = 0.0;   // 2-D eps |log eta| / eta; 3-D same as lower
    double upper_ratio_second = 0.0;  // 2-D eps |log eta|^2 / eta; 3-D same as lower
    bool lower_ok = false;
    bool upper_first_ok = false;
    bool upper_second_ok = false;
};

struct ScalingParams {
    int dim = 3;
    double eta = 0.1;
    double eps = 1e-3;
    double mass = 1.0;
    double zeta = 1.0;
    double sigma = 1.0 / 3.0;

    // Throws std::invalid_argument on a bad dimension or nonpositive values.
    void validate() const;
    double gamma() const;
    // eta^d: the value of u inside a droplet is 1, of v is eta^{-d}.
    double eta_d() const;
    double log_factor() const;  // |log eta|
    RegimeReport regime() const;
    std::string describe() const;
};

}  // namespace okas
