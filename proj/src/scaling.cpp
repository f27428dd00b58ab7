#include "okas/scaling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace okas {

EnergyBreakdown make_breakdown(double interfacial, double well, double nonlocal)
{
    return {interfacial, well, nonlocal, interfacial + well + nonlocal};
}

void ScalingParams::validate() const
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("ScalingParams: dimension must be 2 or 3");
    if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("ScalingParams: eta must lie in (0, 1)");
    if (!(eps > 0.0)) throw std::invalid_argument("ScalingParams: eps must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("ScalingParams: mass must be positive");
    if (!(zeta > 0.0)) throw std::invalid_argument("ScalingParams: zeta must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("ScalingParams: sigma must be positive");
}

double ScalingParams::gamma() const
{
    return dim == 3 ? std::pow(eta, -3.0) : 1.0 / (log_factor() * eta * eta * eta);
}

double ScalingParams::eta_d() const { return std::pow(eta, dim); }

double ScalingParams::log_factor() const { return std::abs(std::log(eta)); }

RegimeReport ScalingParams::regime() const
{
    RegimeReport r;
    if (dim == 3) {
        r.lower_ratio = eps / std::pow(eta, 4.0 + zeta);
        r.upper_ratio_first = r.lower_ratio;
        r.upper_ratio_second = r.lower_ratio;
    } else {
        r.lower_ratio = eps * std::pow(eta, -3.0 - zeta);
        r.upper_ratio_first = eps * log_factor() / eta;
        r.upper_ratio_second = eps * log_factor() * log_factor() / eta;
    }
    r.lower_ok = r.lower_ratio < 1.0;
    r.upper_first_ok = r.upper_ratio_first < 1.0;
    r.upper_second_ok = r.upper_ratio_second < 1.0;
    return r;
}

std::string ScalingParams::describe() const
{
    std::ostringstream os;
    os << "d=" << dim << " eta=" << eta << " eps=" << eps << " M=" << mass << " zeta=" << zeta << " sigma=" << sigma
       << " gamma=" << gamma();
    return os.str();
}

}  // namespace okas
