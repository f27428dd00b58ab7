#include "okas/droplets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace okas {

using std::numbers::pi;

double droplet_radius(double mass, double eta, int dim)
{
    return dim == 3 ? eta * std::cbrt(3.0 * mass / (4.0 * pi)) : eta * std::sqrt(mass / pi);
}

double sphere_measure(double r, int dim) { return dim == 3 ? 4.0 * pi * r * r : 2.0 * pi * r; }

DropletConfiguration::DropletConfiguration(int dim, double eta, std::vector<Droplet> droplets)
    : dim_(dim), eta_(eta), droplets_(std::move(droplets))
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("droplets: dimension must be 2 or 3");
    if (!(eta > 0.0)) throw std::invalid_argument("droplets: eta must be positive");
    for (auto& d : droplets_) {
        if (!(d.mass > 0.0)) throw std::invalid_argument("droplets: masses must be positive");
        if (dim == 2) d.center[2] = 0.0;
        d.center = wrap(d.center, dim);
    }
    if (min_gap() <= 0.0) throw std::invalid_argument("droplets: droplets overlap");
}

double DropletConfiguration::radius(std::size_t i) const { return droplet_radius(droplets_.at(i).mass, eta_, dim_); }

double DropletConfiguration::total_mass() const
{
    double s = 0.0;
    for (const auto& d : droplets_) s += d.mass;
    return s;
}

double DropletConfiguration::perimeter() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += sphere_measure(radius(i), dim_);
    return s;
}

double DropletConfiguration::min_gap() const
{
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
        // nearest image of itself sits at distance 1
        gap = std::min(gap, 1.0 - 2.0 * radius(i));
        for (std::size_t j = i + 1; j < size(); ++j) {
            gap = std::min(gap, torus_distance(droplets_[i].center, droplets_[j].center, dim_) - radius(i) - radius(j));
        }
    }
    return gap;
}

double DropletConfiguration::pair_gap() const
{
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            gap = std::min(gap, torus_distance(droplets_[i].center, droplets_[j].center, dim_) - radius(i) - radius(j));
        }
    }
    return gap;
}

AtomicMeasure DropletConfiguration::atoms() const
{
    AtomicMeasure mu;
    mu.dim = dim_;
    for (const auto& d : droplets_) {
        mu.points.push_back(d.center);
        mu.weights.push_back(d.mass);
    }
    return mu;
}

DropletList read_droplets(std::istream& in)
{
    DropletList out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> cols;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) {
                throw std::runtime_error("droplet file line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
            cols.push_back(v);
        }
        if (cols.empty()) continue;
        if (cols.size() != 3 && cols.size() != 4) {
            throw std::runtime_error("droplet file line " + std::to_string(lineno) + ": expected `x y [z] mass`");
        }
        const int dim = static_cast<int>(cols.size()) - 1;
        if (out.dim != 0 && out.dim != dim) {
            throw std::runtime_error("droplet file line " + std::to_string(lineno) + ": mixed dimensions");
        }
        out.dim = dim;
        Droplet d;
        d.center = {cols[0], cols[1], dim == 3 ? cols[2] : 0.0};
        d.mass = cols.back();
        out.droplets.push_back(d);
    }
    return out;
}

DropletList read_droplets(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open droplet file " + path.string());
    return read_droplets(in);
}

}  // namespace okas
