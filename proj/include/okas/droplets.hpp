// Ball/disk configurations: set of droplets with centers on the torus and
// rescaled masses m. Droplet i occupies volume m * eta^d, so
//   r = eta (3m / 4pi)^{1/3}  (3-D),   r = eta sqrt(m / pi)  (2-D).
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "okas/green.hpp"
#include "okas/grid.hpp"

namespace okas {

struct Droplet {
    Vec3 center{0.0, 0.0, 0.0};
    double mass = 0.0;
};

double droplet_radius(double mass, double eta, int dim);
// Surface area (3-D) or circumference (2-D) of a ball of radius r.
double sphere_measure(double r, int dim);

class DropletConfiguration {
public:
    // Throws std::invalid_argument for a bad dimension, eta <= 0, nonpositive
    // masses, or overlapping droplets (torus center distance <= sum of radii,
    // or a droplet meeting its own periodic image).
    DropletConfiguration(int dim, double eta, std::vector<Droplet> droplets = {});

    int dim() const { return dim_; }
    double eta() const { return eta_; }
    const std::vector<Droplet>& droplets() const { return droplets_; }
    std::size_t size() const { return droplets_.size(); }
    bool empty() const { return droplets_.empty(); }

    double radius(std::size_t i) const;
    double total_mass() const;
    // Sum of exact droplet surface areas, torus units.
    double perimeter() const;
    // Smallest gap between droplet boundaries (center distance minus radii),
    // including each droplet against its own images. Infinity when empty.
    double min_gap() const;
    // Same over distinct droplets only; infinity for fewer than two.
    double pair_gap() const;

    AtomicMeasure atoms() const;

private:
    int dim_;
    double eta_;
    std::vector<Droplet> droplets_;
};

// Droplet file: one droplet per line, `x y mass` (2-D) or `x y z mass` (3-D),
// `#` starts a comment. The dimension is taken from the column count and must
// agree across lines.
struct DropletList {
    int dim = 0;
    std::vector<Droplet> droplets;
};

DropletList read_droplets(std::istream& in);
DropletList read_droplets(const std::filesystem::path& path);

}  // namespace okas
