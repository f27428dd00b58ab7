// Periodic scalar fields on the unit torus T^d = [-1/2, 1/2)^d, d = 2 or 3.
//
// Layout conventions (fixed, relied on by the field file format):
//   * node j = (j_1, ..., j_d) sits at x = -1/2 + j * h, h = 1 / n_cells;
//   * values are stored row-major, j_1 slowest: flat = (j_1 * n + j_2) * n + j_3;
//   * a field value is the sample at its node; integrals use the cell volume h^d;
//   * Fourier coefficients are true torus coefficients
//         u_hat(k) = h^d sum_j u_j exp(-2 pi i k . x_j),
//     with wave vectors folded into [-n/2, n/2). Only the half spectrum
//     (last axis k_d in [0, n/2]) is stored; the rest follows from Hermitian
//     symmetry.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace okas {

// Point on the torus. The third coordinate is ignored (and kept zero) in 2-D.
using Vec3 = std::array<double, 3>;
using Index3 = std::array<int, 3>;

class TorusGrid {
public:
    // Throws std::invalid_argument unless dim is 2 or 3 and n_cells is a power
    // of two that is at least 8.
    TorusGrid(int dim, int n_cells);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double spacing() const { return 1.0 / n_; }
    double cell_volume() const;
    std::size_t size() const { return size_; }

    Index3 index(std::size_t flat) const;
    // Indices are wrapped periodically.
    std::size_t flat(Index3 idx) const;
    Vec3 node(std::size_t flat) const;

    // Folded integer wave number for a transform index in [0, n).
    int fold(int i) const { return i < n_ / 2 ? i : i - n_; }

    bool operator==(const TorusGrid&) const = default;

private:
    int dim_;
    int n_;
    std::size_t size_;
};

// Wraps each coordinate of x into [-1/2, 1/2).
Vec3 wrap(const Vec3& x, int dim);
// Minimum-image displacement a - b.
Vec3 torus_delta(const Vec3& a, const Vec3& b, int dim);
double torus_distance(const Vec3& a, const Vec3& b, int dim);
double norm(const Vec3& x, int dim);

class ScalarField {
public:
    explicit ScalarField(TorusGrid grid);
    ScalarField(TorusGrid grid, std::vector<double> values);

    // Samples fn at every node.
    static ScalarField sample(const TorusGrid& grid, const std::function<double(const Vec3&)>& fn);
    static ScalarField constant(const TorusGrid& grid, double c);

    const TorusGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // Integral over the unit torus (equals the arithmetic mean).
    double integral() const;
    double mean() const { return integral(); }

    ScalarField& operator+=(double c);
    ScalarField& operator*=(double c);
    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);

private:
    TorusGrid grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

// Integer wave vector (unused components zero in 2-D).
using WaveVector = std::array<int, 3>;

class SpectralField {
public:
    explicit SpectralField(TorusGrid grid);

    const TorusGrid& grid() const { return grid_; }
    std::size_t half_size() const { return coeffs_.size(); }
    int half_n() const { return grid_.n() / 2 + 1; }

    std::vector<std::complex<double>>& data() { return coeffs_; }
    const std::vector<std::complex<double>>& data() const { return coeffs_; }

    // Coefficient for any integer wave vector (folded modulo n, Hermitian
    // symmetry applied when the last component is negative).
    std::complex<double> coefficient(const WaveVector& k) const;

    // Visits every stored mode with its folded wave vector and its multiplicity
    // in a full-spectrum sum (1 on the self-conjugate planes, else 2).
    void for_each_mode(const std::function<void(const WaveVector&, std::complex<double>&, double)>& fn);
    void for_each_mode(const std::function<void(const WaveVector&, const std::complex<double>&, double)>& fn) const;

private:
    TorusGrid grid_;
    std::vector<std::complex<double>> coeffs_;
};

SpectralField to_spectral(const ScalarField& field);
ScalarField from_spectral(const SpectralField& spec);

// L^2 norm squared computed in coefficient space, sum_k |u_hat(k)|^2.
double spectral_l2_sq(const SpectralField& spec);

// ||u - mean u||^2_{H^{-1}} = sum_{k != 0} |u_hat(k)|^2 / (4 pi^2 |k|^2).
double hminus1_sq(const ScalarField& field);
double hminus1_sq(const SpectralField& spec);

// Dirichlet energy int |grad u|^2 with the spectral gradient.
double gradient_sq_integral(const ScalarField& field);
double gradient_sq_integral(const SpectralField& spec);

// Zero-mean w with -Laplace w = f - mean f (spectral).
ScalarField poisson_solve(const ScalarField& f);

// Five/seven-point finite-difference Laplacian.
ScalarField discrete_laplacian(const ScalarField& field);

struct Norms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

Norms norms(const ScalarField& field);

// Total variation of a {0,1} field by counting sign changes across cell
// faces, times the face area h^{d-1}. Exact for axis-aligned interfaces and
// biased upwards for curved ones (at most a factor 4/pi in 2-D, the Manhattan
// bound). Throws std::invalid_argument for non-binary input.
double perimeter_estimate(const ScalarField& indicator);

}  // namespace okas
