#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hartmann/errors.hpp"

namespace hartmann {

/// Largest derivative order the stencil routines will compose.
inline constexpr int kMaxDerivOrder = 8;

/// Tensor mesh on T x [0, y_max]: nx periodic x-nodes, ny uniform y-cells
/// (ny+1 nodes, y_0 = 0, y_ny = y_max).
struct GridSpec {
    int nx = 64;
    int ny = 128;
    double x_length = 2.0 * std::numbers::pi;
    double y_max = 30.0;

    double dx() const { return x_length / nx; }
    double dy() const { return y_max / ny; }
    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }

    bool operator==(const GridSpec&) const = default;

    void validate() const {
        if (nx < 8 || nx % 2 != 0)
            throw ConfigError("grid.nx", "nx must be even and >= 8");
        if (ny < 16)
            throw ConfigError("grid.ny", "ny must be >= 16");
        if (y_max < 10.0)
            throw ConfigError("grid.y_max", "y_max must be >= 10");
        if (x_length <= 0.0)
            throw ConfigError("grid.x_length", "x_length must be positive");
    }
};

/// Scalar samples on a GridSpec, row x-major: index = ix*(ny+1) + iy.
/// Logically periodic in x; plain values in y.
class Field {
public:
    Field() = default;
    explicit Field(const GridSpec& g, double fill = 0.0)
        : grid_(g), v_(static_cast<size_t>(g.nx) * (g.ny + 1), fill) {}

    static Field from_function(const GridSpec& g,
                               const std::function<double(double, double)>& f) {
        Field out(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j <= g.ny; ++j)
                out(i, j) = f(g.x(i), g.y(j));
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    int nx() const { return grid_.nx; }
    int ny() const { return grid_.ny; }

    double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * (grid_.ny + 1) + j]; }
    double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * (grid_.ny + 1) + j]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

private:
    GridSpec grid_;
    std::vector<double> v_;
};

// ---------------------------------------------------------------------------
// elementwise arithmetic

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double c, const Field& a);

// ---------------------------------------------------------------------------
// derivative stencils

/// d^k/dx^k by the 4th-order central periodic difference applied k times.
Field deriv_x(const Field& f, int k);

/// d^k/dy^k by 2nd-order differences (central interior, one-sided at the two
/// walls) applied k times.
Field deriv_y(const Field& f, int k);

/// D^alpha = dx^a1 dy^a2.
Field d_alpha(const Field& f, int a1, int a2);

// ---------------------------------------------------------------------------
// quadrature

/// Trapezoidal integral from y to y_max, per x-column; zero at y = y_max.
Field tail_integral_y(const Field& f);

/// Trapezoidal integral from 0 to y, per x-column; zero at y = 0.
Field cum_integral_y(const Field& f);

/// sqrt( integral over T x [0,y_max] of (1+y)^{2 lambda} f^2 ),
/// trapezoid in y, periodic rectangle rule in x.
double weighted_l2(const Field& f, double lambda);

/// max over the grid of (1+y)^lambda |f|.
double weighted_max_abs(const Field& f, double lambda);

/// max over the grid of |f|.
double max_abs(const Field& f);

/// Trapezoid weight of y-node j on the given grid.
inline double trapz_weight(const GridSpec& g, int j) {
    return (j == 0 || j == g.ny) ? 0.5 * g.dy() : g.dy();
}

// ---------------------------------------------------------------------------
// x-profiles (vectors of nx values on the periodic x-nodes)

using XProfile = std::vector<double>;

/// sqrt( integral over T of p^2 ) by the periodic rectangle rule.
double l2_x(const XProfile& p, const GridSpec& g);

/// max |p|.
double max_abs_x(const XProfile& p);

/// Broadcast an x-profile to a 2D field (constant in y).
Field broadcast_x(const XProfile& p, const GridSpec& g);

/// One-sided 2nd-order estimate of d^m f / dy^m at y = 0, per x-column.
/// Uses Fornberg weights on the first (m + 3) nodes.
XProfile wall_normal_derivative(const Field& f, int m);

/// Finite-difference weights for the m-th derivative at x0 given nodes xs
/// (Fornberg's algorithm).
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m);

} // namespace hartmann
