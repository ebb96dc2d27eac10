#include "hartmann/grid.hpp"

#include <algorithm>
#include <cassert>

namespace hartmann {

namespace {

void check_same_grid(const Field& a, const Field& b) {
    assert(a.grid() == b.grid());
    (void)b;
}

void check_order(int k) {
    if (k < 0 || k > kMaxDerivOrder) throw UnsupportedOrder(k);
}

} // namespace

Field operator+(const Field& a, const Field& b) {
    check_same_grid(a, b);
    Field out = a;
    for (size_t n = 0; n < out.data().size(); ++n) out.data()[n] += b.data()[n];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    check_same_grid(a, b);
    Field out = a;
    for (size_t n = 0; n < out.data().size(); ++n) out.data()[n] -= b.data()[n];
    return out;
}

Field operator*(const Field& a, const Field& b) {
    check_same_grid(a, b);
    Field out = a;
    for (size_t n = 0; n < out.data().size(); ++n) out.data()[n] *= b.data()[n];
    return out;
}

Field operator*(double c, const Field& a) {
    Field out = a;
    for (double& x : out.data()) x *= c;
    return out;
}

Field deriv_x(const Field& f, int k) {
    check_order(k);
    if (k == 0) return f;
    const GridSpec& g = f.grid();
    const int nx = g.nx, nyy = g.ny + 1;
    const double c = 1.0 / (12.0 * g.dx());
    Field cur = f;
    for (int pass = 0; pass < k; ++pass) {
        Field next(g);
        for (int i = 0; i < nx; ++i) {
            const int ip1 = (i + 1) % nx, ip2 = (i + 2) % nx;
            const int im1 = (i + nx - 1) % nx, im2 = (i + nx - 2) % nx;
            for (int j = 0; j < nyy; ++j) {
                next(i, j) = c * (8.0 * (cur(ip1, j) - cur(im1, j))
                                  - (cur(ip2, j) - cur(im2, j)));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Field deriv_y(const Field& f, int k) {
    check_order(k);
    if (k == 0) return f;
    const GridSpec& g = f.grid();
    const int nx = g.nx, ny = g.ny;
    const double h = g.dy();
    Field cur = f;
    for (int pass = 0; pass < k; ++pass) {
        Field next(g);
        for (int i = 0; i < nx; ++i) {
            next(i, 0) = (-3.0 * cur(i, 0) + 4.0 * cur(i, 1) - cur(i, 2)) / (2.0 * h);
            for (int j = 1; j < ny; ++j)
                next(i, j) = (cur(i, j + 1) - cur(i, j - 1)) / (2.0 * h);
            next(i, ny) = (3.0 * cur(i, ny) - 4.0 * cur(i, ny - 1) + cur(i, ny - 2)) / (2.0 * h);
        }
        cur = std::move(next);
    }
    return cur;
}

Field d_alpha(const Field& f, int a1, int a2) {
    check_order(a1);
    check_order(a2);
    check_order(a1 + a2);
    return deriv_y(deriv_x(f, a1), a2);
}

Field tail_integral_y(const Field& f) {
    const GridSpec& g = f.grid();
    const double h = g.dy();
    Field out(g);
    for (int i = 0; i < g.nx; ++i) {
        out(i, g.ny) = 0.0;
        for (int j = g.ny - 1; j >= 0; --j)
            out(i, j) = out(i, j + 1) + 0.5 * h * (f(i, j) + f(i, j + 1));
    }
    return out;
}

Field cum_integral_y(const Field& f) {
    const GridSpec& g = f.grid();
    const double h = g.dy();
    Field out(g);
    for (int i = 0; i < g.nx; ++i) {
        out(i, 0) = 0.0;
        for (int j = 1; j <= g.ny; ++j)
            out(i, j) = out(i, j - 1) + 0.5 * h * (f(i, j - 1) + f(i, j));
    }
    return out;
}

double weighted_l2(const Field& f, double lambda) {
    const GridSpec& g = f.grid();
    const double dx = g.dx();
    double acc = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
        const double wy = trapz_weight(g, j) * std::pow(1.0 + g.y(j), 2.0 * lambda);
        double row = 0.0;
        for (int i = 0; i < g.nx; ++i) row += f(i, j) * f(i, j);
        acc += wy * row * dx;
    }
    return std::sqrt(acc);
}

double weighted_max_abs(const Field& f, double lambda) {
    const GridSpec& g = f.grid();
    double m = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
        const double wy = std::pow(1.0 + g.y(j), lambda);
        for (int i = 0; i < g.nx; ++i) m = std::max(m, std::abs(wy * f(i, j)));
    }
    return m;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f.data()) m = std::max(m, std::abs(x));
    return m;
}

double l2_x(const XProfile& p, const GridSpec& g) {
    double acc = 0.0;
    for (double x : p) acc += x * x;
    return std::sqrt(acc * g.dx());
}

double max_abs_x(const XProfile& p) {
    double m = 0.0;
    for (double x : p) m = std::max(m, std::abs(x));
    return m;
}

Field broadcast_x(const XProfile& p, const GridSpec& g) {
    Field out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) out(i, j) = p[i];
    return out;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
    // Fornberg (1988), one derivative order at a time.
    const int n = static_cast<int>(xs.size());
    assert(m < n);
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s)
                    c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int s = mn; s >= 1; --s)
                c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

XProfile wall_normal_derivative(const Field& f, int m) {
    const GridSpec& g = f.grid();
    const int npts = m + 3; // 2nd-order one-sided stencil
    if (npts > g.ny + 1) throw UnsupportedOrder(m);
    std::vector<double> xs(npts);
    for (int j = 0; j < npts; ++j) xs[j] = g.y(j);
    const std::vector<double> w = fd_weights(0.0, xs, m);
    XProfile out(g.nx, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        double acc = 0.0;
        for (int j = 0; j < npts; ++j) acc += w[j] * f(i, j);
        out[i] = acc;
    }
    return out;
}

} // namespace hartmann
