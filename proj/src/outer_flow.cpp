#include "hartmann/outer_flow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace hartmann {

void TrigPoly::ensure_size(int k) {
    if (k >= static_cast<int>(a_.size())) {
        a_.resize(k + 1, 0.0);
        b_.resize(k + 1, 0.0);
    }
}

TrigPoly TrigPoly::mode(double amp, int k, bool is_sin) {
    TrigPoly p;
    p.ensure_size(k);
    if (k == 0) {
        // sin(0 x) == 0
        p.a_[0] = is_sin ? 0.0 : amp;
    } else if (is_sin) {
        p.b_[k] = amp;
    } else {
        p.a_[k] = amp;
    }
    return p;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    ensure_size(o.max_wavenumber());
    for (int k = 0; k <= o.max_wavenumber(); ++k) {
        a_[k] += o.a_[k];
        b_[k] += o.b_[k];
    }
    return *this;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly out = *this;
    out += o;
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
    TrigPoly out = *this;
    out += o.scaled(-1.0);
    return out;
}

TrigPoly TrigPoly::scaled(double c) const {
    TrigPoly out = *this;
    for (double& x : out.a_) x *= c;
    for (double& x : out.b_) x *= c;
    return out;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    // Convolve in the complex exponential basis: c_k = (a_k - i b_k)/2,
    // c_{-k} = conj(c_k), c_0 = a_0.
    const int ka = max_wavenumber(), kb = o.max_wavenumber();
    const int kc = ka + kb;
    auto to_complex = [](const TrigPoly& p, int kmax) {
        std::vector<std::complex<double>> c(2 * kmax + 1, 0.0);
        for (int k = 0; k <= p.max_wavenumber(); ++k) {
            if (k == 0) {
                c[kmax] = p.a_[0];
            } else {
                c[kmax + k] = std::complex<double>(p.a_[k] / 2.0, -p.b_[k] / 2.0);
                c[kmax - k] = std::conj(c[kmax + k]);
            }
        }
        return c;
    };
    const auto ca = to_complex(*this, kc);
    const auto cb = to_complex(o, kc);
    std::vector<std::complex<double>> cc(2 * kc + 1, 0.0);
    for (int m = -kc; m <= kc; ++m) {
        for (int n = -kc; n <= kc; ++n) {
            const int s = m + n;
            if (s < -kc || s > kc) continue;
            cc[kc + s] += ca[kc + m] * cb[kc + n];
        }
    }
    TrigPoly out;
    out.ensure_size(kc);
    out.a_[0] = cc[kc].real();
    for (int k = 1; k <= kc; ++k) {
        out.a_[k] = 2.0 * cc[kc + k].real();
        out.b_[k] = -2.0 * cc[kc + k].imag();
    }
    return out;
}

TrigPoly TrigPoly::deriv(int k) const {
    TrigPoly cur = *this;
    for (int pass = 0; pass < k; ++pass) {
        TrigPoly next;
        next.ensure_size(cur.max_wavenumber());
        for (int m = 1; m <= cur.max_wavenumber(); ++m) {
            next.a_[m] = m * cur.b_[m];
            next.b_[m] = -m * cur.a_[m];
        }
        next.a_[0] = 0.0;
        cur = std::move(next);
    }
    return cur;
}

double TrigPoly::eval(double x) const {
    double acc = a_[0];
    for (int k = 1; k <= max_wavenumber(); ++k)
        acc += a_[k] * std::cos(k * x) + b_[k] * std::sin(k * x);
    return acc;
}

XProfile TrigPoly::sample(const GridSpec& g) const {
    XProfile out(g.nx);
    for (int i = 0; i < g.nx; ++i) out[i] = eval(g.x(i));
    return out;
}

double TrigPoly::l2_norm() const {
    const double pi = std::numbers::pi;
    double acc = 2.0 * pi * a_[0] * a_[0];
    for (int k = 1; k <= max_wavenumber(); ++k)
        acc += pi * (a_[k] * a_[k] + b_[k] * b_[k]);
    return std::sqrt(acc);
}

double TrigPoly::h_norm(int m) const {
    const double pi = std::numbers::pi;
    double acc = 2.0 * pi * a_[0] * a_[0]; // only j = 0 survives for k = 0
    for (int k = 1; k <= max_wavenumber(); ++k) {
        double pow_sum = 0.0, kp = 1.0;
        for (int j = 0; j <= m; ++j) {
            pow_sum += kp;
            kp *= static_cast<double>(k) * k;
        }
        acc += pi * (a_[k] * a_[k] + b_[k] * b_[k]) * pow_sum;
    }
    return std::sqrt(acc);
}

double TrigPoly::sup_norm() const {
    const int n = 4096;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        m = std::max(m, std::abs(eval(2.0 * std::numbers::pi * i / n)));
    return m;
}

bool TrigPoly::is_constant(double tol) const {
    for (int k = 1; k <= max_wavenumber(); ++k)
        if (std::abs(a_[k]) > tol || std::abs(b_[k]) > tol) return false;
    return true;
}

double OuterFlowTerm::time_factor(double t, int l) const {
    switch (mode) {
        case TMode::Const:
            return l == 0 ? 1.0 : 0.0;
        case TMode::Exp: {
            double c = 1.0;
            for (int j = 0; j < l; ++j) c *= -rate;
            return c * std::exp(-rate * t);
        }
        case TMode::Poly: {
            if (l > power) return 0.0;
            double c = 1.0;
            for (int j = 0; j < l; ++j) c *= power - j;
            return c * std::pow(t, power - l);
        }
    }
    return 0.0;
}

OuterFlow::OuterFlow(std::vector<OuterFlowTerm> u_terms, std::vector<OuterFlowTerm> b_terms,
                     int max_x_order, int max_t_order)
    : u_terms_(std::move(u_terms)), b_terms_(std::move(b_terms)),
      max_x_order_(max_x_order), max_t_order_(max_t_order) {}

OuterFlow OuterFlow::uniform(double u0, double b0) {
    OuterFlowTerm tu;
    tu.amp = u0;
    OuterFlowTerm tb;
    tb.amp = b0;
    return OuterFlow({tu}, {tb});
}

TrigPoly OuterFlow::assemble(const std::vector<OuterFlowTerm>& terms, double t,
                             int k, int l) const {
    TrigPoly acc;
    for (const OuterFlowTerm& term : terms) {
        const double tf = term.time_factor(t, l);
        if (tf == 0.0) continue;
        acc += TrigPoly::mode(term.amp * tf, term.k, term.is_sin).deriv(k);
    }
    return acc;
}

TrigPoly OuterFlow::eval_U(double t, int k, int l) const {
    if (k < 0 || k > max_x_order_) throw UnsupportedOrder(k);
    if (l < 0 || l > max_t_order_) throw UnsupportedOrder(l);
    return assemble(u_terms_, t, k, l);
}

TrigPoly OuterFlow::eval_B(double t) const { return assemble(b_terms_, t, 0, 0); }

TrigPoly OuterFlow::pressure_gradient(double t, double eps) const {
    const TrigPoly u = eval_U(t, 0, 0);
    TrigPoly out = eval_U(t, 0, 1).scaled(-1.0);
    out += (u * eval_U(t, 1, 0)).scaled(-1.0);
    out += eval_U(t, 2, 0).scaled(eps * eps);
    return out;
}

TrigPoly OuterFlow::boundary_flux_K(double t, double eps) const {
    return pressure_gradient(t, eps) - eval_U(t, 0, 0);
}

TrigPoly OuterFlow::k_time_derivative(double t, double eps, int l) const {
    if (l == 0) return boundary_flux_K(t, eps);
    // d_t^l K = -d_t^{l+1} U - d_t^l (U d_x U) + eps^2 d_x^2 d_t^l U - d_t^l U
    TrigPoly out = eval_U(t, 0, l + 1).scaled(-1.0);
    double binom = 1.0;
    for (int j = 0; j <= l; ++j) {
        out += (eval_U(t, 0, j) * eval_U(t, 1, l - j)).scaled(-binom);
        binom = binom * (l - j) / (j + 1);
    }
    out += eval_U(t, 2, l).scaled(eps * eps);
    out += eval_U(t, 0, l).scaled(-1.0);
    return out;
}

bool OuterFlow::x_independent() const {
    return std::all_of(u_terms_.begin(), u_terms_.end(),
                       [](const OuterFlowTerm& t) { return t.k == 0; });
}

} // namespace hartmann
