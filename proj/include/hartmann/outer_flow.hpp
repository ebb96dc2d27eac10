#pragma once

#include <string>
#include <vector>

#include "hartmann/grid.hpp"

namespace hartmann {

/// Finite Fourier series a0 + sum_k (a_k cos kx + b_k sin kx) on the 2pi
/// torus, with exact arithmetic (sum, product, derivative) and exact L2 /
/// Sobolev norms. Sup norms are taken by dense sampling.
class TrigPoly {
public:
    TrigPoly() : a_(1, 0.0), b_(1, 0.0) {}
    explicit TrigPoly(double constant) : a_(1, constant), b_(1, 0.0) {}

    static TrigPoly mode(double amp, int k, bool is_sin);

    int max_wavenumber() const { return static_cast<int>(a_.size()) - 1; }
    double cos_coeff(int k) const { return k < static_cast<int>(a_.size()) ? a_[k] : 0.0; }
    double sin_coeff(int k) const { return k < static_cast<int>(b_.size()) ? b_[k] : 0.0; }

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly scaled(double c) const;

    /// Exact d/dx, applied k times.
    TrigPoly deriv(int k = 1) const;

    double eval(double x) const;
    XProfile sample(const GridSpec& g) const;

    /// Exact L2(T) norm.
    double l2_norm() const;
    /// Exact H^m(T) norm: sqrt(sum_{j<=m} ||d^j/dx^j||_L2^2).
    double h_norm(int m) const;
    /// Sup over a dense sample of the torus.
    double sup_norm() const;

    bool is_constant(double tol = 0.0) const;

private:
    // a_[k], b_[k] for wavenumber k; b_[0] unused.
    std::vector<double> a_, b_;
    void ensure_size(int k);
};

/// One additive term of an outer-flow descriptor:
/// amp * T(t) * trig(k x), T in {1, exp(-rate t), t^power}.
struct OuterFlowTerm {
    enum class TMode { Const, Exp, Poly };
    double amp = 1.0;
    int k = 0;
    bool is_sin = false;
    TMode mode = TMode::Const;
    double rate = 0.0; // Exp
    int power = 0;     // Poly

    /// l-th time derivative of the scalar time factor.
    double time_factor(double t, int l) const;
};

/// Closed-form outer flow U(t,x) and far field B(t,x) with exact evaluators
/// for d_t^l d_x^k U up to the configured limits, plus the regularized
/// Bernoulli pressure gradient and the boundary flux K = d_x P - U.
class OuterFlow {
public:
    OuterFlow() = default;
    OuterFlow(std::vector<OuterFlowTerm> u_terms, std::vector<OuterFlowTerm> b_terms,
              int max_x_order = 6, int max_t_order = 3);

    /// Constant flow U == u0, B == b0.
    static OuterFlow uniform(double u0, double b0 = 1.0);

    /// d_t^l d_x^k U at time t, exact.
    TrigPoly eval_U(double t, int k = 0, int l = 0) const;
    /// B(t, x).
    TrigPoly eval_B(double t) const;

    /// d_x P^eps = -d_t U - U d_x U + eps^2 d_x^2 U.
    TrigPoly pressure_gradient(double t, double eps) const;

    /// K = d_x P^eps - U, the Neumann datum for the vorticity.
    TrigPoly boundary_flux_K(double t, double eps) const;

    /// d_t^l K, exact (Leibniz on the U d_x U term).
    TrigPoly k_time_derivative(double t, double eps, int l) const;

    bool x_independent() const;
    int max_x_order() const { return max_x_order_; }
    int max_t_order() const { return max_t_order_; }
    const std::vector<OuterFlowTerm>& u_terms() const { return u_terms_; }
    const std::vector<OuterFlowTerm>& b_terms() const { return b_terms_; }

private:
    std::vector<OuterFlowTerm> u_terms_{OuterFlowTerm{}};
    std::vector<OuterFlowTerm> b_terms_{OuterFlowTerm{}};
    int max_x_order_ = 6;
    int max_t_order_ = 3;

    TrigPoly assemble(const std::vector<OuterFlowTerm>& terms, double t, int k, int l) const;
};

} // namespace hartmann
