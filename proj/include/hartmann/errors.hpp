#pragma once

#include <stdexcept>
#include <string>

namespace hartmann {

/// Base class for all solver/diagnostic failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested derivative order exceeds what the stencil library supports.
class UnsupportedOrder : public Error {
public:
    int order;
    explicit UnsupportedOrder(int k)
        : Error("unsupported derivative order " + std::to_string(k)), order(k) {}
};

/// Initial profile violates the floor condition U(0,x)*(sigma-1) >= 2*delta.
class InvalidInitialData : public Error {
public:
    explicit InvalidInitialData(const std::string& msg) : Error(msg) {}
};

/// Magnetic recovery needs sigma > 2 so that U - u is integrable in y.
class MagneticRecoveryUnavailable : public Error {
public:
    explicit MagneticRecoveryUnavailable(double sigma)
        : Error("magnetic recovery requires sigma > 2, got sigma = " + std::to_string(sigma)) {}
};

/// dt violated the advective CFL bound; carries the largest admissible dt.
class StepRejected : public Error {
public:
    double admissible_dt;
    explicit StepRejected(double adm)
        : Error("time step rejected by CFL, admissible dt = " + std::to_string(adm)),
          admissible_dt(adm) {}
};

/// NaN/Inf appeared in the stepped field.
class NumericalBlowup : public Error {
public:
    double t;
    explicit NumericalBlowup(double time)
        : Error("numerical blowup at t = " + std::to_string(time)), t(time) {}
};

/// The weighted floor (1+y)^sigma * w dropped below the division guard.
class MonotonicityLost : public Error {
public:
    double t;
    int ix, iy;
    MonotonicityLost(double time, int i, int j)
        : Error("monotonicity floor lost at t = " + std::to_string(time)
                + " (node " + std::to_string(i) + "," + std::to_string(j) + ")"),
          t(time), ix(i), iy(j) {}
};

/// Hardy check at the excluded exponent lambda = -1/2.
class UnsupportedExponent : public Error {
public:
    double lambda;
    explicit UnsupportedExponent(double lam)
        : Error("unsupported weight exponent lambda = " + std::to_string(lam)), lambda(lam) {}
};

/// Input does not satisfy the hypothesis of the inequality being checked.
class HypothesisFailed : public Error {
public:
    explicit HypothesisFailed(const std::string& msg) : Error(msg) {}
};

/// Requested a boundary-reduction case outside the supported family.
class UnsupportedCase : public Error {
public:
    explicit UnsupportedCase(const std::string& msg) : Error(msg) {}
};

/// A-priori bound queried at or past its finite blow-up time.
class BoundExpired : public Error {
public:
    double blowup_time;
    explicit BoundExpired(double tb)
        : Error("a-priori bound expired, blow-up time = " + std::to_string(tb)),
          blowup_time(tb) {}
};

/// Both numerator and denominator of a measured ratio vanish.
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

/// Configuration parse/validation failure; carries the offending field path.
class ConfigError : public Error {
public:
    std::string field;
    ConfigError(const std::string& path, const std::string& msg)
        : Error("config error at '" + path + "': " + msg), field(path) {}
};

/// Filesystem / serialization failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace hartmann
