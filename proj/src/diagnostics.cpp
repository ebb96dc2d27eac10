#include "hartmann/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hartmann {

DiagnosedRun diagnose(const RunSeries& series, const Params& p) {
    DiagnosedRun out;
    out.series = series;
    const size_t n = series.snapshots.size();
    out.records.resize(n);

    std::vector<double> times(n), hg(n), Fv(n);
    double sup_hg = 0.0, sup_dxsU = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const State& s = series.snapshots[i];
        DiagnosticsRecord& r = out.records[i];
        r.t = s.t;
        r.norms = compute_norm_report(s, p);
        r.F_value = F_of_t(s.t, p, *s.outer);
        r.boundary_resid_1 = boundary_derivative(s, p, 1).max_residual;
        r.boundary_resid_3 = boundary_derivative(s, p, 3).max_residual;
        sup_hg = std::max(sup_hg, r.norms.h_s_gamma_g);
        sup_dxsU = std::max(sup_dxsU, s.outer->eval_U(s.t, p.s).l2_norm());
        r.W = sup_hg;
        r.G = sup_hg + sup_dxsU;
        times[i] = s.t;
        hg[i] = r.norms.h_s_gamma_g;
        Fv[i] = r.F_value;
    }

    out.constants.E0 = hg.empty() ? 0.0 : hg[0] * hg[0];
    if (n >= 3) {
        const EnergyRateFit fit = energy_rate_check(times, hg, Fv, p.s);
        out.constants.C_energy = fit.C;
        for (size_t i = 0; i < n; ++i) out.records[i].energy_rate = fit.rates[i];

        // cumulative integral of F on the sample grid
        std::vector<double> Fint(n, 0.0);
        for (size_t i = 1; i < n; ++i)
            Fint[i] = Fint[i - 1] + 0.5 * (Fv[i] + Fv[i - 1]) * (times[i] - times[i - 1]);

        const double C = out.constants.C_energy;
        const double ex = 0.5 * (p.s - 2);
        out.constants.blowup_time = std::numeric_limits<double>::infinity();
        if (C > 0.0) {
            // frozen-tail estimate: F beyond the horizon held at its final value
            const double M_tail = Fv[n - 1];
            const double E0 = out.constants.E0;
            auto brace = [&](double t) {
                double fi;
                if (t <= times[n - 1]) {
                    size_t k = 1;
                    while (k < n && times[k] < t) ++k;
                    const double t0 = times[k - 1];
                    fi = Fint[k - 1] + 0.5 * (Fv[k - 1] + Fv[std::min(k, n - 1)])
                                         * (t - t0);
                } else {
                    fi = Fint[n - 1] + M_tail * (t - times[n - 1]);
                }
                return 1.0 - C * (0.5 * p.s - 1.0) * std::pow(E0 + fi, ex) * (t - times[0]);
            };
            double hi = std::max(1e-9, times[n - 1] - times[0]);
            while (brace(times[0] + hi) > 0.0 && hi < 1e15) hi *= 2.0;
            if (hi < 1e15) {
                double lo = 0.0;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (brace(times[0] + mid) > 0.0 ? lo : hi) = mid;
                }
                out.constants.blowup_time = times[0] + 0.5 * (lo + hi);
            }
        }

        out.constants.apriori_ok = true;
        for (size_t i = 0; i < n; ++i) {
            const double tau = times[i] - times[0];
            const double brace = 1.0 - C * (0.5 * p.s - 1.0)
                                     * std::pow(out.constants.E0 + Fint[i], ex) * tau;
            out.records[i].apriori_bound =
                brace > 0.0 ? (out.constants.E0 + Fint[i]) * std::pow(brace, -2.0 / (p.s - 2))
                            : std::numeric_limits<double>::infinity();
            if (times[i] <= times[0] + 0.9 * (out.constants.blowup_time - times[0])
                && hg[i] * hg[i] > out.records[i].apriori_bound * (1.0 + 1e-9))
                out.constants.apriori_ok = false;
        }

        EnvelopeSeries es;
        es.times = times;
        for (size_t i = 0; i < n; ++i) {
            es.i_sup.push_back(out.records[i].norms.i_sup);
            es.sigma_floor.push_back(out.records[i].norms.sigma_floor);
            es.G.push_back(out.records[i].G);
            es.W.push_back(out.records[i].W);
        }
        const auto cu = fit_envelope_upper_C(es);
        const auto cl = fit_envelope_lower_C(es);
        out.constants.C_env_upper = cu.value_or(std::numeric_limits<double>::quiet_NaN());
        out.constants.C_env_lower = cl.value_or(std::numeric_limits<double>::quiet_NaN());
        if (cu) {
            const EnvelopeReport rep = max_principle_envelopes(es, *cu);
            out.constants.env_upper_ok = rep.upper_ok;
            for (size_t i = 0; i < n; ++i) out.records[i].envelope_upper = rep.upper[i];
        }
        if (cl) {
            const EnvelopeReport rep = max_principle_envelopes(es, *cl);
            out.constants.env_lower_ok = rep.lower_ok;
            for (size_t i = 0; i < n; ++i) out.records[i].envelope_lower = rep.lower[i];
        }
    }
    return out;
}

} // namespace hartmann
