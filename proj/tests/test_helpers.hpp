#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "copula/copula.hpp"

namespace copula::testing {

struct AxiomCheck {
    double boundary_err = 0.0;   // worst boundary-condition violation
    double min_volume = 0.0;     // most negative cell volume
    double envelope_err = 0.0;   // worst W <= C <= M violation
};

// Boundary conditions, cell-level 2-increasingness (adjacent cell volumes;
// every rectangle is a sum of cells) and the Frechet-Hoeffding envelope,
// all on an (n+1)x(n+1) knot grid.
inline AxiomCheck check_axioms(const Copula& c, int n) {
    AxiomCheck out;
    auto knot = [n](int i) { return static_cast<double>(i) / n; };
    for (int i = 0; i <= n; ++i) {
        double t = knot(i);
        out.boundary_err = std::max({out.boundary_err, std::abs(c(t, 0.0)),
                                     std::abs(c(0.0, t)), std::abs(c(t, 1.0) - t),
                                     std::abs(c(1.0, t) - t)});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double u = knot(i), u2 = knot(i + 1);
            double v = knot(j), v2 = knot(j + 1);
            double vol = c(u2, v2) - c(u2, v) - c(u, v2) + c(u, v);
            out.min_volume = std::min(out.min_volume, vol);
            double val = c(u, v);
            double w = std::max(u + v - 1.0, 0.0);
            double m = std::min(u, v);
            out.envelope_err = std::max({out.envelope_err, w - val, val - m});
        }
    }
    return out;
}

inline double max_abs_diff(const Copula& a, const Copula& b, int n) {
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            double u = static_cast<double>(i) / n;
            double v = static_cast<double>(j) / n;
            worst = std::max(worst, std::abs(a(u, v) - b(u, v)));
        }
    }
    return worst;
}

}  // namespace copula::testing
