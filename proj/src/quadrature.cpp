#include "copula/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace copula {

namespace {

[[noreturn]] void throw_nonfinite(double u, double v, double val) {
    std::ostringstream os;
    os << "integrand non-finite at node (" << u << ", " << v << "): " << val;
    throw std::runtime_error(os.str());
}

// Pairwise summation over [first, last).
double pairwise_sum(const double* first, std::size_t count) {
    if (count <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += first[i];
        return s;
    }
    std::size_t half = count / 2;
    return pairwise_sum(first, half) + pairwise_sum(first + half, count - half);
}

double midpoint_estimate(const std::function<double(double, double)>& f, int n) {
    std::vector<double> row(static_cast<std::size_t>(n));
    std::vector<double> row_sums(static_cast<std::size_t>(n));
    const double h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double v = (j + 0.5) * h;
            double val = f(u, v);
            if (!std::isfinite(val)) throw_nonfinite(u, v, val);
            row[static_cast<std::size_t>(j)] = val;
        }
        row_sums[static_cast<std::size_t>(i)] = pairwise_sum(row.data(), row.size());
    }
    return pairwise_sum(row_sums.data(), row_sums.size()) * h * h;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (n < 2) throw std::invalid_argument("quadrature: n must be >= 2");
    if (refine_levels < 1) throw std::invalid_argument("quadrature: refine_levels must be >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("quadrature: tolerance must be > 0");
}

IntegralResult integrate(const std::function<double(double, double)>& f,
                         const QuadratureConfig& cfg) {
    cfg.validate();
    IntegralResult out;
    int n = cfg.n;
    for (int level = 0; level <= cfg.refine_levels; ++level) {
        out.estimates.push_back(midpoint_estimate(f, n));
        n *= 2;
    }
    out.value = out.estimates[0];
    out.gap = std::abs(out.estimates[0] - out.estimates[1]);
    out.converged = out.gap <= cfg.tolerance;
    return out;
}

double sup_abs(const std::function<double(double, double)>& f,
               const QuadratureConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    const double h = 1.0 / n;
    double best = 0.0;
    double bu = 0.5 * h, bv = 0.5 * h;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double v = (j + 0.5) * h;
            double val = f(u, v);
            if (!std::isfinite(val)) throw_nonfinite(u, v, val);
            val = std::abs(val);
            if (val > best) {
                best = val;
                bu = u;
                bv = v;
            }
        }
    }
    // One refinement pass: dense scan of the 3/n square around the argmax.
    const int fine = 128;
    const double half = 1.5 * h;
    const double u0 = std::clamp(bu - half, 0.0, 1.0);
    const double u1 = std::clamp(bu + half, 0.0, 1.0);
    const double v0 = std::clamp(bv - half, 0.0, 1.0);
    const double v1 = std::clamp(bv + half, 0.0, 1.0);
    for (int i = 0; i <= fine; ++i) {
        const double u = u0 + (u1 - u0) * i / fine;
        for (int j = 0; j <= fine; ++j) {
            const double v = v0 + (v1 - v0) * j / fine;
            double val = std::abs(f(u, v));
            if (val > best) best = val;
        }
    }
    return best;
}

LimitResult diagonal_limit(const std::function<double(double)>& g, LimitSide side) {
    constexpr int k_first = 6, k_last = 20;
    std::vector<double> seq;
    for (int k = k_first; k <= k_last; ++k) {
        double t = std::ldexp(1.0, -k);
        if (side == LimitSide::OneMinus) t = 1.0 - t;
        double val = g(t);
        if (!std::isfinite(val)) {
            std::ostringstream os;
            os << "diagonal_limit: g non-finite at t = " << t;
            throw std::runtime_error(os.str());
        }
        seq.push_back(val);
    }

    // Aitken delta-squared over the tail of the sequence; fall back to the
    // raw value where the denominator degenerates (already-converged case).
    LimitResult out;
    double extrap = seq.back();
    double prev_extrap = extrap;
    bool have_prev = false;
    double osc = 0.0;
    for (std::size_t i = 2; i < seq.size(); ++i) {
        double d2 = seq[i] - 2.0 * seq[i - 1] + seq[i - 2];
        double a = (std::abs(d2) > 1e-300)
                       ? seq[i] - (seq[i] - seq[i - 1]) * (seq[i] - seq[i - 1]) / d2
                       : seq[i];
        if (have_prev) osc = std::abs(a - prev_extrap);
        prev_extrap = a;
        have_prev = true;
        extrap = a;
    }
    out.value = extrap;
    out.gap = std::abs(seq.back() - extrap);
    out.converged = osc <= 1e-3;
    return out;
}

GridField partial_derivative_field(const Copula& c, Axis axis, int n) {
    if (n < 2) throw std::invalid_argument("partial_derivative_field: n must be >= 2");
    GridField field;
    field.n = n;
    field.values.resize(static_cast<std::size_t>(n) * n);
    const double h = 1.0 / n;
    const double step = 0.5 * h;  // stencil half-width; total width 1/n stays inside [0,1]
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double v = (j + 0.5) * h;
            double d;
            if (axis == Axis::First) {
                d = (c(u + step, v) - c(u - step, v)) / (2.0 * step);
            } else {
                d = (c(u, v + step) - c(u, v - step)) / (2.0 * step);
            }
            field.values[static_cast<std::size_t>(i) * n + j] = std::clamp(d, 0.0, 1.0);
        }
    }
    return field;
}

}  // namespace copula
