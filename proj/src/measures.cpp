#include "copula/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace copula {

std::string PExponent::label() const {
    if (is_inf) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

std::string method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

double mu_upper_bound(PExponent p) {
    if (p.is_inf) return 1.0 / 3.0;
    double inner = 2.0 * std::pow(3.0, -p.p) / ((p.p + 1.0) * (p.p + 2.0));
    return std::pow(inner, 1.0 / p.p);
}

MeasureValue spearman_rho(const Copula& c, const QuadratureConfig& cfg,
                          bool prefer_closed) {
    if (prefer_closed && c.closed_forms().rho) {
        return {*c.closed_forms().rho, Method::ClosedForm, 0.0, true};
    }
    auto r = integrate([&c](double u, double v) { return c(u, v); }, cfg);
    return {12.0 * r.value - 3.0, Method::Quadrature, 12.0 * r.gap, r.converged};
}

MeasureValue kendall_tau(const Copula& c, const QuadratureConfig& cfg,
                         const KendallOptions& opt) {
    if (opt.prefer_closed && c.closed_forms().tau) {
        return {*c.closed_forms().tau, Method::ClosedForm, 0.0, true};
    }
    if (c.is_absolutely_continuous()) {
        // tau = 1 - 4 * integral(d1C * d2C), valid without a density.
        auto tau_at = [&c](int n) {
            GridField d1 = partial_derivative_field(c, Axis::First, n);
            GridField d2 = partial_derivative_field(c, Axis::Second, n);
            double sum = 0.0;
            for (std::size_t k = 0; k < d1.values.size(); ++k) {
                sum += d1.values[k] * d2.values[k];
            }
            return 1.0 - 4.0 * sum / (static_cast<double>(n) * n);
        };
        double coarse = tau_at(cfg.n);
        double fine = tau_at(cfg.n * 2);
        double gap = std::abs(coarse - fine);
        return {coarse, Method::Quadrature, gap, gap <= cfg.tolerance};
    }
    if (c.has_sampler()) {
        long pairs = opt.mc_samples.value_or(200000);
        if (pairs < 1) throw std::invalid_argument("kendall_tau: mc_samples must be >= 1");
        std::mt19937_64 rng(opt.seed);
        long concordant_balance = 0;
        for (long k = 0; k < pairs; ++k) {
            auto [u1, v1] = c.sample(rng);
            auto [u2, v2] = c.sample(rng);
            double s = (u1 - u2) * (v1 - v2);
            if (s > 0.0) ++concordant_balance;
            else if (s < 0.0) --concordant_balance;
        }
        double tau = static_cast<double>(concordant_balance) / static_cast<double>(pairs);
        double se = 2.0 / std::sqrt(static_cast<double>(pairs));
        return {tau, Method::MonteCarlo, se, true};
    }
    throw std::runtime_error("kendall_tau: no strategy for " + c.describe() +
                             " (not absolutely continuous, no sampler, no closed form); "
                             "supply a closed form or a sampler");
}

double blomqvist_beta(const Copula& c) {
    if (c.closed_forms().beta) return *c.closed_forms().beta;
    return 4.0 * c(0.5, 0.5) - 1.0;
}

MeasureValue schweizer_wolff_sigma(const Copula& c, const QuadratureConfig& cfg,
                                   bool prefer_closed) {
    if (prefer_closed && c.closed_forms().sigma) {
        return {*c.closed_forms().sigma, Method::ClosedForm, 0.0, true};
    }
    auto r = integrate([&c](double u, double v) { return std::abs(c(u, v) - u * v); }, cfg);
    return {12.0 * r.value, Method::Quadrature, 12.0 * r.gap, r.converged};
}

MuValue mu(const Copula& c, PExponent p, const QuadratureConfig& cfg,
           bool prefer_closed) {
    const double bound = mu_upper_bound(p);
    if (prefer_closed) {
        if (c.is_symmetric()) return {0.0, 0.0, Method::ClosedForm, 0.0};
        if (p.is_inf && c.closed_forms().mu_inf) {
            double raw = *c.closed_forms().mu_inf;
            return {raw, raw / bound, Method::ClosedForm, 0.0};
        }
    }
    if (p.is_inf) {
        double raw = sup_abs([&c](double u, double v) { return c(u, v) - c(v, u); }, cfg);
        double gap = 2.0 / (cfg.n * 128.0);  // Lipschitz bound at the refined spacing
        return {raw, raw / bound, Method::Quadrature, gap};
    }
    const double pw = p.p;
    auto r = integrate(
        [&c, pw](double u, double v) {
            double d = std::abs(c(u, v) - c(v, u));
            return d == 0.0 ? 0.0 : std::pow(d, pw);
        },
        cfg);
    double raw = std::pow(r.value, 1.0 / pw);
    double raw_next = std::pow(r.estimates[1], 1.0 / pw);
    return {raw, raw / bound, Method::Quadrature, std::abs(raw - raw_next)};
}

TailCoefficients tail_coefficients(const Copula& c, bool prefer_closed) {
    TailCoefficients out;
    const ClosedForms& f = c.closed_forms();
    if (prefer_closed && f.lambda_lower) {
        out.lower = {*f.lambda_lower, Method::ClosedForm, 0.0, true};
    } else {
        auto r = diagonal_limit([&c](double t) { return c(t, t) / t; }, LimitSide::ZeroPlus);
        out.lower = {r.value, Method::Quadrature, r.gap, r.converged};
    }
    if (prefer_closed && f.lambda_upper) {
        out.upper = {*f.lambda_upper, Method::ClosedForm, 0.0, true};
    } else {
        auto r = diagonal_limit(
            [&c](double t) { return (1.0 - 2.0 * t + c(t, t)) / (1.0 - t); },
            LimitSide::OneMinus);
        out.upper = {r.value, Method::Quadrature, r.gap, r.converged};
    }
    return out;
}

MeasureReport full_report(const Copula& c, const std::vector<PExponent>& p_list,
                          const QuadratureConfig& cfg, const KendallOptions& kendall) {
    MeasureReport rep;
    rep.family = c.describe();
    rep.rho = spearman_rho(c, cfg);
    try {
        rep.tau = kendall_tau(c, cfg, kendall);
    } catch (const std::exception& e) {
        rep.tau_failed = true;
        rep.tau_error = e.what();
        rep.tau = {std::numeric_limits<double>::quiet_NaN(), Method::MonteCarlo, 0.0, false};
    }
    rep.beta = blomqvist_beta(c);
    rep.sigma = schweizer_wolff_sigma(c, cfg);
    for (const PExponent& p : p_list) {
        MuValue m = mu(c, p, cfg);
        rep.mu.push_back({p, m.raw, m.normalized, m.method, m.gap, false});
    }
    TailCoefficients tails = tail_coefficients(c);
    rep.lambda_lower = tails.lower;
    rep.lambda_upper = tails.upper;
    return rep;
}

double mtheta_support_integral(double theta) {
    return ((1.0 - theta) * (1.0 - theta) + theta * theta) / 2.0;
}

}  // namespace copula
