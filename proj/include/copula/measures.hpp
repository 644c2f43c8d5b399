// Dependence and non-exchangeability functionals: Spearman rho, Kendall tau,
// Blomqvist beta, Schweizer-Wolff sigma, the L^p asymmetry distances mu_p
// (raw and normalized) and the tail-dependence coefficients.
//
// Each functional prefers a declared closed form and falls back to the
// quadrature engine (or Monte Carlo, for tau on singular copulas with a
// sampler). Every numeric entry carries a method tag and a convergence gap.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copula/copula.hpp"
#include "copula/quadrature.hpp"

namespace copula {

/// Exponent for mu_p: a real p >= 1 or infinity.
struct PExponent {
    double p = 1.0;
    bool is_inf = false;

    static PExponent finite(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("mu: p must be >= 1");
        return PExponent{p, false};
    }
    static PExponent inf() { return PExponent{0.0, true}; }

    std::string label() const;
};

enum class Method { ClosedForm, Quadrature, MonteCarlo };

std::string method_name(Method m);

struct MeasureValue {
    double value = 0.0;
    Method method = Method::ClosedForm;
    double gap = 0.0;
    bool converged = true;
};

struct MuValue {
    double raw = 0.0;
    double normalized = 0.0;
    Method method = Method::ClosedForm;
    double gap = 0.0;
};

/// Sharp upper bound K_p of mu_p over all copulas: 1/3 at p = infinity,
/// (2*3^{-p} / ((p+1)(p+2)))^{1/p} otherwise.
double mu_upper_bound(PExponent p);

/// 12 * integral(C) - 3.
MeasureValue spearman_rho(const Copula& c, const QuadratureConfig& cfg,
                          bool prefer_closed = true);

struct KendallOptions {
    std::optional<long> mc_samples;  // pairs; default 200000
    std::uint64_t seed = 0x5eed0001u;
    bool prefer_closed = true;
};

/// Strategy cascade: declared closed form; else 1 - 4*integral(d1C * d2C)
/// for absolutely continuous copulas; else the Monte-Carlo concordance
/// estimator when a sampler exists; else an error naming the copula.
MeasureValue kendall_tau(const Copula& c, const QuadratureConfig& cfg,
                         const KendallOptions& opt = {});

/// 4*C(1/2, 1/2) - 1; a single exact evaluation.
double blomqvist_beta(const Copula& c);

/// 12 * integral(|C - uv|).
MeasureValue schweizer_wolff_sigma(const Copula& c, const QuadratureConfig& cfg,
                                   bool prefer_closed = true);

/// mu_p(C) = Lp distance between C and its transpose, raw and normalized
/// by K_p.
MuValue mu(const Copula& c, PExponent p, const QuadratureConfig& cfg,
           bool prefer_closed = true);

struct TailCoefficients {
    MeasureValue lower;
    MeasureValue upper;
};

/// Diagonal limits C(t,t)/t at 0+ and (1-2t+C(t,t))/(1-t) at 1-.
/// Non-convergence is reported via the flag, never as an error.
TailCoefficients tail_coefficients(const Copula& c, bool prefer_closed = true);

struct MuEntry {
    PExponent p;
    double raw = 0.0;
    double normalized = 0.0;
    Method method = Method::ClosedForm;
    double gap = 0.0;
    bool failed = false;
};

struct MeasureReport {
    std::string family;
    MeasureValue rho;
    MeasureValue tau;
    bool tau_failed = false;
    std::string tau_error;
    double beta = 0.0;
    MeasureValue sigma;
    std::vector<MuEntry> mu;
    MeasureValue lambda_lower;
    MeasureValue lambda_upper;
    bool mu_inf_bias_warning = false;  // set by the empirical pipeline
};

/// All functionals in one record with per-entry provenance. A tau failure
/// (no closed form, not absolutely continuous, no sampler) is recorded in
/// the report rather than thrown.
MeasureReport full_report(const Copula& c, const std::vector<PExponent>& p_list,
                          const QuadratureConfig& cfg,
                          const KendallOptions& kendall = {});

/// Support-parametrized integral of M_theta against its own measure,
/// ((1-theta)^2 + theta^2) / 2. Named oracle for the tau identity
/// tau = 4*I - 1 = (1-2*theta)^2.
double mtheta_support_integral(double theta);

}  // namespace copula
