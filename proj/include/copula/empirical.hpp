// Empirical pipeline: pseudo-observations, the grid-backed empirical
// copula, plug-in estimates of every functional, and percentile-bootstrap
// confidence intervals.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "copula/measures.hpp"
#include "copula/sampling.hpp"

namespace copula {

/// Rank transform: each coordinate becomes rank/(n+1), ties resolved by
/// average ranks. Output lies strictly inside (0,1). Throws for n < 2.
SampleSet pseudo_observations(const SampleSet& raw);

/// Empirical copula C_n(u,v) = #{i : U_i <= u, V_i <= v}/n evaluated at
/// knots (i/m, j/m) with m = min(n, 256), bilinear between knots. Requires
/// pseudo-observations; throws for raw input or degenerate (single-value)
/// coordinates.
Copula empirical_copula(const SampleSet& pseudo);

/// Plug-in estimates: rho from rank correlation, tau from the concordant /
/// discordant pair statistic, beta from direct counting, sigma and mu_p via
/// the empirical copula through the quadrature engine. Sets the mu_inf bias
/// warning for n < 10^4 (the sup statistic is biased low on small samples).
MeasureReport estimate_report(const SampleSet& pseudo,
                              const std::vector<PExponent>& p_list,
                              const QuadratureConfig& cfg);

struct BootstrapSummary {
    double estimate = 0.0;
    int resamples = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.95;
};

enum class Functional { Tau, Rho, Beta, Sigma, Mu1, MuInf };

std::string functional_name(Functional f);

/// Nonparametric bootstrap, percentile method: resample pairs with
/// replacement, re-rank each resample, recompute the functional.
/// Deterministic given (data, B, seed).
BootstrapSummary bootstrap(const SampleSet& pseudo, Functional functional, int B,
                           double level, RngSeed seed);

/// Two numeric comma-separated columns; an optional single header line is
/// auto-detected (non-numeric first row); blank lines are ignored; any
/// non-numeric cell after the header throws with the offending line number.
SampleSet load_csv(std::istream& in);
SampleSet load_csv_file(const std::string& path);

}  // namespace copula
