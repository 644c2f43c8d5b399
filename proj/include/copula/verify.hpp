// Mechanical verification of the library's analytic identities against the
// numeric engine: symmetrization annihilates mu_p while preserving rho;
// sigma >= 6*mu_1; the closed-form tau/rho/tail values of the shuffle
// family; beta-invariance under symmetrization; and the beta/mu
// decoupling constructions.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "copula/measures.hpp"

namespace copula {

enum class Proposition { Symmetrization, SigmaLowerBound, ShuffleFormulas, BetaInvariance, BetaDecoupling };

Proposition proposition_from_string(const std::string& s);
std::string proposition_name(Proposition p);

struct TrialResult {
    std::string copula;
    std::string check;
    double margin = 0.0;  // slack to the tolerance; negative = violation
    double observed = 0.0;
    double expected = 0.0;
    bool pass = true;
};

struct VerifyReport {
    Proposition proposition;
    std::string tolerance_policy;
    std::vector<TrialResult> trials;
    bool all_pass = true;
};

/// One random copula from the verification pool: mixtures of shuffle,
/// Clayton, pi, m, w leaves with lambda ~ U(0,1), theta ~ U(0,1/3),
/// delta ~ U(0.5,5) and random transposition.
Copula random_pool_copula(std::mt19937_64& rng);

VerifyReport verify_proposition(Proposition prop, int trials, std::uint64_t seed,
                                const QuadratureConfig& cfg);

}  // namespace copula
