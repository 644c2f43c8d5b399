#include "copula/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace copula {

namespace {

constexpr double kSymMuTol = 1e-12;
constexpr double kSymRhoTol = 2e-4;
constexpr double kSigmaSlackTol = 5e-3;
constexpr double kSigmaStrictSlack = 0.01;
constexpr double kRhoQuadTol = 1e-3;
constexpr double kIntegralTol = 1e-4;
constexpr double kTauMcTol = 0.01;
constexpr double kTailTol = 5e-3;
constexpr double kBetaExactTol = 1e-15;
constexpr double kBetaMixTol = 1e-12;
constexpr double kMuScaleTol = 2e-3;

double beta_by_eval(const Copula& c) { return 4.0 * c(0.5, 0.5) - 1.0; }

void push(VerifyReport& rep, const Copula& c, std::string check, double observed,
          double expected, double tol) {
    TrialResult t;
    t.copula = c.describe();
    t.check = std::move(check);
    t.observed = observed;
    t.expected = expected;
    t.margin = tol - std::abs(observed - expected);
    t.pass = t.margin >= 0.0;
    if (!t.pass) rep.all_pass = false;
    rep.trials.push_back(std::move(t));
}

// One-sided check: observed >= threshold.
void push_ge(VerifyReport& rep, const Copula& c, std::string check, double observed,
             double threshold) {
    TrialResult t;
    t.copula = c.describe();
    t.check = std::move(check);
    t.observed = observed;
    t.expected = threshold;
    t.margin = observed - threshold;
    t.pass = t.margin >= 0.0;
    if (!t.pass) rep.all_pass = false;
    rep.trials.push_back(std::move(t));
}

void check_symmetrization(VerifyReport& rep, int trials, std::mt19937_64& rng,
                          const QuadratureConfig& cfg) {
    const std::vector<PExponent> ps = {PExponent::finite(1.0), PExponent::finite(2.0),
                                       PExponent::inf()};
    for (int t = 0; t < trials; ++t) {
        Copula c = random_pool_copula(rng);
        Copula s = symmetrize(c);
        for (const PExponent& p : ps) {
            double m = mu(s, p, cfg, /*prefer_closed=*/false).raw;
            push(rep, c, "mu_" + p.label() + "(symmetrize)", m, 0.0, kSymMuTol);
        }
        double rc = spearman_rho(c, cfg, /*prefer_closed=*/false).value;
        double rs = spearman_rho(s, cfg, /*prefer_closed=*/false).value;
        push(rep, c, "rho(symmetrize) = rho", rs, rc, kSymRhoTol);
    }
}

void check_sigma_bound(VerifyReport& rep, int trials, std::mt19937_64& rng,
                       const QuadratureConfig& cfg) {
    for (int t = 0; t < trials; ++t) {
        Copula c = random_pool_copula(rng);
        double sigma = schweizer_wolff_sigma(c, cfg, /*prefer_closed=*/false).value;
        double mu1 = mu(c, PExponent::finite(1.0), cfg, /*prefer_closed=*/false).raw;
        double slack = sigma - 6.0 * mu1;
        push_ge(rep, c, "sigma - 6*mu1", slack, -kSigmaSlackTol);
        if (mu1 > 0.01) {
            push_ge(rep, c, "strict slack (mu1 > 0.01)", slack, kSigmaStrictSlack);
        }
    }
}

void check_shuffle_formulas(VerifyReport& rep, int trials, std::mt19937_64& rng,
                            const QuadratureConfig& cfg) {
    std::vector<double> thetas = {0.0, 0.1, 0.2, 1.0 / 3.0};
    for (int t = 0; t < trials; ++t) thetas.push_back(uniform01(rng) / 3.0);

    for (double th : thetas) {
        Copula c = make_mtheta(MThetaParams{th});
        double integral = integrate([&c](double u, double v) { return c(u, v); }, cfg).value;
        push(rep, c, "integral(M_theta) = (2-3t+3t^2)/6", integral,
             (2.0 - 3.0 * th + 3.0 * th * th) / 6.0, kIntegralTol);
        push(rep, c, "rho quad = 1-6t+6t^2",
             spearman_rho(c, cfg, /*prefer_closed=*/false).value,
             1.0 - 6.0 * th + 6.0 * th * th, kRhoQuadTol);

        KendallOptions kopt;
        kopt.prefer_closed = false;
        kopt.seed = rng();
        double tau_mc = kendall_tau(c, cfg, kopt).value;
        push(rep, c, "tau MC = (1-2t)^2", tau_mc, (1.0 - 2.0 * th) * (1.0 - 2.0 * th),
             kTauMcTol);
        push(rep, c, "tau support integral", 4.0 * mtheta_support_integral(th) - 1.0,
             (1.0 - 2.0 * th) * (1.0 - 2.0 * th), 1e-12);

        TailCoefficients tails = tail_coefficients(c, /*prefer_closed=*/false);
        double expect = (th == 0.0) ? 1.0 : 0.0;
        push(rep, c, "lambda_L numeric", tails.lower.value, expect, kTailTol);
        push(rep, c, "lambda_U numeric", tails.upper.value, expect, kTailTol);
    }

    for (double delta : {0.5, 1.0, 2.0}) {
        Copula c = make_clayton(ClaytonParams{delta});
        TailCoefficients tails = tail_coefficients(c, /*prefer_closed=*/false);
        push(rep, c, "clayton lambda_L = 2^{-1/delta}", tails.lower.value,
             std::pow(2.0, -1.0 / delta), kTailTol);
        push(rep, c, "clayton lambda_U = 0", tails.upper.value, 0.0, kTailTol);
    }
}

void check_beta_invariance(VerifyReport& rep, int trials, std::mt19937_64& rng,
                           const QuadratureConfig&) {
    for (int t = 0; t < trials; ++t) {
        Copula c = random_pool_copula(rng);
        push(rep, c, "beta(symmetrize) = beta", beta_by_eval(symmetrize(c)), beta_by_eval(c),
             kBetaExactTol);
    }
}

void check_beta_decoupling(VerifyReport& rep, int, std::mt19937_64&,
                           const QuadratureConfig& cfg) {
    const std::vector<PExponent> ps = {PExponent::finite(1.0), PExponent::finite(2.0),
                                       PExponent::inf()};
    for (double beta0 : {-0.3, 0.0, 0.5, 0.9}) {
        // Symmetric construction: beta attains beta0 with zero asymmetry.
        Copula cs = beta0 >= 0.0 ? mixture(beta0, make_m(), make_pi())
                                 : mixture(-beta0, make_w(), make_pi());
        push(rep, cs, "beta(C_s)", beta_by_eval(cs), beta0, kBetaMixTol);
        for (const PExponent& p : ps) {
            push(rep, cs, "mu_" + p.label() + "(C_s)",
                 mu(cs, p, cfg, /*prefer_closed=*/false).raw, 0.0, kBetaMixTol);
        }

        // Shuffle route: theta* = (1-beta0)/4 hits the same beta with
        // maximal asymmetry for the family.
        double theta_star = (1.0 - beta0) / 4.0;
        Copula mt = make_mtheta(MThetaParams{theta_star});
        push(rep, mt, "beta(M_theta*)", beta_by_eval(mt), beta0, kBetaExactTol);

        for (const PExponent& p : ps) {
            double mu_base = mu(mt, p, cfg, /*prefer_closed=*/false).raw;
            for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
                Copula ca = mixture(alpha, mt, transpose(mt));
                double mu_alpha = mu(ca, p, cfg, /*prefer_closed=*/false).raw;
                std::ostringstream check;
                check << "mu_" << p.label() << "(C_" << alpha << ") = |2a-1| mu";
                push(rep, ca, check.str(), mu_alpha, std::abs(2.0 * alpha - 1.0) * mu_base,
                     kMuScaleTol);
            }
        }
    }
}

}  // namespace

Proposition proposition_from_string(const std::string& s) {
    if (s == "1") return Proposition::Symmetrization;
    if (s == "2") return Proposition::SigmaLowerBound;
    if (s == "3") return Proposition::ShuffleFormulas;
    if (s == "4") return Proposition::BetaInvariance;
    if (s == "corollary") return Proposition::BetaDecoupling;
    throw std::invalid_argument("unknown proposition \"" + s +
                                "\" (expected 1, 2, 3, 4 or corollary)");
}

std::string proposition_name(Proposition p) {
    switch (p) {
        case Proposition::Symmetrization: return "1 (symmetrization: mu_p -> 0, rho preserved)";
        case Proposition::SigmaLowerBound: return "2 (sigma >= 6*mu_1)";
        case Proposition::ShuffleFormulas: return "3 (shuffle family tau/rho/tails)";
        case Proposition::BetaInvariance: return "4 (beta invariant under symmetrization)";
        case Proposition::BetaDecoupling: return "corollary (beta carries no mu information)";
    }
    return "?";
}

Copula random_pool_copula(std::mt19937_64& rng) {
    auto leaf = [&rng]() {
        double pick = uniform01(rng);
        Copula c;
        if (pick < 0.40) {
            c = make_mtheta(MThetaParams{uniform01(rng) / 3.0});
        } else if (pick < 0.65) {
            c = make_clayton(ClaytonParams{0.5 + 4.5 * uniform01(rng)});
        } else if (pick < 0.80) {
            c = make_pi();
        } else if (pick < 0.90) {
            c = make_m();
        } else {
            c = make_w();
        }
        if (uniform01(rng) < 0.5) c = transpose(c);
        return c;
    };
    if (uniform01(rng) < 0.7) {
        return mixture(uniform01(rng), leaf(), leaf());
    }
    return leaf();
}

VerifyReport verify_proposition(Proposition prop, int trials, std::uint64_t seed,
                                const QuadratureConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("verify: trials must be >= 1");
    VerifyReport rep;
    rep.proposition = prop;
    {
        std::ostringstream os;
        os << "tolerances: mu(sym) <= " << kSymMuTol << "; |rho(S)-rho(C)| <= " << kSymRhoTol
           << "; sigma-6mu1 >= -" << kSigmaSlackTol << " (strict > " << kSigmaStrictSlack
           << " when mu1 > 0.01); rho quad " << kRhoQuadTol << "; tau MC " << kTauMcTol
           << "; tails " << kTailTol << "; beta exact " << kBetaExactTol << "; mu scaling "
           << kMuScaleTol << "; grid n = " << cfg.n;
        rep.tolerance_policy = os.str();
    }
    std::mt19937_64 rng(seed);
    switch (prop) {
        case Proposition::Symmetrization: check_symmetrization(rep, trials, rng, cfg); break;
        case Proposition::SigmaLowerBound: check_sigma_bound(rep, trials, rng, cfg); break;
        case Proposition::ShuffleFormulas: check_shuffle_formulas(rep, trials, rng, cfg); break;
        case Proposition::BetaInvariance: check_beta_invariance(rep, trials, rng, cfg); break;
        case Proposition::BetaDecoupling: check_beta_decoupling(rep, trials, rng, cfg); break;
    }
    return rep;
}

}  // namespace copula
