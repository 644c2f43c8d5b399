// Bivariate copula families and structural operators.
//
// A Copula is an immutable evaluator on the unit square plus capability
// metadata: a declared symmetry flag, an absolute-continuity flag, optional
// closed-form values for the dependence functionals, and an optional sampler.
// Declared metadata is trusted by downstream code and audited by the test
// suite; a mismatch is a test failure, not a runtime error.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace copula {

struct UnitPoint {
    double u = 0.0;
    double v = 0.0;
};

/// One 53-bit uniform draw in [0,1). Bit-reproducible across platforms:
/// mt19937_64 output is fully specified by the standard and no
/// distribution object is involved.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Closed-form functional values a family declares at construction.
/// Absent entries fall back to the numeric engine.
struct ClosedForms {
    std::optional<double> tau;
    std::optional<double> rho;
    std::optional<double> beta;
    std::optional<double> sigma;
    std::optional<double> mu_inf;
    std::optional<double> lambda_lower;
    std::optional<double> lambda_upper;
};

enum class FamilyKind {
    Pi,
    M,
    W,
    MTheta,
    Clayton,
    Transpose,
    Symmetrized,
    Mixture,
    GridBacked,
};

/// Shuffle-of-Min parameter. The two-segment family is defined for
/// theta in [0, 1/3]; construction outside that range throws.
struct MThetaParams {
    double theta;
    explicit MThetaParams(double t);
};

/// Clayton parameter, delta > 0.
struct ClaytonParams {
    double delta;
    explicit ClaytonParams(double d);
};

class Copula {
public:
    using EvalFn = std::function<double(double, double)>;
    using SampleFn = std::function<std::pair<double, double>(std::mt19937_64&)>;

    Copula() = default;

    double operator()(double u, double v) const { return impl_->eval(u, v); }
    double operator()(UnitPoint p) const { return impl_->eval(p.u, p.v); }

    bool is_symmetric() const { return impl_->symmetric; }
    bool is_absolutely_continuous() const { return impl_->abs_cont; }
    const ClosedForms& closed_forms() const { return impl_->forms; }
    FamilyKind kind() const { return impl_->kind; }

    /// Human-readable family spec, e.g. "mtheta(0.2)" or
    /// "mix(0.4, clayton(2), transpose(mtheta(0.1)))".
    const std::string& describe() const { return impl_->name; }

    bool has_sampler() const { return static_cast<bool>(impl_->sampler); }
    std::pair<double, double> sample(std::mt19937_64& rng) const {
        return impl_->sampler(rng);
    }

    struct Impl {
        EvalFn eval;
        bool symmetric = false;
        bool abs_cont = false;
        ClosedForms forms;
        FamilyKind kind = FamilyKind::Pi;
        std::string name;
        SampleFn sampler;
    };

    explicit Copula(Impl impl)
        : impl_(std::make_shared<const Impl>(std::move(impl))) {}

private:
    std::shared_ptr<const Impl> impl_;
};

Copula make_pi();
Copula make_m();
Copula make_w();
Copula make_mtheta(MThetaParams params);
Copula make_clayton(ClaytonParams params);

/// The transpose C^t(u,v) = C(v,u). tau, rho, beta, sigma, mu_inf and the
/// tail coefficients are transpose-invariant, so declared closed forms
/// carry over unchanged.
Copula transpose(const Copula& c);

/// The symmetrization (C + C^t)/2. Returns c itself when c is already
/// symmetric, which makes the operation exactly idempotent. rho, beta and
/// the tail coefficients carry over; mu vanishes.
Copula symmetrize(const Copula& c);

/// Pointwise convex combination lambda*left + (1-lambda)*right.
/// rho, beta and the tail coefficients combine linearly when both inputs
/// declare them.
Copula mixture(double lambda, const Copula& left, const Copula& right);

/// Copula backed by an (m+1)x(m+1) knot table at (i/m, j/m), bilinear
/// between knots. Bilinear interpolation preserves 2-increasingness of the
/// knot values. Used by the empirical-copula estimator.
Copula make_grid_copula(int m, std::vector<double> knots, std::string name);

}  // namespace copula
