#include "copula/copula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace copula {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

MThetaParams::MThetaParams(double t) : theta(t) {
    if (!(t >= 0.0 && t <= 1.0 / 3.0)) {
        throw std::invalid_argument("mtheta: theta must lie in [0, 1/3], got " + fmt(t));
    }
}

ClaytonParams::ClaytonParams(double d) : delta(d) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("clayton: delta must be > 0, got " + fmt(d));
    }
}

Copula make_pi() {
    Copula::Impl impl;
    impl.eval = [](double u, double v) { return u * v; };
    impl.symmetric = true;
    impl.abs_cont = true;
    impl.forms.tau = 0.0;
    impl.forms.rho = 0.0;
    impl.forms.beta = 0.0;
    impl.forms.sigma = 0.0;
    impl.forms.mu_inf = 0.0;
    impl.forms.lambda_lower = 0.0;
    impl.forms.lambda_upper = 0.0;
    impl.kind = FamilyKind::Pi;
    impl.name = "pi";
    impl.sampler = [](std::mt19937_64& rng) {
        double u = uniform01(rng);
        double v = uniform01(rng);
        return std::make_pair(u, v);
    };
    return Copula(std::move(impl));
}

Copula make_m() {
    Copula::Impl impl;
    impl.eval = [](double u, double v) { return std::min(u, v); };
    impl.symmetric = true;
    impl.abs_cont = false;
    impl.forms.tau = 1.0;
    impl.forms.rho = 1.0;
    impl.forms.beta = 1.0;
    impl.forms.sigma = 1.0;
    impl.forms.mu_inf = 0.0;
    impl.forms.lambda_lower = 1.0;
    impl.forms.lambda_upper = 1.0;
    impl.kind = FamilyKind::M;
    impl.name = "m";
    impl.sampler = [](std::mt19937_64& rng) {
        double t = uniform01(rng);
        return std::make_pair(t, t);
    };
    return Copula(std::move(impl));
}

Copula make_w() {
    Copula::Impl impl;
    impl.eval = [](double u, double v) { return std::max(u + v - 1.0, 0.0); };
    impl.symmetric = true;
    impl.abs_cont = false;
    impl.forms.tau = -1.0;
    impl.forms.rho = -1.0;
    impl.forms.beta = -1.0;
    impl.forms.sigma = 1.0;
    impl.forms.mu_inf = 0.0;
    impl.forms.lambda_lower = 0.0;
    impl.forms.lambda_upper = 0.0;
    impl.kind = FamilyKind::W;
    impl.name = "w";
    impl.sampler = [](std::mt19937_64& rng) {
        double t = uniform01(rng);
        return std::make_pair(t, 1.0 - t);
    };
    return Copula(std::move(impl));
}

Copula make_mtheta(MThetaParams params) {
    const double th = params.theta;
    Copula::Impl impl;
    impl.eval = [th](double u, double v) {
        double third = std::max(u - 1.0 + th, 0.0) + std::max(v - th, 0.0);
        return std::min({u, v, third});
    };
    impl.symmetric = (th == 0.0);
    impl.abs_cont = false;
    impl.forms.tau = (1.0 - 2.0 * th) * (1.0 - 2.0 * th);
    impl.forms.rho = 1.0 - 6.0 * th + 6.0 * th * th;
    impl.forms.beta = 1.0 - 4.0 * th;
    impl.forms.mu_inf = th;
    impl.forms.lambda_lower = (th == 0.0) ? 1.0 : 0.0;
    impl.forms.lambda_upper = (th == 0.0) ? 1.0 : 0.0;
    impl.kind = FamilyKind::MTheta;
    impl.name = "mtheta(" + fmt(th) + ")";
    // Mass sits uniformly on two slope-1 segments: S1 from (0, theta) to
    // (1-theta, 1) with mass 1-theta, S2 from (1-theta, 0) to (1, theta)
    // with mass theta. Both marginals are exactly Uniform(0,1).
    impl.sampler = [th](std::mt19937_64& rng) {
        double pick = uniform01(rng);
        double t = uniform01(rng);
        if (pick < 1.0 - th) {
            return std::make_pair(t * (1.0 - th), th + t * (1.0 - th));
        }
        return std::make_pair((1.0 - th) + t * th, t * th);
    };
    return Copula(std::move(impl));
}

Copula make_clayton(ClaytonParams params) {
    const double d = params.delta;
    Copula::Impl impl;
    // Explicit zero branch avoids 0^{-delta} overflow on the boundary.
    impl.eval = [d](double u, double v) {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        double s = std::pow(u, -d) + std::pow(v, -d) - 1.0;
        return std::pow(s, -1.0 / d);
    };
    impl.symmetric = true;
    impl.abs_cont = true;
    impl.forms.lambda_lower = std::pow(2.0, -1.0 / d);
    impl.forms.lambda_upper = 0.0;
    impl.forms.mu_inf = 0.0;
    impl.kind = FamilyKind::Clayton;
    impl.name = "clayton(" + fmt(d) + ")";
    // Conditional inversion: V = ((W^{-d/(1+d)} - 1) U^{-d} + 1)^{-1/d}.
    impl.sampler = [d](std::mt19937_64& rng) {
        double u = uniform01(rng);
        double w = uniform01(rng);
        while (u <= 0.0) u = uniform01(rng);
        while (w <= 0.0) w = uniform01(rng);
        double v = std::pow((std::pow(w, -d / (1.0 + d)) - 1.0) * std::pow(u, -d) + 1.0,
                            -1.0 / d);
        return std::make_pair(u, v);
    };
    return Copula(std::move(impl));
}

Copula transpose(const Copula& c) {
    Copula inner = c;
    Copula::Impl impl;
    impl.eval = [inner](double u, double v) { return inner(v, u); };
    impl.symmetric = inner.is_symmetric();
    impl.abs_cont = inner.is_absolutely_continuous();
    impl.forms = inner.closed_forms();  // all declared functionals are transpose-invariant
    impl.kind = FamilyKind::Transpose;
    impl.name = "transpose(" + inner.describe() + ")";
    if (inner.has_sampler()) {
        impl.sampler = [inner](std::mt19937_64& rng) {
            auto [u, v] = inner.sample(rng);
            return std::make_pair(v, u);
        };
    }
    return Copula(std::move(impl));
}

Copula symmetrize(const Copula& c) {
    if (c.is_symmetric()) return c;
    Copula inner = c;
    Copula::Impl impl;
    impl.eval = [inner](double u, double v) {
        return 0.5 * (inner(u, v) + inner(v, u));
    };
    impl.symmetric = true;
    impl.abs_cont = inner.is_absolutely_continuous();
    const ClosedForms& f = inner.closed_forms();
    impl.forms.rho = f.rho;    // preserved by symmetrization
    impl.forms.beta = f.beta;  // preserved by symmetrization
    impl.forms.mu_inf = 0.0;
    // S(t,t) = C(t,t), so both tail coefficients carry over.
    impl.forms.lambda_lower = f.lambda_lower;
    impl.forms.lambda_upper = f.lambda_upper;
    impl.kind = FamilyKind::Symmetrized;
    impl.name = "symmetrize(" + inner.describe() + ")";
    if (inner.has_sampler()) {
        impl.sampler = [inner](std::mt19937_64& rng) {
            bool flip = uniform01(rng) < 0.5;
            auto [u, v] = inner.sample(rng);
            return flip ? std::make_pair(v, u) : std::make_pair(u, v);
        };
    }
    return Copula(std::move(impl));
}

Copula mixture(double lambda, const Copula& left, const Copula& right) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("mixture: lambda must lie in [0,1], got " + fmt(lambda));
    }
    Copula l = left, r = right;
    Copula::Impl impl;
    impl.eval = [lambda, l, r](double u, double v) {
        return lambda * l(u, v) + (1.0 - lambda) * r(u, v);
    };
    impl.symmetric = l.is_symmetric() && r.is_symmetric();
    impl.abs_cont = l.is_absolutely_continuous() && r.is_absolutely_continuous();
    const ClosedForms& fl = l.closed_forms();
    const ClosedForms& fr = r.closed_forms();
    auto combine = [lambda](const std::optional<double>& a,
                            const std::optional<double>& b) -> std::optional<double> {
        if (a && b) return lambda * *a + (1.0 - lambda) * *b;
        return std::nullopt;
    };
    impl.forms.rho = combine(fl.rho, fr.rho);
    impl.forms.beta = combine(fl.beta, fr.beta);
    impl.forms.lambda_lower = combine(fl.lambda_lower, fr.lambda_lower);
    impl.forms.lambda_upper = combine(fl.lambda_upper, fr.lambda_upper);
    if (impl.symmetric) impl.forms.mu_inf = 0.0;
    impl.kind = FamilyKind::Mixture;
    impl.name = "mix(" + fmt(lambda) + ", " + l.describe() + ", " + r.describe() + ")";
    if (l.has_sampler() && r.has_sampler()) {
        impl.sampler = [lambda, l, r](std::mt19937_64& rng) {
            return uniform01(rng) < lambda ? l.sample(rng) : r.sample(rng);
        };
    }
    return Copula(std::move(impl));
}

Copula make_grid_copula(int m, std::vector<double> knots, std::string name) {
    if (m < 1) throw std::invalid_argument("grid copula: m must be >= 1");
    if (knots.size() != static_cast<std::size_t>((m + 1) * (m + 1))) {
        throw std::invalid_argument("grid copula: knot table must be (m+1)x(m+1)");
    }
    auto table = std::make_shared<const std::vector<double>>(std::move(knots));
    Copula::Impl impl;
    impl.eval = [m, table](double u, double v) {
        double x = u * m;
        double y = v * m;
        int i = std::min(static_cast<int>(x), m - 1);
        int j = std::min(static_cast<int>(y), m - 1);
        if (i < 0) i = 0;
        if (j < 0) j = 0;
        double fx = x - i;
        double fy = y - j;
        const std::vector<double>& k = *table;
        int row = m + 1;
        double c00 = k[i * row + j];
        double c10 = k[(i + 1) * row + j];
        double c01 = k[i * row + j + 1];
        double c11 = k[(i + 1) * row + j + 1];
        return (1.0 - fx) * ((1.0 - fy) * c00 + fy * c01) +
               fx * ((1.0 - fy) * c10 + fy * c11);
    };
    impl.symmetric = false;
    impl.abs_cont = true;
    impl.kind = FamilyKind::GridBacked;
    impl.name = std::move(name);
    return Copula(std::move(impl));
}

}  // namespace copula
