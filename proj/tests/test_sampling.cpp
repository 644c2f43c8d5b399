#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "copula/sampling.hpp"

using namespace copula;

namespace {

// One-sample Kolmogorov-Smirnov statistic against Uniform(0,1).
double ks_uniform(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(x[i] - lo), std::abs(x[i] - hi)});
    }
    return d;
}

}  // namespace

TEST_CASE("samplers are deterministic given the seed") {
    Copula c = make_mtheta(MThetaParams{0.2});
    SampleSet a = sample_copula(c, 1000, RngSeed{77});
    SampleSet b = sample_copula(c, 1000, RngSeed{77});
    CHECK(a.pairs == b.pairs);
    SampleSet d = sample_copula(c, 1000, RngSeed{78});
    CHECK(a.pairs != d.pairs);
}

TEST_CASE("degenerate supports are exact") {
    for (const auto& [u, v] : sample_m(500, RngSeed{1}).pairs) CHECK(u == v);
    for (const auto& [u, v] : sample_w(500, RngSeed{2}).pairs) CHECK(u + v == 1.0);
    for (const auto& [u, v] : sample_mtheta(MThetaParams{0.0}, 500, RngSeed{3}).pairs) {
        CHECK(u == v);
    }
}

TEST_CASE("mtheta sampler: segment masses and sample rho") {
    const std::size_t n = 100000;
    SampleSet s = sample_mtheta(MThetaParams{0.2}, n, RngSeed{11});
    // segment S2 occupies u in (0.8, 1) and carries mass theta = 0.2
    std::size_t high = 0;
    for (const auto& [u, v] : s.pairs) {
        if (u > 0.8) ++high;
    }
    CHECK(std::abs(static_cast<double>(high) / n - 0.2) <= 0.004);

    // sample Spearman rho ~ rho(M_0.2) = 0.04
    std::vector<double> us, vs;
    std::vector<std::size_t> ur(n), vr(n);
    for (const auto& [u, v] : s.pairs) {
        us.push_back(u);
        vs.push_back(v);
    }
    // coordinates are continuous, plain sort ranks suffice
    auto ranks = [](const std::vector<double>& x) {
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        std::vector<double> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[idx[i]] = static_cast<double>(i + 1);
        return r;
    };
    std::vector<double> rx = ranks(us), ry = ranks(vs);
    double mean = (n + 1) / 2.0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
    }
    double rho_hat = sxy / sxx;
    CHECK(std::abs(rho_hat - 0.04) <= 0.01);
}

TEST_CASE("marginal uniformity for every sampler") {
    const std::size_t n = 100000;
    const double bound = 1.63 / std::sqrt(static_cast<double>(n));
    const Copula families[] = {
        make_pi(), make_m(), make_w(), make_mtheta(MThetaParams{0.25}),
        make_clayton(ClaytonParams{1.0}),
        mixture(0.4, make_mtheta(MThetaParams{0.1}), make_clayton(ClaytonParams{2.0})),
    };
    std::uint64_t seed = 500;
    for (const Copula& c : families) {
        CAPTURE(c.describe());
        SampleSet s = sample_copula(c, n, RngSeed{seed++});
        std::vector<double> us, vs;
        for (const auto& [u, v] : s.pairs) {
            us.push_back(u);
            vs.push_back(v);
        }
        CHECK(ks_uniform(std::move(us)) <= bound);
        CHECK(ks_uniform(std::move(vs)) <= bound);
    }
}

TEST_CASE("empirical CDF matches the copula on a 5x5 grid") {
    const std::size_t n = 100000;
    const Copula families[] = {
        make_pi(), make_mtheta(MThetaParams{0.2}), make_clayton(ClaytonParams{1.0}),
        make_mtheta(MThetaParams{1.0 / 3.0}),
    };
    std::uint64_t seed = 900;
    for (const Copula& c : families) {
        CAPTURE(c.describe());
        SampleSet s = sample_copula(c, n, RngSeed{seed++});
        for (int i = 1; i <= 5; ++i) {
            for (int j = 1; j <= 5; ++j) {
                double u = i / 6.0, v = j / 6.0;
                std::size_t count = 0;
                for (const auto& [a, b] : s.pairs) {
                    if (a <= u && b <= v) ++count;
                }
                double hat = static_cast<double>(count) / n;
                double truth = c(u, v);
                double tol = 3.0 * std::sqrt(std::max(truth * (1.0 - truth), 1e-6) / n);
                CHECK(std::abs(hat - truth) <= tol);
            }
        }
    }
}

TEST_CASE("clayton CDF Monte-Carlo cross-check at the center") {
    const std::size_t n = 200000;
    SampleSet s = sample_clayton(ClaytonParams{1.0}, n, RngSeed{4242});
    std::size_t count = 0;
    for (const auto& [u, v] : s.pairs) {
        if (u <= 0.5 && v <= 0.5) ++count;
    }
    CHECK(std::abs(static_cast<double>(count) / n - 1.0 / 3.0) <= 0.004);
}

TEST_CASE("sampling validation") {
    CHECK_THROWS_AS(sample_pi(0, RngSeed{1}), std::invalid_argument);
    Copula grid = make_grid_copula(1, {0.0, 0.0, 0.0, 1.0}, "no-sampler");
    CHECK_THROWS_AS(sample_copula(grid, 10, RngSeed{1}), std::runtime_error);
}
