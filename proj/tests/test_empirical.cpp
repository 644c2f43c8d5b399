#include <doctest.h>

#include <cmath>
#include <sstream>

#include "copula/empirical.hpp"
#include "test_helpers.hpp"

using namespace copula;

namespace {

SampleSet make_raw(std::initializer_list<std::pair<double, double>> pts) {
    SampleSet s;
    s.kind = SampleKind::Raw;
    s.pairs = pts;
    return s;
}

QuadratureConfig small_cfg() {
    QuadratureConfig cfg;
    cfg.n = 256;
    cfg.refine_levels = 1;
    return cfg;
}

}  // namespace

TEST_CASE("pseudo observations: ranks over n+1") {
    SampleSet p = pseudo_observations(make_raw({{10, 3}, {20, 1}, {30, 2}}));
    REQUIRE(p.size() == 3);
    CHECK(p.kind == SampleKind::Pseudo);
    CHECK(p.pairs[0] == std::pair<double, double>{0.25, 0.75});
    CHECK(p.pairs[1] == std::pair<double, double>{0.5, 0.25});
    CHECK(p.pairs[2] == std::pair<double, double>{0.75, 0.5});
}

TEST_CASE("pseudo observations: ties get average ranks") {
    SampleSet p = pseudo_observations(make_raw({{1, 5}, {1, 6}}));
    CHECK(p.pairs[0].first == doctest::Approx(0.5));
    CHECK(p.pairs[1].first == doctest::Approx(0.5));
    CHECK(p.pairs[0].second == doctest::Approx(1.0 / 3.0));
    CHECK(p.pairs[1].second == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("pseudo observations: monotone transforms change nothing, bitwise") {
    SampleSet raw = make_raw({{3.2, -1.0}, {7.5, 0.5}, {-2.0, 4.4}, {0.1, 2.2}, {9.9, -3.3}});
    SampleSet transformed = raw;
    for (auto& [x, y] : transformed.pairs) {
        x = std::exp(x);         // strictly increasing
        y = y * y * y + 2.0 * y; // strictly increasing
    }
    SampleSet p1 = pseudo_observations(raw);
    SampleSet p2 = pseudo_observations(transformed);
    CHECK(p1.pairs == p2.pairs);

    // and through the full estimate, still bitwise
    QuadratureConfig cfg = small_cfg();
    MeasureReport r1 = estimate_report(p1, {PExponent::finite(1.0)}, cfg);
    MeasureReport r2 = estimate_report(p2, {PExponent::finite(1.0)}, cfg);
    CHECK(r1.tau.value == r2.tau.value);
    CHECK(r1.rho.value == r2.rho.value);
    CHECK(r1.sigma.value == r2.sigma.value);
    CHECK(r1.mu[0].raw == r2.mu[0].raw);
}

TEST_CASE("pseudo observations require two points") {
    CHECK_THROWS_AS(pseudo_observations(make_raw({{1, 2}})), std::invalid_argument);
}

TEST_CASE("empirical copula input validation") {
    SampleSet raw = make_raw({{1, 2}, {3, 4}, {5, 6}});
    CHECK_THROWS_WITH_AS(empirical_copula(raw), doctest::Contains("pseudo"),
                         std::invalid_argument);
    // constant column collapses to a single pseudo value
    SampleSet degenerate = pseudo_observations(make_raw({{1, 5}, {1, 6}, {1, 7}}));
    CHECK_THROWS_WITH_AS(empirical_copula(degenerate), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("comonotone data gives an empirical copula near M") {
    const std::size_t n = 2000;
    SampleSet raw;
    raw.kind = SampleKind::Raw;
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < n; ++i) {
        double t = uniform01(rng);
        raw.pairs.emplace_back(t, 2.0 * t + 1.0);
    }
    Copula cn = empirical_copula(pseudo_observations(raw));
    Copula m = make_m();
    double worst = testing::max_abs_diff(cn, m, 100);
    CHECK(worst <= 2.0 / n + 1.0 / 256.0 + 1e-12);
}

TEST_CASE("empirical copula converges to the sampled shuffle") {
    SampleSet s = sample_mtheta(MThetaParams{0.2}, 5000, RngSeed{314});
    Copula cn = empirical_copula(pseudo_observations(s));
    Copula truth = make_mtheta(MThetaParams{0.2});
    CHECK(testing::max_abs_diff(cn, truth, 128) <= 0.03);
}

TEST_CASE("estimate report on independent data") {
    SampleSet s = sample_pi(5000, RngSeed{2024});
    MeasureReport rep = estimate_report(pseudo_observations(s),
                                        {PExponent::finite(1.0), PExponent::inf()},
                                        small_cfg());
    CHECK(std::abs(rep.tau.value) <= 0.05);
    CHECK(std::abs(rep.rho.value) <= 0.05);
    CHECK(std::abs(rep.beta) <= 0.05);
    CHECK(std::abs(rep.sigma.value) <= 0.05);
    CHECK(rep.mu[0].raw <= 0.05);
    CHECK(rep.mu_inf_bias_warning);  // n < 10^4
}

TEST_CASE("estimate report recovers shuffle functionals") {
    SampleSet s = sample_mtheta(MThetaParams{0.2}, 5000, RngSeed{7});
    MeasureReport rep =
        estimate_report(pseudo_observations(s), {PExponent::inf()}, small_cfg());
    CHECK(std::abs(rep.tau.value - 0.36) <= 0.03);

    SampleSet s3 = sample_mtheta(MThetaParams{1.0 / 3.0}, 5000, RngSeed{8});
    MeasureReport rep3 =
        estimate_report(pseudo_observations(s3), {PExponent::inf()}, small_cfg());
    CHECK(rep3.mu[0].normalized >= 0.85);
}

TEST_CASE("estimates are invariant under swapping the data columns") {
    SampleSet s = sample_mtheta(MThetaParams{0.25}, 2000, RngSeed{99});
    SampleSet swapped = s;
    for (auto& [u, v] : swapped.pairs) std::swap(u, v);
    QuadratureConfig cfg = small_cfg();
    MeasureReport a = estimate_report(pseudo_observations(s), {PExponent::finite(1.0)}, cfg);
    MeasureReport b =
        estimate_report(pseudo_observations(swapped), {PExponent::finite(1.0)}, cfg);
    CHECK(a.tau.value == doctest::Approx(b.tau.value).epsilon(1e-12));
    CHECK(a.rho.value == doctest::Approx(b.rho.value).epsilon(1e-12));
    CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-12));
    CHECK(a.sigma.value == doctest::Approx(b.sigma.value).epsilon(1e-9));
    CHECK(a.mu[0].raw == doctest::Approx(b.mu[0].raw).epsilon(1e-9));
}

TEST_CASE("consistency: error does not grow when n doubles") {
    // |tau_hat - 0.36| across doubling n, pinned seeds; allow one inversion
    double prev = 1e9;
    int inversions = 0;
    for (std::size_t n : {1000, 2000, 4000, 8000}) {
        SampleSet s = sample_mtheta(MThetaParams{0.2}, n, RngSeed{4321 + n});
        MeasureReport rep =
            estimate_report(pseudo_observations(s), {}, small_cfg());
        double err = std::abs(rep.tau.value - 0.36);
        if (err > prev) ++inversions;
        prev = err;
    }
    CHECK(inversions <= 1);
}

TEST_CASE("bootstrap determinism and validation") {
    SampleSet s = sample_pi(300, RngSeed{55});
    SampleSet p = pseudo_observations(s);
    BootstrapSummary a = bootstrap(p, Functional::Rho, 150, 0.9, RngSeed{10});
    BootstrapSummary b = bootstrap(p, Functional::Rho, 150, 0.9, RngSeed{10});
    CHECK(a.estimate == b.estimate);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
    CHECK(a.ci_low <= a.estimate);
    CHECK(a.estimate <= a.ci_high);
    CHECK_THROWS_AS(bootstrap(p, Functional::Rho, 50, 0.9, RngSeed{1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bootstrap(p, Functional::Rho, 150, 1.5, RngSeed{1}),
                    std::invalid_argument);
}

TEST_CASE("bootstrap mu_1 on independent data concentrates near zero") {
    SampleSet s = sample_pi(1000, RngSeed{321});
    BootstrapSummary bs =
        bootstrap(pseudo_observations(s), Functional::Mu1, 500, 0.95, RngSeed{77});
    CHECK(bs.ci_low >= 0.0);
    CHECK(bs.ci_high <= 0.02);
}

TEST_CASE("bootstrap beta on comonotone data is degenerate at 1") {
    SampleSet s = sample_m(400, RngSeed{12});
    BootstrapSummary bs =
        bootstrap(pseudo_observations(s), Functional::Beta, 100, 0.95, RngSeed{13});
    CHECK(bs.estimate == doctest::Approx(1.0).epsilon(0.02));
    CHECK(bs.ci_low == doctest::Approx(1.0).epsilon(0.03));
    CHECK(bs.ci_high == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bootstrap tau interval covers the shuffle value") {
    SampleSet s = sample_mtheta(MThetaParams{0.25}, 2000, RngSeed{271828});
    BootstrapSummary bs =
        bootstrap(pseudo_observations(s), Functional::Tau, 500, 0.95, RngSeed{31});
    CHECK(bs.ci_low <= 0.25);
    CHECK(bs.ci_high >= 0.25);
}

TEST_CASE("csv loading") {
    std::istringstream ok("x,y\n1.5,2.5\n\n3.5, 4.5\n");
    SampleSet s = load_csv(ok);
    REQUIRE(s.size() == 2);
    CHECK(s.pairs[0] == std::pair<double, double>{1.5, 2.5});
    CHECK(s.pairs[1] == std::pair<double, double>{3.5, 4.5});

    std::istringstream no_header("0.25,0.5\n0.5,0.25\n");
    CHECK(load_csv(no_header).size() == 2);

    std::istringstream bad("x,y\n1,2\noops,3\n");
    CHECK_THROWS_WITH_AS(load_csv(bad), doctest::Contains("line 3"), std::runtime_error);
}
