#include "copula/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace copula {

namespace {

// Average ranks (1-based) of a single coordinate.
std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    double denom = std::sqrt(sxx * syy);
    return denom > 0.0 ? sxy / denom : 0.0;
}

void split_columns(const SampleSet& s, std::vector<double>& x, std::vector<double>& y) {
    x.clear();
    y.clear();
    x.reserve(s.size());
    y.reserve(s.size());
    for (const auto& [a, b] : s.pairs) {
        x.push_back(a);
        y.push_back(b);
    }
}

double tau_pair_statistic(const SampleSet& s) {
    const std::size_t n = s.size();
    long long balance = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double sgn = (s.pairs[i].first - s.pairs[j].first) *
                         (s.pairs[i].second - s.pairs[j].second);
            if (sgn > 0.0) ++balance;
            else if (sgn < 0.0) --balance;
        }
    }
    double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(balance) / pairs;
}

double empirical_cdf(const SampleSet& s, double u, double v) {
    std::size_t count = 0;
    for (const auto& [a, b] : s.pairs) {
        if (a <= u && b <= v) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(s.size());
}

double statistic(const SampleSet& pseudo, Functional f, const QuadratureConfig& cfg) {
    switch (f) {
        case Functional::Tau:
            return tau_pair_statistic(pseudo);
        case Functional::Rho: {
            std::vector<double> x, y;
            split_columns(pseudo, x, y);
            return pearson(x, y);
        }
        case Functional::Beta:
            return 4.0 * empirical_cdf(pseudo, 0.5, 0.5) - 1.0;
        case Functional::Sigma:
            return schweizer_wolff_sigma(empirical_copula(pseudo), cfg).value;
        case Functional::Mu1:
            return mu(empirical_copula(pseudo), PExponent::finite(1.0), cfg).raw;
        case Functional::MuInf:
            return mu(empirical_copula(pseudo), PExponent::inf(), cfg).raw;
    }
    throw std::logic_error("statistic: unknown functional");
}

}  // namespace

std::string functional_name(Functional f) {
    switch (f) {
        case Functional::Tau: return "tau";
        case Functional::Rho: return "rho";
        case Functional::Beta: return "beta";
        case Functional::Sigma: return "sigma";
        case Functional::Mu1: return "mu1";
        case Functional::MuInf: return "muinf";
    }
    return "?";
}

SampleSet pseudo_observations(const SampleSet& raw) {
    const std::size_t n = raw.size();
    if (n < 2) throw std::invalid_argument("pseudo_observations: need at least 2 observations");
    std::vector<double> x, y;
    split_columns(raw, x, y);
    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);
    SampleSet out;
    out.kind = SampleKind::Pseudo;
    out.pairs.reserve(n);
    const double denom = static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        out.pairs.emplace_back(rx[i] / denom, ry[i] / denom);
    }
    return out;
}

Copula empirical_copula(const SampleSet& pseudo) {
    if (pseudo.kind != SampleKind::Pseudo) {
        throw std::invalid_argument(
            "empirical_copula: input must be pseudo-observations (run pseudo_observations first)");
    }
    const std::size_t n = pseudo.size();
    if (n < 2) throw std::invalid_argument("empirical_copula: need at least 2 observations");
    for (int coord = 0; coord < 2; ++coord) {
        double first = coord == 0 ? pseudo.pairs[0].first : pseudo.pairs[0].second;
        bool distinct = false;
        for (const auto& [a, b] : pseudo.pairs) {
            if ((coord == 0 ? a : b) != first) {
                distinct = true;
                break;
            }
        }
        if (!distinct) {
            throw std::invalid_argument(
                "empirical_copula: degenerate data, a coordinate has a single distinct value");
        }
    }

    const int m = static_cast<int>(std::min<std::size_t>(n, 256));
    const int row = m + 1;
    // Histogram by the smallest knot index covering each observation, then
    // a 2D prefix sum gives the counts #{U <= i/m, V <= j/m}.
    std::vector<double> knots(static_cast<std::size_t>(row) * row, 0.0);
    for (const auto& [u, v] : pseudo.pairs) {
        int a = std::min(static_cast<int>(std::ceil(u * m)), m);
        int b = std::min(static_cast<int>(std::ceil(v * m)), m);
        if (a < 1) a = 1;
        if (b < 1) b = 1;
        knots[static_cast<std::size_t>(a) * row + b] += 1.0;
    }
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            knots[static_cast<std::size_t>(i) * row + j] +=
                knots[static_cast<std::size_t>(i - 1) * row + j] +
                knots[static_cast<std::size_t>(i) * row + j - 1] -
                knots[static_cast<std::size_t>(i - 1) * row + j - 1];
        }
    }
    for (double& k : knots) k /= static_cast<double>(n);
    std::ostringstream name;
    name << "empirical(n=" << n << ", m=" << m << ")";
    return make_grid_copula(m, std::move(knots), name.str());
}

MeasureReport estimate_report(const SampleSet& pseudo,
                              const std::vector<PExponent>& p_list,
                              const QuadratureConfig& cfg) {
    if (pseudo.kind != SampleKind::Pseudo) {
        throw std::invalid_argument("estimate_report: input must be pseudo-observations");
    }
    Copula cn = empirical_copula(pseudo);
    MeasureReport rep;
    rep.family = cn.describe();
    {
        std::vector<double> x, y;
        split_columns(pseudo, x, y);
        double n = static_cast<double>(pseudo.size());
        rep.rho = {pearson(x, y), Method::MonteCarlo, 3.0 / std::sqrt(n), true};
        rep.tau = {tau_pair_statistic(pseudo), Method::MonteCarlo, 3.0 / std::sqrt(n), true};
        rep.beta = 4.0 * empirical_cdf(pseudo, 0.5, 0.5) - 1.0;
    }
    rep.sigma = schweizer_wolff_sigma(cn, cfg);
    for (const PExponent& p : p_list) {
        MuValue m = mu(cn, p, cfg);
        rep.mu.push_back({p, m.raw, m.normalized, m.method, m.gap, false});
    }
    TailCoefficients tails = tail_coefficients(cn);
    rep.lambda_lower = tails.lower;
    rep.lambda_upper = tails.upper;
    rep.mu_inf_bias_warning = pseudo.size() < 10000;
    return rep;
}

BootstrapSummary bootstrap(const SampleSet& pseudo, Functional functional, int B,
                           double level, RngSeed seed) {
    if (B < 100) throw std::invalid_argument("bootstrap: need B >= 100 resamples");
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap: level must lie in (0,1)");
    }
    const std::size_t n = pseudo.size();
    if (n < 2) throw std::invalid_argument("bootstrap: need at least 2 observations");

    // Grid functionals run at reduced resolution; a resample perturbs the
    // statistic by O(1/sqrt(n)), far above the quadrature error at n=128.
    QuadratureConfig cfg;
    cfg.n = 128;
    cfg.refine_levels = 1;

    BootstrapSummary out;
    out.estimate = statistic(pseudo, functional, cfg);
    out.resamples = B;
    out.level = level;

    std::mt19937_64 rng(seed.value);
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(B));
    SampleSet resample;
    resample.kind = SampleKind::Raw;
    resample.pairs.resize(n);
    for (int b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t idx = static_cast<std::size_t>(uniform01(rng) * n);
            if (idx >= n) idx = n - 1;
            resample.pairs[i] = pseudo.pairs[idx];
        }
        SampleSet reranked;
        try {
            reranked = pseudo_observations(resample);
            stats.push_back(statistic(reranked, functional, cfg));
        } catch (const std::invalid_argument&) {
            // Degenerate resample (all identical pairs); the statistic of
            // the point mass is 0 asymmetry / full concordance. Re-rank
            // cannot help, so record the plug-in estimate unchanged.
            stats.push_back(out.estimate);
        }
    }
    std::sort(stats.begin(), stats.end());
    auto quantile = [&stats](double q) {
        double pos = q * (stats.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, stats.size() - 1);
        double frac = pos - lo;
        return (1.0 - frac) * stats[lo] + frac * stats[hi];
    };
    double alpha = 1.0 - level;
    out.ci_low = quantile(alpha / 2.0);
    out.ci_high = quantile(1.0 - alpha / 2.0);
    return out;
}

SampleSet load_csv(std::istream& in) {
    SampleSet out;
    out.kind = SampleKind::Raw;
    std::string line;
    int lineno = 0;
    bool first_content = true;
    auto parse_cell = [](const std::string& cell, double& value) {
        const char* s = cell.c_str();
        char* end = nullptr;
        value = std::strtod(s, &end);
        if (end == s) return false;
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        return *end == '\0';
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        std::size_t comma = trimmed.find(',');
        if (comma == std::string::npos) {
            if (first_content) {
                first_content = false;
                continue;  // treated as a header
            }
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected two comma-separated columns");
        }
        std::string c1 = trimmed.substr(0, comma);
        std::string c2 = trimmed.substr(comma + 1);
        double x, y;
        bool ok = parse_cell(c1, x) && parse_cell(c2, y);
        if (!ok) {
            if (first_content) {
                first_content = false;
                continue;  // non-numeric first row: header, skipped
            }
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": non-numeric cell in \"" + trimmed + "\"");
        }
        first_content = false;
        out.pairs.emplace_back(x, y);
    }
    return out;
}

SampleSet load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_csv(in);
}

}  // namespace copula
