// copulatool: measurement, table reproduction, proposition verification,
// sampling and data audit for bivariate copulas.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copula/empirical.hpp"
#include "copula/measures.hpp"
#include "copula/sampling.hpp"
#include "copula/verify.hpp"

using json = nlohmann::json;
using namespace copula;

namespace {

std::string num6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<PExponent> parse_p_list(const std::vector<std::string>& raw) {
    std::vector<PExponent> out;
    for (const std::string& s : raw) {
        if (s == "inf" || s == "Inf" || s == "INF") {
            out.push_back(PExponent::inf());
        } else {
            out.push_back(PExponent::finite(std::stod(s)));
        }
    }
    if (out.empty()) {
        out = {PExponent::finite(1.0), PExponent::finite(2.0), PExponent::inf()};
    }
    return out;
}

// Family spec grammar: pi | m | w | mtheta:T | clayton:D |
// mix(LAMBDA, SPEC, SPEC). Mix nesting depth <= 4.
Copula parse_family_string(const std::string& spec, int depth = 0);

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int level = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++level;
        if (ch == ')') --level;
        if (ch == ',' && level == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

Copula parse_family_string(const std::string& raw, int depth) {
    if (depth > 4) throw std::invalid_argument("family: mix nesting depth exceeds 4");
    std::string spec = strip(raw);
    if (spec == "pi") return make_pi();
    if (spec == "m") return make_m();
    if (spec == "w") return make_w();
    if (spec.rfind("mtheta:", 0) == 0) {
        return make_mtheta(MThetaParams{std::stod(spec.substr(7))});
    }
    if (spec.rfind("clayton:", 0) == 0) {
        return make_clayton(ClaytonParams{std::stod(spec.substr(8))});
    }
    if (spec.rfind("mix(", 0) == 0 && spec.back() == ')') {
        auto parts = split_top_level(spec.substr(4, spec.size() - 5));
        if (parts.size() != 3) {
            throw std::invalid_argument("family: mix needs mix(lambda, left, right)");
        }
        return mixture(std::stod(parts[0]), parse_family_string(parts[1], depth + 1),
                       parse_family_string(parts[2], depth + 1));
    }
    throw std::invalid_argument("family: cannot parse \"" + spec + "\"");
}

struct FamilyFlags {
    std::string family;
    double theta = -1.0;
    double delta = -1.0;
    double lambda = -1.0;
    std::string left, right;
};

Copula build_family(const FamilyFlags& f) {
    if (f.family == "mtheta") {
        if (f.theta < 0.0) throw std::invalid_argument("mtheta requires --theta");
        return make_mtheta(MThetaParams{f.theta});
    }
    if (f.family == "clayton") {
        if (f.delta < 0.0) throw std::invalid_argument("clayton requires --delta");
        return make_clayton(ClaytonParams{f.delta});
    }
    if (f.family == "mix") {
        if (f.lambda < 0.0 || f.left.empty() || f.right.empty()) {
            throw std::invalid_argument("mix requires --lambda, --left and --right");
        }
        return mixture(f.lambda, parse_family_string(f.left, 1),
                       parse_family_string(f.right, 1));
    }
    return parse_family_string(f.family);
}

json report_to_json(const MeasureReport& rep) {
    json j;
    j["spec"] = 1;
    j["family"] = rep.family;
    auto entry = [](const MeasureValue& v) {
        return json{{"value", v.value},
                    {"method", method_name(v.method)},
                    {"gap", v.gap},
                    {"converged", v.converged}};
    };
    j["rho"] = entry(rep.rho);
    if (rep.tau_failed) {
        j["tau"] = {{"error", rep.tau_error}};
    } else {
        j["tau"] = entry(rep.tau);
    }
    j["beta"] = {{"value", rep.beta}, {"method", "closed_form"}, {"gap", 0.0}};
    j["sigma"] = entry(rep.sigma);
    j["mu"] = json::array();
    for (const MuEntry& m : rep.mu) {
        j["mu"].push_back({{"p", m.p.label()},
                           {"raw", m.raw},
                           {"normalized", m.normalized},
                           {"method", method_name(m.method)},
                           {"gap", m.gap}});
    }
    j["lambda_lower"] = entry(rep.lambda_lower);
    j["lambda_upper"] = entry(rep.lambda_upper);
    if (rep.mu_inf_bias_warning) j["mu_inf_bias_warning"] = true;
    return j;
}

void print_report_table(const MeasureReport& rep, std::ostream& os) {
    os << "family: " << rep.family << "\n";
    auto line = [&os](const std::string& name, const MeasureValue& v) {
        os << "  " << name << " = " << num6(v.value) << "  [" << method_name(v.method)
           << ", gap " << num6(v.gap) << (v.converged ? "" : ", NOT CONVERGED") << "]\n";
    };
    line("rho   ", rep.rho);
    if (rep.tau_failed) {
        os << "  tau    = unavailable (" << rep.tau_error << ")\n";
    } else {
        line("tau   ", rep.tau);
    }
    os << "  beta   = " << num6(rep.beta) << "  [closed_form]\n";
    line("sigma ", rep.sigma);
    for (const MuEntry& m : rep.mu) {
        os << "  mu_" << m.p.label() << "  raw = " << num6(m.raw)
           << "  normalized = " << num6(m.normalized) << "  [" << method_name(m.method)
           << ", gap " << num6(m.gap) << "]\n";
    }
    line("lam_L ", rep.lambda_lower);
    line("lam_U ", rep.lambda_upper);
    if (rep.mu_inf_bias_warning) {
        os << "  note: mu_inf estimate biased low for n < 10000\n";
    }
}

int cmd_measure(const FamilyFlags& flags, const std::vector<std::string>& p_raw,
                const QuadratureConfig& cfg, std::uint64_t seed, bool as_json) {
    Copula c = build_family(flags);
    KendallOptions kopt;
    kopt.seed = seed;
    MeasureReport rep = full_report(c, parse_p_list(p_raw), cfg, kopt);
    if (as_json) {
        std::cout << report_to_json(rep).dump(2) << "\n";
    } else {
        print_report_table(rep, std::cout);
    }
    return 0;
}

int cmd_table(std::vector<double> thetas, const QuadratureConfig& cfg, std::uint64_t seed,
              bool as_json) {
    if (thetas.empty()) {
        thetas = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 1.0 / 3.0};
    }
    for (double th : thetas) {
        if (!(th >= 0.0 && th <= 1.0 / 3.0)) {
            throw std::invalid_argument("table: theta " + num6(th) + " outside [0, 1/3]");
        }
    }
    json rows = json::array();
    if (!as_json)
        std::printf("%8s %8s %8s %8s %10s %8s %10s %8s %10s %6s %6s\n", "theta", "tau", "tau_mc",
                "rho", "rho_quad", "mu_inf", "mu_quad", "mu_norm", "max_diff", "lam_L",
                "lam_U");
    double worst = 0.0;
    for (double th : thetas) {
        Copula c = make_mtheta(MThetaParams{th});
        double tau_cf = (1.0 - 2.0 * th) * (1.0 - 2.0 * th);
        double rho_cf = 1.0 - 6.0 * th + 6.0 * th * th;
        double beta_cf = 1.0 - 4.0 * th;
        KendallOptions kopt;
        kopt.prefer_closed = false;
        kopt.seed = seed + static_cast<std::uint64_t>(th * 1e9);
        double tau_mc = kendall_tau(c, cfg, kopt).value;
        double rho_q = spearman_rho(c, cfg, /*prefer_closed=*/false).value;
        double mu_q = mu(c, PExponent::inf(), cfg, /*prefer_closed=*/false).raw;
        double lam = th == 0.0 ? 1.0 : 0.0;
        double diff = std::max(std::abs(rho_q - rho_cf), std::abs(mu_q - th));
        worst = std::max(worst, diff);
        if (as_json) {
            rows.push_back({{"theta", th},
                            {"tau", tau_cf},
                            {"tau_mc", tau_mc},
                            {"rho", rho_cf},
                            {"rho_quad", rho_q},
                            {"beta", beta_cf},
                            {"mu_inf", th},
                            {"mu_inf_quad", mu_q},
                            {"mu_inf_normalized", mu_q * 3.0},
                            {"lambda_lower", lam},
                            {"lambda_upper", lam}});
        } else {
            std::printf("%8s %8s %8s %8s %10s %8s %10s %8s %10s %6s %6s\n", num6(th).c_str(),
                        num6(tau_cf).c_str(), num6(tau_mc).c_str(), num6(rho_cf).c_str(),
                        num6(rho_q).c_str(), num6(th).c_str(), num6(mu_q).c_str(),
                        num6(mu_q * 3.0).c_str(), num6(diff).c_str(), num6(lam).c_str(),
                        num6(lam).c_str());
        }
    }
    if (as_json) {
        json j;
        j["spec"] = 1;
        j["rows"] = rows;
        j["max_closed_vs_quadrature_diff"] = worst;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("max |closed - quadrature| over table: %s\n", num6(worst).c_str());
    }
    return 0;
}

int cmd_verify(const std::string& prop_str, int trials, std::uint64_t seed,
               const QuadratureConfig& cfg, bool as_json) {
    Proposition prop = proposition_from_string(prop_str);
    VerifyReport rep = verify_proposition(prop, trials, seed, cfg);
    if (as_json) {
        json j;
        j["spec"] = 1;
        j["proposition"] = proposition_name(rep.proposition);
        j["tolerance_policy"] = rep.tolerance_policy;
        j["all_pass"] = rep.all_pass;
        j["trials"] = json::array();
        for (const TrialResult& t : rep.trials) {
            j["trials"].push_back({{"copula", t.copula},
                                   {"check", t.check},
                                   {"observed", t.observed},
                                   {"expected", t.expected},
                                   {"margin", t.margin},
                                   {"pass", t.pass}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verify proposition " << proposition_name(rep.proposition) << "\n";
        std::cout << rep.tolerance_policy << "\n";
        for (const TrialResult& t : rep.trials) {
            std::cout << (t.pass ? "  pass " : "  FAIL ") << t.check << "  margin "
                      << num6(t.margin) << "  (" << t.copula << ")\n";
        }
        std::cout << (rep.all_pass ? "ALL CHECKS PASS" : "CHECKS FAILED") << "\n";
    }
    return rep.all_pass ? 0 : 1;
}

int cmd_sample(const FamilyFlags& flags, long n, std::uint64_t seed,
               const std::string& out_path) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Copula c = build_family(flags);
    SampleSet s = sample_copula(c, static_cast<std::size_t>(n), RngSeed{seed});
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (out_path != "-") {
        file.open(out_path);
        if (!file) {
            throw std::invalid_argument("sample: cannot open output path " + out_path);
        }
        os = &file;
    }
    char buf[80];
    *os << "u,v\n";
    for (const auto& [u, v] : s.pairs) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u, v);
        *os << buf;
    }
    return 0;
}

int cmd_audit(const std::string& path, const std::vector<std::string>& p_raw, int B,
              double level, std::uint64_t seed, const QuadratureConfig& cfg, bool as_json) {
    SampleSet raw = load_csv_file(path);
    if (raw.size() < 2) {
        throw std::runtime_error("audit: need at least 2 observations, got " +
                                 std::to_string(raw.size()));
    }
    SampleSet pseudo = pseudo_observations(raw);
    std::vector<PExponent> p_list = parse_p_list(p_raw);
    MeasureReport rep = estimate_report(pseudo, p_list, cfg);
    BootstrapSummary bs_mu1 = bootstrap(pseudo, Functional::Mu1, B, level, RngSeed{seed});
    BootstrapSummary bs_muinf =
        bootstrap(pseudo, Functional::MuInf, B, level, RngSeed{seed + 1});

    double mu1_hat = bs_mu1.estimate;
    double sigma_hat = rep.sigma.value;
    double slack = sigma_hat - 6.0 * mu1_hat;
    // Asymmetry verdict: the mu_1 bootstrap interval sits clearly above zero.
    bool asymmetric = bs_mu1.ci_low > 0.005;
    std::string verdict = asymmetric ? "asymmetric" : "no evidence of asymmetry";

    if (as_json) {
        json j = report_to_json(rep);
        j["n"] = raw.size();
        auto bs_json = [](const BootstrapSummary& b) {
            return json{{"estimate", b.estimate},
                        {"resamples", b.resamples},
                        {"ci_low", b.ci_low},
                        {"ci_high", b.ci_high},
                        {"level", b.level}};
        };
        j["bootstrap_mu1"] = bs_json(bs_mu1);
        j["bootstrap_muinf"] = bs_json(bs_muinf);
        j["sigma_ge_6mu1"] = slack >= 0.0;
        j["sigma_6mu1_slack"] = slack;
        j["verdict"] = verdict;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "audit of " << path << " (n = " << raw.size() << ")\n";
        print_report_table(rep, std::cout);
        auto bs_line = [](const char* name, const BootstrapSummary& b) {
            std::cout << "  bootstrap " << name << ": " << num6(b.estimate) << "  ["
                      << num6(b.ci_low) << ", " << num6(b.ci_high) << "] at level "
                      << num6(b.level) << " (" << b.resamples << " resamples)\n";
        };
        bs_line("mu_1  ", bs_mu1);
        bs_line("mu_inf", bs_muinf);
        std::cout << "  sigma_hat >= 6*mu1_hat: " << (slack >= 0.0 ? "yes" : "no")
                  << " (slack = " << num6(slack) << ")\n";
        std::cout << "  verdict: " << verdict << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bivariate copula dependence and non-exchangeability toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand name

    bool as_json = false;
    bool with_timestamp = false;
    int grid_n = 0;
    std::uint64_t seed = 42;
    std::vector<std::string> p_raw;
    app.add_flag("--json", as_json, "emit a single JSON document");
    app.add_flag("--timestamp", with_timestamp, "prepend a timestamp line (off by default)");
    app.add_option("--grid-n", grid_n, "quadrature grid resolution override");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--p", p_raw, "mu exponents (reals or \"inf\")");

    FamilyFlags flags;
    auto add_family_opts = [&flags](CLI::App* sub) {
        sub->add_option("--family", flags.family, "pi|m|w|mtheta|clayton|mix or a spec string")
            ->required();
        sub->add_option("--theta", flags.theta, "shuffle parameter in [0, 1/3]");
        sub->add_option("--delta", flags.delta, "Clayton parameter > 0");
        sub->add_option("--lambda", flags.lambda, "mixture weight in [0,1]");
        sub->add_option("--left", flags.left, "left mixture component spec");
        sub->add_option("--right", flags.right, "right mixture component spec");
    };

    CLI::App* measure = app.add_subcommand("measure", "compute all functionals for a family");
    add_family_opts(measure);

    CLI::App* table = app.add_subcommand("table", "shuffle-family table, closed form vs numeric");
    std::vector<double> thetas;
    table->add_option("--theta", thetas, "theta values (default 0..1/3 grid)");

    CLI::App* verify = app.add_subcommand("verify", "verify a proposition numerically");
    std::string prop_str;
    int trials = 50;
    verify->add_option("--prop", prop_str, "1|2|3|4|corollary")->required();
    verify->add_option("--trials", trials, "randomized trials (default 50)");

    CLI::App* sample = app.add_subcommand("sample", "draw samples, emit CSV");
    long sample_n = 1000;
    std::string out_path = "-";
    add_family_opts(sample);
    sample->add_option("--n", sample_n, "number of draws");
    sample->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* audit = app.add_subcommand("audit", "empirical pipeline on a CSV file");
    std::string csv_path;
    int bootstrap_B = 200;
    double level = 0.95;
    audit->add_option("--input", csv_path, "CSV file with two numeric columns")->required();
    audit->add_option("--bootstrap", bootstrap_B, "bootstrap resamples (default 200)");
    audit->add_option("--level", level, "confidence level (default 0.95)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (with_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
        std::cout << "# " << buf << "Z\n";
    }

    QuadratureConfig cfg;
    cfg.n = grid_n > 0 ? grid_n : 512;
    QuadratureConfig verify_cfg;
    verify_cfg.n = grid_n > 0 ? grid_n : 256;
    verify_cfg.refine_levels = 1;

    try {
        if (measure->parsed()) return cmd_measure(flags, p_raw, cfg, seed, as_json);
        if (table->parsed()) return cmd_table(thetas, cfg, seed, as_json);
        if (verify->parsed()) return cmd_verify(prop_str, trials, seed, verify_cfg, as_json);
        if (sample->parsed()) return cmd_sample(flags, sample_n, seed, out_path);
        if (audit->parsed()) {
            return cmd_audit(csv_path, p_raw, bootstrap_B, level, seed, verify_cfg, as_json);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
