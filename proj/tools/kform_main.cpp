// Command-line harness: chart construction, solution construction, and the
// verification batteries, with reproducible seeded configuration and JSON
// reports. Exit codes: 0 all checks pass, 1 verification failure, 2 bad
// configuration.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kform/suites.hpp"

using namespace kform;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string subcommand;
    std::string family = "cone"; // cone | product | product2 | calabi | toric | lifted
    std::string base = "flat";   // flat | fs
    std::string chart = "flat";  // flat | fs | calabi
    int m = 3;
    double C1 = 1.0;
    double k = 0.0;
    double lambda = 1.0;
    double zmin = 1.0, zmax = 2.0;
    int points = 50;
    std::uint64_t seed = 2024;
    double tol = 1e-6;
    int jet_order = 3;
    std::string report_path;
    std::string config_path;
};

void apply_config_file(RunConfig& cfg, CLI::App& app) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + cfg.config_path);
    json j;
    in >> j;
    // file values fill in anything the command line did not set
    auto maybe = [&](const char* key, auto& slot, const char* flag) {
        if (j.contains(key) && app.count(flag) == 0) slot = j[key].get<std::decay_t<decltype(slot)>>();
    };
    maybe("family", cfg.family, "--family");
    maybe("base", cfg.base, "--base");
    maybe("chart", cfg.chart, "--chart");
    maybe("m", cfg.m, "--m");
    maybe("C1", cfg.C1, "--C1");
    maybe("k", cfg.k, "--k");
    maybe("lambda", cfg.lambda, "--lambda");
    maybe("zmin", cfg.zmin, "--zmin");
    maybe("zmax", cfg.zmax, "--zmax");
    maybe("n_points", cfg.points, "--points");
    maybe("seed", cfg.seed, "--seed");
    maybe("tol", cfg.tol, "--tol");
    maybe("jet_order", cfg.jet_order, "--jet-order");
}

void print_table(const std::vector<CheckReport>& reps) {
    std::printf("%-34s %-14s %12s %12s %10s  %s\n", "check", "status", "max_abs", "max_rel",
                "tol", "ref");
    for (const auto& r : reps) {
        std::printf("%-34s %-14s %12.3e %12.3e %10.1e  %s\n", r.name.c_str(),
                    r.status == "ran" ? (r.pass ? "pass" : "FAIL") : "n/a", r.max_abs,
                    r.max_rel, r.tol, r.paper_ref.c_str());
    }
}

int finish(const std::vector<CheckReport>& reps, const RunConfig& cfg, const json& extra) {
    print_table(reps);
    bool all = true;
    for (const auto& r : reps) all = all && r.pass;
    json out;
    out["schema"] = 1;
    out["config"] = {{"family", cfg.family}, {"base", cfg.base},   {"chart", cfg.chart},
                     {"m", cfg.m},           {"C1", cfg.C1},       {"k", cfg.k},
                     {"lambda", cfg.lambda}, {"zmin", cfg.zmin},   {"zmax", cfg.zmax},
                     {"n_points", cfg.points}, {"seed", cfg.seed}, {"tol", cfg.tol},
                     {"jet_order", cfg.jet_order}};
    out["checks"] = json::array();
    for (const auto& r : reps) out["checks"].push_back(to_json(r));
    if (!extra.is_null()) out["extra"] = extra;
    out["pass"] = all;
    if (!cfg.report_path.empty()) {
        std::ofstream f(cfg.report_path);
        f << out.dump(2) << "\n";
    }
    std::printf("%s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

KahlerChart pick_chart(const RunConfig& cfg, std::optional<CalabiChart>& cc) {
    if (cfg.chart == "flat") return flat_chart(cfg.m);
    if (cfg.chart == "fs") return fubini_study_chart(cfg.m - 1, cfg.m / std::max(cfg.k, 1.0));
    if (cfg.chart == "calabi") {
        BaseGeometry base = (cfg.base == "fs") ? fubini_study_base(cfg.m, cfg.k)
                                               : flat_base(cfg.m);
        cc = build_calabi_chart(base, MomentumProfile{cfg.m, cfg.C1, cfg.k}, cfg.zmin, cfg.zmax,
                                cfg.lambda);
        return cc->chart;
    }
    throw CLI::ValidationError("--chart", "unknown chart kind " + cfg.chart);
}

int cmd_verify_identities(const RunConfig& cfg) {
    std::optional<CalabiChart> cc;
    KahlerChart chart = pick_chart(cfg, cc);
    std::vector<CheckReport> reps = exterior_oracle_suite(cfg.seed, 200, 1e-12);
    auto add = [&](std::vector<CheckReport> more) {
        for (auto& r : more) reps.push_back(std::move(r));
    };
    add(type_identity_suite(cfg.seed + 1, 60, 1e-12));
    add(kahler_identity_suite(chart, cfg.seed + 2, cfg.points, 1e-7,
                              std::min(cfg.jet_order, 4)));
    add(weitzenboeck_suite(chart, cfg.seed + 3, cfg.points, 1e-7, std::min(cfg.jet_order, 4)));
    if (cc) add(calabi_chart_battery(*cc, cfg.seed + 4, cfg.points / 2));
    return finish(reps, cfg, json());
}

int cmd_verify_solution(const RunConfig& cfg) {
    std::optional<SpecialPair> pr;
    json extra;
    std::vector<CheckReport> reps;
    if (cfg.family == "cone") {
        pr = cone_pair(cfg.m);
    } else if (cfg.family == "product") {
        pr = product_pair(cfg.m);
    } else if (cfg.family == "product2") {
        pr = product_pair2(cfg.m);
    } else if (cfg.family == "calabi") {
        BaseGeometry base = (cfg.base == "fs") ? fubini_study_base(cfg.m, cfg.k)
                                               : flat_base(cfg.m);
        auto cc = build_calabi_chart(base, MomentumProfile{cfg.m, cfg.C1, cfg.k}, cfg.zmin,
                                     cfg.zmax, cfg.lambda);
        pr = calabi_pair(cc);
        extra["tau_kappa"] = pr->tau_kappa;
        extra["tau_sigma"] = pr->tau_sigma;
        extra["chart_descriptor"] = {{"base", cfg.base},   {"k", cfg.k},
                                     {"C1", cfg.C1},       {"m", cfg.m},
                                     {"zmin", cfg.zmin},   {"zmax", cfg.zmax},
                                     {"lambda", cfg.lambda}};
        for (auto& rep : calabi_chart_battery(cc, cfg.seed + 9, 10)) reps.push_back(rep);
    } else if (cfg.family == "toric") {
        ToricInstance ti = (cfg.chart == "fs") ? toric_hk(fubini_study_chart(2, 3.0), 2)
                                               : toric_hk(flat_chart(cfg.m, 0.3), cfg.m);
        Rng rng(cfg.seed);
        CheckReport pre = make_report("toric.preconditions",
                                      "eg2: L_K g = 0 and K . omega = dt for every moment map",
                                      1e-8, cfg.seed);
        pre.absorb(toric_preconditions_residual(ti, rng), 1.0);
        pre.finalize();
        CheckReport hk = make_report("toric.hermitian_killing", "eg2: tau is Hermitian Killing",
                                     cfg.chart == "fs" ? 1e-7 : 1e-8, cfg.seed);
        for (int pt = 0; pt < cfg.points / 2; ++pt) {
            Geom G = geom_at(ti.chart, ti.chart.sample(rng), 2);
            Form<Jet> tau = ti.tau(G);
            for (int d = 0; d < 3; ++d)
                hermitian_killing_residual(G, tau, rng.real_vector(ti.chart.m)).absorb_into(hk);
        }
        hk.finalize();
        return finish({pre, hk}, cfg, json());
    } else if (cfg.family == "lifted") {
        BaseGeometry base = (cfg.base == "fs") ? fubini_study_base(cfg.m, cfg.k)
                                               : flat_base(cfg.m);
        auto cc = build_calabi_chart(base, MomentumProfile{cfg.m, cfg.C1, cfg.k}, cfg.zmin,
                                     cfg.zmax, cfg.lambda);
        BaseFormSpec tau2;
        tau2.p = 0;
        tau2.q = cfg.m - 1;
        tau2.coeff = [m = cfg.m](const std::vector<Jet>&, const std::vector<Jet>&,
                                 const Jet& kn) {
            return Form<Jet>::basis(m, 0, (Mask(1) << (m - 1)) - 1, ring_one(kn));
        };
        FormField tau = lifted_hk_field(cc, std::nullopt, tau2, 0, cfg.m - 1);
        Rng rng(cfg.seed);
        CheckReport hk = make_report("lifted.hermitian_killing",
                                     "ex-calnew: z^{p+1} tau2hat is Hermitian Killing", 1e-6,
                                     cfg.seed);
        for (int pt = 0; pt < cfg.points / 2; ++pt) {
            Geom G = geom_at(cc.chart, cc.chart.sample(rng), 2);
            Form<Jet> t = tau(G);
            for (int d = 0; d < 3; ++d)
                hermitian_killing_residual(G, t, rng.real_vector(cfg.m)).absorb_into(hk);
        }
        hk.finalize();
        return finish({hk}, cfg, json());
    } else {
        throw CLI::ValidationError("--family", "unknown family " + cfg.family);
    }

    extra["solution_descriptor"] = {{"family", pr->family}, {"m", pr->m},
                                    {"C1", cfg.C1},         {"k", cfg.k},
                                    {"seed", cfg.seed}};
    extra["phi_coefficients"] = json::array();
    for (auto c : pr->phi_coeffs)
        extra["phi_coefficients"].push_back({{"re", c.real()}, {"im", c.imag()}});

    double tol = cfg.tol;
    for (auto& r : defining_equation_battery(*pr, cfg.points, cfg.seed, tol)) reps.push_back(r);
    BatteryOptions opt;
    opt.npts = cfg.points;
    opt.seed = cfg.seed + 1;
    opt.tol = tol;
    for (auto& r : derived_identity_battery(*pr, opt)) reps.push_back(r);
    if (pr->family == "cone")
        for (auto& r : einstein_battery(*pr, cfg.points / 2, cfg.seed + 2)) reps.push_back(r);
    if (pr->calabi)
        for (auto& r : split_component_battery(*pr, cfg.points / 2, cfg.seed + 3, tol))
            reps.push_back(r);
    for (auto& r : holomorphy_battery(*pr, cfg.points / 3, cfg.seed + 4, tol)) reps.push_back(r);
    return finish(reps, cfg, extra);
}

int cmd_profile(const RunConfig& cfg, const std::string& csv_path) {
    if (cfg.C1 == 0.0 && cfg.k == 0.0) {
        std::fprintf(stderr, "error: C1 = k = 0 is degenerate (X identically zero)\n");
        return 2;
    }
    DomainDescriptor dom = maximal_domain(cfg.C1, cfg.k, cfg.lambda);
    json extra;
    extra["domain"] = dom.tag;
    if (dom.a) extra["a"] = *dom.a;
    std::printf("maximal domain: %s", dom.tag.c_str());
    if (dom.a) std::printf("  (a = %.12g)", *dom.a);
    std::printf("\n");
    if (cfg.C1 != 0.0)
        std::printf("note: X(z) grows like z^{m+1}, faster than quadratically, so the "
                    "associated metrics are incomplete for m >= 3\n");

    MomentumProfile p{cfg.m, cfg.C1, cfg.k};
    RicciPrediction pred{cfg.m, cfg.C1};
    std::ostringstream csv;
    csv << "z,X,Xprime,lambda1,lambda2,scal,tau2_pred,phi2_pred\n";
    int rows = std::max(2, cfg.points);
    double C2 = 1.0;
    for (int i = 0; i < rows; ++i) {
        double z = cfg.zmin + (cfg.zmax - cfg.zmin) * i / (rows - 1);
        auto [t2, f2] = norm_predictions(p, C2, z);
        csv << z << "," << p.X(z) << "," << p.Xprime(z) << "," << pred.lambda1(z) << ","
            << pred.lambda2(z) << "," << pred.scal(z) << "," << t2 << "," << f2 << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        f << csv.str();
    } else {
        std::fputs(csv.str().c_str(), stdout);
    }
    // ODE residual reports
    CheckReport ode = make_report("profile.ode", "loc-descr(iii): X' = (m+1) X/z - 2k", 1e-12,
                                  cfg.seed);
    CheckReport rk = make_report("profile.rk_oracle", "numeric integration matches closed form",
                                 1e-9, cfg.seed);
    Rng rng(cfg.seed);
    for (int i = 0; i < 50; ++i) {
        double z = rng.uniform(cfg.zmin, cfg.zmax);
        ode.absorb(std::abs(p.Xprime(z) - ((cfg.m + 1) * p.X(z) / z - 2 * cfg.k)),
                   std::max(1.0, std::abs(p.Xprime(z))));
    }
    double got = integrate_ode(
        [&](double z, double) { return (cfg.m + 1) * p.X(z) / z - 2.0 * cfg.k; }, cfg.zmin,
        p.X(cfg.zmin), cfg.zmax);
    rk.absorb(std::abs(got - p.X(cfg.zmax)), std::abs(p.X(cfg.zmax)));
    ode.finalize();
    rk.finalize();
    return finish({ode, rk}, cfg, extra);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification toolkit for Kahler charts, special form pairs and "
                 "Hermitian Killing forms"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string csv_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "solution family");
        sub->add_option("--base", cfg.base, "calabi base kind: flat | fs");
        sub->add_option("--chart", cfg.chart, "chart kind: flat | fs | calabi");
        sub->add_option("--m", cfg.m, "complex dimension");
        sub->add_option("--C1", cfg.C1, "profile constant C1");
        sub->add_option("--k", cfg.k, "Einstein constant k");
        sub->add_option("--lambda", cfg.lambda, "fibre scale lambda");
        sub->add_option("--zmin", cfg.zmin, "moment-map interval lower end");
        sub->add_option("--zmax", cfg.zmax, "moment-map interval upper end");
        sub->add_option("--points", cfg.points, "sample points per check");
        sub->add_option("--seed", cfg.seed, "rng seed");
        sub->add_option("--tol", cfg.tol, "relative tolerance");
        sub->add_option("--jet-order", cfg.jet_order, "jet truncation order");
        sub->add_option("--report", cfg.report_path, "JSON report output path");
        sub->add_option("--config", cfg.config_path, "JSON config file");
    };
    CLI::App* vi = app.add_subcommand("verify-identities", "exterior algebra + chart identity suites");
    add_common(vi);
    CLI::App* vs = app.add_subcommand("verify-solution", "construct a pair and run the batteries");
    add_common(vs);
    CLI::App* prof = app.add_subcommand("profile", "momentum profile CSV and maximal domain");
    add_common(prof);
    prof->add_option("--csv", csv_path, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config_file(cfg, *sub);
        if (cfg.m < 3 && sub != prof && cfg.chart != "fs")
            throw CLI::ValidationError("--m", "complex dimension m >= 3 required");
        if (cfg.zmin <= 0.0 || cfg.zmax <= cfg.zmin)
            throw CLI::ValidationError("--zmin/--zmax",
                                       "need 0 < zmin < zmax (moment map is positive)");
        if (sub == vi) return cmd_verify_identities(cfg);
        if (sub == vs) return cmd_verify_solution(cfg);
        if (sub == prof) return cmd_profile(cfg, csv_path);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "verification error: %s\n", e.what());
        return 1;
    }
    return 2;
}
