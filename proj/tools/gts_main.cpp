// Command-line front end: generating-cycle analysis, root finding,
// nondegeneracy constants, simulation checks and portraits.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "gts/errors.hpp"
#include "gts/json_io.hpp"
#include "gts/verify.hpp"

using namespace gts;
using nlohmann::json;

namespace {

SystemSpec spec_from_options(const std::string& config, const std::string& demo, int nu,
                             double lambda) {
    if (!config.empty()) return load_spec(config);
    if (demo == "periodic") return demo_periodic_spec(nu);
    if (demo == "autonomous") return demo_autonomous_spec();
    if (demo == "cubic-pair") return demo_cubic_pair_spec(lambda);
    throw Error("provide --config FILE or --demo {periodic|autonomous|cubic-pair}");
}

Seed parse_seed(const std::string& text) {
    Seed s;
    if (sscanf(text.c_str(), "%d,%d,%lf", &s.k, &s.l, &s.b) != 3)
        throw Error("seed format is k,l,b");
    return s;
}

NuMode parse_nu_mode(const std::string& text, const SystemSpec& spec) {
    if (text == "0") return NuMode::Slow;
    if (text == "1") return NuMode::Fast;
    if (text == "auto") return NuMode::Autonomous;
    return default_nu_mode(spec);
}

json root_to_json(const AdmissibleRoot& r) {
    json j{{"k", r.seed.k},
           {"l", r.seed.l},
           {"b", r.seed.b},
           {"class", to_string(r.cls)},
           {"omega", r.omega_star},
           {"bracket", {r.bracket.first, r.bracket.second}},
           {"admissible", r.admissible},
           {"tangential", r.tangential},
           {"reasons", r.reasons},
           {"rbar_residual", r.rbar_residual}};
    if (r.K) {
        j["K"] = r.K->K;
        j["stability"] = r.K->stability == Stability::ForwardStable ? "stable_forward"
                                                                    : "stable_backward";
    }
    if (r.siegel)
        j["siegel"] = {{"pass", r.siegel->pass},
                       {"worst_margin", r.siegel->worst_margin},
                       {"N_max", r.siegel->N_max},
                       {"tau", r.siegel->tau}};
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generating-cycle analysis for the cubic Hamiltonian family"};
    app.require_subcommand(1);

    std::string config, demo = "", seed_text, nu_text = "", out_path, csv_path, field_name = "R0";
    int nu = 0, n_samples = 1024, n_rows = 9;
    double lambda = -4.7986, eps = 1e-3, gamma = 0.5;
    double t0 = 0.0, x0 = 1.0, y0 = 0.0, t_end = 10.0, section = 0.0;
    std::string direction = "forward";
    double grid = 1e-3;
    std::vector<std::string> launches;

    auto add_spec_opts = [&](CLI::App* cmd) {
        cmd->add_option("--config", config, "system description file (json)");
        cmd->add_option("--demo", demo, "bundled demo system: periodic|autonomous|cubic-pair");
        cmd->add_option("--demo-nu", nu, "nu flag for the periodic demo");
        cmd->add_option("--lambda", lambda, "parameter of the cubic-pair demo");
    };

    auto* cmd_spec = app.add_subcommand("demo-spec", "print a bundled demo system as json");
    add_spec_opts(cmd_spec);

    auto* cmd_periods = app.add_subcommand("periods", "period and extremal constants of a seed");
    add_spec_opts(cmd_periods);
    cmd_periods->add_option("--seed", seed_text, "seed as k,l,b")->required();
    cmd_periods->add_option("--samples", n_samples, "grid size for the parametrization");

    auto* cmd_region = app.add_subcommand("region", "class-1 admissible abscissa region");
    cmd_region->add_option("--gamma", gamma, "gamma in (0,1)")->required();

    auto* cmd_kconst = app.add_subcommand("kconst", "nondegeneracy constant of a seed");
    add_spec_opts(cmd_kconst);
    cmd_kconst->add_option("--seed", seed_text)->required();
    cmd_kconst->add_option("--nu", nu_text, "0, 1 or auto");

    auto* cmd_roots = app.add_subcommand("roots", "solve the generating equation");
    add_spec_opts(cmd_roots);
    cmd_roots->add_option("--grid", grid, "scan step");
    cmd_roots->add_option("--nu", nu_text, "0, 1 or auto");
    std::string class_text;
    cmd_roots->add_option("--class", class_text, "0i, 0e, 1 or 2");
    bool no_battery = false;
    cmd_roots->add_flag("--no-battery", no_battery, "skip the admissibility battery");

    auto* cmd_adm = app.add_subcommand("admissible", "roots with the full admissibility battery");
    add_spec_opts(cmd_adm);
    cmd_adm->add_option("--nu", nu_text);

    auto* cmd_sim = app.add_subcommand("simulate", "integrate the perturbed system");
    add_spec_opts(cmd_sim);
    cmd_sim->add_option("--eps", eps)->required();
    cmd_sim->add_option("--t0", t0);
    cmd_sim->add_option("--x0", x0)->required();
    cmd_sim->add_option("--y0", y0)->required();
    cmd_sim->add_option("--t-end", t_end)->required();

    auto* cmd_tables = app.add_subcommand("tables", "section-crossing table of one trajectory");
    add_spec_opts(cmd_tables);
    cmd_tables->add_option("--eps", eps)->required();
    cmd_tables->add_option("--x0", x0)->required();
    cmd_tables->add_option("--y0", y0)->required();
    cmd_tables->add_option("--section", section, "section level y = const");
    cmd_tables->add_option("--rows", n_rows);
    cmd_tables->add_option("--direction", direction, "forward|backward");

    auto* cmd_bracket = app.add_subcommand("bracket", "bracket the cycle near a generating root");
    add_spec_opts(cmd_bracket);
    cmd_bracket->add_option("--eps", eps)->required();
    cmd_bracket->add_option("--seed", seed_text)->required();
    cmd_bracket->add_option("--nu", nu_text);

    auto* cmd_eq = app.add_subcommand("equilibria", "perturbed equilibria (autonomous)");
    add_spec_opts(cmd_eq);
    cmd_eq->add_option("--eps", eps)->required();

    auto* cmd_portrait = app.add_subcommand("portrait", "phase portrait as svg (+ csv)");
    add_spec_opts(cmd_portrait);
    cmd_portrait->add_option("--eps", eps);
    cmd_portrait->add_option("--launch", launches, "trajectory start x,y (repeatable)");
    cmd_portrait->add_option("--out", out_path, "svg output path")->required();
    cmd_portrait->add_option("--csv", csv_path, "csv output path");

    auto* cmd_dump = app.add_subcommand("dump-fields", "pullback field tableau as csv");
    add_spec_opts(cmd_dump);
    cmd_dump->add_option("--seed", seed_text)->required();
    cmd_dump->add_option("--field", field_name, "R0|Phi0|Rr|Reps");

    auto* cmd_repro = app.add_subcommand("repro", "reference reproductions");
    auto* cmd_l81 = cmd_repro->add_subcommand("lemma81", "roots, periods and K constants");
    cmd_l81->add_option("--nu", nu_text, "restrict the K columns: 0, 1 or auto");
    auto* cmd_t81 = cmd_repro->add_subcommand("theorem81a", "cycle brackets at a given eps");
    cmd_t81->add_option("--eps", eps)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_spec->parsed()) {
            SystemSpec spec = spec_from_options(config, demo.empty() ? "periodic" : demo, nu, lambda);
            printf("%s\n", spec_to_json(spec).c_str());
            return 0;
        }
        if (cmd_periods->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            Seed seed = parse_seed(seed_text);
            double wq = period_quadrature(seed, spec.gamma);
            double wr = period_return_map(seed, spec.gamma);
            auto e = extremals(seed, spec.gamma, spec.sigma);
            parametrize(seed, spec.gamma, n_samples, spec.sigma);  // validates the grid run
            printf("quantity,value\n");
            printf("class,%s\n", to_string(classify(seed, spec.gamma, spec.sigma)).c_str());
            printf("omega_quadrature,%.12f\n", wq);
            printf("omega_return_map,%.12f\n", wr);
            printf("level,%.12f\n", e.a);
            auto emit = [](const char* name, const std::optional<double>& v) {
                if (v) printf("%s,%.12f\n", name, *v);
            };
            printf("r_s,%.12f\nl_s,%.12f\nr_i,%.12f\nr_e,%.12f\nu_e,%.12f\n", e.r_s, e.l_s,
                   e.r_i, e.r_e, e.u_e);
            emit("r0_1e", e.r0_1e);
            emit("u0_1e", e.u0_1e);
            emit("u0_0i", e.u0_0i);
            emit("u0_0e", e.u0_0e);
            emit("l1_0", e.l1_0);
            emit("l1_1", e.l1_1);
            emit("r1_1", e.r1_1);
            emit("l2_1", e.l2_1);
            emit("lo2_1", e.lo2_1);
            return 0;
        }
        if (cmd_region->parsed()) {
            auto reg = class1_region(gamma);
            printf("gamma,gamma_star,b_p,b_m,b_d,b_u,b_d_printed\n");
            printf("%.6f,%.9f,", reg.gamma, reg.gamma_star);
            if (reg.b_p) printf("%.9f,", *reg.b_p);
            else printf(",");
            if (reg.b_m) printf("%.9f,", *reg.b_m);
            else printf(",");
            printf("%.9f,%.9f,%.9f\n", reg.b_d, reg.b_u, reg.b_d_printed);
            return 0;
        }
        if (cmd_kconst->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            Seed seed = parse_seed(seed_text);
            NuMode mode = parse_nu_mode(nu_text, spec);
            Pipeline pipe = Pipeline::build(spec, seed);
            json j;
            j["k"] = seed.k;
            j["l"] = seed.l;
            j["b"] = seed.b;
            j["nu"] = to_string(mode);
            j["omega"] = pipe.cycle.omega;
            auto nd = pipe.k(mode);
            j["K"] = nd.K;
            j["stability"] =
                nd.stability == Stability::ForwardStable ? "stable_forward" : "stable_backward";
            if (mode == NuMode::Slow) {
                auto rep = siegel_check(pipe.cycle.omega, spec.T);
                j["siegel"] = {{"pass", rep.pass},
                               {"worst_margin", rep.worst_margin},
                               {"worst_m", rep.worst_m},
                               {"worst_n", rep.worst_n},
                               {"N_max", rep.N_max},
                               {"tau", rep.tau},
                               {"vartheta_fit", rep.vartheta_fit}};
            }
            printf("%s\n", j.dump(2).c_str());
            return 0;
        }
        if (cmd_roots->parsed() || cmd_adm->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            FindRootsOptions opts;
            opts.grid = grid;
            if (!nu_text.empty()) opts.nu_mode = parse_nu_mode(nu_text, spec);
            if (cmd_roots->parsed() && no_battery) opts.run_battery = false;
            if (!class_text.empty()) {
                if (class_text == "0i") opts.class_filter = CycleClass::ZeroInner;
                else if (class_text == "0e") opts.class_filter = CycleClass::ZeroOuter;
                else if (class_text == "1") opts.class_filter = CycleClass::One;
                else if (class_text == "2") opts.class_filter = CycleClass::Two;
                else throw Error("unknown class " + class_text);
            }
            auto roots = find_roots(spec, opts);
            if (cmd_adm->parsed()) {
                printf("k,l,b,class,omega,K,admissible,siegel_pass,reasons\n");
                for (const auto& r : roots) {
                    printf("%d,%d,%.9f,%s,%.9f,", r.seed.k, r.seed.l, r.seed.b,
                           to_string(r.cls).c_str(), r.omega_star);
                    if (r.K) printf("%.6f,", r.K->K);
                    else printf(",");
                    printf("%s,", r.admissible ? "yes" : "no");
                    printf("%s,", r.siegel ? (r.siegel->pass ? "yes" : "no") : "-");
                    for (size_t i = 0; i < r.reasons.size(); ++i)
                        printf("%s%s", i ? ";" : "", r.reasons[i].c_str());
                    printf("\n");
                }
            } else {
                json arr = json::array();
                for (const auto& r : roots) arr.push_back(root_to_json(r));
                printf("%s\n", arr.dump(2).c_str());
            }
            return 0;
        }
        if (cmd_sim->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            Trajectory tr = integrate(spec, eps, t0, x0, y0, t_end);
            printf("t,x,y\n");
            for (size_t i = 0; i < tr.t.size(); ++i)
                printf("%.9f,%.12f,%.12f\n", tr.t[i], tr.x[i], tr.y[i]);
            if (tr.stop == StopReason::DomainLeft)
                fprintf(stderr, "trajectory left the sigma box\n");
            return 0;
        }
        if (cmd_tables->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            auto dir = (direction == "backward") ? TimeDirection::Backward : TimeDirection::Forward;
            auto tbl = crossing_table(spec, eps, {x0, y0}, section, n_rows, dir);
            printf("t,x\n");
            for (auto [t, x] : tbl.rows) printf("%.6f,%.10f\n", t, x);
            return 0;
        }
        if (cmd_bracket->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            Seed seed = parse_seed(seed_text);
            NuMode mode = parse_nu_mode(nu_text, spec);
            Pipeline pipe = Pipeline::build(spec, seed);
            AdmissibleRoot root;
            root.seed = seed;
            root.cls = classify(seed, spec.gamma, spec.sigma);
            root.omega_star = pipe.cycle.omega;
            root.K = pipe.k(mode);
            json j;
            try {
                auto br = bracket_cycle(root, spec, eps, &pipe);
                j["located_x"] = br.located_x;
                j["stable"] = br.stable;
                j["converged"] = true;
                json rows = json::array();
                for (auto [t, x] : br.inner_table.rows) rows.push_back({t, x});
                j["inner_table"] = rows;
                rows = json::array();
                for (auto [t, x] : br.outer_table.rows) rows.push_back({t, x});
                j["outer_table"] = rows;
            } catch (const NotConverged& e) {
                j["converged"] = false;
                j["reason"] = e.what();
            }
            printf("%s\n", j.dump(2).c_str());
            return 0;
        }
        if (cmd_eq->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            auto eq = equilibria(spec, eps);
            printf("x,y\n");
            for (auto [x, y] : eq.points) printf("%.9f,%.9f\n", x, y);
            for (const auto& f : eq.failures) fprintf(stderr, "%s\n", f.c_str());
            return 0;
        }
        if (cmd_portrait->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            std::vector<std::pair<double, double>> starts;
            for (const auto& text : launches) {
                double lx, ly;
                if (sscanf(text.c_str(), "%lf,%lf", &lx, &ly) != 2)
                    throw Error("launch format is x,y");
                starts.emplace_back(lx, ly);
            }
            auto p = portrait(spec, eps, starts);
            write_file(out_path, p.svg);
            if (!csv_path.empty()) write_file(csv_path, p.csv);
            return 0;
        }
        if (cmd_dump->parsed()) {
            SystemSpec spec = spec_from_options(config, demo, nu, lambda);
            Seed seed = parse_seed(seed_text);
            Pipeline pipe = Pipeline::build(spec, seed);
            const TwoPeriodicField* f = nullptr;
            if (field_name == "R0") f = &pipe.pulls.R0;
            else if (field_name == "Phi0") f = &pipe.pulls.Phi0;
            else if (field_name == "Rr") f = &pipe.pulls.Rr;
            else if (field_name == "Reps") f = &pipe.pulls.Reps;
            else throw Error("unknown field " + field_name);
            // t rows, phi columns
            printf("t\\phi");
            for (int j = 0; j < f->Nphi; ++j) printf(",%.9f", f->phi_of(j));
            printf("\n");
            for (int i = 0; i < f->Nt; ++i) {
                printf("%.9f", f->t_of(i));
                for (int j = 0; j < f->Nphi; ++j) printf(",%.12e", f->at(i, j));
                printf("\n");
            }
            return 0;
        }
        if (cmd_l81->parsed()) {
            NuMode only = nu_text.empty() ? NuMode::Slow : parse_nu_mode(nu_text, demo_periodic_spec(0));
            bool with_slow = nu_text.empty() || only == NuMode::Slow;
            auto rep = repro_lemma81(with_slow);
            printf("k,l,b,class,b_ok,omega,omega_ok,K1,K1_ref,K0,K0_ref,Ka,Ka_ref,K_ok\n");
            for (const auto& row : rep.rows) {
                printf("%d,%d,%.8f,%s,%s,%.6f,%s,", row.seed.k, row.seed.l, row.b,
                       to_string(row.cls).c_str(), row.b_ok ? "yes" : "no", row.omega,
                       row.omega_ok ? "yes" : "no");
                if (row.K1) printf("%.4f,%.2f,", *row.K1, row.K1_ref);
                else printf(",,");
                if (row.K0) printf("%.4f,%.2f,", *row.K0, row.K0_ref);
                else printf(",,");
                if (row.Ka) printf("%.4f,%.2f,", *row.Ka, row.Ka_ref);
                else printf(",,");
                printf("%s\n", row.K_ok ? "yes" : "no");
            }
            fprintf(stderr, "root count %s, all rows %s\n", rep.roots_count_ok ? "ok" : "WRONG",
                    rep.all_pass ? "pass" : "have mismatches");
            return rep.roots_count_ok ? 0 : 1;
        }
        if (cmd_t81->parsed()) {
            auto rep = repro_theorem81a(eps);
            printf("k,l,b,converged,located_x,stable,matches_K\n");
            for (const auto& oc : rep.outcomes) {
                printf("%d,%d,%.8f,%s,", oc.seed.k, oc.seed.l, oc.seed.b,
                       oc.converged ? "yes" : "no");
                if (oc.converged)
                    printf("%.8f,%s,%s\n", oc.located_x, oc.stable ? "stable" : "unstable",
                           oc.stability_matches_K ? "yes" : "no");
                else
                    printf(",,\n");
            }
            fprintf(stderr, "%d of %zu brackets converged at eps=%g\n", rep.n_converged,
                    rep.outcomes.size(), eps);
            return 0;
        }
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
