#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gts/errors.hpp"
#include "gts/json_io.hpp"
#include "gts/verify.hpp"

namespace py = pybind11;
using namespace gts;

namespace {

NuMode mode_from(const std::string& text, const SystemSpec& spec) {
    if (text == "0") return NuMode::Slow;
    if (text == "1") return NuMode::Fast;
    if (text == "auto") return NuMode::Autonomous;
    return default_nu_mode(spec);
}

py::dict root_to_dict(const AdmissibleRoot& r) {
    py::dict d;
    d["k"] = r.seed.k;
    d["l"] = r.seed.l;
    d["b"] = r.seed.b;
    d["cls"] = to_string(r.cls);
    d["omega"] = r.omega_star;
    d["admissible"] = r.admissible;
    d["tangential"] = r.tangential;
    d["reasons"] = r.reasons;
    d["rbar_residual"] = r.rbar_residual;
    if (r.K) {
        d["K"] = r.K->K;
        d["stability"] =
            r.K->stability == Stability::ForwardStable ? "stable_forward" : "stable_backward";
    }
    if (r.siegel) d["siegel_pass"] = r.siegel->pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gts, m) {
    m.doc() = "generating-cycle analysis for the cubic Hamiltonian family";

    py::class_<SystemSpec>(m, "SystemSpec")
        .def_readonly("gamma", &SystemSpec::gamma)
        .def_readonly("T", &SystemSpec::T)
        .def_readonly("nu", &SystemSpec::nu)
        .def_readonly("sigma", &SystemSpec::sigma)
        .def_readonly("autonomous", &SystemSpec::autonomous)
        .def("to_json", [](const SystemSpec& s) { return spec_to_json(s); });

    m.def("spec_from_json", &spec_from_json, py::arg("text"));
    m.def("load_spec", &load_spec, py::arg("path"));
    m.def("demo_periodic_spec", &demo_periodic_spec, py::arg("nu") = 0);
    m.def("demo_autonomous_spec", &demo_autonomous_spec);
    m.def("demo_cubic_pair_spec", &demo_cubic_pair_spec, py::arg("lam") = -4.7986);

    m.def(
        "classify",
        [](int k, int l, double b, double gamma) {
            return to_string(classify({k, l, b}, gamma));
        },
        py::arg("k"), py::arg("l"), py::arg("b"), py::arg("gamma"));
    m.def("hamiltonian_level", &hamiltonian_level);
    m.def(
        "period_quadrature",
        [](int k, int l, double b, double gamma) { return period_quadrature({k, l, b}, gamma); },
        py::arg("k"), py::arg("l"), py::arg("b"), py::arg("gamma"));
    m.def(
        "period_return_map",
        [](int k, int l, double b, double gamma) { return period_return_map({k, l, b}, gamma); },
        py::arg("k"), py::arg("l"), py::arg("b"), py::arg("gamma"));
    m.def(
        "parametrize",
        [](int k, int l, double b, double gamma, int n) {
            auto cp = parametrize({k, l, b}, gamma, n);
            py::dict d;
            d["omega"] = cp.omega;
            d["phi"] = cp.phi_grid;
            d["C"] = cp.C_samples;
            d["S"] = cp.S_samples;
            return d;
        },
        py::arg("k"), py::arg("l"), py::arg("b"), py::arg("gamma"), py::arg("n_samples") = 1024);

    m.def("practical_bounds", &practical_bounds, py::arg("gamma"));
    m.def(
        "class1_region",
        [](double gamma) {
            auto reg = class1_region(gamma);
            py::dict d;
            d["gamma_star"] = reg.gamma_star;
            d["b_d"] = reg.b_d;
            d["b_u"] = reg.b_u;
            if (reg.b_p) d["b_p"] = *reg.b_p;
            if (reg.b_m) d["b_m"] = *reg.b_m;
            return d;
        },
        py::arg("gamma"));

    m.def(
        "rbar_direct",
        [](const SystemSpec& spec, int k, int l, double b) {
            return rbar_direct({k, l, b}, spec);
        },
        py::arg("spec"), py::arg("k"), py::arg("l"), py::arg("b"));
    m.def(
        "rbar_moments",
        [](const SystemSpec& spec, int k, int l, double b) {
            return rbar_moments({k, l, b}, spec);
        },
        py::arg("spec"), py::arg("k"), py::arg("l"), py::arg("b"));

    m.def(
        "find_roots",
        [](const SystemSpec& spec, double grid, bool battery, const std::string& nu) {
            FindRootsOptions opts;
            opts.grid = grid;
            opts.run_battery = battery;
            if (!nu.empty()) opts.nu_mode = mode_from(nu, spec);
            py::list out;
            for (const auto& r : find_roots(spec, opts)) out.append(root_to_dict(r));
            return out;
        },
        py::arg("spec"), py::arg("grid") = 1e-3, py::arg("battery") = true, py::arg("nu") = "");

    m.def(
        "k_constant",
        [](const SystemSpec& spec, int k, int l, double b, const std::string& nu) {
            Pipeline pipe = Pipeline::build(spec, {k, l, b});
            return pipe.k(mode_from(nu, spec)).K;
        },
        py::arg("spec"), py::arg("k"), py::arg("l"), py::arg("b"), py::arg("nu") = "");

    m.def(
        "siegel_check",
        [](double omega, double T, int N_max, double tau) {
            auto rep = siegel_check(omega, T, N_max, tau);
            py::dict d;
            d["pass"] = rep.pass;
            d["worst_margin"] = rep.worst_margin;
            d["worst_m"] = rep.worst_m;
            d["worst_n"] = rep.worst_n;
            d["vartheta_fit"] = rep.vartheta_fit;
            return d;
        },
        py::arg("omega"), py::arg("T"), py::arg("N_max") = 200, py::arg("tau") = 1.0);

    m.def(
        "equilibria",
        [](const SystemSpec& spec, double eps) { return equilibria(spec, eps).points; },
        py::arg("spec"), py::arg("eps"));

    m.def(
        "integrate",
        [](const SystemSpec& spec, double eps, double t0, double x0, double y0, double t_end) {
            Trajectory tr = integrate(spec, eps, t0, x0, y0, t_end);
            py::dict d;
            d["t"] = tr.t;
            d["x"] = tr.x;
            d["y"] = tr.y;
            d["domain_left"] = tr.stop == StopReason::DomainLeft;
            return d;
        },
        py::arg("spec"), py::arg("eps"), py::arg("t0"), py::arg("x0"), py::arg("y0"),
        py::arg("t_end"));

    m.def(
        "crossing_table",
        [](const SystemSpec& spec, double eps, double x0, double y0, double level, int rows,
           const std::string& direction) {
            auto dir = direction == "backward" ? TimeDirection::Backward : TimeDirection::Forward;
            return crossing_table(spec, eps, {x0, y0}, level, rows, dir).rows;
        },
        py::arg("spec"), py::arg("eps"), py::arg("x0"), py::arg("y0"), py::arg("level") = 0.0,
        py::arg("rows") = 9, py::arg("direction") = "forward");

    m.def(
        "bracket_root",
        [](const SystemSpec& spec, int k, int l, double b, double eps, const std::string& nu) {
            Pipeline pipe = Pipeline::build(spec, {k, l, b});
            AdmissibleRoot root;
            root.seed = {k, l, b};
            root.cls = classify(root.seed, spec.gamma, spec.sigma);
            root.omega_star = pipe.cycle.omega;
            root.K = pipe.k(mode_from(nu, spec));
            py::dict d;
            try {
                auto br = bracket_cycle(root, spec, eps, &pipe);
                d["converged"] = true;
                d["located_x"] = br.located_x;
                d["stable"] = br.stable;
            } catch (const NotConverged& e) {
                d["converged"] = false;
                d["reason"] = std::string(e.what());
            }
            return d;
        },
        py::arg("spec"), py::arg("k"), py::arg("l"), py::arg("b"), py::arg("eps"),
        py::arg("nu") = "");

    m.def(
        "portrait_svg",
        [](const SystemSpec& spec, double eps) { return portrait(spec, eps, {}).svg; },
        py::arg("spec"), py::arg("eps") = 0.0);

    py::register_exception<Error>(m, "GtsError");
}
