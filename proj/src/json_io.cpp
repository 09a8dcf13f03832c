#include "gts/json_io.hpp"

#include <fstream>
#include <json.hpp>

#include "gts/errors.hpp"

namespace gts {

using nlohmann::json;

namespace {

json coeffs_to_json(const std::map<std::pair<int, int>, TrigPoly>& coeffs) {
    json arr = json::array();
    for (const auto& [mn, tp] : coeffs) {
        json e{{"m", mn.first}, {"n", mn.second}, {"mean", tp.mean}};
        json hs = json::array();
        for (const auto& h : tp.harmonics)
            hs.push_back({{"j", h.j}, {"cos", h.cos_coeff}, {"sin", h.sin_coeff}});
        e["harmonics"] = hs;
        arr.push_back(e);
    }
    return arr;
}

void coeffs_from_json(const json& arr, std::map<std::pair<int, int>, TrigPoly>& out) {
    for (const auto& e : arr) {
        TrigPoly tp;
        tp.mean = e.value("mean", 0.0);
        if (e.contains("harmonics"))
            for (const auto& h : e["harmonics"])
                tp.harmonics.push_back(
                    {h.value("j", 1), h.value("cos", 0.0), h.value("sin", 0.0)});
        out[{e.at("m").get<int>(), e.at("n").get<int>()}] = tp;
    }
}

json perturbation_to_json(const Perturbation& p) {
    return json{{"x", coeffs_to_json(p.x_coeffs)},
                {"y", coeffs_to_json(p.y_coeffs)},
                {"degree_bound", p.degree_bound}};
}

Perturbation perturbation_from_json(const json& j) {
    Perturbation p;
    p.degree_bound = j.value("degree_bound", 3);
    if (j.contains("x")) coeffs_from_json(j["x"], p.x_coeffs);
    if (j.contains("y")) coeffs_from_json(j["y"], p.y_coeffs);
    return p;
}

}  // namespace

std::string spec_to_json(const SystemSpec& spec) {
    json j{{"gamma", spec.gamma},       {"T", spec.T},
           {"nu", spec.nu},             {"sigma", spec.sigma},
           {"eps_max", spec.eps_max},   {"autonomous", spec.autonomous},
           {"perturbation", perturbation_to_json(spec.perturbation)}};
    if (!spec.first_order.empty()) j["perturbation1"] = perturbation_to_json(spec.first_order);
    return j.dump(2);
}

SystemSpec spec_from_json(const std::string& text) {
    json j = json::parse(text);
    SystemSpec spec;
    spec.gamma = j.at("gamma").get<double>();
    spec.T = j.at("T").get<double>();
    spec.nu = j.at("nu").get<int>();
    spec.sigma = j.at("sigma").get<double>();
    spec.eps_max = j.value("eps_max", 0.1);
    spec.autonomous = j.value("autonomous", false);
    if (j.contains("perturbation")) spec.perturbation = perturbation_from_json(j["perturbation"]);
    if (j.contains("perturbation1")) spec.first_order = perturbation_from_json(j["perturbation1"]);
    spec.validate();
    return spec;
}

SystemSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return spec_from_json(text);
}

}  // namespace gts
