#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "gts/verify.hpp"

namespace gts {

namespace {

struct Mapper {
    const PortraitOptions& o;
    double px(double x) const { return (x - o.xmin) / (o.xmax - o.xmin) * o.width; }
    double py(double y) const { return (o.ymax - y) / (o.ymax - o.ymin) * o.height; }
};

void append_fmt(std::string& s, const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    s += buf;
}

void polyline(std::string& svg, std::string& csv, const Mapper& m,
              const std::vector<double>& xs, const std::vector<double>& ys,
              const std::string& color, const std::string& tag) {
    if (xs.size() < 2) return;
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        append_fmt(svg, "%.2f,%.2f ", m.px(xs[i]), m.py(ys[i]));
        append_fmt(csv, "%s,%zu,%.6f,%.6f\n", tag.c_str(), i, xs[i], ys[i]);
    }
    svg += "\"/>\n";
}

}  // namespace

Portrait portrait(const SystemSpec& spec, double eps,
                  const std::vector<std::pair<double, double>>& launches,
                  const PortraitOptions& opts) {
    Mapper m{opts};
    Portrait out;
    out.csv = "curve,index,x,y\n";
    std::string& svg = out.svg;
    append_fmt(svg, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %d %d\">\n",
               opts.width, opts.height);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    append_fmt(svg, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\"/>\n",
               m.px(opts.xmin), m.py(0.0), m.px(opts.xmax), m.py(0.0));
    append_fmt(svg, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\"/>\n",
               m.px(0.0), m.py(opts.ymin), m.px(0.0), m.py(opts.ymax));

    if (opts.include_cycles) {
        FindRootsOptions ro;
        ro.run_battery = false;
        int idx = 0;
        for (const auto& root : find_roots(spec, ro)) {
            if (root.tangential) continue;
            CycleParam cp = parametrize(root.seed, spec.gamma, 256, spec.sigma);
            std::vector<double> xs(cp.C_samples), ys(cp.S_samples);
            xs.push_back(xs.front());
            ys.push_back(ys.front());
            polyline(svg, out.csv, m, xs, ys, "#2a6", "cycle" + std::to_string(idx++));
        }
    }
    int idx = 0;
    for (auto [x0, y0] : launches) {
        Trajectory tr = integrate(spec, eps, 0.0, x0, y0, opts.t_span);
        polyline(svg, out.csv, m, tr.x, tr.y, "#36c", "orbit" + std::to_string(idx++));
    }
    if (opts.include_equilibria && spec.autonomous) {
        for (auto [x, y] : equilibria(spec, eps).points) {
            append_fmt(svg, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"#c33\"/>\n", m.px(x),
                       m.py(y));
            append_fmt(out.csv, "equilibrium,0,%.6f,%.6f\n", x, y);
        }
    }
    svg += "</svg>\n";
    return out;
}

}  // namespace gts
