#include "tropd/io.hpp"
#include "tropd/presets.hpp"
#include "tropd/scene.hpp"
#include "tropd/service.hpp"
#include "tropd/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef TROPD_WEB_DIR
#define TROPD_WEB_DIR "web"
#endif

using namespace tropd;

namespace {

struct SystemArgs {
    std::string spec;
    std::string preset_name;
    std::vector<std::string> sets;

    void add_to(CLI::App* cmd) {
        cmd->add_option("spec", spec, "system JSON file");
        cmd->add_option("--preset", preset_name, "built-in system: autocatalator, crossing1, crossing2, genauto-<case>");
        cmd->add_option("--set", sets, "coefficient override k=p/q (repeatable)");
    }

    Tds load() const {
        if (spec.empty() == preset_name.empty()) throw Error(Errc::BadSchema, "give exactly one of a spec file or --preset");
        Tds t = preset_name.empty() ? tds_from_json(read_json(spec)) : preset(preset_name);
        std::vector<std::pair<int, TropCoeff>> ov;
        for (const auto& s : sets) ov.push_back(parse_override(s));
        return apply_overrides(t, ov);
    }

    static Json read_json(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error(Errc::BadSchema, "cannot read " + path);
        try {
            return Json::parse(in);
        } catch (const Json::exception& e) {
            throw Error(Errc::BadSchema, path + ": " + e.what());
        }
    }
};

QPoint parse_point(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(Errc::BadRational, "a point is u,v: " + text);
    auto u = parse_rational(text.substr(0, comma));
    auto v = parse_rational(text.substr(comma + 1));
    if (!u || !v) throw Error(Errc::BadRational, text);
    return {*u, *v};
}

Rational parse_or_throw(const std::string& text) {
    auto r = parse_rational(text);
    if (!r) throw Error(Errc::BadRational, text);
    return *r;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Errc::BadSchema, "cannot write " + path);
    out << text;
}

std::string cycle_text(const CrossingGraph& g, const std::vector<int>& cycle) {
    std::string s;
    for (int k : cycle)
        for (const auto& n : g.nodes)
            if (n.pair == k) s += (s.empty() ? "" : " -> ") + std::string("(") + std::to_string(n.degree.n) + "," + std::to_string(n.degree.m) + ")";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropd: phase portraits of planar tropical dynamical systems"};
    app.require_subcommand(1);

    SystemArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "analysis and stability report as JSON");
    analyze_args.add_to(analyze_cmd);

    SystemArgs portrait_args;
    std::string svg_out = "-", scene_out, layers = "all";
    std::vector<std::string> orbit_seeds;
    bool branch_all = false;
    std::string clip = "8";
    int size = 640;
    auto* portrait_cmd = app.add_subcommand("portrait", "render the phase portrait as SVG");
    portrait_args.add_to(portrait_cmd);
    portrait_cmd->add_option("-o,--output", svg_out, "SVG file (- for stdout)");
    portrait_cmd->add_option("--scene", scene_out, "also write the scene JSON here");
    portrait_cmd->add_option("--orbit", orbit_seeds, "seed u,v traced forward (repeatable)");
    portrait_cmd->add_flag("--branch-all", branch_all, "follow every admissible continuation of each seed");
    portrait_cmd->add_option("--layers", layers, "comma list of layers or 'all'");
    portrait_cmd->add_option("--clip", clip, "drawing box half-width");
    portrait_cmd->add_option("--size", size, "pixels");

    SystemArgs sweep_args;
    int param = 0;
    std::string range, tol = "1/1000000";
    unsigned threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "sample one coefficient and bracket signature changes");
    sweep_args.add_to(sweep_cmd);
    sweep_cmd->add_option("--param", param, "pair index to vary")->required();
    sweep_cmd->add_option("--range", range, "lo:hi:step")->required();
    sweep_cmd->add_option("--tol", tol, "bracket width");
    sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    SystemArgs graph_args;
    bool cycles = false;
    auto* graph_cmd = app.add_subcommand("graph", "crossing graph as JSON");
    graph_args.add_to(graph_cmd);
    graph_cmd->add_flag("--cycles", cycles, "list the cycles of length >= 4");

    std::string poly;
    std::string eps;
    long long max_den = 1000000;
    auto* trop_cmd = app.add_subcommand("tropicalize", "tropical pairs of a classical polynomial system");
    trop_cmd->add_option("poly", poly, "JSON {u: [{a, degree}], v: [...]}")->required();
    trop_cmd->add_option("--eps", eps, "positive rational")->required();
    trop_cmd->add_option("--max-den", max_den, "denominator bound for snapped coefficients");

    int port = 8080;
    std::string host = "127.0.0.1", web = TROPD_WEB_DIR;
    std::size_t cache = 256;
    long long budget_ms = 20000;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP API and the browser explorer");
    serve_cmd->add_option("--port", port, "port");
    serve_cmd->add_option("--host", host, "interface");
    serve_cmd->add_option("--web", web, "static bundle directory");
    serve_cmd->add_option("--cache", cache, "cached responses");
    serve_cmd->add_option("--budget-ms", budget_ms, "compute budget before answering 202");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) {
            Tds t = analyze_args.load();
            std::cout << analysis_json(t, analyze(t)).dump(2) << "\n";
        } else if (*portrait_cmd) {
            Tds t = portrait_args.load();
            SceneOptions o = SceneOptions::from_layers(layers);
            o.clip = parse_or_throw(clip);
            for (const auto& s : orbit_seeds) o.orbit_seeds.push_back(parse_point(s));
            o.branch_all = branch_all;
            Scene s = export_scene(t, o);
            write_text(svg_out, export_svg(s, size));
            if (!scene_out.empty()) write_text(scene_out, scene_json(s).dump(2) + "\n");
        } else if (*sweep_cmd) {
            Tds t = sweep_args.load();
            std::vector<std::string> bits;
            std::stringstream ss(range);
            for (std::string b; std::getline(ss, b, ':');) bits.push_back(b);
            if (bits.size() != 3) throw Error(Errc::BadSchema, "--range must be lo:hi:step");
            SweepOptions so;
            so.tolerance = parse_or_throw(tol);
            so.threads = threads;
            SweepResult r = sweep(t, param, parse_or_throw(bits[0]), parse_or_throw(bits[1]), parse_or_throw(bits[2]), so);
            std::cout << sweep_json(r).dump(2) << "\n";
        } else if (*graph_cmd) {
            Tds t = graph_args.load();
            CrossingGraph g = build_graph(t);
            if (cycles) {
                CycleList c = enumerate_cycles(g);
                for (const auto& cy : c.cycles) std::cerr << cycle_text(g, cy) << "\n";
                std::cout << graph_json(g, &c).dump(2) << "\n";
            } else {
                std::cout << graph_json(g).dump(2) << "\n";
            }
        } else if (*trop_cmd) {
            std::vector<ClassicalTerm> u, v;
            classical_from_json(SystemArgs::read_json(poly), u, v);
            TropicalizeOptions to;
            to.max_denominator = max_den;
            std::cout << tds_to_json(tropicalize(u, v, parse_or_throw(eps), to)).dump(2) << "\n";
        } else if (*serve_cmd) {
            ServiceOptions so;
            so.cache_capacity = cache;
            so.budget = std::chrono::milliseconds(budget_ms);
            ExplorerService service(so);
            HttpServer server(service, web);
            std::cerr << "tropd serving on http://" << host << ":" << port << "\n";
            server.run(host, port);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
