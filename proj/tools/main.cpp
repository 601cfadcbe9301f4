// sqconf: build cube complexes of square-tiled surfaces and graphs, their
// discrete configuration spaces, homology, and the geometric probes.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "sqconf/discrete_config.hpp"
#include "sqconf/geometry.hpp"
#include "sqconf/graph_models.hpp"
#include "sqconf/homology.hpp"
#include "sqconf/scomplex_io.hpp"
#include "sqconf/surface_models.hpp"
#include "suites.hpp"

using namespace sqconf;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, input_error = 2, cap_error = 3, verify_failed = 4 };

// Everything a command produces: stdout text plus written files.
struct Output {
    std::string text;
    std::map<std::string, std::string> files;  // path -> content
    int code = ok;
};

struct SourceOptions {
    std::string complex_path;
    std::string family;
    int genus = 0;
    int n = 0;
    std::string edges;
    int cycle = 0;
    int star = 0;
};

void add_source_options(CLI::App* app, SourceOptions& o) {
    app->add_option("--complex", o.complex_path, "scomplex file (a sibling <file>.json descriptor is read if present)");
    app->add_option("--family", o.family, "disk | closed | bounded | dual_bounded | graph");
    app->add_option("--genus,-g", o.genus, "genus for closed and bounded families");
    app->add_option("--n", o.n, "grid size n");
    app->add_option("--edges", o.edges, "edge-list file for --family graph");
    app->add_option("--cycle", o.cycle, "shortcut: cycle graph C_k");
    app->add_option("--star", o.star, "shortcut: star graph K_{1,k}");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool is_graph(const SourceOptions& o) { return o.family == "graph" || o.cycle > 0 || o.star > 0; }

Graph source_graph(const SourceOptions& o) {
    if (o.cycle > 0) return cycle_graph(o.cycle);
    if (o.star > 0) return star_graph(o.star);
    if (o.edges.empty()) throw InputError("--family graph needs --edges");
    return load_edge_list(o.edges);
}

std::optional<SurfaceDescriptor> source_descriptor(const SourceOptions& o) {
    if (!o.complex_path.empty()) {
        std::ifstream probe(o.complex_path + ".json");
        if (!probe) return std::nullopt;
        try {
            return descriptor_from_json(slurp(o.complex_path + ".json"));
        } catch (const InputError&) {
            return std::nullopt;  // a graph descriptor
        }
    }
    if (is_graph(o)) return std::nullopt;
    if (o.family.empty()) throw InputError("give --complex or --family");
    return build_surface(family_from_string(o.family), o.genus, o.n).descriptor;
}

CubeComplex source_complex(const SourceOptions& o) {
    if (!o.complex_path.empty()) {
        ComplexMetadata meta;
        if (auto d = source_descriptor(o)) {
            meta.family = to_string(d->family);
            meta.g = d->g;
            meta.n = d->n;
        }
        return load_scomplex(o.complex_path, meta);
    }
    if (is_graph(o)) return graph_complex(source_graph(o));
    if (o.family.empty()) throw InputError("give --complex or --family");
    return build_surface(family_from_string(o.family), o.genus, o.n).complex;
}

json f_vector_json(const CubeComplex& cx) { return cx.f_vector(); }

// ------------------------------------------------------------------ build

Output cmd_build(const SourceOptions& o, const std::string& out_path) {
    Output out;
    json j;
    CubeComplex cx;
    if (is_graph(o)) {
        Graph g = source_graph(o);
        cx = graph_complex(g);
        j["family"] = "graph";
        j["vertices"] = g.vertices;
        j["edges"] = g.edges.size();
    } else {
        if (o.family.empty()) throw InputError("--family is required");
        auto model = build_surface(family_from_string(o.family), o.genus, o.n);
        cx = model.complex;
        j = json::parse(descriptor_to_json(model.descriptor));
        if (model.complex.metadata().family == "closed") j["corners_at_p"] = corners_at_p(model);
    }
    j["f_vector"] = f_vector_json(cx);
    j["euler"] = cx.euler_characteristic();
    j["valid"] = validate(cx).ok();
    if (!out_path.empty()) {
        out.files[out_path] = to_scomplex(cx);
        out.files[out_path + ".json"] = j.dump(2) + "\n";
    }
    out.text = j.dump(2) + "\n";
    return out;
}

// --------------------------------------------------------------------- df

Output cmd_df(const SourceOptions& o, int m, bool unordered, std::size_t cap, const std::string& out_path) {
    Output out;
    auto base = source_complex(o);
    DiscreteConfigOptions opts;
    opts.cap = cap;
    auto df = unordered ? build_unordered(base, m, opts) : build_ordered(base, m, opts);
    for (const auto& w : df.warnings()) std::cerr << "warning: " << w << "\n";
    json j;
    j["m"] = m;
    j["ordered"] = !unordered;
    j["base_f_vector"] = f_vector_json(base);
    j["f_vector"] = f_vector_json(df.complex());
    j["cells"] = df.size();
    j["euler"] = df.complex().euler_characteristic();
    j["warnings"] = df.warnings();
    std::cerr << "cells: " << df.size() << "\n";
    if (!out_path.empty()) out.files[out_path] = to_scomplex(df.complex());
    out.text = j.dump(2) + "\n";
    return out;
}

// ------------------------------------------------------------------ betti

Output cmd_betti(const SourceOptions& o, int m, bool unordered, bool reduce, std::uint32_t mod_p) {
    Output out;
    auto cx = source_complex(o);
    if (m > 0) {
        auto df = unordered ? build_unordered(cx, m) : build_ordered(cx, m);
        for (const auto& w : df.warnings()) std::cerr << "warning: " << w << "\n";
        cx = df.complex();
    }
    auto h = betti_numbers(cx, reduce);
    json j = json::parse(homology_to_json(h));
    if (mod_p > 0) {
        j["mod_p"] = mod_p;
        j["betti_mod_p"] = betti_mod_p(chain_complex(cx), mod_p);
    }
    out.text = j.dump(2) + "\n";
    return out;
}

// ----------------------------------------------------------------- verify

Output cmd_verify(const std::vector<std::string>& suites, const tools::SuiteOptions& opts) {
    Output out;
    std::ostringstream os;
    bool all = true;
    for (const auto& name : suites) {
        auto r = tools::run_suite(name, opts);
        for (const auto& c : r.checks)
            os << (c.pass ? "PASS " : "FAIL ") << name << ": " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]")
               << "\n";
        os << (r.pass() ? "PASS" : "FAIL") << " suite " << name << "\n";
        all = all && r.pass();
    }
    out.text = os.str();
    out.code = all ? ok : verify_failed;
    return out;
}

// ------------------------------------------------------------------ probe

json rational_json(const Rational& q) { return {{"exact", to_string(q)}, {"value", to_double(q)}}; }

json point_json(const Point& p) { return {to_string(p.x), to_string(p.y)}; }

const char* coef_name(Coef c) {
    switch (c) {
        case Coef::zero: return "0";
        case Coef::plus: return "+";
        case Coef::minus: return "-";
        case Coef::abs: return "|.|";
    }
    return "?";
}

std::vector<CellId> parse_ids(const std::string& text) {
    std::vector<CellId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(static_cast<CellId>(v));
        } catch (const std::exception&) {
            throw InputError("bad cell id '" + item + "'");
        }
    }
    return out;
}

struct ProbeOptions {
    std::string kind;
    std::string points;
    std::string vector;
    std::string cells;
};

Output cmd_probe(const SourceOptions& so, const ProbeOptions& po) {
    if (so.family.empty() || so.family == "graph") throw InputError("probe needs a surface --family");
    Surface s = Surface::make(family_from_string(so.family), so.genus, so.n);
    Configuration z = parse_points(po.points);
    json j;
    j["kind"] = po.kind;
    j["points"] = json::array();
    for (const auto& p : z) j["points"].push_back(point_json(s.canonical(p)));
    if (po.kind == "theta") {
        j["theta"] = rational_json(tautological_theta(s, z));
        j["sf_theta"] = rational_json(sf_theta(s, z));
        j["in_sf"] = sf_theta(s, z) >= ratio(1, 2);
    } else if (po.kind == "contact") {
        auto g = contact_graph(s, z);
        j["theta"] = rational_json(g.theta);
        j["internal_edges"] = json::array();
        for (const auto& e : g.internal_edges) j["internal_edges"].push_back({{"i", e.i}, {"j", e.j}, {"tag", to_string(e.tag)}});
        j["external_edges"] = json::array();
        for (const auto& e : g.external_edges)
            j["external_edges"].push_back({{"i", e.i}, {"w", point_json(e.contact.w)}, {"corner", e.contact.corner}});
    } else if (po.kind == "cone") {
        if (po.vector.empty()) throw InputError("probe cone needs --vector");
        auto v = parse_vectors(po.vector);
        auto r = cone_margins(s, z, v);
        j["contains"] = r.contains;
        j["internal_margins"] = json::array();
        for (const auto& x : r.internal_margins) j["internal_margins"].push_back(to_string(x));
        j["external_margins"] = json::array();
        for (const auto& x : r.external_margins) j["external_margins"].push_back(to_string(x));
    } else if (po.kind == "distance") {
        if (z.size() != 2) throw InputError("probe distance needs exactly two points");
        auto d = distance_detail(s, z[0], z[1]);
        j["distance"] = rational_json(d.value);
        j["realizations"] = json::array();
        for (const auto& c : d.realizations)
            j["realizations"].push_back({{"route", to_string(c.route)},
                                         {"h", to_string(c.h)},
                                         {"v", to_string(c.v)},
                                         {"coefficients", {coef_name(c.ax), coef_name(c.ay), coef_name(c.bx), coef_name(c.by)}}});
    } else if (po.kind == "discretize") {
        auto r = discretize_configuration(s, static_cast<int>(z.size()), z);
        j["cell"] = r.cell;
        j["labels"] = json::array();
        for (CellId c : r.cell) j["labels"].push_back(s.complex().cell(c).label);
        j["z"] = json::array();
        for (const auto& p : r.z) j["z"].push_back(point_json(p));
        j["schedule"] = r.schedule;
    } else if (po.kind == "membership") {
        auto cells = parse_ids(po.cells);
        if (cells.size() != z.size()) throw InputError("--cells and --points must have the same length");
        for (CellId c : cells)
            if (c >= s.complex().size()) throw InputError("cell id " + std::to_string(c) + " out of range");
        j["cells"] = cells;
        j["member"] = partial_cell_membership(s, cells, z);
        auto sys = membership_system(s, cells);
        j["fully_contained"] = sys.fully_contained();
        j["trivial"] = sys.trivial();
    } else {
        throw InputError("unknown probe kind '" + po.kind + "'");
    }
    Output out;
    out.text = j.dump(2) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sqconf: discrete configuration spaces of square-tiled surfaces and graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write a run manifest (JSON) to this file");

    SourceOptions build_src, df_src, betti_src, probe_src;
    std::string build_out, df_out;
    int df_m = 0, betti_m = 0;
    bool df_unordered = false, betti_unordered = false, betti_reduce = false;
    std::size_t df_cap = DiscreteConfigOptions{}.cap;
    std::uint32_t betti_p = 0;
    std::vector<std::string> suites;
    tools::SuiteOptions suite_opts;
    ProbeOptions probe;

    auto* build = app.add_subcommand("build", "build a surface or graph complex");
    add_source_options(build, build_src);
    build->add_option("--out", build_out, "scomplex output file (descriptor goes to <out>.json)");

    auto* df = app.add_subcommand("df", "build DF_m (or CF_m with --unordered)");
    add_source_options(df, df_src);
    df->add_option("--m", df_m, "number of points")->required()->check(CLI::PositiveNumber);
    df->add_flag("--unordered", df_unordered, "quotient by the symmetric group");
    df->add_option("--cap", df_cap, "refuse to build more cells than this");
    df->add_option("--out", df_out, "scomplex output file");

    auto* betti = app.add_subcommand("betti", "integral homology as JSON");
    add_source_options(betti, betti_src);
    betti->add_option("--m", betti_m, "first build DF_m of the source")->check(CLI::PositiveNumber);
    betti->add_flag("--unordered", betti_unordered, "with --m: use CF_m");
    betti->add_flag("--reduce", betti_reduce, "discrete Morse reduction before Smith normal form");
    betti->add_option("--mod-p", betti_p, "also report Betti numbers over Z/p");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suites, "arnold | torus | cycle | tree | dual | geometry (repeatable; default all)")
        ->check(CLI::IsMember(tools::suite_names()));
    verify->add_option("--seed", suite_opts.seed, "random seed for sampled suites");
    verify->add_option("--samples", suite_opts.samples, "samples per geometric property")->check(CLI::PositiveNumber);

    auto* pr = app.add_subcommand("probe", "evaluate geometric predicates");
    pr->add_option("kind", probe.kind, "theta | contact | cone | distance | discretize | membership")
        ->required()
        ->check(CLI::IsMember({"theta", "contact", "cone", "distance", "discretize", "membership"}));
    add_source_options(pr, probe_src);
    pr->add_option("--points", probe.points, "points 'x,y;x,y' (rationals or decimals)")->required();
    pr->add_option("--vector", probe.vector, "tangent vector 'vx,vy;vx,vy' for cone");
    pr->add_option("--cells", probe.cells, "factor cell ids 'a,b' for membership");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    auto start = std::chrono::steady_clock::now();
    Output out;
    try {
        if (*build) out = cmd_build(build_src, build_out);
        else if (*df) out = cmd_df(df_src, df_m, df_unordered, df_cap, df_out);
        else if (*betti) out = cmd_betti(betti_src, betti_m, betti_unordered, betti_reduce, betti_p);
        else if (*verify) out = cmd_verify(suites.empty() ? tools::suite_names() : suites, suite_opts);
        else if (*pr) out = cmd_probe(probe_src, probe);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        out.code = cap_error;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        out.code = input_error;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        out.code = input_error;
    }

    std::cout << out.text;
    for (const auto& [path, content] : out.files) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write '" << path << "'\n";
            return input_error;
        }
        f << content;
    }
    if (!manifest_path.empty()) {
        tools::RunManifest m;
        m.command = app.get_subcommands().front()->get_name();
        m.arguments.assign(argv + 1, argv + argc);
        m.outputs["stdout"] = tools::sha256_hex(out.text);
        for (const auto& [path, content] : out.files) m.outputs[path] = tools::sha256_hex(content);
        m.exit_code = out.code;
        m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::ofstream f(manifest_path);
        f << m.to_json();
    }
    return out.code;
}
