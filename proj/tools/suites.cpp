#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "sqconf/discrete_config.hpp"
#include "sqconf/errors.hpp"
#include "sqconf/graph_models.hpp"
#include "sqconf/homology.hpp"
#include "sqconf/sampling.hpp"
#include "sqconf/surface_models.hpp"

namespace sqconf::tools {

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

using Betti = std::vector<std::size_t>;

Betti trimmed(Betti b) {
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return b;
}

std::string show(const Betti& b) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ")";
    return os.str();
}

// Betti numbers with and without reduction must agree and match.
Check betti_check(const std::string& name, const CubeComplex& base, int m, const Betti& expect) {
    auto df = build_ordered(base, m);
    auto plain = betti_numbers(df.complex(), false);
    auto fast = betti_numbers(df.complex(), true);
    Check c{name, false, ""};
    Betti got = trimmed(fast.betti);
    c.pass = got == expect && plain.betti == fast.betti && plain.torsion == fast.torsion &&
             std::all_of(fast.torsion.begin(), fast.torsion.end(), [](const auto& t) { return t.empty(); });
    c.detail = "betti " + show(got) + " expected " + show(expect) + ", cells " + std::to_string(df.size());
    return c;
}

std::vector<Check> arnold() {
    return {betti_check("DF_2(K_{0,1}(2))", build_disk(2).complex, 2, {1, 1}),
            betti_check("DF_2(K_{0,1}(3))", build_disk(3).complex, 2, {1, 1}),
            betti_check("DF_3(K_{0,1}(3))", build_disk(3).complex, 3, {1, 3, 2})};
}

std::vector<Check> torus() { return {betti_check("DF_2(K_{1,0}(2))", build_closed(1, 2).complex, 2, {1, 4, 5, 2})}; }

std::size_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<Check> cycle() {
    std::vector<Check> out;
    for (int n = 2; n <= 4; ++n) {
        auto df = build_ordered(graph_complex(cycle_graph(n)), n);
        auto f = df.complex().f_vector();
        Check c{"DF_" + std::to_string(n) + "(C_" + std::to_string(n) + ")", false, ""};
        c.pass = f.size() == 1 && f[0] == factorial(n);
        c.detail = std::to_string(df.size()) + " cells, " + std::to_string(factorial(n)) + " isolated points expected";
        out.push_back(c);
    }
    for (int n = 2; n <= 3; ++n) {
        std::size_t k = factorial(n - 1);
        out.push_back(betti_check("DF_" + std::to_string(n) + "(C_" + std::to_string(n + 1) + ")",
                                  graph_complex(cycle_graph(n + 1)), n, {k, k}));
    }
    auto cf = build_unordered(graph_complex(cycle_graph(3)), 2);
    auto h = betti_numbers(cf.complex(), true);
    out.push_back({"CF_2(C_3)", trimmed(h.betti) == Betti{1, 1}, "betti " + show(trimmed(h.betti))});
    return out;
}

std::vector<Check> tree() {
    std::vector<Check> out{betti_check("DF_2(K_{1,3})", graph_complex(star_graph(3)), 2, {1, 1})};
    auto a = abrams_check(star_graph(3), 2);
    out.push_back({"abrams(K_{1,3}, 2)", a.ok, a.reason});
    auto b = abrams_check(cycle_graph(4), 4);
    out.push_back({"abrams(C_4, 4) fails", !b.ok, b.reason});
    return out;
}

std::vector<Check> dual() {
    std::vector<Check> out;
    auto df = build_ordered(build_dual_bounded(1, 2).complex, 2);
    long long chi = df.complex().euler_characteristic();
    out.push_back({"chi(DF_2(K*_{1,1}(2)))", chi == 2, "chi " + std::to_string(chi)});
    bool valid = true, fvec = true, corners = true, euler = true;
    std::string first_bad;
    for (int n = 1; n <= 4; ++n) {
        auto disk = build_disk(n);
        valid = valid && validate(disk.complex).ok();
        euler = euler && disk.complex.euler_characteristic() == 1;
        for (int g = 1; g <= 3; ++g) {
            const std::size_t G = 2 * g - 1, N = n;
            auto closed = build_closed(g, n);
            auto bounded = build_bounded(g, n);
            auto dual_b = build_dual_bounded(g, n);
            for (auto* s : {&closed, &bounded, &dual_b}) {
                if (!validate(s->complex).ok()) {
                    valid = false;
                    if (first_bad.empty()) first_bad = "invalid g=" + std::to_string(g) + " n=" + std::to_string(n);
                }
            }
            auto f = closed.complex.f_vector();
            std::vector<std::size_t> want{G * N * (N + 2) + 1, 2 * G * (N + 1) * (N + 1), G * (N + 1) * (N + 1)};
            if (f != want) {
                fvec = false;
                if (first_bad.empty()) first_bad = "f-vector g=" + std::to_string(g) + " n=" + std::to_string(n);
            }
            if (bounded.complex.count(2) != G * (N + 1) * (N + 1) - G) fvec = false;
            if (corners_at_p(closed) != static_cast<int>(4 * G)) corners = false;
            euler = euler && closed.complex.euler_characteristic() == 2 - 2 * g &&
                    bounded.complex.euler_characteristic() == 1 - 2 * g &&
                    dual_b.complex.euler_characteristic() == 1 - 2 * g;
        }
    }
    out.push_back({"validate all surfaces (1<=g<=3, 1<=n<=4)", valid, first_bad});
    out.push_back({"closed and bounded f-vectors", fvec, first_bad});
    out.push_back({"corners at p = 4(2g-1)", corners, ""});
    out.push_back({"euler characteristics", euler, ""});
    return out;
}

std::vector<Check> geometry(const SuiteOptions& opts) {
    GeometrySampler S(opts.seed);
    const Rational half = ratio(1, 2);
    std::map<std::string, long> skipped;
    long agree = 0, disagree = 0;
    for (int i = 0; i < opts.samples; ++i) {
        const Surface& s = S.surface();
        int m = S.uniform(2, std::min(3, s.n()));
        auto cell = S.clustered_cell(s, m);
        auto z = S.point_in_cell(s, cell);
        bool member = false, theta_ok = false;
        try {
            member = partial_cell_membership(s, cell, z);
        } catch (const GeometryError& e) {
            ++skipped[std::string("membership ") + to_string(e.code())];
            continue;
        }
        try {
            theta_ok = sf_theta(s, z) >= half;
        } catch (const GeometryError& e) {
            if (e.code() != GeomErrc::distance_out_of_range) throw;
            theta_ok = true;  // every pair farther apart than n >= 1
        }
        (member == theta_ok ? agree : disagree) += 1;
    }
    long cone_ok = 0, cone_bad = 0;
    const Rational eps = ratio(1, 1000000), tol = ratio(1, 10000);
    for (int i = 0; i < opts.samples; ++i) {
        const Surface& s = S.surface();
        int m = S.uniform(2, std::min(3, s.n()));
        auto z = S.free_points(s, m);
        auto v = S.tangent(s, z);
        try {
            auto cm = cone_margins(s, z, v);
            bool clear = true;
            for (const auto* list : {&cm.internal_margins, &cm.external_margins})
                for (const auto& x : *list) clear = clear && abs(x) > tol;
            if (!clear) {
                ++skipped["cone near-zero margin"];
                continue;
            }
            bool up = tautological_theta(s, perturb(s, z, v, eps)) > tautological_theta(s, z);
            (up == cm.contains ? cone_ok : cone_bad) += 1;
        } catch (const GeometryError& e) {
            ++skipped[std::string("cone ") + to_string(e.code())];
        }
    }
    long rays = 0, bad_rays = 0;
    for (int i = 0; i < opts.samples; ++i) {
        const Surface& s = S.surface();
        int m = S.uniform(2, std::min(3, s.n()));
        auto cell = S.clustered_cell(s, m);
        auto z = S.point_in_cell(s, cell);
        try {
            auto sys = membership_system(s, cell);
            if (sys.fully_contained() || sys.trivial() || !evaluate_membership(sys, local_offsets(s, cell, z))) continue;
            auto r = retract_step(s, cell, z);
            bool good = true;
            for (int j = 0; j <= 16; ++j) good = good && sf_theta(s, r.at(s, r.t * j / 16)) >= half;
            ++rays;
            if (!good) ++bad_rays;
        } catch (const GeometryError& e) {
            ++skipped[std::string("retract ") + to_string(e.code())];
        }
    }
    std::string skip_text;
    for (const auto& [k, v] : skipped) skip_text += (skip_text.empty() ? "" : ", ") + k + ": " + std::to_string(v);
    return {{"membership <=> theta >= 1/2", disagree == 0 && agree > 0,
             std::to_string(agree) + " agree, " + std::to_string(disagree) + " disagree"},
            {"cone vs finite difference", cone_bad == 0 && cone_ok > 0,
             std::to_string(cone_ok) + " agree, " + std::to_string(cone_bad) + " disagree"},
            {"retraction rays stay in SF", bad_rays == 0 && rays > 0,
             std::to_string(rays) + " rays, " + std::to_string(bad_rays) + " leave"},
            {"skipped samples", true, skip_text.empty() ? "none" : skip_text}};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"arnold", "torus", "cycle", "tree", "dual", "geometry"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    SuiteReport r{name, {}};
    if (name == "arnold") r.checks = arnold();
    else if (name == "torus") r.checks = torus();
    else if (name == "cycle") r.checks = cycle();
    else if (name == "tree") r.checks = tree();
    else if (name == "dual") r.checks = dual();
    else if (name == "geometry") r.checks = geometry(opts);
    else throw InputError("unknown suite '" + name + "'");
    return r;
}

}  // namespace sqconf::tools
