#include <algorithm>
#include <numeric>
#include <queue>

#include "sqconf/geometry.hpp"

namespace sqconf {

const char* to_string(PairForm f) {
    static const char* names[] = {"disjoint", "form1", "form2", "form3", "form4",
                                  "form5",    "form6", "form7", "form8"};
    return names[static_cast<int>(f)];
}

namespace {

enum Corner { LL = 0, LR = 1, UR = 2, UL = 3 };

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

int sgn(int v) { return (v > 0) - (v < 0); }
int sgn(const Rational& v) { return sgn(v.get_num()); }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Corner offset (doubled) of c lying at p, if any.
std::optional<std::array<int, 2>> p_offset(const Surface& s, CellId c) {
    if (!s.is_p_cell(c)) return std::nullopt;
    const auto& m = s.cells();
    auto C = s.center(c);
    for (auto d : m.corner_offsets(c))
        if (m.grid.is_p(C[0] + d[0], C[1] + d[1])) return d;
    return std::nullopt;
}

// Angular position (units of pi/4) of a cell at p and its local offset.
int polar_position(const Surface& s, CellId c, std::array<int, 2> d) {
    const int P2 = 2 * s.block(), G = 2 * s.g() - 1, T = 8 * G;
    auto C = s.center(c);
    int dim = s.complex().cell(c).dim;
    if (dim == 0) return -1;
    int i = floor_div(C[0], P2);
    if (dim == 2) {
        int corner = d[1] < 0 ? (d[0] < 0 ? LL : LR) : (d[0] > 0 ? UR : UL);
        return 2 * s.sector_of(i, corner) + 1;
    }
    if (d[1] == 0) {  // horizontal edge on the glued bottom side
        if (d[0] < 0) return 2 * s.sector_of(i, LL);
        return 2 * s.sector_of(2 * s.g() - 2 - i, UR);
    }
    i = C[0] / P2;
    if (d[1] < 0) return (2 * (s.sector_of(i, LL) + 1)) % T;
    return 2 * s.sector_of(i, UL);
}

// Pairs of corner offsets (da, db) at which a and b share a vertex other than p.
std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> shared_vertices(const Surface& s, CellId a, CellId b) {
    const auto& m = s.cells();
    auto A = s.center(a), B = s.center(b);
    std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> out;
    for (auto da : m.corner_offsets(a)) {
        if (m.grid.glued && m.grid.is_p(A[0] + da[0], A[1] + da[1])) continue;
        auto va = m.grid.glued ? m.grid.canonical(A[0] + da[0], A[1] + da[1]) : std::array<int, 2>{A[0] + da[0], A[1] + da[1]};
        for (auto db : m.corner_offsets(b)) {
            auto vb = m.grid.glued ? m.grid.canonical(B[0] + db[0], B[1] + db[1]) : std::array<int, 2>{B[0] + db[0], B[1] + db[1]};
            if (va == vb) out.push_back({da, db});
        }
    }
    return out;
}

int separation(int a, int b, int total) {
    int d = ((a - b) % total + total) % total;
    return std::min(d, total - d);
}

Point half_point(std::array<int, 2> C) { return {ratio(C[0], 2), ratio(C[1], 2)}; }

}  // namespace

CellPlacement place_cell(const Surface& s, const std::vector<CellId>& factors) {
    const int m = static_cast<int>(factors.size());
    const CubeComplex& K = s.complex();
    UnionFind uf(m);
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l)
            if (!K.closures_disjoint(factors[k], factors[l])) uf.unite(k, l);
    CellPlacement pl;
    pl.hat.assign(m, {0, 0});
    pl.position.assign(m, -1);
    pl.component.assign(m, 0);
    std::vector<int> comp_id(m, -1);
    int next = 0;
    for (int k = 0; k < m; ++k) {
        int r = uf.find(k);
        if (comp_id[r] < 0) comp_id[r] = next++;
        pl.component[k] = comp_id[r];
    }
    std::vector<bool> placed(m, false);
    for (int c = 0; c < next; ++c) {
        std::vector<int> members;
        for (int k = 0; k < m; ++k)
            if (pl.component[k] == c) members.push_back(k);
        std::queue<int> q;
        for (int k : members)
            if (auto d = p_offset(s, factors[k])) {
                pl.hat[k] = {-(*d)[0], -(*d)[1]};
                pl.position[k] = polar_position(s, factors[k], *d);
                placed[k] = true;
                q.push(k);
            }
        if (q.empty()) {
            int k = members.front();
            pl.hat[k] = s.center(factors[k]);
            placed[k] = true;
            q.push(k);
        }
        while (!q.empty()) {
            int k = q.front();
            q.pop();
            for (int l : members) {
                if (placed[l]) continue;
                auto sv = shared_vertices(s, factors[k], factors[l]);
                if (sv.empty()) continue;
                auto [da, db] = sv.front();
                pl.hat[l] = {pl.hat[k][0] + da[0] - db[0], pl.hat[k][1] + da[1] - db[1]};
                placed[l] = true;
                q.push(l);
            }
        }
        for (int k : members) {
            if (!placed[k])
                throw GeometryError(GeomErrc::diameter_exceeded, "cell closures meet only at the cone point");
            for (int l : members) {
                if (l <= k) continue;
                for (auto [da, db] : shared_vertices(s, factors[k], factors[l]))
                    if (pl.hat[l][0] != pl.hat[k][0] + da[0] - db[0] || pl.hat[l][1] != pl.hat[k][1] + da[1] - db[1])
                        throw GeometryError(GeomErrc::diameter_exceeded, "cells admit no consistent lift");
            }
        }
    }
    return pl;
}

PairClassification cell_pair_form(const Surface& s, CellId a, CellId b) {
    const CubeComplex& K = s.complex();
    (void)K.cell(a);
    (void)K.cell(b);
    PairClassification r;
    if (K.closures_disjoint(a, b)) return r;
    int da = K.cell(a).dim, db = K.cell(b).dim;
    if (da > db) {
        std::swap(a, b);
        std::swap(da, db);
    }
    auto ca = K.closure(a), cb = K.closure(b);
    bool shared_edge = false;
    for (CellId x : ca)
        if (K.cell(x).dim == 1 && cb.count(x)) shared_edge = true;
    if (da == 2) r.form = shared_edge ? PairForm::form3 : PairForm::form4;
    else if (da == 1 && db == 2) r.form = cb.count(a) ? PairForm::form5 : PairForm::form2;
    else if (da == 1) r.form = s.cells().extended(a, 0) == s.cells().extended(b, 0) ? PairForm::form1 : PairForm::form7;
    else if (db == 2) r.form = PairForm::form8;
    else r.form = PairForm::form6;
    r.first_row = r.form == PairForm::form1 || r.form == PairForm::form2 || r.form == PairForm::form3 ||
                  r.form == PairForm::form4;
    r.through_p = s.is_p_cell(a) && s.is_p_cell(b);
    if (r.through_p && da > 0) {
        auto pl = place_cell(s, {a, b});
        r.beyond_pi = separation(pl.position[0], pl.position[1], 8 * (2 * s.g() - 1)) >= 5;
    }
    return r;
}

bool MembershipSystem::trivial() const {
    return std::any_of(pairs.begin(), pairs.end(), [](const PairConditions& p) { return p.any_of.empty(); });
}

MembershipSystem membership_system(const Surface& s, const std::vector<CellId>& factors) {
    const CubeComplex& K = s.complex();
    for (CellId c : factors) (void)K.cell(c);
    MembershipSystem sys;
    sys.placement = place_cell(s, factors);
    const auto& H = sys.placement.hat;
    const auto& pos = sys.placement.position;
    const int T = s.glued() ? 8 * (2 * s.g() - 1) : 1;
    const int m = static_cast<int>(factors.size());
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
            if (K.closures_disjoint(factors[k], factors[l])) continue;
            PairConditions pc;
            pc.k = k;
            pc.l = l;
            if (K.cell(factors[k]).dim > 0 && K.cell(factors[l]).dim > 0) {
                bool far = pos[k] >= 0 && pos[l] >= 0 && separation(pos[k], pos[l], T) >= 5;
                for (int a = 0; a < 2; ++a) {
                    int sk = sgn(H[k][a]), sl = sgn(H[l][a]);
                    if (far && sk == sl && sk != 0)
                        pc.any_of.push_back({ConditionKind::through_axis, k, l, a, sk});
                    else if (std::abs(H[l][a] - H[k][a]) == 2)
                        pc.any_of.push_back({ConditionKind::flat_axis, k, l, a, sgn(H[l][a] - H[k][a])});
                }
            }
            sys.pairs.push_back(std::move(pc));
        }
    return sys;
}

std::vector<Vec2> local_offsets(const Surface& s, const std::vector<CellId>& factors, const Configuration& z) {
    if (z.size() != factors.size()) throw InputError("configuration and cell have different sizes");
    std::vector<Vec2> out;
    for (std::size_t k = 0; k < z.size(); ++k) {
        auto lo = s.cell_lo(factors[k]), hi = s.cell_hi(factors[k]);
        auto C = s.center(factors[k]);
        bool found = false;
        for (const auto& r : s.representatives(s.canonical(z[k]))) {
            if (r.x < lo[0] || r.x > hi[0] || r.y < lo[1] || r.y > hi[1]) continue;
            out.push_back({r.x - ratio(C[0], 2), r.y - ratio(C[1], 2)});
            found = true;
            break;
        }
        if (!found)
            throw InputError("point " + format_point(z[k]) + " is not in the closure of factor " + std::to_string(k));
    }
    return out;
}

bool evaluate_membership(const MembershipSystem& sys, const std::vector<Vec2>& u) {
    for (const auto& pc : sys.pairs) {
        bool ok = false;
        for (const auto& c : pc.any_of) {
            Rational v = c.kind == ConditionKind::flat_axis ? Rational(u[c.l][c.axis] - u[c.k][c.axis])
                                                            : Rational(u[c.k][c.axis] + u[c.l][c.axis]);
            if (c.sign * v >= 0) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

bool partial_cell_membership(const Surface& s, const std::vector<CellId>& factors, const Configuration& z) {
    auto sys = membership_system(s, factors);
    return evaluate_membership(sys, local_offsets(s, factors, z));
}

Configuration barycenter_configuration(const Surface& s, const std::vector<CellId>& factors) {
    auto sys = membership_system(s, factors);
    if (sys.trivial()) throw GeometryError(GeomErrc::not_in_sf, "cell meets the square configuration space trivially");
    Configuration out;
    for (CellId c : factors) out.push_back(s.canonical(half_point(s.center(c))));
    return out;
}

BadPoint max_bad_point(const Surface& s, const std::vector<CellId>& factors) {
    auto sys = membership_system(s, factors);
    if (sys.fully_contained()) throw GeometryError(GeomErrc::not_applicable, "cell is fully contained");
    if (sys.trivial()) throw GeometryError(GeomErrc::not_in_sf, "cell meets the square configuration space trivially");
    BadPoint bp;
    std::vector<Vec2> mp;
    Rational biggest(1);
    for (const auto& H : sys.placement.hat) {
        Vec2 v;
        for (int a = 0; a < 2; ++a) {
            v[a] = H[a] % 2 != 0 ? ratio(H[a], 2) : Rational(0);
            Rational av = v[a] < 0 ? Rational(-v[a]) : v[a];
            if (av > biggest) biggest = av;
        }
        mp.push_back(v);
    }
    bp.lambda = 4 * biggest;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        Vec2 b{mp[k][0] / bp.lambda, mp[k][1] / bp.lambda};
        auto C = half_point(s.center(factors[k]));
        bp.b_hat.push_back(b);
        bp.minus_b.push_back(s.canonical({C.x - b[0], C.y - b[1]}));
        bp.plus_b.push_back(s.canonical({C.x + b[0], C.y + b[1]}));
    }
    return bp;
}

Configuration RetractResult::at(const Surface& s, const Rational& tp) const {
    Configuration out;
    for (std::size_t k = 0; k < base.size(); ++k)
        out.push_back(s.canonical({base[k][0] + u[k][0] + tp * w[k][0], base[k][1] + u[k][1] + tp * w[k][1]}));
    return out;
}

RetractResult retract_step(const Surface& s, const std::vector<CellId>& factors, const Configuration& z) {
    auto sys = membership_system(s, factors);
    auto u = local_offsets(s, factors, z);
    if (!evaluate_membership(sys, u)) throw InputError("configuration is not a square configuration of this cell");
    BadPoint bp = max_bad_point(s, factors);
    RetractResult r;
    r.u = u;
    const Rational half(1, 2);
    std::optional<Rational> best;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        auto C = s.center(factors[k]);
        r.base.push_back({ratio(C[0], 2), ratio(C[1], 2)});
        Vec2 w{Rational(0), Rational(0)};
        for (int a = 0; a < 2; ++a) {
            if (!s.cells().extended(factors[k], a)) continue;
            w[a] = u[k][a] + bp.b_hat[k][a];
            int facet_base = 2 * (2 * static_cast<int>(k) + a);
            // Already on the boundary: stay put.
            if (u[k][a] == half || u[k][a] == -half) {
                int f = facet_base + (u[k][a] > 0 ? 1 : 0);
                if (!best || *best > 0 || f < r.facet) {
                    best = Rational(0);
                    r.facet = f;
                }
                continue;
            }
            if (w[a] == 0) continue;
            Rational t = (Rational(sgn(w[a])) * half - u[k][a]) / w[a];
            int f = facet_base + (w[a] > 0 ? 1 : 0);
            if (!best || t < *best) {
                best = t;
                r.facet = f;
            }
        }
        r.w.push_back(w);
    }
    r.t = best ? *best : Rational(0);
    r.z = r.at(s, r.t);
    r.carrier = carrier_cell(s, r.z);
    return r;
}

std::vector<CellId> carrier_cell(const Surface& s, const Configuration& z) {
    std::vector<CellId> out;
    for (const auto& p : z) out.push_back(s.carrier(p));
    return out;
}

DiscretizeResult discretize_configuration(const Surface& s, int m, const Configuration& z0) {
    if (static_cast<int>(z0.size()) != m) throw InputError("configuration has " + std::to_string(z0.size()) + " points, expected " + std::to_string(m));
    if (m > s.n()) throw InputError("discretization needs m <= n");
    if (sf_theta(s, z0) < ratio(1, 2))
        throw GeometryError(GeomErrc::not_a_square_configuration, "theta below 1/2");
    const CubeComplex& K = s.complex();
    DiscretizeResult res;
    Configuration z;
    for (const auto& p : z0) z.push_back(s.canonical(p));
    for (int step = 0; step <= 2 * m + 1; ++step) {
        auto cell = carrier_cell(s, z);
        res.schedule.push_back(cell);
        bool disjoint = true;
        for (int k = 0; k < m && disjoint; ++k)
            for (int l = k + 1; l < m && disjoint; ++l)
                if (!K.closures_disjoint(cell[k], cell[l])) disjoint = false;
        if (disjoint) {
            res.cell = cell;
            res.z = z;
            return res;
        }
        z = retract_step(s, cell, z).z;
    }
    throw std::logic_error("retraction did not reach a discrete cell");
}

}  // namespace sqconf
