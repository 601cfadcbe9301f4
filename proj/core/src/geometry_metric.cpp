#include <algorithm>
#include <functional>

#include "sqconf/geometry.hpp"

namespace sqconf {

const char* to_string(Route r) {
    switch (r) {
        case Route::flat: return "flat";
        case Route::through_p: return "through_p";
        case Route::origin: return "origin";
        case Route::rim: return "rim";
    }
    return "?";
}

const char* to_string(EdgeTag t) {
    switch (t) {
        case EdgeTag::horizontal: return "horizontal";
        case EdgeTag::vertical: return "vertical";
        case EdgeTag::both: return "both";
        case EdgeTag::through_p: return "through_p";
    }
    return "?";
}

namespace {

Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational norm_inf(const Rational& x, const Rational& y) { return rmax(rabs(x), rabs(y)); }

// Coefficient of d|x|/dx.
Coef sign_coef(const Rational& x) { return x > 0 ? Coef::plus : x < 0 ? Coef::minus : Coef::abs; }
// Coefficient of d|x|/dx for a difference that is never realized at zero.
Coef diff_coef(const Rational& x) { return x > 0 ? Coef::plus : x < 0 ? Coef::minus : Coef::zero; }
Coef negate(Coef c) { return c == Coef::plus ? Coef::minus : c == Coef::minus ? Coef::plus : c; }

Rational apply(Coef c, const Rational& v) {
    switch (c) {
        case Coef::zero: return 0;
        case Coef::plus: return v;
        case Coef::minus: return -v;
        case Coef::abs: return rabs(v);
    }
    return 0;
}

// Rotate a vector of quadrant q into the first quadrant.
std::array<Rational, 2> to_q0(int q, const Rational& x, const Rational& y) {
    switch (q) {
        case 0: return {x, y};
        case 1: return {y, -x};
        case 2: return {-x, -y};
        default: return {-y, x};
    }
}

// Whether the angular separation of two non-origin lifts is less than pi
// (exactly pi counts as flat; both formulas agree there).
bool flat_pair(int S, const LiftedPoint& a, const LiftedPoint& b) {
    int k = ((b.sector - a.sector) % S + S) % S;
    if (k == 0 || k == 1 || k == S - 1) return true;
    if (k != 2 && k != S - 2) return false;
    auto ra = to_q0(a.sector % 4, a.x, a.y);
    auto rb = to_q0(b.sector % 4, b.x, b.y);
    Rational cross = ra[0] * rb[1] - ra[1] * rb[0];
    if (cross == 0) return true;
    if (k == 2 && cross < 0) return true;
    if (k == S - 2 && cross > 0) return true;
    return false;
}

// Does the segment a-b meet the open square of half-width 1/2 about o?
bool segment_hits_box(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                      const Rational& ox, const Rational& oy) {
    const Rational half(1, 2);
    std::optional<Rational> L, U;
    const Rational p0[2] = {ax, ay}, d[2] = {bx - ax, by - ay};
    const Rational lo[2] = {ox - half, oy - half}, hi[2] = {ox + half, oy + half};
    for (int a = 0; a < 2; ++a) {
        if (d[a] == 0) {
            if (!(lo[a] < p0[a] && p0[a] < hi[a])) return false;
            continue;
        }
        Rational t1 = (lo[a] - p0[a]) / d[a], t2 = (hi[a] - p0[a]) / d[a];
        if (t2 < t1) std::swap(t1, t2);
        if (!L || t1 > *L) L = t1;
        if (!U || t2 < *U) U = t2;
    }
    if (L && U && !(*L < *U)) return false;
    if (L && !(*L < 1)) return false;
    if (U && !(*U > 0)) return false;
    return true;
}

struct Collector {
    const Surface& s;
    std::optional<Rational> best;  // smallest length seen
    std::vector<DistanceCertificate> certs;

    void offer(DistanceCertificate c) {
        Rational len = c.length();
        if (best && len > *best) return;
        if (!best || len < *best) {
            best = len;
            certs.clear();
        }
        for (const auto& o : certs)
            if (o.h == c.h && o.v == c.v && o.route == c.route && o.ax == c.ax && o.bx == c.bx && o.ay == c.ay &&
                o.by == c.by)
                return;
        certs.push_back(std::move(c));
    }

    bool pruned(const Rational& lower) const { return best && lower > *best; }
};

LiftedPoint rim_corner(int sector) {
    static const int sx[4] = {1, -1, -1, 1}, sy[4] = {1, 1, -1, -1};
    return {sector, ratio(sx[sector % 4], 2), ratio(sy[sector % 4], 2)};
}

bool straight_ok(const Surface& s, const LiftedPoint& a, const LiftedPoint& b) {
    if (!flat_pair(s.sectors(), a, b)) return false;
    const int P = s.block();
    for (int ox = -1; ox <= 1; ++ox)
        for (int oy = -1; oy <= 1; ++oy)
            if (segment_hits_box(a.x, a.y, b.x, b.y, Rational(ox * P), Rational(oy * P))) return false;
    return true;
}

void collect_pair(Collector& col, const LiftedPoint& a, const LiftedPoint& b) {
    const Surface& s = col.s;
    Rational lower = norm_inf(b.x - a.x, b.y - a.y);
    if (col.pruned(lower)) return;
    if (!s.glued()) {
        DistanceCertificate c;
        c.h = rabs(b.x - a.x);
        c.v = rabs(b.y - a.y);
        c.route = Route::flat;
        c.bx = diff_coef(b.x - a.x);
        c.ax = negate(c.bx);
        c.by = diff_coef(b.y - a.y);
        c.ay = negate(c.by);
        c.la = a;
        c.lb = b;
        col.offer(c);
        return;
    }
    if (s.family() == Family::closed) {
        DistanceCertificate c;
        c.la = a;
        c.lb = b;
        if (a.is_origin() || b.is_origin()) {
            c.route = Route::origin;
            c.h = rabs(a.x) + rabs(b.x);
            c.v = rabs(a.y) + rabs(b.y);
            if (!a.is_origin()) {
                c.ax = sign_coef(a.x);
                c.ay = sign_coef(a.y);
            }
            if (!b.is_origin()) {
                c.bx = sign_coef(b.x);
                c.by = sign_coef(b.y);
            }
        } else if (flat_pair(s.sectors(), a, b)) {
            c.route = Route::flat;
            c.h = rabs(b.x - a.x);
            c.v = rabs(b.y - a.y);
            c.bx = diff_coef(b.x - a.x);
            c.ax = negate(c.bx);
            c.by = diff_coef(b.y - a.y);
            c.ay = negate(c.by);
        } else {
            c.route = Route::through_p;
            c.h = rabs(a.x) + rabs(b.x);
            c.v = rabs(a.y) + rabs(b.y);
            c.ax = sign_coef(a.x);
            c.bx = sign_coef(b.x);
            c.ay = sign_coef(a.y);
            c.by = sign_coef(b.y);
        }
        col.offer(c);
        return;
    }
    // Bounded: straight segments avoiding the removed squares, or routes
    // along the rim of the removed square about the origin.
    if (straight_ok(s, a, b)) {
        DistanceCertificate c;
        c.route = Route::flat;
        c.la = a;
        c.lb = b;
        c.h = rabs(b.x - a.x);
        c.v = rabs(b.y - a.y);
        c.bx = diff_coef(b.x - a.x);
        c.ax = negate(c.bx);
        c.by = diff_coef(b.y - a.y);
        c.ay = negate(c.by);
        col.offer(c);
    }
    Rational rim_lower = rmax(lower, rmax(norm_inf(a.x, a.y), norm_inf(b.x, b.y)) - ratio(1, 2));
    if (col.pruned(rim_lower)) return;
    const int S = s.sectors();
    std::vector<LiftedPoint> ca, cb;
    for (int t = 0; t < S; ++t) {
        LiftedPoint c = rim_corner(t);
        if (straight_ok(s, a, c)) ca.push_back(c);
        if (straight_ok(s, c, b)) cb.push_back(c);
    }
    for (const auto& ci : ca)
        for (const auto& cj : cb) {
            for (int dir = 0; dir < 2; ++dir) {
                int from = dir == 0 ? ci.sector : cj.sector;
                int steps = ((dir == 0 ? cj.sector - ci.sector : ci.sector - cj.sector) % S + S) % S;
                if (dir == 1 && steps == 0) continue;
                int rh = 0, rv = 0;
                for (int k = 0; k < steps; ++k) ((from + k) % 2 == 0 ? rh : rv) += 1;
                DistanceCertificate c;
                c.route = Route::rim;
                c.la = a;
                c.lb = b;
                c.h = rabs(ci.x - a.x) + rh + rabs(b.x - cj.x);
                c.v = rabs(ci.y - a.y) + rv + rabs(b.y - cj.y);
                c.ax = sign_coef(a.x - ci.x);
                c.ay = sign_coef(a.y - ci.y);
                c.bx = sign_coef(b.x - cj.x);
                c.by = sign_coef(b.y - cj.y);
                col.offer(c);
            }
        }
}

DistanceResult finish(Collector& col, const Surface& s, bool bounded_by_n) {
    if (!col.best || (bounded_by_n && *col.best > s.n()))
        throw GeometryError(GeomErrc::distance_out_of_range, "distance exceeds n = " + std::to_string(s.n()));
    DistanceResult r;
    r.value = *col.best;
    r.realizations = std::move(col.certs);
    return r;
}

}  // namespace

DistanceResult lifted_distance(const Surface& s, const LiftedPoint& a, const LiftedPoint& b) {
    Collector col{s, std::nullopt, {}};
    collect_pair(col, a, b);
    if (!col.best) throw GeometryError(GeomErrc::distance_out_of_range, "no path between the lifted points");
    return finish(col, s, false);
}

DistanceResult distance_detail(const Surface& s, const Point& a0, const Point& b0) {
    Point a = s.canonical(a0), b = s.canonical(b0);
    Collector col{s, Rational(s.n()), {}};
    if (a == b) {
        DistanceCertificate c;
        auto la = s.lifts(a);
        c.la = c.lb = la.front();
        col.best = 0;
        col.certs.push_back(c);
        return finish(col, s, true);
    }
    auto la = s.lifts(a), lb = s.lifts(b);
    for (const auto& x : la)
        for (const auto& y : lb) collect_pair(col, x, y);
    if (col.certs.empty()) throw GeometryError(GeomErrc::distance_out_of_range, "distance exceeds n = " + std::to_string(s.n()));
    return finish(col, s, true);
}

Rational chebyshev_distance(const Surface& s, const Point& a, const Point& b) {
    return distance_detail(s, a, b).value;
}

BoundaryResult boundary_detail(const Surface& s, const Point& z0) {
    if (!s.has_boundary()) throw GeometryError(GeomErrc::no_boundary, "closed surfaces have no boundary");
    Point z = s.canonical(z0);
    BoundaryResult r;
    const Rational half(1, 2);
    if (!s.glued()) {
        const Rational n(s.n());
        Rational d[4] = {z.x, n - z.x, z.y, n - z.y};
        r.value = *std::min_element(d, d + 4);
        for (int side = 0; side < 4; ++side) {
            if (d[side] != r.value) continue;
            BoundaryContact c;
            const Rational rr = r.value;
            if (side < 2) {
                Rational lo = rmax(z.y - rr, 0), hi = z.y + rr < n ? z.y + rr : n;
                c.w = {side == 0 ? Rational(0) : n, (lo + hi) / 2};
                c.realize_x = true;
                c.cx = side == 0 ? Coef::plus : Coef::minus;
            } else {
                Rational lo = rmax(z.x - rr, 0), hi = z.x + rr < n ? z.x + rr : n;
                c.w = {(lo + hi) / 2, side == 2 ? Rational(0) : n};
                c.realize_y = true;
                c.cy = side == 2 ? Coef::plus : Coef::minus;
            }
            c.offset = {z.x - c.w.x, z.y - c.w.y};
            r.contacts.push_back(c);
        }
        // Tangency along two adjacent sides is one connected interval through
        // the disk corner: a single contact where both coordinates must grow.
        auto xs = std::find_if(r.contacts.begin(), r.contacts.end(), [](const BoundaryContact& c) { return c.realize_x; });
        auto ys = std::find_if(r.contacts.begin(), r.contacts.end(), [](const BoundaryContact& c) { return c.realize_y; });
        if (xs != r.contacts.end() && ys != r.contacts.end()) {
            BoundaryContact c;
            c.w = {xs->w.x, ys->w.y};
            c.offset = {z.x - c.w.x, z.y - c.w.y};
            c.realize_x = c.realize_y = true;
            c.cx = xs->cx;
            c.cy = ys->cy;
            std::size_t ix = xs - r.contacts.begin(), iy = ys - r.contacts.begin();
            r.contacts.erase(r.contacts.begin() + std::max(ix, iy));
            r.contacts.erase(r.contacts.begin() + std::min(ix, iy));
            r.contacts.insert(r.contacts.begin(), c);
        }
        return r;
    }
    auto ls = s.lifts(z);
    std::optional<Rational> best;
    for (const auto& l : ls) {
        Rational nrm = norm_inf(l.x, l.y);
        if (!best || nrm < *best) best = nrm;
    }
    r.value = *best - half;
    for (const auto& l : ls) {
        if (norm_inf(l.x, l.y) != *best) continue;
        BoundaryContact c;
        Rational ax = rabs(l.x), ay = rabs(l.y);
        LiftedPoint w{l.sector, 0, 0};
        const Rational rr = r.value;
        if (ax == ay) {
            c.corner = true;
            c.realize_x = c.realize_y = true;
            w.x = l.x > 0 ? half : -half;
            w.y = l.y > 0 ? half : -half;
        } else if (ax > ay) {
            c.realize_x = true;
            w.x = l.x > 0 ? half : -half;
            Rational lo = rmax(l.y - rr, -half), hi = l.y + rr < half ? l.y + rr : half;
            w.y = (lo + hi) / 2;
        } else {
            c.realize_y = true;
            w.y = l.y > 0 ? half : -half;
            Rational lo = rmax(l.x - rr, -half), hi = l.x + rr < half ? l.x + rr : half;
            w.x = (lo + hi) / 2;
        }
        if (c.realize_x) c.cx = sign_coef(l.x);
        if (c.realize_y) c.cy = sign_coef(l.y);
        c.offset = {l.x - w.x, l.y - w.y};
        c.w = s.project(w);
        bool dup = false;
        for (const auto& o : r.contacts)
            if (o.w == c.w && o.offset == c.offset) dup = true;
        if (!dup) r.contacts.push_back(c);
    }
    return r;
}

Rational boundary_distance(const Surface& s, const Point& z) { return boundary_detail(s, z).value; }

namespace {

// Minimum of the pairwise terms, tolerating pairs beyond the metric range as
// long as some other term certifies the minimum.
std::optional<Rational> half_min_pairwise(const Surface& s, const Configuration& z, bool& unresolved) {
    std::optional<Rational> best;
    unresolved = false;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            try {
                Rational d = chebyshev_distance(s, z[i], z[j]) / 2;
                if (!best || d < *best) best = d;
            } catch (const GeometryError& e) {
                if (e.code() != GeomErrc::distance_out_of_range) throw;
                unresolved = true;
            }
        }
    return best;
}

}  // namespace

Rational pairwise_theta(const Surface& s, const Configuration& z) {
    if (z.size() < 2) throw GeometryError(GeomErrc::undefined_theta, "pairwise term needs two points");
    bool unresolved = false;
    auto best = half_min_pairwise(s, z, unresolved);
    if (unresolved && (!best || *best > ratio(s.n(), 2)))
        throw GeometryError(GeomErrc::distance_out_of_range, "minimum pairwise distance exceeds n");
    return *best;
}

Rational tautological_theta(const Surface& s, const Configuration& z) {
    if (z.empty()) throw InputError("empty configuration");
    if (!s.has_boundary() && z.size() < 2)
        throw GeometryError(GeomErrc::undefined_theta, "theta is not defined for one point on a closed surface");
    bool unresolved = false;
    auto best = half_min_pairwise(s, z, unresolved);
    for (const auto& p : z)
        if (s.has_boundary()) {
            Rational d = boundary_distance(s, p);
            if (!best || d < *best) best = d;
        }
    if (unresolved && (!best || *best > ratio(s.n(), 2)))
        throw GeometryError(GeomErrc::distance_out_of_range, "minimum pairwise distance exceeds n");
    return *best;
}

Rational sf_theta(const Surface& s, const Configuration& z) {
    if (s.family() == Family::disk) {
        // Only pairwise separation matters on the disk model; a single
        // square always fits.
        if (z.size() < 2) {
            for (const auto& p : z) s.canonical(p);
            return Rational(s.n());
        }
        return pairwise_theta(s, z);
    }
    return tautological_theta(s, z);
}

ContactGraph contact_graph(const Surface& s, const Configuration& z) {
    ContactGraph g;
    g.theta = tautological_theta(s, z);
    g.internal_vertices = static_cast<int>(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            DistanceResult d;
            try {
                d = distance_detail(s, z[i], z[j]);
            } catch (const GeometryError& e) {
                if (e.code() != GeomErrc::distance_out_of_range) throw;
                continue;
            }
            if (d.value != 2 * g.theta) continue;
            InternalEdge e;
            e.i = static_cast<int>(i);
            e.j = static_cast<int>(j);
            bool h = false, v = false, through = false;
            for (const auto& c : d.realizations) {
                if (c.route == Route::through_p) through = true;
                if (c.h == d.value) h = true;
                if (c.v == d.value) v = true;
            }
            e.tag = through ? EdgeTag::through_p : (h && v) ? EdgeTag::both : h ? EdgeTag::horizontal : EdgeTag::vertical;
            e.realizations = std::move(d.realizations);
            g.internal_edges.push_back(std::move(e));
        }
    if (s.has_boundary())
        for (std::size_t i = 0; i < z.size(); ++i) {
            auto b = boundary_detail(s, z[i]);
            if (b.value != g.theta) continue;
            for (auto& c : b.contacts) g.external_edges.push_back({static_cast<int>(i), c});
        }
    return g;
}

ConeResult cone_margins(const Surface& s, const Configuration& z, const TangentVector& v) {
    if (v.size() != z.size()) throw InputError("tangent vector has the wrong number of components");
    for (std::size_t i = 0; i < z.size(); ++i)
        if (s.is_p(z[i]) && (v[i][0] != 0 || v[i][1] != 0))
            throw InputError("tangent components at p must be zero");
    ContactGraph g = contact_graph(s, z);
    ConeResult r;
    auto combine = [](bool rh, bool rv, const Rational& dh, const Rational& dv) {
        if (rh && rv) return rmax(dh, dv);
        return rh ? dh : dv;
    };
    for (const auto& e : g.internal_edges) {
        std::optional<Rational> m;
        Rational len = 2 * g.theta;
        for (const auto& c : e.realizations) {
            Rational dh = apply(c.ax, v[e.i][0]) + apply(c.bx, v[e.j][0]);
            Rational dv = apply(c.ay, v[e.i][1]) + apply(c.by, v[e.j][1]);
            Rational val = combine(c.h == len, c.v == len, dh, dv);
            if (!m || val < *m) m = val;
        }
        r.internal_margins.push_back(*m);
    }
    for (const auto& e : g.external_edges) {
        Rational dh = apply(e.contact.cx, v[e.i][0]), dv = apply(e.contact.cy, v[e.i][1]);
        const auto& c = e.contact;
        if (c.realize_x && c.realize_y && !c.corner) r.external_margins.push_back(dh < dv ? dh : dv);
        else r.external_margins.push_back(combine(c.realize_x, c.realize_y, dh, dv));
    }
    for (const auto& m : r.internal_margins)
        if (!r.min_margin || m < *r.min_margin) r.min_margin = m;
    for (const auto& m : r.external_margins)
        if (!r.min_margin || m < *r.min_margin) r.min_margin = m;
    r.contains = r.min_margin && *r.min_margin > 0;
    return r;
}

bool cone_contains(const Surface& s, const Configuration& z, const TangentVector& v) {
    return cone_margins(s, z, v).contains;
}

Configuration perturb(const Surface& s, const Configuration& z, const TangentVector& v, const Rational& eps) {
    if (v.size() != z.size()) throw InputError("tangent vector has the wrong number of components");
    Configuration out;
    for (std::size_t i = 0; i < z.size(); ++i) out.push_back(s.translate(z[i], {eps * v[i][0], eps * v[i][1]}));
    return out;
}

std::vector<LiftedPoint> lift_region(const Surface& s, const std::vector<Point>& points) {
    const std::size_t m = points.size();
    std::vector<std::vector<std::optional<Rational>>> d(m, std::vector<std::optional<Rational>>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            try {
                d[i][j] = d[j][i] = chebyshev_distance(s, points[i], points[j]);
            } catch (const GeometryError& e) {
                if (e.code() != GeomErrc::distance_out_of_range) throw;
                throw GeometryError(GeomErrc::diameter_exceeded, "points are farther apart than n");
            }
        }
    const Rational radius = Rational(s.n()) + ratio(1, 2);
    std::vector<std::vector<LiftedPoint>> cand(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& l : s.lifts(s.canonical(points[i])))
            if (norm_inf(l.x, l.y) <= radius) cand[i].push_back(l);
        std::stable_sort(cand[i].begin(), cand[i].end(), [](const LiftedPoint& a, const LiftedPoint& b) {
            return norm_inf(a.x, a.y) < norm_inf(b.x, b.y);
        });
    }
    std::vector<LiftedPoint> chosen(m);
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == m) return true;
        for (const auto& l : cand[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                try {
                    ok = lifted_distance(s, chosen[j], l).value == *d[i][j];
                } catch (const GeometryError&) {
                    ok = false;
                }
            }
            if (!ok) continue;
            chosen[i] = l;
            if (place(i + 1)) return true;
        }
        return false;
    };
    if (!place(0)) throw GeometryError(GeomErrc::diameter_exceeded, "no distance-preserving lift of the region");
    return chosen;
}

}  // namespace sqconf
