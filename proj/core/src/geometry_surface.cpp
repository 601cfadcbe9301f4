#include <algorithm>
#include <sstream>

#include "sqconf/geometry.hpp"

namespace sqconf {

namespace {

enum Corner { LL = 0, LR = 1, UR = 2, UL = 3 };

Integer floor_div(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

int mod(int a, int b) { return ((a % b) + b) % b; }

// Quadrant of a nonzero vector, rays belonging to the counterclockwise side.
int quadrant(const Rational& x, const Rational& y) {
    if (x > 0 && y >= 0) return 0;
    if (x <= 0 && y > 0) return 1;
    if (x < 0 && y <= 0) return 2;
    return 3;
}

}  // namespace

Surface Surface::disk(int n) {
    Surface s;
    s.family_ = Family::disk;
    s.n_ = n;
    s.model_ = build_disk(n);
    s.grid_ = s.model_.grid;
    return s;
}

Surface Surface::closed(int g, int n) {
    Surface s;
    s.family_ = Family::closed;
    s.g_ = g;
    s.n_ = n;
    s.model_ = build_closed(g, n);
    s.grid_ = s.model_.grid;
    s.p_vertex_ = s.model_.descriptor.singular_vertex;
    s.init_sectors();
    return s;
}

Surface Surface::bounded(int g, int n) {
    Surface s;
    s.family_ = Family::bounded;
    s.g_ = g;
    s.n_ = n;
    s.model_ = build_dual_bounded(g, n);
    s.grid_ = s.model_.grid;
    s.init_sectors();
    return s;
}

Surface Surface::make(Family family, int g, int n) {
    switch (family) {
        case Family::disk:
            if (g != 0) throw InputError("the disk family has genus 0");
            return disk(n);
        case Family::closed: return closed(g, n);
        case Family::bounded:
        case Family::dual_bounded: return bounded(g, n);
    }
    throw InputError("unknown family");
}

void Surface::init_sectors() {
    int G = 2 * g_ - 1;
    sector_of_.assign(G, {-1, -1, -1, -1});
    corner_of_.clear();
    int i = 1 % G, c = LL;
    for (int s = 0; s < 4 * G; ++s) {
        if (sector_of_[i][c] >= 0) throw std::logic_error("sector walk revisits a corner");
        sector_of_[i][c] = s;
        corner_of_.push_back({i, c});
        switch (c) {
            case LL: i = mod(i - 1, G); c = LR; break;
            case LR: i = 2 * g_ - 2 - i; c = UR; break;
            case UR: i = mod(i + 1, G); c = UL; break;
            default: i = 2 * g_ - 2 - i; c = LL; break;
        }
    }
    if (i != 1 % G || c != LL) throw std::logic_error("sector walk does not close up");
}

Point Surface::corner_position(int square, int corner) const {
    int P = block();
    int x = (corner == LL || corner == UL) ? square * P : (square + 1) * P;
    int y = (corner == LL || corner == LR) ? 0 : grid_.H;
    return {Rational(x), Rational(y)};
}

Point Surface::canonical(const Point& z) const {
    Rational x = z.x, y = z.y;
    x.canonicalize();  // callers may hand in mpq_class(num, den) literals
    y.canonicalize();
    if (!glued()) {
        if (x < 0 || y < 0 || x > n_ || y > n_)
            throw GeometryError(GeomErrc::outside_domain, "point " + format_point(z) + " is outside the disk");
        return {x, y};
    }
    const int W = grid_.W, H = grid_.H, P = block();
    if (x < -P || x > W + P || y < -H || y > 2 * H)
        throw GeometryError(GeomErrc::outside_domain, "point " + format_point(z) + " is far outside the chart");
    if (x < 0) x += W;
    if (x > W) x -= W;
    if (y < 0 || y > H) {
        Rational q = x / P;
        if (is_integer(q)) throw GeometryError(GeomErrc::outside_domain, "ambiguous crossing at the cone point");
        int seg = static_cast<int>(floor_div(q).get_si());
        if (seg >= 2 * g_ - 1) seg = 2 * g_ - 2;
        int other = 2 * g_ - 2 - seg;
        if (y < 0) {
            x += (other - seg) * P;
            y += H;
        } else {
            x -= (seg - other) * P;
            y -= H;
        }
    }
    if ((y == 0 || y == H) && is_integer(x / P)) {
        if (family_ == Family::bounded)
            throw GeometryError(GeomErrc::outside_domain, "point " + format_point(z) + " is the removed cone point");
        return {Rational(0), Rational(0)};
    }
    if (x == W) x = 0;
    if (y == H) {
        int seg = static_cast<int>(floor_div(x / P).get_si());
        int other = 2 * g_ - 2 - seg;
        x -= (seg - other) * P;
        y = 0;
    }
    if (family_ == Family::bounded) {
        Rational best = -1;
        Point c{x, y};
        for (const auto& l : lifts(c)) {
            Rational nrm = sqconf::abs(l.x) > sqconf::abs(l.y) ? sqconf::abs(l.x) : sqconf::abs(l.y);
            if (best < 0 || nrm < best) best = nrm;
        }
        if (best < ratio(1, 2))
            throw GeometryError(GeomErrc::outside_domain, "point " + format_point(z) + " lies in the removed square");
    }
    return {x, y};
}

bool Surface::is_p(const Point& z) const {
    if (!glued()) return false;
    Point c = canonical(z);
    return c.x == 0 && c.y == 0;
}

std::vector<Point> Surface::representatives(const Point& z) const {
    if (!glued()) return {z};
    const int W = grid_.W, H = grid_.H, P = block(), G = 2 * g_ - 1;
    if (z.x == 0 && z.y == 0) {
        std::vector<Point> out;
        for (int i = 0; i <= G; ++i) {
            out.push_back({Rational(i * P), Rational(0)});
            out.push_back({Rational(i * P), Rational(H)});
        }
        return out;
    }
    std::vector<Point> out{z};
    if (z.x == 0) out.push_back({Rational(W), z.y});
    if (z.y == 0) {
        int seg = static_cast<int>(floor_div(z.x / P).get_si());
        int top = 2 * g_ - 2 - seg;
        out.push_back({z.x + (top - seg) * P, Rational(H)});
    }
    return out;
}

std::vector<LiftedPoint> Surface::lifts(const Point& z) const {
    if (!glued()) return {LiftedPoint{0, z.x, z.y}};
    if (z.x == 0 && z.y == 0) return {LiftedPoint{0, Rational(0), Rational(0)}};
    const int P = block(), G = 2 * g_ - 1;
    std::vector<LiftedPoint> out;
    for (const Point& r : representatives(z)) {
        for (int i = 0; i < G; ++i) {
            if (r.x < i * P || r.x > (i + 1) * P) continue;
            for (int c = 0; c < 4; ++c) {
                Point cp = corner_position(i, c);
                LiftedPoint l{sector_of_[i][c], r.x - cp.x, r.y - cp.y};
                // Points on the closing ray of a quadrant belong to the next sector.
                if (quadrant(l.x, l.y) != c) l.sector = (l.sector + 1) % sectors();
                if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
            }
        }
    }
    return out;
}

Point Surface::project(const LiftedPoint& l) const {
    if (!glued()) return {l.x, l.y};
    if (l.is_origin()) return {Rational(0), Rational(0)};
    int q = quadrant(l.x, l.y);
    int s = l.sector;
    if (q != s % 4) {
        // On the closing ray of sector s, which belongs to sector s + 1.
        if (q == (s + 1) % 4) s = (s + 1) % sectors();
        else throw GeometryError(GeomErrc::outside_domain, "lifted point outside its sector");
    }
    auto [i, c] = corner_of_[s];
    Point cp = corner_position(i, c);
    return canonical({cp.x + l.x, cp.y + l.y});
}

Point Surface::translate(const Point& z0, const Vec2& v) const {
    Point z = canonical(z0);
    if (!glued()) return canonical({z.x + v[0], z.y + v[1]});
    if (z.x == 0 && z.y == 0) {
        if (v[0] != 0 || v[1] != 0) throw InputError("tangent vectors at p must vanish");
        return z;
    }
    auto ls = lifts(z);
    const LiftedPoint* best = nullptr;
    Rational bn;
    for (const auto& l : ls) {
        Rational nrm = std::max(sqconf::abs(l.x), sqconf::abs(l.y));
        if (!best || nrm < bn) {
            best = &l;
            bn = nrm;
        }
    }
    Rational nx = best->x + v[0], ny = best->y + v[1];
    if (nx == 0 && ny == 0) return {Rational(0), Rational(0)};
    int q0 = quadrant(best->x, best->y), q1 = quadrant(nx, ny);
    int dq = mod(q1 - q0, 4);
    if (dq == 3) dq = -1;
    if (dq == 2) {
        Rational cross = best->x * v[1] - best->y * v[0];
        if (cross == 0) throw GeometryError(GeomErrc::outside_domain, "move passes through the cone point");
        dq = cross > 0 ? 2 : -2;
    }
    const int P = block();
    if (sqconf::abs(nx) > P || sqconf::abs(ny) > P)
        throw GeometryError(GeomErrc::outside_domain, "move too long for a single chart");
    int s = mod(best->sector + dq, sectors());
    auto [i, c] = corner_of_[s];
    Point cp = corner_position(i, c);
    return canonical({cp.x + nx, cp.y + ny});
}

CellId Surface::carrier(const Point& z0) const {
    Point z = canonical(z0);
    auto dbl = [](const Rational& q) {
        if (q.get_den() == 1) return static_cast<int>(2 * q.get_num().get_si());
        return static_cast<int>(2 * floor_div(q).get_si() + 1);
    };
    auto id = model_.cell_at(dbl(z.x), dbl(z.y));
    if (!id) throw GeometryError(GeomErrc::outside_domain, "point " + format_point(z) + " is not in any cell");
    return *id;
}

bool Surface::is_p_cell(CellId c) const {
    if (!p_vertex_) return false;
    const auto& vs = model_.complex.vertex_set(c);
    return std::binary_search(vs.begin(), vs.end(), *p_vertex_);
}

std::array<Rational, 2> Surface::cell_lo(CellId c) const {
    auto C = center(c);
    std::array<Rational, 2> out;
    for (int a = 0; a < 2; ++a)
        out[a] = ratio(C[a] - (model_.extended(c, a) ? 1 : 0), 2);
    return out;
}

std::array<Rational, 2> Surface::cell_hi(CellId c) const {
    auto C = center(c);
    std::array<Rational, 2> out;
    for (int a = 0; a < 2; ++a)
        out[a] = ratio(C[a] + (model_.extended(c, a) ? 1 : 0), 2);
    return out;
}

// ------------------------------------------------------------------ parsing

Configuration parse_points(const std::string& text) {
    Configuration out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        auto comma = item.find(',');
        if (comma == std::string::npos || item.find(',', comma + 1) != std::string::npos)
            throw InputError("expected 'x,y' but got '" + item + "'");
        out.push_back({parse_rational(item.substr(0, comma)), parse_rational(item.substr(comma + 1))});
    }
    if (out.empty()) throw InputError("no points given");
    return out;
}

TangentVector parse_vectors(const std::string& text) {
    TangentVector out;
    for (const auto& p : parse_points(text)) out.push_back({p.x, p.y});
    return out;
}

std::string format_point(const Point& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

}  // namespace sqconf
