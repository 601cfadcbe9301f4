#include "sqconf/surface_models.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "sqconf/errors.hpp"

namespace sqconf {

const char* to_string(Family f) {
    switch (f) {
        case Family::disk: return "disk";
        case Family::closed: return "closed";
        case Family::bounded: return "bounded";
        case Family::dual_bounded: return "dual_bounded";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "disk") return Family::disk;
    if (s == "closed") return Family::closed;
    if (s == "bounded") return Family::bounded;
    if (s == "dual_bounded") return Family::dual_bounded;
    throw InputError("unknown surface family '" + s + "'");
}

std::string descriptor_to_json(const SurfaceDescriptor& d) {
    nlohmann::ordered_json j;
    j["family"] = to_string(d.family);
    j["g"] = d.g;
    j["n"] = d.n;
    if (d.singular_vertex) j["singular_vertex"] = *d.singular_vertex;
    else j["singular_vertex"] = nullptr;
    j["boundary_cells"] = d.boundary_cells;
    return j.dump();
}

SurfaceDescriptor descriptor_from_json(const std::string& text) {
    SurfaceDescriptor d;
    try {
        auto j = nlohmann::json::parse(text);
        d.family = family_from_string(j.at("family").get<std::string>());
        d.g = j.at("g").get<int>();
        d.n = j.at("n").get<int>();
        if (!j.at("singular_vertex").is_null()) d.singular_vertex = j.at("singular_vertex").get<CellId>();
        d.boundary_cells = j.at("boundary_cells").get<std::vector<CellId>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad descriptor JSON: ") + e.what());
    }
    return d;
}

GlueGrid GlueGrid::disk(int n) {
    GlueGrid gg;
    gg.glued = false;
    gg.g = 0;
    gg.n = n;
    gg.W = n;
    gg.H = n;
    return gg;
}

GlueGrid GlueGrid::closed(int g, int n) {
    GlueGrid gg;
    gg.glued = true;
    gg.g = g;
    gg.n = n;
    gg.W = (2 * g - 1) * (n + 1);
    gg.H = n + 1;
    return gg;
}

std::array<int, 2> GlueGrid::canonical(int X, int Y) const {
    const int W2 = 2 * W, H2 = 2 * H;
    if (!glued) {
        if (X < 0 || Y < 0 || X > W2 || Y > H2) throw std::logic_error("point outside disk chart");
        return {X, Y};
    }
    const int P2 = 2 * block();
    if (X < 0) X += W2;
    if (X > W2) X -= W2;
    if (Y < 0 || Y > H2) {
        if (X % P2 == 0) throw std::logic_error("ambiguous crossing at the cone point");
        int seg = X / P2;
        if (Y < 0) {
            // below bottom segment seg: continue from top segment 2g-2-seg
            int top = 2 * g - 2 - seg;
            X += (top - seg) * P2;
            Y += H2;
        } else {
            int bottom = 2 * g - 2 - seg;
            X -= (seg - bottom) * P2;
            Y -= H2;
        }
    }
    if ((Y == 0 || Y == H2) && X % P2 == 0) return {0, 0};
    if (X == W2) X = 0;
    if (Y == H2) {
        int seg = X / P2;
        int bottom = 2 * g - 2 - seg;
        X -= (seg - bottom) * P2;
        Y = 0;
    }
    return {X, Y};
}

bool GlueGrid::is_p(int X, int Y) const {
    if (!glued) return false;
    auto c = canonical(X, Y);
    return c[0] == 0 && c[1] == 0;
}

std::optional<CellId> SurfaceModel::cell_at(int X, int Y) const {
    auto c = grid.canonical(X, Y);
    auto it = index.find(key(c[0], c[1]));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

bool SurfaceModel::extended(CellId c, int axis) const {
    int coord = centers.at(c)[axis];
    bool odd = (coord % 2) != 0;
    return shifted ? !odd : odd;
}

std::vector<std::array<int, 2>> SurfaceModel::corner_offsets(CellId c) const {
    std::vector<int> xs{0}, ys{0};
    if (extended(c, 0)) xs = {-1, 1};
    if (extended(c, 1)) ys = {-1, 1};
    std::vector<std::array<int, 2>> out;
    for (int dy : ys)
        for (int dx : xs) out.push_back({dx, dy});
    return out;
}

namespace {

std::string half_str(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

std::string axis_label(int c, bool ext) {
    if (!ext) return half_str(c);
    return "[" + half_str(c - 1) + "," + half_str(c + 1) + "]";
}

struct Pending {
    int dim;
    int X, Y;
};

SurfaceModel assemble(const GlueGrid& grid, bool shifted, const std::set<std::pair<int, int>>& skip, Family family) {
    SurfaceModel model;
    model.grid = grid;
    model.shifted = shifted;
    std::set<std::tuple<int, int, int>> found;  // (dim, Y, X)
    for (int X = 0; X <= 2 * grid.W; ++X) {
        for (int Y = 0; Y <= 2 * grid.H; ++Y) {
            auto c = grid.canonical(X, Y);
            if (skip.count({c[0], c[1]})) continue;
            int dim = 0;
            for (int v : c) {
                bool odd = v % 2 != 0;
                if (shifted ? !odd : odd) ++dim;
            }
            found.insert({dim, c[1], c[0]});
        }
    }
    std::vector<Cell> cells;
    cells.reserve(found.size());
    for (const auto& [dim, Y, X] : found) {
        CellId id = static_cast<CellId>(cells.size());
        model.index[model.key(X, Y)] = id;
        model.centers.push_back({X, Y});
        Cell cell;
        cell.id = id;
        cell.dim = dim;
        cells.push_back(std::move(cell));
    }
    for (Cell& cell : cells) {
        auto [X, Y] = model.centers[cell.id];
        bool ex = model.extended(cell.id, 0), ey = model.extended(cell.id, 1);
        cell.label = axis_label(X, ex) + "x" + axis_label(Y, ey);
        int axis = 0;
        for (int a = 0; a < 2; ++a) {
            if (!(a == 0 ? ex : ey)) continue;
            for (int side = 0; side < 2; ++side) {
                int d = side == 0 ? -1 : 1;
                auto f = model.cell_at(X + (a == 0 ? d : 0), Y + (a == 1 ? d : 0));
                if (!f) throw std::logic_error("facet outside grid for cell " + cell.label);
                cell.faces.push_back({*f, cubical_facet_sign(axis, side)});
            }
            ++axis;
        }
    }
    ComplexMetadata meta{to_string(family), grid.g, grid.n, 0};
    model.complex = CubeComplex::from_cells(std::move(cells), meta);
    model.descriptor.family = family;
    model.descriptor.g = grid.g;
    model.descriptor.n = grid.n;
    return model;
}

// Edges with exactly one coface, plus their endpoints.
std::vector<CellId> manifold_boundary(const CubeComplex& cx) {
    std::vector<int> cofaces(cx.size(), 0);
    for (CellId c = cx.dim_begin(2); c < cx.dim_end(2); ++c)
        for (const Facet& f : cx.cell(c).faces) ++cofaces[f.id];
    std::set<CellId> out;
    for (CellId e = cx.dim_begin(1); e < cx.dim_end(1); ++e) {
        if (cofaces[e] != 1) continue;
        out.insert(e);
        for (const Facet& f : cx.cell(e).faces) out.insert(f.id);
    }
    return {out.begin(), out.end()};
}

void check_params(int g, int n, bool closed) {
    if (n < 1) throw InputError("n must be at least 1");
    if (closed && g < 1) throw InputError("genus must be at least 1");
}

}  // namespace

SurfaceModel build_disk(int n) {
    check_params(0, n, false);
    SurfaceModel m = assemble(GlueGrid::disk(n), false, {}, Family::disk);
    m.descriptor.boundary_cells = manifold_boundary(m.complex);
    return m;
}

SurfaceModel build_closed(int g, int n) {
    check_params(g, n, true);
    SurfaceModel m = assemble(GlueGrid::closed(g, n), false, {}, Family::closed);
    m.descriptor.singular_vertex = *m.cell_at(0, 0);
    return m;
}

SurfaceModel build_bounded(int g, int n) {
    check_params(g, n, true);
    // Dual structure of the closed tiling with the square around p removed.
    SurfaceModel m = assemble(GlueGrid::closed(g, n), true, {{0, 0}}, Family::bounded);
    m.descriptor.boundary_cells = manifold_boundary(m.complex);
    return m;
}

SurfaceModel build_dual_bounded(int g, int n) {
    SurfaceModel full = build_closed(g, n);
    const CubeComplex& K = full.complex;
    CellId p = *full.descriptor.singular_vertex;
    std::vector<CellId> keep;
    for (CellId c = 0; c < K.size(); ++c) {
        const auto& vs = K.vertex_set(c);
        if (!std::binary_search(vs.begin(), vs.end(), p)) keep.push_back(c);
    }
    std::vector<long long> new_id(K.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<long long>(i);

    SurfaceModel m;
    m.grid = full.grid;
    m.shifted = false;
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const Cell& src = K.cell(keep[i]);
        Cell c;
        c.id = static_cast<CellId>(i);
        c.dim = src.dim;
        c.label = src.label;
        for (const Facet& f : src.faces) c.faces.push_back({static_cast<CellId>(new_id[f.id]), f.sign});
        cells.push_back(std::move(c));
        auto ctr = full.centers[keep[i]];
        m.centers.push_back(ctr);
        m.index[m.key(ctr[0], ctr[1])] = static_cast<CellId>(i);
    }
    m.parent_ids = keep;
    m.complex = CubeComplex::from_cells(std::move(cells), ComplexMetadata{"dual_bounded", g, n, 0});
    m.descriptor.family = Family::dual_bounded;
    m.descriptor.g = g;
    m.descriptor.n = n;
    m.descriptor.boundary_cells = manifold_boundary(m.complex);
    return m;
}

SurfaceModel build_surface(Family family, int g, int n) {
    switch (family) {
        case Family::disk:
            if (g != 0) throw InputError("the disk family has genus 0");
            return build_disk(n);
        case Family::closed: return build_closed(g, n);
        case Family::bounded: return build_bounded(g, n);
        case Family::dual_bounded: return build_dual_bounded(g, n);
    }
    throw InputError("unknown family");
}

int corners_at_p(const SurfaceModel& model) {
    if (!model.grid.glued || model.shifted) return 0;
    int count = 0;
    const CubeComplex& cx = model.complex;
    for (CellId c = cx.dim_begin(2); c < cx.dim_end(2); ++c) {
        auto [X, Y] = model.centers[c];
        for (auto d : model.corner_offsets(c))
            if (model.grid.is_p(X + d[0], Y + d[1])) ++count;
    }
    return count;
}

}  // namespace sqconf
