#include "sqconf/cube_complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sqconf/errors.hpp"

namespace sqconf {

const char* to_string(GeomErrc code) {
    switch (code) {
        case GeomErrc::diameter_exceeded: return "DiameterExceeded";
        case GeomErrc::distance_out_of_range: return "DistanceOutOfRange";
        case GeomErrc::no_boundary: return "NoBoundary";
        case GeomErrc::undefined_theta: return "UndefinedTheta";
        case GeomErrc::not_in_sf: return "NotInSF";
        case GeomErrc::not_applicable: return "NotApplicable";
        case GeomErrc::not_a_square_configuration: return "NotASquareConfiguration";
        case GeomErrc::outside_domain: return "OutsideDomain";
    }
    return "GeometryError";
}

CubeComplex CubeComplex::from_cells(std::vector<Cell> cells, ComplexMetadata meta) {
    CubeComplex cx;
    int max_dim = -1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Cell& c = cells[i];
        if (c.id != i) {
            throw InputError("cell at position " + std::to_string(i) + " has id " + std::to_string(c.id));
        }
        if (c.dim < 0) throw InputError("cell " + std::to_string(i) + " has negative dimension");
        if (c.dim < max_dim) throw InputError("cells are not grouped by dimension at id " + std::to_string(i));
        max_dim = std::max(max_dim, c.dim);
        std::sort(c.faces.begin(), c.faces.end(),
                  [](const Facet& a, const Facet& b) { return a.id < b.id; });
    }
    cx.offsets_.assign(static_cast<std::size_t>(max_dim + 2), 0);
    {
        std::size_t i = 0;
        for (int k = 0; k <= max_dim; ++k) {
            cx.offsets_[k] = static_cast<CellId>(i);
            while (i < cells.size() && cells[i].dim == k) ++i;
        }
        cx.offsets_[max_dim + 1] = static_cast<CellId>(cells.size());
    }
    cx.vertex_sets_.resize(cells.size());
    for (const Cell& c : cells) {
        auto& vs = cx.vertex_sets_[c.id];
        if (c.dim == 0) {
            vs.push_back(c.id);
            continue;
        }
        for (const Facet& f : c.faces) {
            if (f.id >= c.id) continue;  // malformed; reported by validate()
            const auto& fv = cx.vertex_sets_[f.id];
            vs.insert(vs.end(), fv.begin(), fv.end());
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    }
    cx.cells_ = std::move(cells);
    cx.meta_ = std::move(meta);
    return cx;
}

void CubeComplex::check_id(CellId id) const {
    if (id >= cells_.size()) throw InputError("unknown cell id " + std::to_string(id));
}

const Cell& CubeComplex::cell(CellId id) const {
    check_id(id);
    return cells_[id];
}

CellId CubeComplex::dim_begin(int k) const {
    if (k < 0 || k > dim()) return static_cast<CellId>(cells_.size());
    return offsets_[k];
}

CellId CubeComplex::dim_end(int k) const {
    if (k < 0 || k > dim()) return static_cast<CellId>(cells_.size());
    return offsets_[k + 1];
}

const std::vector<CellId>& CubeComplex::vertex_set(CellId id) const {
    check_id(id);
    return vertex_sets_[id];
}

std::set<CellId> CubeComplex::closure(CellId id) const {
    check_id(id);
    std::set<CellId> out{id};
    std::vector<CellId> stack{id};
    while (!stack.empty()) {
        CellId c = stack.back();
        stack.pop_back();
        for (const Facet& f : cells_[c].faces) {
            if (f.id < cells_.size() && out.insert(f.id).second) stack.push_back(f.id);
        }
    }
    return out;
}

bool CubeComplex::closures_disjoint(CellId a, CellId b) const {
    const auto& va = vertex_set(a);
    const auto& vb = vertex_set(b);
    auto i = va.begin();
    auto j = vb.begin();
    while (i != va.end() && j != vb.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

bool CubeComplex::closures_disjoint_full(CellId a, CellId b) const {
    auto ca = closure(a);
    auto cb = closure(b);
    for (CellId c : ca)
        if (cb.count(c)) return false;
    return true;
}

std::vector<std::size_t> CubeComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (int k = 0; k <= dim(); ++k) f.push_back(count(k));
    return f;
}

long long CubeComplex::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
    return chi;
}

ValidationReport validate(const CubeComplex& cx) {
    ValidationReport rep;
    auto name = [&](const Cell& c) {
        return std::to_string(c.dim) + "-cell " + std::to_string(cx.local_index(c.id));
    };
    const auto& cells = cx.cells();
    for (const Cell& c : cells) {
        if (c.dim >= 1 && c.faces.size() != static_cast<std::size_t>(2 * c.dim)) {
            rep.violations.push_back(name(c) + " has " + std::to_string(c.faces.size()) +
                                     " facets, expected " + std::to_string(2 * c.dim));
        }
        if (c.dim == 0 && !c.faces.empty()) rep.violations.push_back(name(c) + " is a vertex with facets");
        for (std::size_t i = 0; i < c.faces.size(); ++i) {
            const Facet& f = c.faces[i];
            if (f.id >= cells.size()) {
                rep.violations.push_back(name(c) + " has unknown face id " + std::to_string(f.id));
                continue;
            }
            if (cells[f.id].dim != c.dim - 1) {
                rep.violations.push_back(name(c) + " has face " + std::to_string(f.id) + " of dimension " +
                                         std::to_string(cells[f.id].dim));
            }
            if (f.sign != 1 && f.sign != -1) {
                rep.violations.push_back(name(c) + " has incidence sign " + std::to_string(f.sign));
            }
            if (i > 0 && c.faces[i - 1].id == f.id) {
                rep.violations.push_back(name(c) + " repeats face " + std::to_string(f.id));
            }
        }
    }
    if (!rep.ok()) return rep;
    for (const Cell& c : cells) {
        if (c.dim < 2) continue;
        std::map<CellId, long long> acc;
        for (const Facet& f : c.faces)
            for (const Facet& g : cells[f.id].faces) acc[g.id] += static_cast<long long>(f.sign) * g.sign;
        for (const auto& [id, v] : acc) {
            if (v != 0) {
                rep.violations.push_back("∂∂≠0 at " + name(c));
                break;
            }
        }
    }
    return rep;
}

}  // namespace sqconf
