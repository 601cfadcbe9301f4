#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace sqconf {

using CellId = std::uint32_t;

struct Facet {
    CellId id;
    int sign;  // +1 or -1

    bool operator==(const Facet&) const = default;
};

struct Cell {
    CellId id = 0;
    int dim = 0;
    std::vector<Facet> faces;
    std::string label;

    bool operator==(const Cell&) const = default;
};

struct ComplexMetadata {
    std::string family;  // disk, closed, bounded, dual_bounded, graph, df, cf, ...
    int g = -1;
    int n = -1;
    int m = 0;           // particle count for configuration complexes

    bool operator==(const ComplexMetadata&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Immutable finite cube complex. Cells are stored grouped by dimension with
// ids 0..size()-1; facets are kept sorted by face id.
class CubeComplex {
public:
    CubeComplex() = default;

    // Accepts cells whose ids equal their position. Facet lists are sorted;
    // structural problems are not rejected here (see validate()).
    static CubeComplex from_cells(std::vector<Cell> cells, ComplexMetadata meta = {});

    std::size_t size() const { return cells_.size(); }
    int dim() const { return static_cast<int>(offsets_.size()) - 2; }
    const Cell& cell(CellId id) const;
    const std::vector<Cell>& cells() const { return cells_; }
    const ComplexMetadata& metadata() const { return meta_; }

    // Ids of cells of dimension k form the half-open range [begin, end).
    CellId dim_begin(int k) const;
    CellId dim_end(int k) const;
    std::size_t count(int k) const { return dim_end(k) - dim_begin(k); }

    // Position of a cell inside its dimension block.
    std::size_t local_index(CellId id) const { return id - dim_begin(cell(id).dim); }

    const std::vector<CellId>& vertex_set(CellId id) const;
    std::set<CellId> closure(CellId id) const;
    bool closures_disjoint(CellId a, CellId b) const;        // vertex-set fast path
    bool closures_disjoint_full(CellId a, CellId b) const;   // full closure comparison

    std::vector<std::size_t> f_vector() const;
    long long euler_characteristic() const;

    bool operator==(const CubeComplex& o) const { return cells_ == o.cells_ && meta_ == o.meta_; }

private:
    void check_id(CellId id) const;

    std::vector<Cell> cells_;
    std::vector<CellId> offsets_;  // offsets_[k] = first id of dimension k, size dim+2
    std::vector<std::vector<CellId>> vertex_sets_;
    ComplexMetadata meta_;
};

ValidationReport validate(const CubeComplex& complex);

// Sign of the facet of a k-cube at coordinate `axis` (0-based) on side 0 or 1.
inline int cubical_facet_sign(int axis, int side) {
    int s = (axis % 2 == 0) ? 1 : -1;
    return side == 0 ? -s : s;
}

}  // namespace sqconf
