#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqconf/cube_complex.hpp"

namespace sqconf {

struct ProductCell {
    std::vector<CellId> factors;
    int dim = 0;
    CellId id = 0;
};

struct DiscreteConfigOptions {
    std::size_t cap = 5'000'000;  // refuse to build more cells than this
    int threads = 0;              // 0: thread_count()
};

// DF_m(X) (ordered) or its quotient CF_m(X) (unordered) as a cube complex
// whose cells are products of base cells with pairwise disjoint closures.
class DiscreteConfigComplex {
public:
    const CubeComplex& base() const { return base_; }
    const CubeComplex& complex() const { return complex_; }
    int m() const { return m_; }
    bool ordered() const { return ordered_; }
    std::size_t size() const { return complex_.size(); }

    ProductCell product_cell(CellId id) const;
    std::vector<CellId> factors(CellId id) const;

    // Id of the cell with the given factor tuple; for unordered complexes the
    // tuple is sorted first. nullopt if the tuple is not a cell.
    std::optional<CellId> find(const std::vector<CellId>& factors) const;

    // perm[i] is the new position of factor i. Returns the image cell and the
    // orientation sign of the permutation on the product orientation.
    std::pair<CellId, int> orbit(CellId cell, const std::vector<int>& perm) const;

    const std::vector<std::string>& warnings() const { return warnings_; }

    friend DiscreteConfigComplex build_configuration(const CubeComplex&, int, bool, const DiscreteConfigOptions&);

private:
    CubeComplex base_;
    CubeComplex complex_;
    int m_ = 0;
    bool ordered_ = true;
    std::vector<CellId> flat_;  // factors of cell i at [i*m, (i+1)*m)
    std::vector<std::string> warnings_;
};

DiscreteConfigComplex build_configuration(const CubeComplex& base, int m, bool ordered,
                                          const DiscreteConfigOptions& opts = {});
DiscreteConfigComplex build_ordered(const CubeComplex& base, int m, const DiscreteConfigOptions& opts = {});
DiscreteConfigComplex build_unordered(const CubeComplex& base, int m, const DiscreteConfigOptions& opts = {});

// Sign of moving factors by perm given their dimensions (Koszul rule).
int koszul_sign(const std::vector<int>& dims, const std::vector<int>& perm);

}  // namespace sqconf
