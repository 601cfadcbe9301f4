#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqconf/cube_complex.hpp"
#include "sqconf/rational.hpp"

namespace sqconf {

// Column-major sparse integer matrix; entries of each column sorted by row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
    std::size_t nonzeros() const;
    bool operator==(const SparseMatrix&) const = default;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& a);

// boundary[k] is the matrix of d_k from k-cells to (k-1)-cells; boundary[0]
// has zero rows.
struct ChainComplex {
    std::vector<std::size_t> counts;
    std::vector<SparseMatrix> boundary;

    int dim() const { return static_cast<int>(counts.size()) - 1; }
    std::size_t total_cells() const;
};

ChainComplex chain_complex(const CubeComplex& complex);

struct SmithResult {
    std::size_t rank = 0;
    std::vector<Integer> factors;  // d_1 | d_2 | ... | d_rank, all positive
};

SmithResult smith_normal_form(const SparseMatrix& m);
SmithResult smith_normal_form_dense(std::vector<std::vector<Integer>> m);

// Rank over Q by fraction-free (Bareiss) elimination on a dense matrix.
std::size_t rank_bareiss(std::vector<std::vector<Integer>> m);
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);

// Smaller chain-homotopy-equivalent complex by eliminating unit incidences.
ChainComplex morse_reduce(const ChainComplex& cc);

struct HomologyResult {
    std::vector<std::size_t> betti;
    std::vector<std::vector<Integer>> torsion;  // invariant factors > 1 per degree
    std::vector<std::size_t> f_vector;
    long long euler = 0;
    std::vector<std::size_t> reduced_cells;   // cell counts of the complex actually factored

    bool operator==(const HomologyResult&) const = default;
};

HomologyResult homology(const ChainComplex& cc, bool reduce);
HomologyResult betti_numbers(const CubeComplex& complex, bool reduce);

// Betti numbers over Z/p, for cross-checking.
std::vector<std::size_t> betti_mod_p(const ChainComplex& cc, std::uint32_t p);

std::string homology_to_json(const HomologyResult& r);

}  // namespace sqconf
