#include "doctest.h"
#include "sqconf/discrete_config.hpp"
#include "sqconf/graph_models.hpp"
#include "sqconf/homology.hpp"
#include "sqconf/surface_models.hpp"

using namespace sqconf;

namespace {

std::vector<std::size_t> trim(std::vector<std::size_t> b) {
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return b;
}

SparseMatrix dense_to_sparse(const std::vector<std::vector<long>>& rows) {
    SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t c = 0; c < m.cols; ++c)
        for (std::size_t r = 0; r < m.rows; ++r)
            if (rows[r][c] != 0) m.columns[c].push_back({r, Integer(rows[r][c])});
    return m;
}

}  // namespace

TEST_SUITE("homology") {
    TEST_CASE("smith normal form of small matrices") {
        auto s = smith_normal_form(dense_to_sparse({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
        CHECK(s.rank == 3);
        CHECK(s.factors == std::vector<Integer>{2, 6, 12});
        auto d = smith_normal_form_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
        CHECK(d.factors == s.factors);
        auto z = smith_normal_form(SparseMatrix(3, 2));
        CHECK(z.rank == 0);
        CHECK(rank_bareiss({{1, 2}, {2, 4}}) == 1);
        CHECK(rank_mod_p(dense_to_sparse({{2, 0}, {0, 3}}), 2) == 1);
    }

    TEST_CASE("surfaces") {
        CHECK(trim(betti_numbers(build_closed(1, 2).complex, false).betti) == std::vector<std::size_t>{1, 2, 1});
        CHECK(trim(betti_numbers(build_closed(2, 2).complex, true).betti) == std::vector<std::size_t>{1, 4, 1});
        CHECK(trim(betti_numbers(build_bounded(1, 2).complex, true).betti) == std::vector<std::size_t>{1, 2});
        CHECK(trim(betti_numbers(build_disk(3).complex, true).betti) == std::vector<std::size_t>{1});
    }

    TEST_CASE("configuration spaces") {
        CHECK(trim(betti_numbers(build_ordered(graph_complex(cycle_graph(3)), 2).complex(), true).betti) ==
              std::vector<std::size_t>{1, 1});
        CHECK(trim(betti_numbers(build_ordered(graph_complex(star_graph(3)), 2).complex(), false).betti) ==
              std::vector<std::size_t>{1, 1});
        CHECK(trim(betti_numbers(build_ordered(build_disk(2).complex, 2).complex(), true).betti) ==
              std::vector<std::size_t>{1, 1});
    }

    TEST_CASE("reduction preserves homology and shrinks the complex") {
        auto df = build_ordered(build_disk(2).complex, 2);
        auto cc = chain_complex(df.complex());
        auto red = morse_reduce(cc);
        CHECK(red.total_cells() < cc.total_cells() / 2);
        for (int k = 2; k <= red.dim(); ++k) CHECK(is_zero(multiply(red.boundary[k - 1], red.boundary[k])));
        CHECK(homology(cc, false).betti == homology(cc, true).betti);
        CHECK(betti_mod_p(cc, 2) == homology(cc, false).betti);
    }

    TEST_CASE("torsion is reported") {
        // RP^2-like chain complex: Z --2--> Z
        ChainComplex cc;
        cc.counts = {1, 1};
        cc.boundary = {SparseMatrix(0, 1), SparseMatrix(1, 1)};
        cc.boundary[1].columns[0].push_back({0, Integer(2)});
        auto h = homology(cc, false);
        CHECK(h.betti == std::vector<std::size_t>{0, 0});
        CHECK(h.torsion[0] == std::vector<Integer>{2});
        CHECK(betti_mod_p(cc, 2) == std::vector<std::size_t>{1, 1});
    }

    TEST_CASE("json shape") {
        auto j = homology_to_json(betti_numbers(graph_complex(cycle_graph(3)), false));
        CHECK(j.find("\"betti\":[1,1]") != std::string::npos);
        CHECK(j.find("\"euler\":0") != std::string::npos);
    }
}
