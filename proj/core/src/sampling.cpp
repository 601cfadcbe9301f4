#include "sqconf/sampling.hpp"

namespace sqconf {

GeometrySampler::GeometrySampler(std::uint64_t seed) : rng_(seed) {
    catalogue_ = {Surface::disk(2),      Surface::disk(3),      Surface::disk(4),
                  Surface::closed(1, 2), Surface::closed(1, 3), Surface::closed(2, 2),
                  Surface::closed(2, 3), Surface::bounded(1, 2), Surface::bounded(1, 3),
                  Surface::bounded(2, 3)};
    neighbours_.resize(catalogue_.size());
}

int GeometrySampler::uniform(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

bool GeometrySampler::coin(int num, int den) { return uniform(0, den - 1) < num; }

const Surface& GeometrySampler::surface() {
    return catalogue_[uniform(0, static_cast<int>(catalogue_.size()) - 1)];
}

const std::vector<std::vector<CellId>>& GeometrySampler::neighbours(const Surface& s) {
    std::size_t idx = 0;
    while (idx < catalogue_.size() && &catalogue_[idx] != &s) ++idx;
    static thread_local std::vector<std::vector<CellId>> scratch;
    auto& table = idx < catalogue_.size() ? neighbours_[idx] : scratch;
    const CubeComplex& K = s.complex();
    if (table.size() != K.size()) {
        table.assign(K.size(), {});
        for (CellId a = 0; a < K.size(); ++a)
            for (CellId b = a + 1; b < K.size(); ++b)
                if (!K.closures_disjoint(a, b)) {
                    table[a].push_back(b);
                    table[b].push_back(a);
                }
    }
    return table;
}

std::vector<CellId> GeometrySampler::clustered_cell(const Surface& s, int m) {
    const auto& nb = neighbours(s);
    std::vector<CellId> out;
    // Bias toward higher-dimensional cells: they carry the interesting
    // conditions, vertices mostly give trivial pairs.
    auto pick_any = [&]() -> CellId {
        int dim = coin(1, 8) ? 0 : coin(1, 3) ? 1 : 2;
        const CubeComplex& K = s.complex();
        auto lo = K.dim_begin(dim), hi = K.dim_end(dim);
        return lo + static_cast<CellId>(uniform(0, static_cast<int>(hi - lo) - 1));
    };
    out.push_back(pick_any());
    while (static_cast<int>(out.size()) < m) {
        CellId anchor = out[uniform(0, static_cast<int>(out.size()) - 1)];
        if (coin(3, 4) && !nb[anchor].empty()) {
            const auto& list = nb[anchor];
            CellId c = list[uniform(0, static_cast<int>(list.size()) - 1)];
            if (s.complex().cell(c).dim == 0 && coin(3, 4)) continue;
            out.push_back(c);
        } else {
            out.push_back(pick_any());
        }
    }
    return out;
}

Configuration GeometrySampler::point_in_cell(const Surface& s, const std::vector<CellId>& factors, int den) {
    Configuration z;
    const int half = (den - 1) / 2;
    for (CellId c : factors) {
        auto C = s.center(c);
        Rational x = ratio(C[0], 2), y = ratio(C[1], 2);
        if (s.cells().extended(c, 0)) x += ratio(uniform(-half, half), den);
        if (s.cells().extended(c, 1)) y += ratio(uniform(-half, half), den);
        z.push_back(s.canonical({x, y}));
    }
    return z;
}

Configuration GeometrySampler::free_points(const Surface& s, int m, int den) {
    Configuration z;
    while (static_cast<int>(z.size()) < m) {
        Point p{ratio(uniform(0, s.width() * den), den), ratio(uniform(0, s.height() * den), den)};
        try {
            z.push_back(s.canonical(p));
        } catch (const GeometryError&) {
            // inside a removed square of the bounded family
        }
    }
    return z;
}

TangentVector GeometrySampler::tangent(const Surface& s, const Configuration& z, int range) {
    TangentVector v;
    for (const auto& p : z) {
        if (s.is_p(p)) {
            v.push_back({Rational(0), Rational(0)});
            continue;
        }
        v.push_back({Rational(uniform(-range, range)), Rational(uniform(-range, range))});
    }
    return v;
}

}  // namespace sqconf
