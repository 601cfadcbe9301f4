#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sqconf/geometry.hpp"

namespace sqconf {

// Seeded generator of test inputs for the geometry predicates. Draws are
// made with plain modular reduction so streams are identical across
// standard libraries.
class GeometrySampler {
public:
    explicit GeometrySampler(std::uint64_t seed);

    int uniform(int lo, int hi);  // inclusive
    bool coin(int num, int den);  // true with probability num/den

    // One of a fixed catalogue of small surfaces (disk, closed, bounded).
    const Surface& surface();
    const std::vector<Surface>& catalogue() const { return catalogue_; }

    // m factors, most of them chained through intersecting closures so that
    // the membership conditions have something to say.
    std::vector<CellId> clustered_cell(const Surface& s, int m);

    // A point of the open cell, offsets drawn from multiples of 1/den.
    Configuration point_in_cell(const Surface& s, const std::vector<CellId>& factors, int den = 20);

    // m points anywhere on the surface, coordinates multiples of 1/den.
    Configuration free_points(const Surface& s, int m, int den = 20);

    // Integer tangent vector with entries in [-range, range]; zero at p.
    TangentVector tangent(const Surface& s, const Configuration& z, int range = 3);

private:
    std::mt19937_64 rng_;
    std::vector<Surface> catalogue_;
    std::vector<std::vector<std::vector<CellId>>> neighbours_;  // per surface, per cell
    const std::vector<std::vector<CellId>>& neighbours(const Surface& s);
};

}  // namespace sqconf
