#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sqconf/cube_complex.hpp"

namespace sqconf {

enum class Family { disk, closed, bounded, dual_bounded };

const char* to_string(Family f);
Family family_from_string(const std::string& s);

struct SurfaceDescriptor {
    Family family = Family::disk;
    int g = 0;
    int n = 1;
    std::optional<CellId> singular_vertex;
    std::vector<CellId> boundary_cells;  // sorted

    bool operator==(const SurfaceDescriptor&) const = default;
};

std::string descriptor_to_json(const SurfaceDescriptor& d);
SurfaceDescriptor descriptor_from_json(const std::string& text);

// The glued chart rectangle [0,W]x[0,H] in grid units. Points are handled in
// doubled integer coordinates so that cell centers of both the primary grid
// and the half-shifted grid are lattice points.
struct GlueGrid {
    bool glued = false;  // false: plain rectangle (disk)
    int g = 0;
    int n = 1;
    int W = 1;
    int H = 1;

    static GlueGrid disk(int n);
    static GlueGrid closed(int g, int n);

    int block() const { return n + 1; }  // width of one big square

    // Canonical representative of a doubled-coordinate point. Points may lie
    // up to one doubled unit outside the rectangle along one axis.
    std::array<int, 2> canonical(int X, int Y) const;
    bool is_p(int X, int Y) const;  // canonical point is the cone point
};

struct SurfaceModel {
    CubeComplex complex;
    SurfaceDescriptor descriptor;
    GlueGrid grid;
    bool shifted = false;                      // cells live on the half-shifted grid
    std::vector<std::array<int, 2>> centers;   // doubled canonical center per cell
    std::vector<CellId> parent_ids;            // dual_bounded: ids in build_closed(g,n)

    std::optional<CellId> cell_at(int X, int Y) const;  // canonicalizes first
    bool extended(CellId c, int axis) const;            // cell spans along axis
    std::vector<std::array<int, 2>> corner_offsets(CellId c) const;

    std::unordered_map<long long, CellId> index;
    long long key(int X, int Y) const { return static_cast<long long>(X) * 1000003LL + Y; }
};

SurfaceModel build_disk(int n);
SurfaceModel build_closed(int g, int n);
SurfaceModel build_bounded(int g, int n);
SurfaceModel build_dual_bounded(int g, int n);
SurfaceModel build_surface(Family family, int g, int n);

// Number of (2-cell, corner) incidences at the cone point.
int corners_at_p(const SurfaceModel& model);

}  // namespace sqconf
