#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sqconf/errors.hpp"
#include "sqconf/rational.hpp"
#include "sqconf/surface_models.hpp"

namespace sqconf {

// A point in chart coordinates (grid edge = 1).
struct Point {
    Rational x, y;
    bool operator==(const Point&) const = default;
};

using Configuration = std::vector<Point>;
using Vec2 = std::array<Rational, 2>;
using TangentVector = std::vector<Vec2>;

// A point of the slit-square cover: sector s covers the quadrant s % 4 of
// copy s / 4. Points on a ray between sectors belong to the later sector.
struct LiftedPoint {
    int sector = 0;
    Rational x, y;

    int sheet() const { return sector / 4; }
    bool is_origin() const { return x == 0 && y == 0; }
    bool operator==(const LiftedPoint&) const = default;
};

// Metric surface K_{0,1}(n), K_{g,0}(n) or K_{g,1}(n) together with the cube
// complex whose products carry the discrete model: the grid itself for the
// disk and closed families, the dual complex K* for the bounded family.
class Surface {
public:
    static Surface disk(int n);
    static Surface closed(int g, int n);
    static Surface bounded(int g, int n);
    static Surface make(Family family, int g, int n);  // dual_bounded maps to bounded

    Family family() const { return family_; }
    int g() const { return g_; }
    int n() const { return n_; }
    bool glued() const { return family_ != Family::disk; }
    bool has_boundary() const { return family_ != Family::closed; }

    const SurfaceModel& cells() const { return model_; }
    const CubeComplex& complex() const { return model_.complex; }

    // Chart geometry.
    int width() const { return grid_.W; }
    int height() const { return grid_.H; }
    int block() const { return grid_.block(); }
    int sectors() const { return static_cast<int>(corner_of_.size()); }
    int sector_of(int square, int corner) const { return sector_of_[square][corner]; }
    std::array<int, 2> corner_of(int sector) const { return corner_of_[sector]; }
    Point corner_position(int square, int corner) const;

    // Canonical chart representative; throws GeometryError(outside_domain).
    Point canonical(const Point& z) const;
    bool is_p(const Point& z) const;
    // All chart representatives of a canonical point (several on seams).
    std::vector<Point> representatives(const Point& z) const;

    // Lifts to the slit-square cover (p lifts to the origin only). For the
    // disk a single lift equal to the point itself.
    std::vector<LiftedPoint> lifts(const Point& z) const;
    Point project(const LiftedPoint& l) const;

    // z + v along a short straight move; the p-component must be zero.
    Point translate(const Point& z, const Vec2& v) const;

    // Open cell of complex() containing z.
    CellId carrier(const Point& z) const;

    // Cell helpers (doubled canonical centers).
    std::array<int, 2> center(CellId c) const { return model_.centers.at(c); }
    bool is_p_cell(CellId c) const;
    // Closed box of the cell in the chart: [lo, hi] per axis.
    std::array<Rational, 2> cell_lo(CellId c) const;
    std::array<Rational, 2> cell_hi(CellId c) const;

private:
    Family family_ = Family::disk;
    int g_ = 0, n_ = 1;
    GlueGrid grid_;
    SurfaceModel model_;
    std::optional<CellId> p_vertex_;
    std::vector<std::array<int, 4>> sector_of_;
    std::vector<std::array<int, 2>> corner_of_;

    void init_sectors();
};

// ---------------------------------------------------------------- metric

enum class Route { flat, through_p, origin, rim };
const char* to_string(Route r);

// Derivative coefficient of one coordinate: the certificate's horizontal or
// vertical length changes by coef * v (abs: by |v|).
enum class Coef { zero, plus, minus, abs };

struct DistanceCertificate {
    Rational h, v;                 // horizontal and vertical path lengths
    Route route = Route::flat;
    // h depends on the x coordinates of the endpoints, v on the y coordinates.
    Coef ax = Coef::zero, bx = Coef::zero;
    Coef ay = Coef::zero, by = Coef::zero;
    LiftedPoint la, lb;

    Rational length() const { return h > v ? h : v; }
};

struct DistanceResult {
    Rational value;
    std::vector<DistanceCertificate> realizations;  // certificates attaining value
};

// Exact Chebyshev distance; throws GeometryError(distance_out_of_range) when
// it exceeds n.
DistanceResult distance_detail(const Surface& s, const Point& a, const Point& b);
Rational chebyshev_distance(const Surface& s, const Point& a, const Point& b);

// Distance between two lifted points inside the cover.
DistanceResult lifted_distance(const Surface& s, const LiftedPoint& a, const LiftedPoint& b);

struct BoundaryContact {
    Point w;               // external vertex (chart)
    Vec2 offset;           // z - w in the cover frame
    bool corner = false;   // single-point tangency at a rim corner (max rule)
    // realize_x and realize_y without corner: tangency along two adjacent
    // disk sides, both coordinates must grow (min rule).
    Coef cx = Coef::zero, cy = Coef::zero;
    bool realize_x = false, realize_y = false;
};

struct BoundaryResult {
    Rational value;
    std::vector<BoundaryContact> contacts;  // tangencies realizing value
};

BoundaryResult boundary_detail(const Surface& s, const Point& z);
Rational boundary_distance(const Surface& s, const Point& z);

Rational tautological_theta(const Surface& s, const Configuration& z);
// Half the smallest pairwise distance (no boundary term).
Rational pairwise_theta(const Surface& s, const Configuration& z);
// The quantity whose value >= 1/2 decides membership in the space of unit
// squares: tautological_theta, or pairwise_theta on the disk.
Rational sf_theta(const Surface& s, const Configuration& z);

enum class EdgeTag { horizontal, vertical, both, through_p };
const char* to_string(EdgeTag t);

struct InternalEdge {
    int i = 0, j = 0;
    EdgeTag tag = EdgeTag::horizontal;
    std::vector<DistanceCertificate> realizations;
};

struct ExternalEdge {
    int i = 0;
    BoundaryContact contact;
};

struct ContactGraph {
    Rational theta;
    int internal_vertices = 0;
    std::vector<InternalEdge> internal_edges;
    std::vector<ExternalEdge> external_edges;
};

ContactGraph contact_graph(const Surface& s, const Configuration& z);

struct ConeResult {
    bool contains = false;
    std::vector<Rational> internal_margins;
    std::vector<Rational> external_margins;
    std::optional<Rational> min_margin;  // empty when the contact graph has no edges
};

ConeResult cone_margins(const Surface& s, const Configuration& z, const TangentVector& v);
bool cone_contains(const Surface& s, const Configuration& z, const TangentVector& v);

Configuration perturb(const Surface& s, const Configuration& z, const TangentVector& v, const Rational& eps);

// A section over the given points preserving pairwise distances (<= n).
std::vector<LiftedPoint> lift_region(const Surface& s, const std::vector<Point>& points);

// ------------------------------------------------------------------ cells

enum class PairForm { disjoint, form1, form2, form3, form4, form5, form6, form7, form8 };
const char* to_string(PairForm f);

struct PairClassification {
    PairForm form = PairForm::disjoint;
    bool first_row = false;    // admits disjoint unit squares
    bool through_p = false;    // p lies in both closures
    bool beyond_pi = false;    // cone angle between the cells exceeds pi
};

PairClassification cell_pair_form(const Surface& s, CellId a, CellId b);

// Placement of each factor in the cover: doubled center H and, for cells at
// p, the angular position of the center in units of pi/4.
struct CellPlacement {
    std::vector<std::array<int, 2>> hat;  // doubled
    std::vector<int> position;            // -1 for cells away from p
    std::vector<int> component;
};

CellPlacement place_cell(const Surface& s, const std::vector<CellId>& factors);

enum class ConditionKind { flat_axis, through_axis };

// sign * (u_l - u_k) >= 0 for flat_axis, sign * (u_k + u_l) >= 0 for
// through_axis, u being local offsets from the cell barycenters.
struct MembershipCondition {
    ConditionKind kind = ConditionKind::flat_axis;
    int k = 0, l = 0, axis = 0, sign = 1;
};

struct PairConditions {
    int k = 0, l = 0;
    std::vector<MembershipCondition> any_of;  // empty: no configuration possible
};

struct MembershipSystem {
    CellPlacement placement;
    std::vector<PairConditions> pairs;  // pairs with intersecting closures
    bool fully_contained() const { return pairs.empty(); }
    bool trivial() const;               // some pair admits nothing
};

MembershipSystem membership_system(const Surface& s, const std::vector<CellId>& factors);

// Offsets of z from the barycenters, each z_i taken inside closure(factor i).
std::vector<Vec2> local_offsets(const Surface& s, const std::vector<CellId>& factors, const Configuration& z);

bool evaluate_membership(const MembershipSystem& sys, const std::vector<Vec2>& u);
bool partial_cell_membership(const Surface& s, const std::vector<CellId>& factors, const Configuration& z);

Configuration barycenter_configuration(const Surface& s, const std::vector<CellId>& factors);

struct BadPoint {
    Configuration minus_b, plus_b;
    std::vector<Vec2> b_hat;
    Rational lambda;
};

BadPoint max_bad_point(const Surface& s, const std::vector<CellId>& factors);

struct RetractResult {
    Configuration z;          // exit point on the boundary of the cell
    Rational t;               // ray parameter at the exit
    int facet = -1;           // 2 * coordinate index + side, -1 if t = 0 without exit
    std::vector<CellId> carrier;
    // Ray data: the point at parameter t' is base + u + t' * w.
    std::vector<Vec2> base, u, w;

    Configuration at(const Surface& s, const Rational& t_prime) const;
};

RetractResult retract_step(const Surface& s, const std::vector<CellId>& factors, const Configuration& z);

struct DiscretizeResult {
    std::vector<CellId> cell;                    // factors of the landing DF cell
    Configuration z;                             // final configuration
    std::vector<std::vector<CellId>> schedule;   // carriers visited
};

DiscretizeResult discretize_configuration(const Surface& s, int m, const Configuration& z);

// Product cell whose open interior contains z.
std::vector<CellId> carrier_cell(const Surface& s, const Configuration& z);

// Parses "x,y;x,y" with rational or decimal literals.
Configuration parse_points(const std::string& text);
TangentVector parse_vectors(const std::string& text);
std::string format_point(const Point& p);

}  // namespace sqconf
