// Structured crossed-triangle meshing of a rectangular floor plan with
// material-region tags (air / wall / heater patches / target zone) and
// boundary-segment tags (two outlets, one inlet, exterior wall). Grid lines
// snap to every geometric feature so vents, heaters and zones are resolved
// exactly regardless of the target element size.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvac {

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Point& p, double tol = 1e-12) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  // open-interior overlap; touching edges do not count
  bool overlaps(const Rect& o, double tol = 1e-12) const {
    return x0 < o.x1 - tol && o.x0 < x1 - tol && y0 < o.y1 - tol && o.y0 < y1 - tol;
  }
};

// Which side of the outer rectangle a boundary interval sits on.
enum class Side : int { bottom = 0, right = 1, top = 2, left = 3 };

// Interval [lo, hi] along one side of the outer boundary (x-range for
// bottom/top, y-range for left/right).
struct BoundarySegment {
  Side side = Side::bottom;
  double lo = 0.0;
  double hi = 0.0;
};

enum class Region : int { air = 0, wall = 1, heater1 = 2, heater2 = 3 };
enum class BoundaryTag : int { outlet1 = 0, outlet2 = 1, inlet = 2, wall = 3 };

struct FloorPlan {
  double width = 0.0;
  double height = 0.0;
  std::vector<Rect> walls;     // solid bands, meshed and penalized
  std::vector<Rect> openings;  // door cuts subtracted from the walls
  BoundarySegment outlet1;     // forced-air vents (velocity Dirichlet)
  BoundarySegment outlet2;
  BoundarySegment inlet;       // free return (pressure Dirichlet)
  bool has_vents = true;       // test geometries may have an all-wall boundary
  Rect heater1;
  Rect heater2;
  Rect zone;                   // target zone; ignored when zone_whole
  bool zone_whole = false;

  bool in_wall(const Point& p) const;
  void validate() const;  // throws MeshError on an inconsistent plan
};

// The two-room apartment layout used by every canonical experiment:
// 5 x 10 m, 0.5 m vents, 1 x 1 m heaters, 0.2 m interior wall with a 1 m
// door, and a 3 x 6 grid of 2 x 2 m target zones (clipped where a zone
// would straddle the interior wall or run past the outer boundary).
FloorPlan canonical_apartment();                 // whole-apartment target
FloorPlan canonical_apartment(int zone_index);   // zones 0..17
int canonical_zone_count();
Rect canonical_zone_rect(int zone_index);

// A bare square room with an all-wall boundary; used by verification tests.
FloorPlan unit_square_plan(double side = 1.0);

struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;   // CCW vertex indices
  std::vector<std::array<int, 2>> edges;       // sorted vertex pairs
  std::vector<Point> edge_midpoints;           // parallel to edges
  std::vector<std::array<int, 3>> tri_edges;   // local edge m joins v[m], v[(m+1)%3]
  std::vector<Region> element_region;
  std::vector<int> zone_elements;              // sorted triangle ids

  struct BoundaryEdge {
    int v0, v1;
    int edge_id;
    Side side;
    BoundaryTag tag;
  };
  std::vector<BoundaryEdge> boundary_edges;

  double width = 0.0;
  double height = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  double triangle_area(int t) const;
  Point centroid(int t) const;
  // Triangle containing p together with its barycentric coordinates;
  // throws MeshError when p is outside the mesh.
  int locate(const Point& p, std::array<double, 3>& bary) const;
};

Mesh generate_mesh(const FloorPlan& fp, double target_h);

struct NodeCounts {
  int n_temperature;  // P1 scalar dofs
  int n_pressure;     // P1 scalar dofs
  int n_velocity;     // vector P2 dofs = 2 * (vertices + edges)
};
NodeCounts node_counts(const Mesh& m);

}  // namespace hvac
