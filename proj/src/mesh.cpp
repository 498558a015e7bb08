#include "hvac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hvac {

namespace {
constexpr double kSnapTol = 1e-9;
}

bool FloorPlan::in_wall(const Point& p) const {
  for (const Rect& o : openings) {
    if (o.contains(p, -kSnapTol)) return false;  // strictly inside an opening
  }
  for (const Rect& w : walls) {
    if (w.contains(p, -kSnapTol)) return true;  // strictly inside a wall band
  }
  return false;
}

void FloorPlan::validate() const {
  if (width <= 0 || height <= 0) throw MeshError("floor plan: nonpositive dimensions");
  const Rect domain{0, 0, width, height};
  auto check_inside = [&](const Rect& r, const char* name) {
    if (r.x0 < -kSnapTol || r.y0 < -kSnapTol || r.x1 > width + kSnapTol ||
        r.y1 > height + kSnapTol || r.width() <= 0 || r.height() <= 0) {
      throw MeshError(std::string("floor plan: ") + name + " outside the domain or degenerate");
    }
  };
  for (const Rect& w : walls) check_inside(w, "wall");
  for (const Rect& o : openings) check_inside(o, "opening");
  // heaters with nonpositive extent are treated as absent
  if (heater1.width() > 0 || heater1.height() > 0) check_inside(heater1, "heater1");
  if (heater2.width() > 0 || heater2.height() > 0) check_inside(heater2, "heater2");
  if (!zone_whole) {
    check_inside(zone, "zone");
    for (const Rect& w : walls) {
      // zone may touch a wall but must not overlap its interior minus openings
      if (zone.overlaps(w)) {
        Rect cut{std::max(zone.x0, w.x0), std::max(zone.y0, w.y0),
                 std::min(zone.x1, w.x1), std::min(zone.y1, w.y1)};
        bool covered = false;
        for (const Rect& o : openings) {
          if (o.x0 <= cut.x0 + kSnapTol && o.x1 >= cut.x1 - kSnapTol &&
              o.y0 <= cut.y0 + kSnapTol && o.y1 >= cut.y1 - kSnapTol) {
            covered = true;
            break;
          }
        }
        if (!covered) throw MeshError("floor plan: zone overlaps a wall");
      }
    }
  }
  if (has_vents) {
    auto seg_len = [](const BoundarySegment& s) { return s.hi - s.lo; };
    if (seg_len(outlet1) <= 0 || seg_len(outlet2) <= 0 || seg_len(inlet) <= 0) {
      throw MeshError("floor plan: vent interval with nonpositive width");
    }
    const BoundarySegment* segs[3] = {&outlet1, &outlet2, &inlet};
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (segs[i]->side == segs[j]->side && segs[i]->lo < segs[j]->hi - kSnapTol &&
            segs[j]->lo < segs[i]->hi - kSnapTol) {
          throw MeshError("floor plan: vent intervals overlap");
        }
      }
    }
  }
}

int canonical_zone_count() { return 18; }

Rect canonical_zone_rect(int zone_index) {
  if (zone_index < 0 || zone_index >= canonical_zone_count()) {
    throw MeshError("zone index must be in 0..17, got " + std::to_string(zone_index));
  }
  static const double xs[3] = {0.25, 1.5, 2.75};
  static const double ys[6] = {0.25, 1.85, 3.45, 5.55, 7.15, 8.75};
  const int col = zone_index % 3;
  const int row = zone_index / 3;
  Rect r{xs[col], ys[row], xs[col] + 2.0, ys[row] + 2.0};

  // Clip to the apartment and away from the interior wall band [4.9, 5.1]:
  // a zone straddling the band keeps its larger side.
  r.y1 = std::min(r.y1, 10.0);
  const double wall_lo = 4.9, wall_hi = 5.1;
  if (r.y0 < wall_hi - kSnapTol && r.y1 > wall_lo + kSnapTol) {
    const double below = wall_lo - r.y0;
    const double above = r.y1 - wall_hi;
    if (below >= above) {
      r.y1 = wall_lo;
    } else {
      r.y0 = wall_hi;
    }
  }
  return r;
}

FloorPlan canonical_apartment() {
  FloorPlan fp;
  fp.width = 5.0;
  fp.height = 10.0;
  fp.walls = {{0.0, 4.9, 5.0, 5.1}};
  fp.openings = {{2.0, 4.9, 3.0, 5.1}};  // 1 m door centered at x = 2.5
  fp.outlet1 = {Side::bottom, 1.0, 1.5};
  fp.outlet2 = {Side::top, 3.5, 4.0};
  fp.inlet = {Side::left, 2.0, 2.5};
  fp.heater1 = {0.5, 1.0, 1.5, 2.0};
  fp.heater2 = {3.5, 8.0, 4.5, 9.0};
  fp.zone_whole = true;
  fp.validate();
  return fp;
}

FloorPlan canonical_apartment(int zone_index) {
  FloorPlan fp = canonical_apartment();
  fp.zone = canonical_zone_rect(zone_index);
  fp.zone_whole = false;
  fp.validate();
  return fp;
}

FloorPlan unit_square_plan(double side) {
  FloorPlan fp;
  fp.width = side;
  fp.height = side;
  fp.has_vents = false;         // whole boundary is tagged wall
  fp.heater1 = {0, 0, -1, -1};  // absent
  fp.heater2 = {0, 0, -1, -1};
  fp.zone_whole = true;
  return fp;
}

double Mesh::triangle_area(int t) const {
  const Point& a = vertices[triangles[t][0]];
  const Point& b = vertices[triangles[t][1]];
  const Point& c = vertices[triangles[t][2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point Mesh::centroid(int t) const {
  const Point& a = vertices[triangles[t][0]];
  const Point& b = vertices[triangles[t][1]];
  const Point& c = vertices[triangles[t][2]];
  return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

int Mesh::locate(const Point& p, std::array<double, 3>& bary) const {
  for (int t = 0; t < num_triangles(); ++t) {
    const Point& a = vertices[triangles[t][0]];
    const Point& b = vertices[triangles[t][1]];
    const Point& c = vertices[triangles[t][2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
    const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
    const double l0 = 1.0 - l1 - l2;
    const double tol = -1e-10;
    if (l0 >= tol && l1 >= tol && l2 >= tol) {
      bary = {l0, l1, l2};
      return t;
    }
  }
  throw MeshError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                  ") is outside the mesh");
}

namespace {

void add_coord(std::vector<double>& v, double c, double lo, double hi) {
  if (c > lo + kSnapTol && c < hi - kSnapTol) v.push_back(c);
}

std::vector<double> dedupe_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double c : v) {
    if (out.empty() || c - out.back() > kSnapTol) out.push_back(c);
  }
  return out;
}

// Breakpoints covering [features] with segments of roughly target_h.
std::vector<double> subdivide(const std::vector<double>& features, double h) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < features.size(); ++i) {
    const double a = features[i], b = features[i + 1];
    const int n = std::max(1, static_cast<int>(std::llround((b - a) / h)));
    for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / n);
  }
  out.push_back(features.back());
  return out;
}

// Smallest extent the grid has to resolve with whole cells. Thin wall bands
// and boundary vent intervals snap exactly and do not constrain the element
// size, so they are excluded here.
double smallest_feature(const FloorPlan& fp) {
  double s = std::min(fp.width, fp.height);
  auto rect_sides = [&s](const Rect& r) {
    if (r.width() > 0 && r.height() > 0) s = std::min({s, r.width(), r.height()});
  };
  rect_sides(fp.heater1);
  rect_sides(fp.heater2);
  if (!fp.zone_whole) rect_sides(fp.zone);
  for (const Rect& o : fp.openings) s = std::min(s, std::max(o.width(), o.height()));
  return s;
}

}  // namespace

Mesh generate_mesh(const FloorPlan& fp, double target_h) {
  if (target_h <= 0) throw MeshError("generate_mesh: target_h must be positive");
  fp.validate();
  const double feat = smallest_feature(fp);
  if (target_h > feat + kSnapTol) {
    throw MeshError("generate_mesh: target_h = " + std::to_string(target_h) +
                    " exceeds the smallest geometric feature (" + std::to_string(feat) +
                    " m); refine the target element size");
  }

  // Grid lines: every feature coordinate, then filled to ~target_h.
  std::vector<double> xf{0.0, fp.width};
  std::vector<double> yf{0.0, fp.height};
  auto add_rect = [&](const Rect& r) {
    if (r.width() <= 0 || r.height() <= 0) return;
    add_coord(xf, r.x0, 0, fp.width);
    add_coord(xf, r.x1, 0, fp.width);
    add_coord(yf, r.y0, 0, fp.height);
    add_coord(yf, r.y1, 0, fp.height);
  };
  for (const Rect& w : fp.walls) add_rect(w);
  for (const Rect& o : fp.openings) add_rect(o);
  add_rect(fp.heater1);
  add_rect(fp.heater2);
  if (!fp.zone_whole) add_rect(fp.zone);
  if (fp.has_vents) {
    for (const BoundarySegment* s : {&fp.outlet1, &fp.outlet2, &fp.inlet}) {
      const bool horizontal = s->side == Side::bottom || s->side == Side::top;
      auto& coords = horizontal ? xf : yf;
      const double span = horizontal ? fp.width : fp.height;
      add_coord(coords, s->lo, 0, span);
      add_coord(coords, s->hi, 0, span);
    }
  }
  const std::vector<double> xs = subdivide(dedupe_sorted(xf), target_h);
  const std::vector<double> ys = subdivide(dedupe_sorted(yf), target_h);
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;

  Mesh m;
  m.width = fp.width;
  m.height = fp.height;

  // Grid vertices first, then one center vertex per cell (crossed pattern).
  m.vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1) + nx * ny));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.vertices.push_back({xs[i], ys[j]});
  auto grid_vertex = [nx](int i, int j) { return j * (nx + 1) + i; };
  const int center_base = (nx + 1) * (ny + 1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.vertices.push_back({0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])});

  m.triangles.reserve(static_cast<std::size_t>(4 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int bl = grid_vertex(i, j), br = grid_vertex(i + 1, j);
      const int tr = grid_vertex(i + 1, j + 1), tl = grid_vertex(i, j + 1);
      const int c = center_base + j * nx + i;
      m.triangles.push_back({bl, br, c});
      m.triangles.push_back({br, tr, c});
      m.triangles.push_back({tr, tl, c});
      m.triangles.push_back({tl, bl, c});
    }
  }

  // Edge enumeration in triangle scan order.
  std::map<std::pair<int, int>, int> edge_ids;
  m.tri_edges.resize(m.triangles.size());
  std::vector<int> edge_use;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = m.triangles[t][e];
      int b = m.triangles[t][(e + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_ids.try_emplace({a, b}, static_cast<int>(m.edges.size()));
      if (inserted) {
        m.edges.push_back({a, b});
        edge_use.push_back(0);
      }
      m.tri_edges[t][e] = it->second;
      ++edge_use[it->second];
    }
  }
  m.edge_midpoints.reserve(m.edges.size());
  for (const auto& e : m.edges) {
    m.edge_midpoints.push_back({0.5 * (m.vertices[e[0]].x + m.vertices[e[1]].x),
                                0.5 * (m.vertices[e[0]].y + m.vertices[e[1]].y)});
  }

  // Material regions by centroid containment; walls take precedence.
  m.element_region.resize(m.triangles.size(), Region::air);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Point c = m.centroid(t);
    if (fp.in_wall(c)) {
      m.element_region[t] = Region::wall;
    } else if (fp.heater1.width() > 0 && fp.heater1.contains(c)) {
      m.element_region[t] = Region::heater1;
    } else if (fp.heater2.width() > 0 && fp.heater2.contains(c)) {
      m.element_region[t] = Region::heater2;
    }
  }
  for (int t = 0; t < m.num_triangles(); ++t) {
    if (fp.zone_whole || fp.zone.contains(m.centroid(t))) m.zone_elements.push_back(t);
  }

  // Boundary edges: used by exactly one triangle; tagged by midpoint.
  for (int e = 0; e < m.num_edges(); ++e) {
    if (edge_use[e] != 1) continue;
    const Point& mid = m.edge_midpoints[e];
    Side side;
    if (std::abs(mid.y) < kSnapTol) {
      side = Side::bottom;
    } else if (std::abs(mid.x - fp.width) < kSnapTol) {
      side = Side::right;
    } else if (std::abs(mid.y - fp.height) < kSnapTol) {
      side = Side::top;
    } else if (std::abs(mid.x) < kSnapTol) {
      side = Side::left;
    } else {
      throw MeshError("internal: boundary edge not on the outer rectangle");
    }
    BoundaryTag tag = BoundaryTag::wall;
    if (fp.has_vents) {
      const double along = (side == Side::bottom || side == Side::top) ? mid.x : mid.y;
      auto on_segment = [&](const BoundarySegment& s) {
        return s.side == side && along > s.lo - kSnapTol && along < s.hi + kSnapTol;
      };
      if (on_segment(fp.outlet1)) {
        tag = BoundaryTag::outlet1;
      } else if (on_segment(fp.outlet2)) {
        tag = BoundaryTag::outlet2;
      } else if (on_segment(fp.inlet)) {
        tag = BoundaryTag::inlet;
      }
    }
    m.boundary_edges.push_back({m.edges[e][0], m.edges[e][1], e, side, tag});
  }
  return m;
}

NodeCounts node_counts(const Mesh& m) {
  NodeCounts c;
  c.n_temperature = m.num_vertices();
  c.n_pressure = m.num_vertices();
  c.n_velocity = 2 * (m.num_vertices() + m.num_edges());
  return c;
}

}  // namespace hvac
