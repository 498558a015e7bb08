// Taylor-Hood (P2 velocity / P1 pressure-temperature) element machinery:
// reference bases, triangle quadrature, dof bookkeeping, and assembly of all
// weak-form operators the flow and thermal solvers consume.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "hvac/mesh.hpp"
#include "hvac/sparse.hpp"

namespace hvac {

struct QuadratureRule {
  std::vector<std::array<double, 3>> points;  // barycentric coordinates
  std::vector<double> weights;                // sum to the reference area 1/2
};

// Rules exact for polynomials up to the requested degree, orders 1..4.
// All weights are positive.
const QuadratureRule& triangle_quadrature(int order);

// Shape-function values at a barycentric point: 3 entries for P1, 6 for P2
// (vertices first, then the midpoint of edge m joining vertices m, m+1 mod 3).
std::vector<double> shape_values(int order, const std::array<double, 3>& bary);

// Physical gradients of the shape functions on the triangle (a, b, c).
std::vector<std::array<double, 2>> shape_gradients(int order, const std::array<double, 3>& bary,
                                                   const Point& a, const Point& b, const Point& c);

// Velocity nodes are the vertices followed by the edge midpoints; dofs
// interleave the two components per node.
struct DofMap {
  int n_temperature = 0;
  int n_pressure = 0;
  int n_velocity_nodes = 0;  // N_w
  int n_velocity = 0;        // N_u = 2 N_w

  int velocity_node_of_vertex(int v) const { return v; }
  int velocity_node_of_edge(int e) const { return n_temperature + e; }
  int velocity_dof(int node, int comp) const { return 2 * node + comp; }

  // Sorted node / vertex sets per boundary segment tag, plus the union.
  std::array<std::vector<int>, 4> velocity_nodes_by_tag;
  std::array<std::vector<int>, 4> vertices_by_tag;
  std::vector<int> boundary_vertices;  // temperature Dirichlet set

  static DofMap build(const Mesh& m);
};

struct Coefficients {
  double kappa_air = 1e-2;
  double kappa_wall = 1e-4;
  double alpha_air = 0.0;
  double alpha_wall = 100.0;
  double re = 0.05;
  double rho = 1.2;

  double kappa(Region r) const { return r == Region::wall ? kappa_wall : kappa_air; }
  double alpha(Region r) const { return r == Region::wall ? alpha_wall : alpha_air; }
};

// Semi-discrete temperature operators: M eta' + K eta + C(u) eta = load,
// with K carrying the dissipative sign.
struct TemperatureOperators {
  CsrMatrix M;  // P1 mass
  CsrMatrix K;  // kappa-weighted stiffness, SPD-semidefinite
  CsrMatrix C;  // advection against the supplied flow
};

// Stationary-flow operators: A holds (1/Re) * vector stiffness plus
// alpha-weighted vector mass; B the divergence rows; G the pressure-gradient
// coupling in the non-integrated-by-parts form.
struct FlowOperators {
  CsrMatrix A;  // n_u x n_u
  CsrMatrix B;  // n_p x n_u
  CsrMatrix G;  // n_u x n_p
};

// eta_u may be empty, in which case C is assembled as the zero matrix.
TemperatureOperators assemble_temperature(const Mesh& m, const DofMap& dm, const Coefficients& c,
                                          const Vec& eta_u);
// Advection matrix alone, for a fixed flow.
CsrMatrix assemble_advection(const Mesh& m, const DofMap& dm, const Vec& eta_u);

FlowOperators assemble_flow(const Mesh& m, const DofMap& dm, const Coefficients& c);

// Nonlinear convection vector N(u)_j = <(u . grad) u, phi_j> and its exact
// Jacobian J(u) w = <(w . grad) u + (u . grad) w, phi>.
Vec convection(const Mesh& m, const DofMap& dm, const Vec& eta_u);
CsrMatrix convection_jacobian(const Mesh& m, const DofMap& dm, const Vec& eta_u);

// Unit-source load over a heater patch: L_k = <1_heater, xi_k>; entries sum
// to the heater area. Throws when the region has no elements.
Vec heater_load(const Mesh& m, const DofMap& dm, Region which);

// Zone tracking functionals over a set of elements.
struct ZoneFunctionals {
  CsrMatrix mass;  // P1 mass restricted to the zone
  Vec load;        // <1_zone, xi_k>
  double area = 0.0;
};
ZoneFunctionals zone_functionals(const Mesh& m, const DofMap& dm,
                                 const std::vector<int>& zone_elements);

// Quadrature-evaluated loads for arbitrary forcing (manufactured solutions).
Vec scalar_load(const Mesh& m, const DofMap& dm, const std::function<double(Point)>& f,
                int quad_order = 4);
Vec vector_load(const Mesh& m, const DofMap& dm,
                const std::function<std::array<double, 2>(Point)>& f, int quad_order = 4);

// Field evaluation helpers.
std::array<double, 2> velocity_value(const Mesh& m, const DofMap& dm, const Vec& eta_u, int tri,
                                     const std::array<double, 3>& bary);
double scalar_value(const Mesh& m, const Vec& eta, int tri, const std::array<double, 3>& bary);

// L2 errors against exact fields, by element quadrature.
double velocity_l2_error(const Mesh& m, const DofMap& dm, const Vec& eta_u,
                         const std::function<std::array<double, 2>(Point)>& exact);
double scalar_l2_error(const Mesh& m, const Vec& eta, const std::function<double(Point)>& exact);

// Boundary line integrals over tagged segments (3-point Gauss per edge).
// Flux is measured along the inward normal.
double boundary_flux(const Mesh& m, const DofMap& dm, const Vec& eta_u, BoundaryTag tag);
// integral of |u| p over the tagged segments; p given at vertices.
double boundary_speed_pressure_integral(const Mesh& m, const DofMap& dm, const Vec& eta_u,
                                        const Vec& p_vertices, BoundaryTag tag);

std::array<double, 2> inward_normal(Side side);

}  // namespace hvac
