#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace compacton {

/// Lagrange basis on the P+1 Gauss–Legendre nodes of [-1, 1] together with a
/// Q-point Gauss–Legendre rule used for nonlinear integrands.
class ReferenceElement {
 public:
  ReferenceElement(int poly_order, int quad_order);

  int poly_order() const { return order_; }
  int num_nodes() const { return order_ + 1; }
  int num_quad() const { return static_cast<int>(quad_points_.size()); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& node_weights() const { return node_weights_; }
  const std::vector<double>& quad_points() const { return quad_points_; }
  const std::vector<double>& quad_weights() const { return quad_weights_; }

  /// interp()[q * N + j] = phi_j(s_q)
  const std::vector<double>& interp() const { return interp_; }
  /// interp_deriv()[q * N + j] = phi_j'(s_q)
  const std::vector<double>& interp_deriv() const { return interp_deriv_; }
  /// diff()[i * N + j] = phi_j'(r_i)
  const std::vector<double>& diff() const { return diff_; }
  const std::vector<double>& left() const { return left_; }
  const std::vector<double>& right() const { return right_; }

  double basis(int j, double xi) const;
  double basis_deriv(int j, double xi) const;

 private:
  int order_;
  std::vector<double> nodes_, node_weights_;
  std::vector<double> quad_points_, quad_weights_;
  std::vector<double> interp_, interp_deriv_, diff_;
  std::vector<double> left_, right_;
};

/// Uniform periodic partition of [x_left, x_right) into K cells.
class PeriodicGrid {
 public:
  PeriodicGrid(double x_left, double x_right, int num_cells, int poly_order = 3,
               int quad_order = 5);

  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  double length() const { return x_right_ - x_left_; }
  int num_cells() const { return num_cells_; }
  int poly_order() const { return ref_.poly_order(); }
  int quad_order() const { return ref_.num_quad(); }
  int nodes_per_cell() const { return ref_.num_nodes(); }
  std::size_t size() const { return static_cast<std::size_t>(num_cells_) * nodes_per_cell(); }
  double dx() const { return dx_; }
  const ReferenceElement& reference() const { return ref_; }

  double cell_left(int cell) const { return x_left_ + cell * dx_; }
  double cell_center(int cell) const { return x_left_ + (cell + 0.5) * dx_; }
  double node_x(int cell, int node) const;
  double quad_x(int cell, int q) const;
  /// Cell containing x after periodic wrapping.
  int locate(double x) const;

 private:
  double x_left_, x_right_;
  int num_cells_;
  double dx_;
  ReferenceElement ref_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

GridPtr make_grid(double x_left, double x_right, int num_cells, int poly_order = 3,
                  int quad_order = 5);

/// Nodal DG field: K x (P+1) values stored cell-major.
class GridFunction {
 public:
  explicit GridFunction(GridPtr grid);
  GridFunction(GridPtr grid, std::vector<double> values);

  const PeriodicGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> cell(int j) const;
  std::span<double> cell(int j);
  double at(int cell, int node) const;
  double& at(int cell, int node);

  /// Point value; at an interface the right cell is used.
  double evaluate(double x) const;
  double max_abs() const;
  double min_value() const;
  bool all_finite() const;

  /// Copy shifted by whole cells (to the right for positive `cells`).
  GridFunction shifted(int cells) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

/// Cell-wise L2 projection onto degree-P polynomials.
GridFunction project(const GridPtr& grid, const std::function<double(double)>& f);

double integrate(const GridFunction& u);

struct PowerIntegral {
  double value = 0.0;
  double clipped = 0.0;  // largest negative magnitude removed before powering
};

/// Integral of u^p.  Integer p uses the plain power; non-integer p clips u at 0.
PowerIntegral integrate_power_detailed(const GridFunction& u, double p);
double integrate_power(const GridFunction& u, double p);

/// Integral of g(x, u(x)) using the grid's Q-point rule.
double integrate_pointwise(const GridFunction& u, const std::function<double(double, double)>& g);

/// Integral of x^k u for k in {0, 1, 2, 3}.
double moment(const GridFunction& u, int k);

/// Cell-wise derivative of the given order, no continuity across interfaces.
GridFunction broken_derivative(const GridFunction& u, int order);

/// jumps[j] = |left limit - right limit| of d^order u / dx^order at the right edge
/// of cell j (the last entry is the periodic wrap interface).
std::vector<double> interface_jumps(const GridFunction& u, int order);

}  // namespace compacton
