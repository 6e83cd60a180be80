#include "compacton/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compacton/error.hpp"
#include "compacton/quadrature.hpp"

namespace compacton {

ReferenceElement::ReferenceElement(int poly_order, int quad_order) : order_(poly_order) {
  if (poly_order < 1) throw DomainError("polynomial order must be >= 1");
  if (quad_order < poly_order + 1) throw DomainError("quadrature order must be >= P + 1");
  const QuadratureRule nodal = gauss_legendre(poly_order + 1);
  nodes_ = nodal.points;
  node_weights_ = nodal.weights;
  const QuadratureRule quad = gauss_legendre(quad_order);
  quad_points_ = quad.points;
  quad_weights_ = quad.weights;

  const int n = num_nodes();
  const int nq = num_quad();
  interp_.resize(static_cast<std::size_t>(nq) * n);
  interp_deriv_.resize(static_cast<std::size_t>(nq) * n);
  for (int q = 0; q < nq; ++q) {
    for (int j = 0; j < n; ++j) {
      interp_[q * n + j] = basis(j, quad_points_[q]);
      interp_deriv_[q * n + j] = basis_deriv(j, quad_points_[q]);
    }
  }
  diff_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) diff_[i * n + j] = basis_deriv(j, nodes_[i]);
  }
  left_.resize(n);
  right_.resize(n);
  for (int j = 0; j < n; ++j) {
    left_[j] = basis(j, -1.0);
    right_[j] = basis(j, 1.0);
  }
}

double ReferenceElement::basis(int j, double xi) const {
  double v = 1.0;
  for (int k = 0; k < num_nodes(); ++k) {
    if (k != j) v *= (xi - nodes_[k]) / (nodes_[j] - nodes_[k]);
  }
  return v;
}

double ReferenceElement::basis_deriv(int j, double xi) const {
  double sum = 0.0;
  for (int k = 0; k < num_nodes(); ++k) {
    if (k == j) continue;
    double term = 1.0 / (nodes_[j] - nodes_[k]);
    for (int l = 0; l < num_nodes(); ++l) {
      if (l != j && l != k) term *= (xi - nodes_[l]) / (nodes_[j] - nodes_[l]);
    }
    sum += term;
  }
  return sum;
}

PeriodicGrid::PeriodicGrid(double x_left, double x_right, int num_cells, int poly_order,
                           int quad_order)
    : x_left_(x_left),
      x_right_(x_right),
      num_cells_(num_cells),
      dx_((x_right - x_left) / num_cells),
      ref_(poly_order, quad_order) {
  if (num_cells < 1) throw DomainError("grid needs at least one cell");
  if (!(x_right > x_left)) throw DomainError("grid requires x_right > x_left");
}

double PeriodicGrid::node_x(int cell, int node) const {
  return cell_center(cell) + 0.5 * dx_ * ref_.nodes()[node];
}

double PeriodicGrid::quad_x(int cell, int q) const {
  return cell_center(cell) + 0.5 * dx_ * ref_.quad_points()[q];
}

int PeriodicGrid::locate(double x) const {
  double s = std::fmod(x - x_left_, length());
  if (s < 0) s += length();
  const int j = static_cast<int>(std::floor(s / dx_));
  return std::clamp(j, 0, num_cells_ - 1);
}

GridPtr make_grid(double x_left, double x_right, int num_cells, int poly_order, int quad_order) {
  return std::make_shared<const PeriodicGrid>(x_left, x_right, num_cells, poly_order, quad_order);
}

GridFunction::GridFunction(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) throw DomainError("grid function size mismatch");
}

std::span<const double> GridFunction::cell(int j) const {
  const std::size_t n = grid_->nodes_per_cell();
  return std::span<const double>(values_).subspan(j * n, n);
}

std::span<double> GridFunction::cell(int j) {
  const std::size_t n = grid_->nodes_per_cell();
  return std::span<double>(values_).subspan(j * n, n);
}

double GridFunction::at(int cell, int node) const {
  return values_[static_cast<std::size_t>(cell) * grid_->nodes_per_cell() + node];
}

double& GridFunction::at(int cell, int node) {
  return values_[static_cast<std::size_t>(cell) * grid_->nodes_per_cell() + node];
}

double GridFunction::evaluate(double x) const {
  const int j = grid_->locate(x);
  double s = std::fmod(x - grid_->x_left(), grid_->length());
  if (s < 0) s += grid_->length();
  const double xi = 2.0 * (s - j * grid_->dx()) / grid_->dx() - 1.0;
  const auto& ref = grid_->reference();
  double v = 0.0;
  for (int i = 0; i < ref.num_nodes(); ++i) v += at(j, i) * ref.basis(i, xi);
  return v;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction GridFunction::shifted(int cells) const {
  const int k = grid_->num_cells();
  const int n = grid_->nodes_per_cell();
  GridFunction out(grid_);
  for (int j = 0; j < k; ++j) {
    const int target = ((j + cells) % k + k) % k;
    std::copy_n(cell(j).begin(), n, out.cell(target).begin());
  }
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction project(const GridPtr& grid, const std::function<double(double)>& f) {
  const auto& ref = grid->reference();
  const int n = ref.num_nodes();
  const int nq = ref.num_quad();
  GridFunction out(grid);
  std::vector<double> fq(nq);
  for (int j = 0; j < grid->num_cells(); ++j) {
    for (int q = 0; q < nq; ++q) {
      const double x = grid->quad_x(j, q);
      fq[q] = f(x);
      if (!std::isfinite(fq[q])) {
        std::ostringstream os;
        os << "projection error: non-finite function value at x=" << x;
        throw NonFiniteError(os.str());
      }
    }
    auto c = out.cell(j);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int q = 0; q < nq; ++q) acc += ref.quad_weights()[q] * ref.interp()[q * n + i] * fq[q];
      c[i] = acc / ref.node_weights()[i];
    }
  }
  return out;
}

double integrate(const GridFunction& u) {
  const auto& grid = u.grid();
  const auto& w = grid.reference().node_weights();
  const int n = grid.nodes_per_cell();
  double total = 0.0;
  for (int j = 0; j < grid.num_cells(); ++j) {
    const auto c = u.cell(j);
    double cell = 0.0;
    for (int i = 0; i < n; ++i) cell += w[i] * c[i];
    total += cell;
  }
  return 0.5 * grid.dx() * total;
}

namespace {

bool is_integer(double p) { return std::floor(p) == p; }

// Applies g(x, u(x)) at every quadrature point and integrates.
template <class G>
double integrate_at_quadrature(const GridFunction& u, G&& g) {
  const auto& grid = u.grid();
  const auto& ref = grid.reference();
  const int n = ref.num_nodes();
  const int nq = ref.num_quad();
  double total = 0.0;
  for (int j = 0; j < grid.num_cells(); ++j) {
    const auto c = u.cell(j);
    double cell = 0.0;
    for (int q = 0; q < nq; ++q) {
      double uq = 0.0;
      for (int i = 0; i < n; ++i) uq += ref.interp()[q * n + i] * c[i];
      cell += ref.quad_weights()[q] * g(grid.quad_x(j, q), uq);
    }
    total += cell;
  }
  return 0.5 * grid.dx() * total;
}

}  // namespace

PowerIntegral integrate_power_detailed(const GridFunction& u, double p) {
  if (!(p >= 1.0)) throw DomainError("integrate_power requires p >= 1");
  PowerIntegral out;
  if (is_integer(p)) {
    const int ip = static_cast<int>(p);
    out.value = integrate_at_quadrature(u, [ip](double, double v) { return std::pow(v, ip); });
    return out;
  }
  double clipped = 0.0;
  out.value = integrate_at_quadrature(u, [p, &clipped](double, double v) {
    if (v < 0.0) {
      clipped = std::max(clipped, -v);
      return 0.0;
    }
    return std::pow(v, p);
  });
  out.clipped = clipped;
  return out;
}

double integrate_pointwise(const GridFunction& u, const std::function<double(double, double)>& g) {
  return integrate_at_quadrature(u, g);
}

double integrate_power(const GridFunction& u, double p) { return integrate_power_detailed(u, p).value; }

double moment(const GridFunction& u, int k) {
  if (k < 0 || k > 3) throw DomainError("moment order must be in {0,1,2,3}");
  if (k == 0) return integrate(u);
  return integrate_at_quadrature(u, [k](double x, double v) {
    double xk = x;
    for (int i = 1; i < k; ++i) xk *= x;
    return xk * v;
  });
}

GridFunction broken_derivative(const GridFunction& u, int order) {
  const auto& grid = u.grid();
  if (order < 1 || order > grid.poly_order()) {
    throw DomainError("broken derivative order must be in [1, P]");
  }
  const auto& d = grid.reference().diff();
  const int n = grid.nodes_per_cell();
  const double scale = 2.0 / grid.dx();
  GridFunction cur = u;
  GridFunction next(u.grid_ptr());
  for (int o = 0; o < order; ++o) {
    for (int j = 0; j < grid.num_cells(); ++j) {
      const auto in = cur.cell(j);
      auto out = next.cell(j);
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += d[i * n + k] * in[k];
        out[i] = scale * acc;
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

std::vector<double> interface_jumps(const GridFunction& u, int order) {
  const auto& grid = u.grid();
  if (order < 0 || order > grid.poly_order()) {
    throw DomainError("interface jump order must be in [0, P]");
  }
  const GridFunction v = order == 0 ? u : broken_derivative(u, order);
  const auto& ref = grid.reference();
  const int n = ref.num_nodes();
  const int k = grid.num_cells();
  std::vector<double> jumps(k);
  for (int j = 0; j < k; ++j) {
    const auto a = v.cell(j);
    const auto b = v.cell((j + 1) % k);
    double left_limit = 0.0;
    double right_limit = 0.0;
    for (int i = 0; i < n; ++i) {
      left_limit += ref.right()[i] * a[i];
      right_limit += ref.left()[i] * b[i];
    }
    jumps[j] = std::abs(left_limit - right_limit);
  }
  return jumps;
}

}  // namespace compacton
