// Serial reference path for LdgOperator::rhs.  Written for clarity rather than
// speed: every stage materializes a full field and interface values are read
// off with ReferenceElement::basis directly.
#include <algorithm>
#include <cmath>

#include "compacton/error.hpp"
#include "compacton/ldg.hpp"

namespace compacton {

namespace {

double trace(const GridFunction& g, int cell, double xi) {
  const auto& ref = g.grid().reference();
  double v = 0.0;
  for (int i = 0; i < ref.num_nodes(); ++i) v += g.at(cell, i) * ref.basis(i, xi);
  return v;
}

// Weak derivative of a nodal field: returns v with
//   (v, phi) = -(g, phi') + flux_{j+1/2} phi(x_{j+1/2}^-) - flux_{j-1/2} phi(x_{j-1/2}^+).
// `interface_flux[j]` lives on the right edge of cell j.
GridFunction weak_derivative(const GridFunction& g, const std::vector<double>& interface_flux) {
  const auto& grid = g.grid();
  const auto& ref = grid.reference();
  const int k = grid.num_cells();
  const int n = ref.num_nodes();
  GridFunction out(g.grid_ptr());
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      // (g, phi_i') is exact at the nodes: degree P + (P-1) <= 2P+1
      double volume = 0.0;
      for (int l = 0; l < n; ++l) {
        volume += ref.node_weights()[l] * g.at(j, l) * ref.basis_deriv(i, ref.nodes()[l]);
      }
      const double boundary = interface_flux[j] * ref.basis(i, 1.0) -
                              interface_flux[(j + k - 1) % k] * ref.basis(i, -1.0);
      out.at(j, i) = (-volume + boundary) / (0.5 * grid.dx() * ref.node_weights()[i]);
    }
  }
  return out;
}

}  // namespace

GridFunction LdgOperator::rhs_reference(const GridFunction& u) const {
  if (!u.all_finite()) throw NonFiniteError("non-finite value in LDG input");
  const auto& grid = *grid_;
  const auto& ref = grid.reference();
  const int k = grid.num_cells();
  const int n = ref.num_nodes();
  const int nq = ref.num_quad();
  const double m = spec_.m();

  // u at quadrature points
  std::vector<std::vector<double>> uq(k, std::vector<double>(nq));
  for (int j = 0; j < k; ++j) {
    for (int s = 0; s < nq; ++s) uq[j][s] = trace(u, j, ref.quad_points()[s]);
  }

  // w = L2 projection of u^n
  GridFunction w(grid_);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = 0; s < nq; ++s) {
        acc += ref.quad_weights()[s] * ref.basis(i, ref.quad_points()[s]) *
               flux_power(uq[j][s], spec_.n());
      }
      w.at(j, i) = acc / ref.node_weights()[i];
    }
  }

  // Alternating sides: w upstream, p and q downstream, where upstream is the
  // left cell when (u^n)' >= 0 at the interface and the right cell otherwise.
  const double n_exp = spec_.n();
  const bool even_n = std::floor(n_exp) == n_exp && static_cast<long>(n_exp) % 2 == 0;
  std::vector<bool> flip(k);
  for (int j = 0; j < k; ++j) flip[j] = even_n && trace(u, j, 1.0) + trace(u, (j + 1) % k, -1.0) < 0.0;
  const auto upstream = [&](const GridFunction& g, int j) {
    return flip[j] ? trace(g, (j + 1) % k, -1.0) : trace(g, j, 1.0);
  };
  const auto downstream = [&](const GridFunction& g, int j) {
    return flip[j] ? trace(g, j, 1.0) : trace(g, (j + 1) % k, -1.0);
  };

  std::vector<double> w_hat(k), p_hat(k), q_hat(k);
  for (int j = 0; j < k; ++j) w_hat[j] = upstream(w, j);
  const GridFunction p = weak_derivative(w, w_hat);
  for (int j = 0; j < k; ++j) p_hat[j] = downstream(p, j);
  const GridFunction q = weak_derivative(p, p_hat);
  for (int j = 0; j < k; ++j) q_hat[j] = downstream(q, j);

  double alpha = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) alpha = std::max(alpha, m * std::pow(std::abs(u.at(j, i)), m - 1));
    alpha = std::max(alpha, m * std::pow(std::abs(trace(u, j, -1.0)), m - 1));
    alpha = std::max(alpha, m * std::pow(std::abs(trace(u, j, 1.0)), m - 1));
  }

  std::vector<double> total_flux(k);
  for (int j = 0; j < k; ++j) {
    const double um = trace(u, j, 1.0);
    const double up = trace(u, (j + 1) % k, -1.0);
    double a = alpha;
    if (mode_ == FluxConstant::LocalLaxFriedrichs) {
      a = std::max(m * std::pow(std::abs(um), m - 1), m * std::pow(std::abs(up), m - 1));
    }
    total_flux[j] = 0.5 * (flux_power(um, m) + flux_power(up, m)) - 0.5 * a * (up - um) + q_hat[j];
  }

  // u_t = -(u^m + q)_x; the u^m volume term is integrated at the Q points
  GridFunction out = weak_derivative(q, total_flux);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      double volume = 0.0;
      for (int s = 0; s < nq; ++s) {
        volume += ref.quad_weights()[s] * flux_power(uq[j][s], m) *
                  ref.basis_deriv(i, ref.quad_points()[s]);
      }
      out.at(j, i) -= volume / (0.5 * grid.dx() * ref.node_weights()[i]);
      out.at(j, i) = -out.at(j, i);
    }
  }
  return out;
}

}  // namespace compacton
