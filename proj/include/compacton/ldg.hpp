#pragma once

#include <vector>

#include "compacton/equations.hpp"
#include "compacton/grid.hpp"

namespace compacton {

enum class FluxConstant { GlobalLaxFriedrichs, LocalLaxFriedrichs };

struct WaveSpeeds {
  double conv = 0.0;  // max m |u|^(m-1)
  double disp = 0.0;  // max n |u|^(n-1)
};

/// Nodal power used inside the fluxes: the plain power for integer exponents
/// (so undershoot keeps its algebraic sign), the clipped power otherwise.
double flux_power(double u, double e);

/// LDG discretization of u_t = -(u^m)_x - (u^n)_xxx on a periodic grid, written
/// as the first-order system
///
///   w = u^n,  p = w_x,  q = p_x,  u_t + (u^m + q)_x = 0.
///
/// Interface values: w from the upstream cell, p and q from the downstream
/// cell, and a Lax–Friedrichs flux for u^m.  Upstream is the left cell where
/// (u^n)' >= 0 and the right cell where it is negative (even n with u < 0 at
/// the interface), so the linearized dispersive part stays energy-stable
/// across undershoot.
class LdgOperator {
 public:
  LdgOperator(EquationSpec spec, GridPtr grid,
              FluxConstant mode = FluxConstant::GlobalLaxFriedrichs);

  const EquationSpec& spec() const { return spec_; }
  const PeriodicGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  FluxConstant flux_mode() const { return mode_; }

  /// Semidiscrete right-hand side (OpenMP-parallel over cells).
  GridFunction rhs(const GridFunction& u) const;
  void rhs(const GridFunction& u, GridFunction& out) const;

  /// Straight serial evaluation of the same scheme, kept as the test reference
  /// for the parallel kernel.
  GridFunction rhs_reference(const GridFunction& u) const;

  WaveSpeeds max_wave_speeds(const GridFunction& u) const;

 private:
  EquationSpec spec_;
  GridPtr grid_;
  FluxConstant mode_;
  // Reference-element operators with the inverse (diagonal) mass matrix folded in.
  std::vector<double> stiff_nodal_;  // [i*N+k] = w_k phi_i'(r_k) / w_i
  std::vector<double> stiff_quad_;   // [i*Q+q] = v_q phi_i'(s_q) / w_i
  std::vector<double> proj_;         // [i*Q+q] = v_q phi_i(s_q) / w_i
  std::vector<double> lift_left_;    // phi_i(-1) / w_i
  std::vector<double> lift_right_;   // phi_i(+1) / w_i
};

}  // namespace compacton
