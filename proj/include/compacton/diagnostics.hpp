#pragma once

#include <span>

#include "compacton/equations.hpp"
#include "compacton/grid.hpp"

namespace compacton {

/// All monitored functionals of one field at one instant.
struct DiagnosticsRecord {
  double t = 0.0;
  double I1 = 0.0;
  double I_omega = 0.0;      // (1/omega) int u^omega
  double hamiltonian = 0.0;  // int u^(m+1)/(m+1) - ((u^b)_x)^2 / (2 b^2)
  double xmom = 0.0;         // int x u
  double x3mom = 0.0;        // int x^3 u
  double conv_flux = 0.0;    // int u^m
  double disp_mass = 0.0;    // int u^n
  double min_u = 0.0;
  double supp_left = 0.0;
  double supp_right = 0.0;
  bool support_empty = false;  // supp_left/right are NaN when set
  double max_jump2 = 0.0;
  double weighted_omega_mom = 0.0;  // int x u^omega / omega
};

struct DiagnosticThresholds {
  /// |u| above this value counts as inside the support.
  double support = 0.0;
};

DiagnosticsRecord record(const EquationSpec& spec, const GridFunction& u, double t,
                         const DiagnosticThresholds& thresholds);

/// |d/dt int x u - int u^m| from a run of records: the derivative is the
/// difference quotient between the first and last record, compared with
/// int u^m interpolated at the midpoint time.
double com_identity_residual(const EquationSpec& spec, std::span<const DiagnosticsRecord> records);

/// Hölder lower bound I1^m d^(1-m) on int u^m for a confined field.
double holder_floor(const EquationSpec& spec, const DiagnosticsRecord& u0_record, double d);

/// True iff every record keeps int u^m >= floor (1 - 1e-3).
bool monotone_floor_check(std::span<const DiagnosticsRecord> records, double floor);

}  // namespace compacton
