#include "compacton/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "compacton/error.hpp"
#include "compacton/ldg.hpp"

namespace compacton {

namespace {

double hamiltonian_of(const EquationSpec& spec, const GridFunction& u) {
  const double m = spec.m();
  const double b = spec.b();
  const double potential =
      integrate_pointwise(u, [m](double, double v) { return flux_power(v, m + 1.0); }) / (m + 1.0);
  // (u^b)_x from the nodal power; broken derivative inside each cell
  GridFunction ub(u.grid_ptr());
  const auto src = u.values();
  auto dst = ub.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = flux_power(src[i], b);
  const GridFunction dub = broken_derivative(ub, 1);
  const double gradient = integrate_power(dub, 2.0);
  return potential - gradient / (2.0 * b * b);
}

}  // namespace

DiagnosticsRecord record(const EquationSpec& spec, const GridFunction& u, double t,
                         const DiagnosticThresholds& thresholds) {
  DiagnosticsRecord r;
  r.t = t;
  const double omega = spec.omega();
  r.I1 = integrate(u);
  r.I_omega = integrate_power(u, omega) / omega;
  r.hamiltonian = hamiltonian_of(spec, u);
  r.xmom = moment(u, 1);
  r.x3mom = moment(u, 3);
  r.conv_flux = integrate_power(u, spec.m());
  r.disp_mass = integrate_power(u, spec.n());
  r.min_u = u.min_value();
  r.weighted_omega_mom = integrate_pointwise(u, [omega](double x, double v) {
                           return x * flux_power(v, omega);
                         }) / omega;

  const auto& grid = u.grid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.num_cells(); ++j) {
    for (int i = 0; i < grid.nodes_per_cell(); ++i) {
      if (std::abs(u.at(j, i)) > thresholds.support) {
        lo = std::min(lo, grid.node_x(j, i));
        hi = std::max(hi, grid.node_x(j, i));
      }
    }
  }
  r.support_empty = !(lo <= hi);
  r.supp_left = r.support_empty ? std::numeric_limits<double>::quiet_NaN() : lo;
  r.supp_right = r.support_empty ? std::numeric_limits<double>::quiet_NaN() : hi;

  if (grid.poly_order() >= 2) {
    const auto jumps = interface_jumps(u, 2);
    r.max_jump2 = *std::max_element(jumps.begin(), jumps.end());
  } else {
    r.max_jump2 = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double com_identity_residual(const EquationSpec&, std::span<const DiagnosticsRecord> records) {
  if (records.size() < 2) throw DomainError("center-of-mass identity needs >= 2 records");
  const auto& first = records.front();
  const auto& last = records.back();
  if (!(last.t > first.t)) throw DomainError("center-of-mass identity needs increasing times");
  const double rate = (last.xmom - first.xmom) / (last.t - first.t);
  const double mid = 0.5 * (first.t + last.t);
  // int u^m at the midpoint, linearly interpolated between bracketing records
  double flux = last.conv_flux;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = records[i + 1];
    if (mid >= a.t && mid <= b.t) {
      const double theta = b.t > a.t ? (mid - a.t) / (b.t - a.t) : 0.0;
      flux = (1.0 - theta) * a.conv_flux + theta * b.conv_flux;
      break;
    }
  }
  return std::abs(rate - flux);
}

double holder_floor(const EquationSpec& spec, const DiagnosticsRecord& u0_record, double d) {
  if (!(u0_record.I1 > 0.0)) throw DomainError("Hölder floor requires positive mass");
  if (!(d > 0.0)) throw DomainError("Hölder floor requires positive support width");
  return std::pow(u0_record.I1, spec.m()) * std::pow(d, 1.0 - spec.m());
}

bool monotone_floor_check(std::span<const DiagnosticsRecord> records, double floor) {
  constexpr double tol = 1e-3;
  return std::all_of(records.begin(), records.end(),
                     [&](const DiagnosticsRecord& r) { return r.conv_flux >= floor * (1.0 - tol); });
}

}  // namespace compacton
