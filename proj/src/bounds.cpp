#include "compacton/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compacton/error.hpp"
#include "compacton/quadrature.hpp"

namespace compacton {

namespace {

constexpr int kBoundPanels = 4096;

struct Integrals {
  double I1 = 0.0;
  double power_omega = 0.0;  // int u^omega
  double xmom = 0.0;
  double x3mom_centered = 0.0;
};

void check_spec(const EquationSpec& spec) {
  if (!spec.is_kmn()) throw DomainError("lifespan bounds are derived for K(m,n) only");
}

BoundsReport assemble(const EquationSpec& spec, double x0, double x1, const Integrals& in) {
  if (!(in.I1 > 0.0)) throw DomainError("initial datum is trivial (zero mass)");
  BoundsReport r;
  r.x0 = x0;
  r.x1 = x1;
  r.d = x1 - x0;
  if (!(r.d > 0.0)) throw DomainError("initial support must have positive width");
  const double m = spec.m();
  const double n = spec.n();
  const double omega = spec.omega();
  r.I1 = in.I1;
  r.I_omega = in.power_omega / omega;
  r.xmom = in.xmom;
  r.x3mom = in.x3mom_centered;
  r.floor = std::pow(in.I1, m) * std::pow(r.d, 1.0 - m);
  // x1 I1 - int x u0 == int_0^d s u0(s + x0) ds shifted by (x1 - x0 - s)
  const double numerator = x1 * in.I1 - in.xmom;
  r.T1 = numerator / r.floor;
  if (spec.is_n_plus_one()) r.T2 = numerator / (omega * r.I_omega);
  // Third-moment bound in the frame centered on the support midpoint.
  const double half = 0.5 * r.d;
  r.T3 = (half * half * half * in.I1 - in.x3mom_centered) /
         (6.0 * std::pow(in.I1, n) * std::pow(r.d, 1.0 - n));
  return r;
}

}  // namespace

double BoundsReport::min_bound() const {
  double b = std::min(T1, T3);
  if (T2) b = std::min(b, *T2);
  return b;
}

BoundsReport compute_bounds(const EquationSpec& spec, const InitialCondition& ic,
                            const Domain& domain) {
  check_spec(spec);
  const double x0 = ic.x0;
  const double x1 = ic.x1;
  if (!(x1 > x0)) throw DomainError("initial condition needs a declared support x0 < x1");
  if (!(x0 > domain.left) || !(x1 < domain.right)) {
    std::ostringstream os;
    os << "initial support [" << x0 << ", " << x1 << "] must lie strictly inside the domain ["
       << domain.left << ", " << domain.right << "]";
    throw DomainError(os.str());
  }

  // Sign check on a fine sample of the support.
  constexpr int kSamples = 20000;
  double peak = 0.0;
  double most_negative = 0.0;
  double where = x0;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = x0 + (x1 - x0) * i / kSamples;
    const double v = eval_initial(ic, x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "initial datum is not finite at x=" << x;
      throw DomainError(os.str());
    }
    peak = std::max(peak, std::abs(v));
    if (v < most_negative) {
      most_negative = v;
      where = x;
    }
  }
  if (peak == 0.0) throw DomainError("initial datum is trivial (identically zero)");
  if (most_negative < -1e-12 * peak) {
    std::ostringstream os;
    os.precision(17);
    os << "initial datum must be nonnegative: u0(" << where << ") = " << most_negative;
    throw DomainError(os.str());
  }

  const double omega = spec.omega();
  const double c = 0.5 * (x0 + x1);
  const auto u = [&](double x) { return eval_initial(ic, x); };
  Integrals in;
  in.I1 = composite_gauss(u, x0, x1, kBoundPanels);
  in.power_omega =
      composite_gauss([&](double x) { return std::pow(std::max(u(x), 0.0), omega); }, x0, x1,
                      kBoundPanels);
  in.xmom = composite_gauss([&](double x) { return x * u(x); }, x0, x1, kBoundPanels);
  in.x3mom_centered = composite_gauss(
      [&](double x) {
        const double y = x - c;
        return y * y * y * u(x);
      },
      x0, x1, kBoundPanels);
  return assemble(spec, x0, x1, in);
}

BoundsReport compute_bounds(const EquationSpec& spec, const GridFunction& u0) {
  check_spec(spec);
  const auto& grid = u0.grid();
  const double peak = u0.max_abs();
  if (peak == 0.0) throw DomainError("initial datum is trivial (identically zero)");
  const double threshold = 1e-12 * peak;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int lo_cell = -1;
  int hi_cell = -1;
  double most_negative = 0.0;
  double where = 0.0;
  for (int j = 0; j < grid.num_cells(); ++j) {
    for (int i = 0; i < grid.nodes_per_cell(); ++i) {
      const double v = u0.at(j, i);
      if (v < most_negative) {
        most_negative = v;
        where = grid.node_x(j, i);
      }
      if (std::abs(v) > threshold) {
        if (grid.cell_left(j) < lo) {
          lo = grid.cell_left(j);
          lo_cell = j;
        }
        if (grid.cell_left(j) + grid.dx() > hi) {
          hi = grid.cell_left(j) + grid.dx();
          hi_cell = j;
        }
      }
    }
  }
  if (most_negative < -threshold) {
    std::ostringstream os;
    os.precision(17);
    os << "initial datum must be nonnegative: u0(" << where << ") = " << most_negative;
    throw DomainError(os.str());
  }
  if (lo_cell == 0 || hi_cell == grid.num_cells() - 1) {
    throw DomainError("initial support touches the periodic boundary");
  }

  const double c = 0.5 * (lo + hi);
  Integrals in;
  in.I1 = integrate(u0);
  in.power_omega = integrate_power(u0, spec.omega());
  in.xmom = moment(u0, 1);
  in.x3mom_centered = integrate_pointwise(u0, [c](double x, double v) {
    const double y = x - c;
    return y * y * y * v;
  });
  return assemble(spec, lo, hi, in);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Ok:
      return "OK";
    case Verdict::Violation:
      return "VIOLATION";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "unknown";
}

Verdict bound_vs_event(const BoundsReport& report, const EventLog& events, double t_end) {
  const double bound = report.min_bound();
  for (const auto& e : events) {
    if (e.kind == EventKind::SupportBreach || e.kind == EventKind::RegularityLoss) {
      return e.t <= bound ? Verdict::Ok : Verdict::Violation;
    }
  }
  // No loss of regularity observed: only a contradiction if the run outlived the bound.
  return t_end > bound ? Verdict::Violation : Verdict::Inconclusive;
}

}  // namespace compacton
