#pragma once

#include <limits>
#include <optional>
#include <string>

#include "compacton/equations.hpp"
#include "compacton/events.hpp"
#include "compacton/grid.hpp"

namespace compacton {

/// Upper bounds on the lifespan of a nonnegative compactly supported strong
/// solution of K(m, n), evaluated from the initial datum.
struct BoundsReport {
  double x0 = 0.0;
  double x1 = 0.0;
  double d = 0.0;
  double I1 = 0.0;
  double I_omega = 0.0;
  double xmom = 0.0;   // int x u0
  double x3mom = 0.0;  // int (x - c)^3 u0 with c the support midpoint
  double floor = 0.0;  // I1^m d^(1-m)
  double T1 = 0.0;     // center-of-mass bound, any K(m,n)
  std::optional<double> T2;  // K(n+1, n) only, uses the conserved int u^(n+1)
  double T3 = 0.0;     // third-moment bound

  double min_bound() const;
};

/// Domain the initial datum lives in; the support must stay strictly inside it.
struct Domain {
  double left = -std::numeric_limits<double>::infinity();
  double right = std::numeric_limits<double>::infinity();
};

/// Bounds from an analytic / pointwise datum over its declared support, using
/// 4096-panel composite Gauss–Legendre quadrature independent of any DG grid.
BoundsReport compute_bounds(const EquationSpec& spec, const InitialCondition& ic,
                            const Domain& domain = {});

/// Bounds from a DG field; the support is detected with |u| > 1e-12 max|u|.
BoundsReport compute_bounds(const EquationSpec& spec, const GridFunction& u0);

enum class Verdict { Ok, Violation, Inconclusive };
std::string_view to_string(Verdict v);

/// Compares the first support_breach / regularity_loss event with the smallest
/// applicable bound.
Verdict bound_vs_event(const BoundsReport& report, const EventLog& events, double t_end);

}  // namespace compacton
