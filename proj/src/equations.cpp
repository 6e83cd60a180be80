#include "compacton/equations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "compacton/error.hpp"

namespace compacton {

using std::numbers::pi;

EquationSpec::EquationSpec(double m, double a, double b) : m_(m), a_(a), b_(b) {
  if (!(m >= 2.0) || !(b >= 2.0) || !(a >= 0.0)) {
    std::ostringstream os;
    os << "equation exponents require m >= 2, b >= 2, a >= 0 (got m=" << m << ", a=" << a
       << ", b=" << b << ")";
    throw DomainError(os.str());
  }
}

std::string EquationSpec::name() const {
  std::ostringstream os;
  if (is_kmn()) {
    os << "K(" << m_ << "," << n() << ")";
  } else {
    os << "C1(" << m_ << "," << a_ << "," << b_ << ")";
  }
  return os.str();
}

EquationSpec make_kmn(double m, double n) {
  if (!(m >= 2.0) || !(n >= 2.0)) {
    std::ostringstream os;
    os << "K(m,n) requires m >= 2 and n >= 2 (got m=" << m << ", n=" << n << ")";
    throw DomainError(os.str());
  }
  return EquationSpec(m, 0.0, n);
}

double edge_exponent(const EquationSpec& spec) {
  if (!(spec.n() > 1.0)) throw DomainError("edge exponent requires n > 1");
  return 2.0 / (spec.n() - 1.0);
}

namespace {

// Profile u = A * g(xi / w) on |xi| <= half_width, xi = x - velocity * t.
struct Profile {
  double amplitude;
  double velocity;
  double wavenumber;  // argument of the cosine is wavenumber * xi
  int power;
  double half_width;
};

Profile profile_of(const AnalyticSolution& sol) {
  const double lam = sol.lambda;
  switch (sol.kind) {
    case CompactonKind::K22: {
      const double s = sol.branch == Branch::Compacton ? 1.0 : -1.0;
      return {s * 4.0 * lam / 3.0, s * lam, 0.25, 2, 2.0 * pi};
    }
    case CompactonKind::C211:
      return {2.0 * lam, lam, 0.5, 2, pi};
    case CompactonKind::C431Stationary:
      return {sol.amplitude, 0.0, 1.0, 1, 0.5 * pi};
    case CompactonKind::K3Half:
      return {36.0 * lam * lam / 25.0, lam, 1.0 / 6.0, 4, 3.0 * pi};
  }
  return {};
}

}  // namespace

double AnalyticSolution::center(double t) const { return profile_of(*this).velocity * t; }

double AnalyticSolution::half_width() const { return profile_of(*this).half_width; }

double eval_analytic(const AnalyticSolution& sol, double x, double t) {
  const Profile p = profile_of(sol);
  const double xi = x - p.velocity * t;
  if (std::abs(xi) > p.half_width) return 0.0;
  return p.amplitude * std::pow(std::cos(p.wavenumber * xi), p.power);
}

double eval_analytic_dt(const AnalyticSolution& sol, double x, double t) {
  const Profile p = profile_of(sol);
  const double xi = x - p.velocity * t;
  if (std::abs(xi) > p.half_width) return 0.0;
  const double c = std::cos(p.wavenumber * xi);
  const double dg = -p.power * std::pow(c, p.power - 1) * std::sin(p.wavenumber * xi) * p.wavenumber;
  return -p.velocity * p.amplitude * dg;
}

InitialCondition cos_cubed_bump(double scale) {
  InitialCondition ic;
  ic.kind = InitialKind::CosCubedBump;
  ic.x0 = -5.0 * pi;
  ic.x1 = 5.0 * pi;
  ic.scale = scale;
  return ic;
}

InitialCondition box(double x0, double x1, double height) {
  if (!(x1 > x0)) throw DomainError("box support requires x1 > x0");
  InitialCondition ic;
  ic.kind = InitialKind::Box;
  ic.x0 = x0;
  ic.x1 = x1;
  ic.scale = height;
  return ic;
}

InitialCondition from_analytic(const AnalyticSolution& sol) {
  InitialCondition ic;
  ic.kind = InitialKind::Analytic;
  ic.analytic = sol;
  ic.x0 = sol.center(0.0) - sol.half_width();
  ic.x1 = sol.center(0.0) + sol.half_width();
  return ic;
}

InitialCondition from_function(std::function<double(double)> f, double x0, double x1) {
  if (!(x1 > x0)) throw DomainError("pointwise initial condition requires x1 > x0");
  InitialCondition ic;
  ic.kind = InitialKind::Pointwise;
  ic.x0 = x0;
  ic.x1 = x1;
  ic.pointwise = std::move(f);
  return ic;
}

namespace {

// Clamped (zero end slope) cubic spline through strictly increasing abscissae.
class ClampedSpline {
 public:
  ClampedSpline(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)), m_(xs_.size(), 0.0) {
    const std::size_t n = xs_.size();
    // Second-derivative system with s'(x_0) = s'(x_{n-1}) = 0 (Thomas algorithm).
    std::vector<double> diag(n), upper(n, 0.0), rhs(n);
    const auto h = [&](std::size_t i) { return xs_[i + 1] - xs_[i]; };
    diag[0] = 2.0 * h(0);
    upper[0] = h(0);
    rhs[0] = 6.0 * (ys_[1] - ys_[0]) / h(0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      diag[i] = 2.0 * (h(i - 1) + h(i));
      upper[i] = h(i);
      rhs[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h(i) - (ys_[i] - ys_[i - 1]) / h(i - 1));
    }
    diag[n - 1] = 2.0 * h(n - 2);
    rhs[n - 1] = -6.0 * (ys_[n - 1] - ys_[n - 2]) / h(n - 2);
    // lower[i] == upper[i-1] (symmetric)
    for (std::size_t i = 1; i < n; ++i) {
      const double f = upper[i - 1] / diag[i - 1];
      diag[i] -= f * upper[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    m_[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
  }

  double operator()(double x) const {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs_.begin(), 1) - 1,
                                          xs_.size() - 2);
    const double h = xs_[i + 1] - xs_[i];
    const double a = (xs_[i + 1] - x) / h;
    const double b = (x - xs_[i]) / h;
    return a * ys_[i] + b * ys_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> m_;
};

}  // namespace

InitialCondition from_table(std::vector<double> xs, std::vector<double> us) {
  if (xs.size() != us.size() || xs.size() < 2) {
    throw DomainError("tabulated initial condition needs >= 2 (x, u) pairs of equal length");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw DomainError("tabulated abscissae must be strictly increasing");
  }
  const double x0 = xs.front();
  const double x1 = xs.back();
  auto spline = std::make_shared<ClampedSpline>(std::move(xs), std::move(us));
  return from_function([spline](double x) { return (*spline)(x); }, x0, x1);
}

double eval_initial(const InitialCondition& ic, double x) {
  switch (ic.kind) {
    case InitialKind::CosCubedBump: {
      if (std::abs(x) > 5.0 * pi) return 0.0;
      const double c = std::cos(x / 10.0);
      return ic.scale * c * c * c;
    }
    case InitialKind::Box:
      return (x >= ic.x0 && x <= ic.x1) ? ic.scale : 0.0;
    case InitialKind::Analytic:
      return eval_analytic(ic.analytic, x, 0.0);
    case InitialKind::Pointwise:
      if (x < ic.x0 || x > ic.x1 || !ic.pointwise) return 0.0;
      return ic.pointwise(x);
  }
  return 0.0;
}

}  // namespace compacton
