#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace compacton {

/// Exponents of u_t + (u^m)_x + (1/b)[u^a (u^b)_xx]_x = 0.  With a = 0 this is
/// K(m, n) with n = b, written without the 1/b normalization.
class EquationSpec {
 public:
  EquationSpec(double m, double a, double b);

  double m() const { return m_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double n() const { return a_ + b_; }
  double omega() const { return b_ + 1.0 - a_; }
  bool is_kmn() const { return a_ == 0.0; }
  /// K(n+1, n): the convective flux integral is itself conserved.
  bool is_n_plus_one() const { return is_kmn() && m_ == n() + 1.0; }

  std::string name() const;

  bool operator==(const EquationSpec&) const = default;

 private:
  double m_;
  double a_;
  double b_;
};

EquationSpec make_kmn(double m, double n);

/// Front power 2/(n-1) of a traveling compacton near its edge.
double edge_exponent(const EquationSpec& spec);

enum class CompactonKind { K22, C211, C431Stationary, K3Half };
enum class Branch { Compacton, AntiCompacton };

struct AnalyticSolution {
  CompactonKind kind = CompactonKind::K22;
  double lambda = 1.0;
  double amplitude = 1.0;  // C431 only
  Branch branch = Branch::Compacton;  // K22 only

  /// Center of the support at time t.
  double center(double t) const;
  /// Half-width of the (time independent) support.
  double half_width() const;
};

double eval_analytic(const AnalyticSolution& sol, double x, double t);
/// Exact time derivative of eval_analytic (zero outside the support).
double eval_analytic_dt(const AnalyticSolution& sol, double x, double t);

enum class InitialKind { CosCubedBump, Box, Analytic, Pointwise };

/// Initial datum u_0 with a declared support [x0, x1].
struct InitialCondition {
  InitialKind kind = InitialKind::CosCubedBump;
  double x0 = 0.0;
  double x1 = 0.0;
  double scale = 1.0;
  AnalyticSolution analytic{};
  std::function<double(double)> pointwise{};

  double support_width() const { return x1 - x0; }
};

/// scale * cos^3(x/10) on |x| <= 5 pi.
InitialCondition cos_cubed_bump(double scale = 1.0);
InitialCondition box(double x0, double x1, double height = 1.0);
InitialCondition from_analytic(const AnalyticSolution& sol);
/// Arbitrary callable; values outside [x0, x1] are treated as zero.
InitialCondition from_function(std::function<double(double)> f, double x0, double x1);
/// Clamped cubic spline through (xs, us), zero outside [xs.front(), xs.back()].
InitialCondition from_table(std::vector<double> xs, std::vector<double> us);

double eval_initial(const InitialCondition& ic, double x);

}  // namespace compacton
