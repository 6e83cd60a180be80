#include "compacton/ldg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compacton/error.hpp"

namespace compacton {

double flux_power(double u, double e) {
  if (std::floor(e) == e) {
    const int k = static_cast<int>(e);
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= u;
    return r;
  }
  return u > 0.0 ? std::pow(u, e) : 0.0;
}

namespace {

double wave_speed(double u, double e) {
  const double a = std::abs(u);
  if (std::floor(e) == e) return e * flux_power(a, e - 1.0);
  return e * std::pow(a, e - 1.0);
}

void require_finite(const GridFunction& u) {
  const auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream os;
      os << "non-finite value in LDG input at dof " << i;
      throw NonFiniteError(os.str());
    }
  }
}

struct LdgKernelData {
  int cells;
  int n;
  int nq;
  double m;
  double pn;
  double scale;
  bool global;
  bool even_n;  // (u^n)' changes sign with u
  const double* interp;
  const double* left;
  const double* right;
  const double* proj;
  const double* stiff_nodal;
  const double* stiff_quad;
  const double* lift_left;
  const double* lift_right;
};

}  // namespace

LdgOperator::LdgOperator(EquationSpec spec, GridPtr grid, FluxConstant mode)
    : spec_(spec), grid_(std::move(grid)), mode_(mode) {
  if (!spec_.is_kmn()) {
    throw DomainError("LDG solver only evolves K(m,n) (a = 0), got " + spec_.name());
  }
  const auto& ref = grid_->reference();
  const int n = ref.num_nodes();
  const int nq = ref.num_quad();
  const auto& w = ref.node_weights();
  const auto& v = ref.quad_weights();
  stiff_nodal_.resize(static_cast<std::size_t>(n) * n);
  stiff_quad_.resize(static_cast<std::size_t>(n) * nq);
  proj_.resize(static_cast<std::size_t>(n) * nq);
  lift_left_.resize(n);
  lift_right_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) stiff_nodal_[i * n + k] = w[k] * ref.diff()[k * n + i] / w[i];
    for (int q = 0; q < nq; ++q) {
      stiff_quad_[i * nq + q] = v[q] * ref.interp_deriv()[q * n + i] / w[i];
      proj_[i * nq + q] = v[q] * ref.interp()[q * n + i] / w[i];
    }
    lift_left_[i] = ref.left()[i] / w[i];
    lift_right_[i] = ref.right()[i] / w[i];
  }
}

GridFunction LdgOperator::rhs(const GridFunction& u) const {
  GridFunction out(grid_);
  rhs(u, out);
  return out;
}

namespace {

// Fixed (N, NQ) instantiations let the compiler unroll the per-cell loops;
// N == 0 selects the runtime-sized fallback.
template <int N, int NQ>
void rhs_kernel(const LdgKernelData& d, const double* uv, double* ov) {
  const int kc = d.cells;
  const int n = N > 0 ? N : d.n;
  const int nq = NQ > 0 ? NQ : d.nq;
  const double m = d.m;
  const double pn = d.pn;
  const double scale = d.scale;

  std::vector<double> w(kc * n), p(kc * n), q(kc * n), fq(kc * nq);
  std::vector<double> u_left(kc), u_right(kc), w_left(kc), w_right(kc), p_left(kc), p_right(kc), q_left(kc),
      q_right(kc), flux(kc);
  std::vector<char> flip(kc);
  double alpha = 0.0;

#pragma omp parallel
  {
    std::vector<double> uq_buf(nq);
    double* uq = uq_buf.data();
#pragma omp for schedule(static) reduction(max : alpha)
    for (int j = 0; j < kc; ++j) {
      const double* c = uv + j * n;
      for (int s = 0; s < nq; ++s) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += d.interp[s * n + i] * c[i];
        uq[s] = acc;
        fq[j * nq + s] = flux_power(acc, m);
      }
      for (int s = 0; s < nq; ++s) uq[s] = flux_power(uq[s], pn);
      double ul = 0.0, ur = 0.0, wl = 0.0, wr = 0.0;
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int s = 0; s < nq; ++s) acc += d.proj[i * nq + s] * uq[s];
        w[j * n + i] = acc;
        wl += d.left[i] * acc;
        wr += d.right[i] * acc;
        ul += d.left[i] * c[i];
        ur += d.right[i] * c[i];
        alpha = std::max(alpha, wave_speed(c[i], m));
      }
      u_left[j] = ul;
      u_right[j] = ur;
      w_left[j] = wl;
      w_right[j] = wr;
      alpha = std::max({alpha, wave_speed(ul, m), wave_speed(ur, m)});
    }

    // the dispersive sides follow the sign of (u^n)' at each interface
#pragma omp for schedule(static)
    for (int j = 0; j < kc; ++j) flip[j] = d.even_n && u_right[j] + u_left[(j + 1) % kc] < 0.0;

    // p = w_x with w taken upstream (left cell where (u^n)' >= 0)
#pragma omp for schedule(static)
    for (int j = 0; j < kc; ++j) {
      const double* wc = w.data() + j * n;
      const int jl = (j + kc - 1) % kc;
      const int jr = (j + 1) % kc;
      const double hat_r = flip[j] ? w_left[jr] : w_right[j];
      const double hat_l = flip[jl] ? w_left[j] : w_right[jl];
      double pl = 0.0, pr = 0.0;
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc -= d.stiff_nodal[i * n + k] * wc[k];
        const double val = scale * (acc + hat_r * d.lift_right[i] - hat_l * d.lift_left[i]);
        p[j * n + i] = val;
        pl += d.left[i] * val;
        pr += d.right[i] * val;
      }
      p_left[j] = pl;
      p_right[j] = pr;
    }

    // q = p_x with p taken downstream
#pragma omp for schedule(static)
    for (int j = 0; j < kc; ++j) {
      const double* pc = p.data() + j * n;
      const int jl = (j + kc - 1) % kc;
      const int jr = (j + 1) % kc;
      const double hat_r = flip[j] ? p_right[j] : p_left[jr];
      const double hat_l = flip[jl] ? p_right[jl] : p_left[j];
      double ql = 0.0, qr = 0.0;
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc -= d.stiff_nodal[i * n + k] * pc[k];
        const double val = scale * (acc + hat_r * d.lift_right[i] - hat_l * d.lift_left[i]);
        q[j * n + i] = val;
        ql += d.left[i] * val;
        qr += d.right[i] * val;
      }
      q_left[j] = ql;
      q_right[j] = qr;
    }

    // total flux (Lax–Friedrichs for u^m plus downstream q) at the right edge of cell j
#pragma omp for schedule(static)
    for (int j = 0; j < kc; ++j) {
      const int jr = (j + 1) % kc;
      const double um = u_right[j];
      const double up = u_left[jr];
      const double a = d.global ? alpha : std::max(wave_speed(um, m), wave_speed(up, m));
      const double lf = 0.5 * (flux_power(um, m) + flux_power(up, m)) - 0.5 * a * (up - um);
      flux[j] = lf + (flip[j] ? q_right[j] : q_left[jr]);
    }

#pragma omp for schedule(static)
    for (int j = 0; j < kc; ++j) {
      const double* qc = q.data() + j * n;
      const double* fc = fq.data() + j * nq;
      const double hat_r = flux[j];
      const double hat_l = flux[(j + kc - 1) % kc];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc -= d.stiff_nodal[i * n + k] * qc[k];
        for (int s = 0; s < nq; ++s) acc -= d.stiff_quad[i * nq + s] * fc[s];
        ov[j * n + i] = -scale * (acc + hat_r * d.lift_right[i] - hat_l * d.lift_left[i]);
      }
    }
  }
}

}  // namespace

void LdgOperator::rhs(const GridFunction& u, GridFunction& out) const {
  require_finite(u);
  const auto& ref = grid_->reference();
  LdgKernelData d{grid_->num_cells(),
                  ref.num_nodes(),
                  ref.num_quad(),
                  spec_.m(),
                  spec_.n(),
                  2.0 / grid_->dx(),
                  mode_ == FluxConstant::GlobalLaxFriedrichs,
                  std::floor(spec_.n()) == spec_.n() && static_cast<long>(spec_.n()) % 2 == 0,
                  ref.interp().data(),
                  ref.left().data(),
                  ref.right().data(),
                  proj_.data(),
                  stiff_nodal_.data(),
                  stiff_quad_.data(),
                  lift_left_.data(),
                  lift_right_.data()};
  const double* uv = u.values().data();
  double* ov = out.values().data();
  if (d.n == 4 && d.nq == 5) {
    rhs_kernel<4, 5>(d, uv, ov);
  } else if (d.n == 4 && d.nq == 4) {
    rhs_kernel<4, 4>(d, uv, ov);
  } else if (d.n == 3 && d.nq == 4) {
    rhs_kernel<3, 4>(d, uv, ov);
  } else if (d.n == 2 && d.nq == 3) {
    rhs_kernel<2, 3>(d, uv, ov);
  } else if (d.n == 5 && d.nq == 6) {
    rhs_kernel<5, 6>(d, uv, ov);
  } else {
    rhs_kernel<0, 0>(d, uv, ov);
  }
  if (!out.all_finite()) throw NonFiniteError("LDG right-hand side produced non-finite values");
}

WaveSpeeds LdgOperator::max_wave_speeds(const GridFunction& u) const {
  WaveSpeeds s;
  for (double v : u.values()) {
    s.conv = std::max(s.conv, wave_speed(v, spec_.m()));
    s.disp = std::max(s.disp, wave_speed(v, spec_.n()));
  }
  return s;
}

}  // namespace compacton
