#include "twingraph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "twingraph/errors.hpp"
#include "twingraph/field_ops.hpp"

namespace twingraph {

namespace {

struct EdgeState {
  double s = 1.0;    // 1 + eps (alpha^2 + beta^2), before any flooring
  double lam = 1.0;  // conformal factor at the half-edge point
};

// Same arithmetic as half_flux_x, but exposing s and lambda so the frozen
// coefficient 1/omega and the bundle source can be assembled separately.
EdgeState edge_x(const ScalarField& u, int i, int j) {
  const DomainSpec& d = u.domain;
  double h = d.h;
  double xh = d.x(i) + 0.5 * h, y = d.y(j);
  EdgeState e;
  e.lam = conformal_factor(u.params, xh, y);
  double ux = (u.at(i + 1, j) - u.at(i, j)) / h;
  double uy = (u.at(i, j + 1) - u.at(i, j - 1) + u.at(i + 1, j + 1) -
               u.at(i + 1, j - 1)) /
              (4.0 * h);
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  double a = ux / e.lam + eps * tau * y;
  double b = uy / e.lam - eps * tau * xh;
  e.s = 1.0 + eps * (a * a + b * b);
  return e;
}

EdgeState edge_y(const ScalarField& u, int i, int j) {
  const DomainSpec& d = u.domain;
  double h = d.h;
  double x = d.x(i), yh = d.y(j) + 0.5 * h;
  EdgeState e;
  e.lam = conformal_factor(u.params, x, yh);
  double uy = (u.at(i, j + 1) - u.at(i, j)) / h;
  double ux = (u.at(i + 1, j) - u.at(i - 1, j) + u.at(i + 1, j + 1) -
               u.at(i - 1, j + 1)) /
              (4.0 * h);
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  double a = ux / e.lam + eps * tau * yh;
  double b = uy / e.lam - eps * tau * x;
  e.s = 1.0 + eps * (a * a + b * b);
  return e;
}

struct Row {
  int i = 0, j = 0;
  int ne = -1, nw = -1, nn = -1, ns = -1;  // unknown ids, -1 = boundary cell
  double we = 0.0, ww = 0.0, wn = 0.0, ws = 0.0;  // (1/omega)/h per edge
  double diag = 0.0;
  double rhs = 0.0;
};

struct System {
  std::vector<Row> rows;
  double min_s = std::numeric_limits<double>::infinity();
};

// Freezes omega from the current iterate.  With omega fixed the discrete
// curvature balance  Fe - Fw + Fn - Fs = 2 H lambda^2 h  is linear in u and
// its negative is positive definite.  Flooring s at the spacelike margin
// keeps the system usable while an iterate grazes the light cone;
// unit_omega freezes omega = 1 instead, giving the smooth starting sweep.
System assemble(const ScalarField& u, const std::vector<int>& id, double H,
                double margin, bool unit_omega) {
  const DomainSpec& d = u.domain;
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  double h = d.h;
  System sys;
  auto weight = [&](double s) {
    double eff = unit_omega ? 1.0 : std::max(s, margin);
    return 1.0 / (h * std::sqrt(eff));
  };
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (id[d.index(i, j)] < 0) continue;
      EdgeState ee = edge_x(u, i, j), ew = edge_x(u, i - 1, j);
      EdgeState en = edge_y(u, i, j), es = edge_y(u, i, j - 1);
      double slo = std::min(std::min(ee.s, ew.s), std::min(en.s, es.s));
      sys.min_s = std::min(sys.min_s, slo);
      Row r;
      r.i = i;
      r.j = j;
      r.we = weight(ee.s);
      r.ww = weight(ew.s);
      r.wn = weight(en.s);
      r.ws = weight(es.s);
      r.ne = id[d.index(i + 1, j)];
      r.nw = id[d.index(i - 1, j)];
      r.nn = id[d.index(i, j + 1)];
      r.ns = id[d.index(i, j - 1)];
      r.diag = r.we + r.ww + r.wn + r.ws;
      double x = d.x(i), y = d.y(j);
      double lam = conformal_factor(u.params, x, y);
      r.rhs = eps * tau * y * (ee.lam * h * r.we - ew.lam * h * r.ww) -
              eps * tau * x * (en.lam * h * r.wn - es.lam * h * r.ws) -
              2.0 * H * lam * lam * h;
      if (r.ne < 0) r.rhs += r.we * u.at(i + 1, j);
      if (r.nw < 0) r.rhs += r.ww * u.at(i - 1, j);
      if (r.nn < 0) r.rhs += r.wn * u.at(i, j + 1);
      if (r.ns < 0) r.rhs += r.ws * u.at(i, j - 1);
      sys.rows.push_back(r);
    }
  return sys;
}

void apply(const System& sys, const std::vector<double>& x,
           std::vector<double>& y) {
  for (size_t k = 0; k < sys.rows.size(); ++k) {
    const Row& r = sys.rows[k];
    double v = r.diag * x[k];
    if (r.ne >= 0) v -= r.we * x[r.ne];
    if (r.nw >= 0) v -= r.ww * x[r.nw];
    if (r.nn >= 0) v -= r.wn * x[r.nn];
    if (r.ns >= 0) v -= r.ws * x[r.ns];
    y[k] = v;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (size_t k = 0; k < a.size(); ++k)
    s += static_cast<long double>(a[k]) * b[k];
  return static_cast<double>(s);
}

// Jacobi-preconditioned conjugate gradients, warm-started from x.
void cg_solve(const System& sys, std::vector<double>& x, int max_iter,
              double rel_tol) {
  size_t m = sys.rows.size();
  std::vector<double> r(m), z(m), p(m), q(m);
  apply(sys, x, q);
  double bnorm = 0.0;
  for (size_t k = 0; k < m; ++k) {
    r[k] = sys.rows[k].rhs - q[k];
    bnorm += sys.rows[k].rhs * sys.rows[k].rhs;
  }
  bnorm = std::sqrt(bnorm);
  double target = rel_tol * std::max(bnorm, 1e-300);
  for (size_t k = 0; k < m; ++k) z[k] = r[k] / sys.rows[k].diag;
  p = z;
  double rz = dot(r, z);
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(dot(r, r)) <= target) break;
    apply(sys, p, q);
    double pq = dot(p, q);
    if (pq <= 0.0) break;
    double alpha = rz / pq;
    for (size_t k = 0; k < m; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    for (size_t k = 0; k < m; ++k) z[k] = r[k] / sys.rows[k].diag;
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (size_t k = 0; k < m; ++k) p[k] = z[k] + beta * p[k];
  }
}

double min_edge_s(const ScalarField& u, const std::vector<int>& id) {
  const DomainSpec& d = u.domain;
  double lo = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (id[d.index(i, j)] < 0) continue;
      lo = std::min(lo, edge_x(u, i, j).s);
      lo = std::min(lo, edge_x(u, i - 1, j).s);
      lo = std::min(lo, edge_y(u, i, j).s);
      lo = std::min(lo, edge_y(u, i, j - 1).s);
    }
  return lo;
}

}  // namespace

ScalarField solve_dirichlet(const DirichletProblem& prob,
                            const SolveOptions& opt, SolveReport* report) {
  const DomainSpec& d = prob.domain;
  if (!prob.boundary) throw DomainError("no boundary data given");
  d.validate_chart(prob.params);

  std::vector<int> id(d.mask.size(), -1);
  int m = 0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (interior_cell(d, i, j)) id[d.index(i, j)] = m++;
  if (m == 0) throw DomainError("domain has no interior cells");

  ScalarField u(d, prob.params);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      u.at(i, j) = id[d.index(i, j)] < 0 ? prob.boundary(d.x(i), d.y(j)) : 0.0;
    }

  bool lorentzian = !prob.params.riemannian();
  SolveReport rep;
  std::vector<double> x(m, 0.0), xprev(m, 0.0);

  for (int outer = 0; outer <= opt.max_outer; ++outer) {
    System sys =
        assemble(u, id, prob.H, opt.spacelike_margin, /*unit_omega=*/outer == 0);
    xprev = x;
    cg_solve(sys, x, opt.max_inner, opt.inner_tol);

    double step = (outer == 0) ? 1.0 : opt.damping;
    auto scatter = [&](double s) {
      for (const Row& r : sys.rows) {
        int k = id[d.index(r.i, r.j)];
        u.at(r.i, r.j) = xprev[k] + s * (x[k] - xprev[k]);
      }
    };
    scatter(step);
    if (lorentzian && outer > 0) {
      // Backtrack toward the previous iterate when the update leaves the
      // spacelike cone; the previous iterate is known to sit inside it.
      int tries = 0;
      while (min_edge_s(u, id) < opt.spacelike_margin && tries < 30) {
        step *= 0.5;
        scatter(step);
        ++tries;
      }
    }
    for (const Row& r : sys.rows) {
      int k = id[d.index(r.i, r.j)];
      x[k] = u.at(r.i, r.j);
    }

    bool spacelike_ok = true;
    double res = std::numeric_limits<double>::infinity();
    try {
      ScalarField H = mean_curvature(u, opt.spacelike_margin);
      double dev = 0.0;
      for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i)
          if (H.domain.inside(i, j))
            dev = std::max(dev, std::fabs(H.at(i, j) - prob.H));
      res = dev;
    } catch (const NumericError&) {
      spacelike_ok = false;
    }
    rep.history.push_back(res);
    rep.residual = res;
    rep.outer_iterations = outer + 1;
    if (spacelike_ok && res <= opt.tol) {
      rep.converged = true;
      break;
    }
  }

  if (lorentzian) rep.min_spacelike = min_edge_s(u, id);
  if (report) *report = rep;
  if (!rep.converged) {
    if (lorentzian && rep.min_spacelike < opt.spacelike_margin)
      throw NumericError(NumericFailure::NotSpacelike,
                         "iteration left the spacelike cone");
    throw NumericError(NumericFailure::NoConvergence,
                       "curvature residual " + std::to_string(rep.residual) +
                           " after " + std::to_string(rep.outer_iterations) +
                           " sweeps");
  }
  return u;
}

}  // namespace twingraph
