#include "twingraph/field_ops.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "twingraph/errors.hpp"

namespace twingraph {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One scalar derivative along a line of cells, second order where possible.
double line_derivative(const ScalarField& u, int i, int j, int di, int dj) {
  const DomainSpec& d = u.domain;
  double h = d.h * 1.0;
  bool fwd1 = d.inside(i + di, j + dj), bwd1 = d.inside(i - di, j - dj);
  if (fwd1 && bwd1)
    return (u.at(i + di, j + dj) - u.at(i - di, j - dj)) / (2.0 * h);
  if (fwd1 && d.inside(i + 2 * di, j + 2 * dj))
    return (-3.0 * u.at(i, j) + 4.0 * u.at(i + di, j + dj) -
            u.at(i + 2 * di, j + 2 * dj)) /
           (2.0 * h);
  if (bwd1 && d.inside(i - 2 * di, j - 2 * dj))
    return (3.0 * u.at(i, j) - 4.0 * u.at(i - di, j - dj) +
            u.at(i - 2 * di, j - 2 * dj)) /
           (2.0 * h);
  if (fwd1) return (u.at(i + di, j + dj) - u.at(i, j)) / h;
  if (bwd1) return (u.at(i, j) - u.at(i - di, j - dj)) / h;
  return 0.0;
}

double omega_of(double eps, double a, double b, double margin, int i, int j) {
  double s = 1.0 + eps * (a * a + b * b);
  if (eps < 0.0 && s < margin) {
    std::ostringstream msg;
    msg << "graph not spacelike: 1-|G|^2=" << s << " at cell (" << i << ","
        << j << ")";
    throw NumericError(NumericFailure::NotSpacelike, msg.str());
  }
  return std::sqrt(s);
}

}  // namespace

void chart_gradient(const ScalarField& u, std::vector<double>& ux,
                    std::vector<double>& uy) {
  const DomainSpec& d = u.domain;
  ux.assign(u.values.size(), kNaN);
  uy.assign(u.values.size(), kNaN);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      ux[d.index(i, j)] = line_derivative(u, i, j, 1, 0);
      uy[d.index(i, j)] = line_derivative(u, i, j, 0, 1);
    }
}

FrameField generalized_gradient(const ScalarField& u, double spacelike_margin) {
  const DomainSpec& d = u.domain;
  FrameField f;
  f.domain = d;
  f.params = u.params;
  f.alpha.assign(u.values.size(), kNaN);
  f.beta.assign(u.values.size(), kNaN);
  f.omega.assign(u.values.size(), kNaN);

  std::vector<double> ux, uy;
  chart_gradient(u, ux, uy);
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double lam = conformal_factor(u.params, d.x(i), d.y(j));
      double a = ux[k] / lam + eps * tau * d.y(j);
      double b = uy[k] / lam - eps * tau * d.x(i);
      f.alpha[k] = a;
      f.beta[k] = b;
      f.omega[k] = omega_of(eps, a, b, spacelike_margin, i, j);
    }
  return f;
}

ScalarField angle_function(const FrameField& f) {
  ScalarField nu(f.domain, f.params);
  for (int j = 0; j < f.domain.ny; ++j)
    for (int i = 0; i < f.domain.nx; ++i)
      if (f.domain.inside(i, j)) nu.at(i, j) = 1.0 / f.w(i, j);
  return nu;
}

double half_flux_x(const ScalarField& u, int i, int j, double margin) {
  const DomainSpec& d = u.domain;
  double h = d.h;
  double xh = d.x(i) + 0.5 * h, y = d.y(j);
  double lam = conformal_factor(u.params, xh, y);
  double ux = (u.at(i + 1, j) - u.at(i, j)) / h;
  double uy = (u.at(i, j + 1) - u.at(i, j - 1) + u.at(i + 1, j + 1) -
               u.at(i + 1, j - 1)) /
              (4.0 * h);
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  double a = ux / lam + eps * tau * y;
  double b = uy / lam - eps * tau * xh;
  double w = omega_of(eps, a, b, margin, i, j);
  return lam * a / w;
}

double half_flux_y(const ScalarField& u, int i, int j, double margin) {
  const DomainSpec& d = u.domain;
  double h = d.h;
  double x = d.x(i), yh = d.y(j) + 0.5 * h;
  double lam = conformal_factor(u.params, x, yh);
  double uy = (u.at(i, j + 1) - u.at(i, j)) / h;
  double ux = (u.at(i + 1, j) - u.at(i - 1, j) + u.at(i + 1, j + 1) -
               u.at(i - 1, j + 1)) /
              (4.0 * h);
  double eps = u.params.epsilon();
  double tau = u.params.bundle;
  double a = ux / lam + eps * tau * yh;
  double b = uy / lam - eps * tau * x;
  double w = omega_of(eps, a, b, margin, i, j);
  return lam * b / w;
}

bool interior_cell(const DomainSpec& d, int i, int j) {
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di)
      if (!d.inside(i + di, j + dj)) return false;
  return true;
}

ScalarField mean_curvature(const ScalarField& u, double spacelike_margin) {
  const DomainSpec& d = u.domain;
  ScalarField H(d, u.params);
  H.domain.mask.assign(H.domain.mask.size(), 0);
  for (int j = 1; j < d.ny - 1; ++j)
    for (int i = 1; i < d.nx - 1; ++i) {
      if (!interior_cell(d, i, j)) continue;
      double fe = half_flux_x(u, i, j, spacelike_margin);
      double fw = half_flux_x(u, i - 1, j, spacelike_margin);
      double fn = half_flux_y(u, i, j, spacelike_margin);
      double fs = half_flux_y(u, i, j - 1, spacelike_margin);
      double lam = conformal_factor(u.params, d.x(i), d.y(j));
      H.domain.mask[d.index(i, j)] = 1;
      H.at(i, j) = (fe - fw + fn - fs) / (2.0 * d.h * lam * lam);
    }
  return H;
}

FundamentalFormField form_from_frame(const FrameField& f, bool lambda_scaled) {
  const DomainSpec& d = f.domain;
  FundamentalFormField form;
  form.domain = d;
  form.params = f.params;
  form.lambda_scaled = lambda_scaled;
  size_t n = f.alpha.size();
  form.e11.assign(n, kNaN);
  form.e12.assign(n, kNaN);
  form.e22.assign(n, kNaN);
  double eps = f.params.epsilon();
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double s = 1.0;
      if (lambda_scaled) {
        double lam = conformal_factor(f.params, d.x(i), d.y(j));
        s = lam * lam;
      }
      form.e11[k] = s * (1.0 + eps * f.alpha[k] * f.alpha[k]);
      form.e12[k] = s * (eps * f.alpha[k] * f.beta[k]);
      form.e22[k] = s * (1.0 + eps * f.beta[k] * f.beta[k]);
    }
  return form;
}

FundamentalFormField first_fundamental_form(const ScalarField& u) {
  return form_from_frame(generalized_gradient(u), true);
}

double bundle_flux_residual(const SpaceParams& sp, double xa, double xb,
                            double ya, double yb, double h) {
  if (xb <= xa || yb <= ya) throw DomainError("empty rectangle");
  double tau = sp.bundle;
  int nx = std::max(1, static_cast<int>(std::ceil((xb - xa) / h)));
  int ny = std::max(1, static_cast<int>(std::ceil((yb - ya) / h)));
  double hx = (xb - xa) / nx, hy = (yb - ya) / ny;

  // J Z has frame components (-tau x, -tau y); boundary flux uses the
  // lambda-weighted line element.
  long double flux = 0.0L;
  for (int j = 0; j < ny; ++j) {
    double y = ya + (j + 0.5) * hy;
    flux += (-tau * xb) * conformal_factor(sp, xb, y) * hy;
    flux += (tau * xa) * conformal_factor(sp, xa, y) * hy;
  }
  for (int i = 0; i < nx; ++i) {
    double x = xa + (i + 0.5) * hx;
    flux += (-tau * yb) * conformal_factor(sp, x, yb) * hx;
    flux += (tau * ya) * conformal_factor(sp, x, ya) * hx;
  }
  long double area = 0.0L;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double x = xa + (i + 0.5) * hx;
      double y = ya + (j + 0.5) * hy;
      double lam = conformal_factor(sp, x, y);
      area += static_cast<long double>(lam) * lam * hx * hy;
    }
  return static_cast<double>(std::fabs(flux + 2.0L * tau * area));
}

namespace {

ScalarField subsample_stride2(const ScalarField& u) {
  const DomainSpec& d = u.domain;
  DomainSpec c;
  c.h = 2.0 * d.h;
  c.nx = (d.nx + 1) / 2;
  c.ny = (d.ny + 1) / 2;
  c.x0 = d.x0;
  c.y0 = d.y0;
  c.mask.assign(static_cast<size_t>(c.nx) * c.ny, 0);
  ScalarField out;
  out.domain = c;
  out.params = u.params;
  out.values.assign(c.mask.size(), kNaN);
  for (int J = 0; J < c.ny; ++J)
    for (int I = 0; I < c.nx; ++I)
      if (d.inside(2 * I, 2 * J)) {
        out.domain.mask[c.index(I, J)] = 1;
        out.values[c.index(I, J)] = u.at(2 * I, 2 * J);
      }
  return out;
}

double sup_deviation(const ScalarField& H, double mean) {
  double dev = 0.0;
  for (int j = 0; j < H.domain.ny; ++j)
    for (int i = 0; i < H.domain.nx; ++i)
      if (H.domain.inside(i, j))
        dev = std::max(dev, std::fabs(H.at(i, j) - mean));
  return dev;
}

double field_mean(const ScalarField& H, double* mn = nullptr,
                  double* mx = nullptr) {
  long double s = 0.0L;
  long n = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < H.domain.ny; ++j)
    for (int i = 0; i < H.domain.nx; ++i)
      if (H.domain.inside(i, j)) {
        double v = H.at(i, j);
        s += v;
        ++n;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (n == 0)
    throw DomainError("curvature field has no interior cells");
  if (mn) *mn = lo;
  if (mx) *mx = hi;
  return static_cast<double>(s / n);
}

}  // namespace

CmcCheck cmc_deviation(const ScalarField& u, double spacelike_margin) {
  CmcCheck out;
  ScalarField Hf = mean_curvature(u, spacelike_margin);
  out.mean = field_mean(Hf, &out.min, &out.max);
  out.dev_h = sup_deviation(Hf, out.mean);

  ScalarField coarse = subsample_stride2(u);
  ScalarField Hc = mean_curvature(coarse, spacelike_margin);

  // Extrapolate on the matched cell set (coarse interior cells and their
  // fine counterparts) so the leading h^2 truncation term cancels instead
  // of leaking through differing sup locations near the mask rim.
  long double sf = 0.0L, sc = 0.0L;
  long n = 0;
  auto matched = [&](int I, int J) {
    return Hc.domain.inside(I, J) && Hf.domain.inside(2 * I, 2 * J);
  };
  for (int J = 0; J < Hc.domain.ny; ++J)
    for (int I = 0; I < Hc.domain.nx; ++I)
      if (matched(I, J)) {
        sf += Hf.at(2 * I, 2 * J);
        sc += Hc.at(I, J);
        ++n;
      }
  if (n > 0) {
    double mf = static_cast<double>(sf / n), mc = static_cast<double>(sc / n);
    double df = 0.0, dc = 0.0;
    for (int J = 0; J < Hc.domain.ny; ++J)
      for (int I = 0; I < Hc.domain.nx; ++I)
        if (matched(I, J)) {
          df = std::max(df, std::fabs(Hf.at(2 * I, 2 * J) - mf));
          dc = std::max(dc, std::fabs(Hc.at(I, J) - mc));
        }
    out.dev_2h = dc;
    out.extrapolated = std::max(0.0, (4.0 * df - dc) / 3.0);
  } else {
    out.dev_2h = out.dev_h;
    out.extrapolated = out.dev_h;
  }
  return out;
}

}  // namespace twingraph
