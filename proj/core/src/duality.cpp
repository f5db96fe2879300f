#include "twingraph/duality.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "twingraph/errors.hpp"

namespace twingraph {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::pair<int, int> default_anchor(const DomainSpec& d) {
  // unmasked cell closest to the unmasked centroid
  long double cx = 0.0L, cy = 0.0L;
  long n = 0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) {
        cx += i;
        cy += j;
        ++n;
      }
  if (n == 0) throw DomainError("empty mask");
  double ci = static_cast<double>(cx / n), cj = static_cast<double>(cy / n);
  std::pair<int, int> best{-1, -1};
  double bd = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) {
        double dd = (i - ci) * (i - ci) + (j - cj) * (j - cj);
        if (dd < bd) {
          bd = dd;
          best = {i, j};
        }
      }
  return best;
}

namespace {

// Trapezoid cumulative along one grid line starting at `from`, stepping by
// (di,dj); stops at the first masked cell.  out[k] = integral after k steps.
void line_cumulative(const DomainSpec& d, const std::vector<double>& f,
                     int i0, int j0, int di, int dj, double sign,
                     std::vector<double>& vals, std::vector<int>& is,
                     std::vector<int>& js) {
  vals.clear();
  is.clear();
  js.clear();
  double acc = 0.0;
  int i = i0, j = j0;
  while (d.inside(i + di, j + dj)) {
    double f0 = f[d.index(i, j)];
    double f1 = f[d.index(i + di, j + dj)];
    acc += sign * 0.5 * d.h * (f0 + f1);
    i += di;
    j += dj;
    vals.push_back(acc);
    is.push_back(i);
    js.push_back(j);
  }
}

}  // namespace

FrameField twin_gradient(const FrameField& f, TwinDirection dir,
                         double target_bundle) {
  if (dir == TwinDirection::EtoL && f.params.causal != Causal::Riemannian)
    throw DomainError("EtoL twin requires a Riemannian source frame");
  if (dir == TwinDirection::LtoE && f.params.causal != Causal::Lorentzian)
    throw DomainError("LtoE twin requires a Lorentzian source frame");

  FrameField out;
  out.domain = f.domain;
  out.params = {f.params.kappa, target_bundle,
                dir == TwinDirection::EtoL ? Causal::Lorentzian
                                           : Causal::Riemannian};
  size_t n = f.alpha.size();
  out.alpha.assign(n, kNaN);
  out.beta.assign(n, kNaN);
  out.omega.assign(n, kNaN);
  const DomainSpec& d = f.domain;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double w = f.omega[k];
      if (dir == TwinDirection::EtoL) {
        out.alpha[k] = -f.beta[k] / w;
        out.beta[k] = f.alpha[k] / w;
      } else {
        out.alpha[k] = f.beta[k] / w;
        out.beta[k] = -f.alpha[k] / w;
      }
      out.omega[k] = 1.0 / w;
    }
  return out;
}

void chart_one_form(const FrameField& f, const SpaceParams& target,
                    std::vector<double>& fx, std::vector<double>& fy) {
  if (target.causal != f.params.causal)
    throw DomainError("frame causal type does not match the target space");
  const DomainSpec& d = f.domain;
  fx.assign(f.alpha.size(), kNaN);
  fy.assign(f.alpha.size(), kNaN);
  double tau = target.bundle;
  double eps = target.epsilon();
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double lam = conformal_factor(target, d.x(i), d.y(j));
      fx[k] = lam * (f.alpha[k] - eps * tau * d.y(j));
      fy[k] = lam * (f.beta[k] + eps * tau * d.x(i));
    }
}

double integrability_residual(const FrameField& twinned,
                              const SpaceParams& target) {
  std::vector<double> fx, fy;
  chart_one_form(twinned, target, fx, fy);
  const DomainSpec& d = twinned.domain;
  double worst = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      if (!d.inside(i + 1, j) || !d.inside(i - 1, j) || !d.inside(i, j + 1) ||
          !d.inside(i, j - 1))
        continue;
      double dyfx =
          (fx[d.index(i, j + 1)] - fx[d.index(i, j - 1)]) / (2.0 * d.h);
      double dxfy =
          (fy[d.index(i + 1, j)] - fy[d.index(i - 1, j)]) / (2.0 * d.h);
      worst = std::max(worst, std::fabs(dyfx - dxfy));
    }
  return worst;
}

ScalarField integrate_form(const DomainSpec& d, const SpaceParams& params,
                           const std::vector<double>& fx,
                           const std::vector<double>& fy,
                           std::pair<int, int> anchor) {
  auto [ai, aj] = anchor;
  if (!d.inside(ai, aj)) throw DomainError("anchor cell is masked");
  if (!d.connected()) throw DomainError("mask is not connected");

  size_t n = static_cast<size_t>(d.nx) * d.ny;
  std::vector<double> s1(n, kNaN), s2(n, kNaN);

  // staircase 1: x-leg along the anchor row, then y-leg along the column
  std::vector<double> vals;
  std::vector<int> is, js;
  std::vector<double> xleg(d.nx, kNaN);
  xleg[ai] = 0.0;
  for (int dir = -1; dir <= 1; dir += 2) {
    line_cumulative(d, fx, ai, aj, dir, 0, dir, vals, is, js);
    for (size_t k = 0; k < vals.size(); ++k) xleg[is[k]] = vals[k];
  }
  for (int i = 0; i < d.nx; ++i) {
    if (std::isnan(xleg[i])) continue;
    s1[d.index(i, aj)] = xleg[i];
    for (int dir = -1; dir <= 1; dir += 2) {
      line_cumulative(d, fy, i, aj, 0, dir, dir, vals, is, js);
      for (size_t k = 0; k < vals.size(); ++k)
        s1[d.index(is[k], js[k])] = xleg[i] + vals[k];
    }
  }

  // staircase 2: y-leg along the anchor column, then x-leg along the row
  std::vector<double> yleg(d.ny, kNaN);
  yleg[aj] = 0.0;
  for (int dir = -1; dir <= 1; dir += 2) {
    line_cumulative(d, fy, ai, aj, 0, dir, dir, vals, is, js);
    for (size_t k = 0; k < vals.size(); ++k) yleg[js[k]] = vals[k];
  }
  for (int j = 0; j < d.ny; ++j) {
    if (std::isnan(yleg[j])) continue;
    s2[d.index(ai, j)] = yleg[j];
    for (int dir = -1; dir <= 1; dir += 2) {
      line_cumulative(d, fx, ai, j, dir, 0, dir, vals, is, js);
      for (size_t k = 0; k < vals.size(); ++k)
        s2[d.index(is[k], js[k])] = yleg[j] + vals[k];
    }
  }

  ScalarField out(d, params);
  std::vector<std::uint8_t> have(n, 0);
  std::queue<std::pair<int, int>> frontier;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      bool h1 = !std::isnan(s1[k]), h2 = !std::isnan(s2[k]);
      if (h1 || h2) {
        out.at(i, j) = h1 && h2 ? 0.5 * (s1[k] + s2[k]) : (h1 ? s1[k] : s2[k]);
        have[k] = 1;
        frontier.emplace(i, j);
      }
    }

  // breadth-first fill for cells no monotone staircase can reach
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  while (!frontier.empty()) {
    auto [i, j] = frontier.front();
    frontier.pop();
    int k = d.index(i, j);
    for (int t = 0; t < 4; ++t) {
      int ii = i + dx[t], jj = j + dy[t];
      if (!d.inside(ii, jj) || have[d.index(ii, jj)]) continue;
      int kk = d.index(ii, jj);
      double step;
      if (dy[t] == 0)
        step = dx[t] * 0.5 * d.h * (fx[k] + fx[kk]);
      else
        step = dy[t] * 0.5 * d.h * (fy[k] + fy[kk]);
      out.values[kk] = out.values[k] + step;
      have[kk] = 1;
      frontier.emplace(ii, jj);
    }
  }
  return out;
}

double gauge_distance(const ScalarField& a, const ScalarField& b) {
  if (!a.domain.same_layout(b.domain))
    throw DomainError("fields live on different grids");
  long double sum = 0.0L;
  long n = 0;
  for (int j = 0; j < a.domain.ny; ++j)
    for (int i = 0; i < a.domain.nx; ++i)
      if (a.inside(i, j) && b.inside(i, j)) {
        sum += a.at(i, j) - b.at(i, j);
        ++n;
      }
  if (n == 0) throw DomainError("fields share no unmasked cells");
  double c = static_cast<double>(sum / n);
  double worst = 0.0;
  for (int j = 0; j < a.domain.ny; ++j)
    for (int i = 0; i < a.domain.nx; ++i)
      if (a.inside(i, j) && b.inside(i, j))
        worst = std::max(worst, std::fabs(a.at(i, j) - b.at(i, j) - c));
  return worst;
}

DualPair dualize(const ScalarField& u, const DualizeOptions& opts) {
  const DomainSpec& d = u.domain;
  d.validate_chart(u.params);
  if (!d.connected()) throw DomainError("mask is not connected");
  if (!d.simply_connected())
    throw DomainError(
        "mask is not simply connected: the twinned form integral is path "
        "dependent");

  FrameField frame = generalized_gradient(u, opts.spacelike_margin);

  CmcCheck cmc = cmc_deviation(u, opts.spacelike_margin);
  double rel = cmc.extrapolated / std::max(1.0, std::fabs(cmc.mean));
  if (rel > opts.cmc_tol) {
    std::ostringstream msg;
    msg << "source is not CMC: curvature range [" << cmc.min << ", "
        << cmc.max << "], extrapolated deviation " << cmc.extrapolated;
    throw NumericError(NumericFailure::NotConstantCurvature, msg.str());
  }
  double H = opts.prescribed_H.value_or(cmc.mean);
  // A prescription is only a de-noised measurement; one contradicting the
  // discrete curvature would integrate a visibly non-closed form.
  if (opts.prescribed_H) {
    double slack = std::max(cmc.extrapolated, 10.0 * d.h * d.h) +
                   opts.cmc_tol * std::max(1.0, std::fabs(cmc.mean));
    if (std::fabs(H - cmc.mean) > slack) {
      std::ostringstream msg;
      msg << "prescribed curvature " << H << " contradicts the measured "
          << cmc.mean << " (slack " << slack << ")";
      throw NumericError(NumericFailure::InfeasibleTarget, msg.str());
    }
  }

  TwinDirection dir = u.params.causal == Causal::Riemannian
                          ? TwinDirection::EtoL
                          : TwinDirection::LtoE;
  FrameField twinned = twin_gradient(frame, dir, H);
  SpaceParams target = twinned.params;

  DualPair pair;
  pair.source = u;
  pair.source_H = H;
  pair.anchor = opts.anchor.value_or(default_anchor(d));
  if (!d.inside(pair.anchor.first, pair.anchor.second))
    throw DomainError("anchor cell is masked");

  pair.residuals.integrability = integrability_residual(twinned, target);

  std::vector<double> fx, fy;
  chart_one_form(twinned, target, fx, fy);
  pair.target = integrate_form(d, target, fx, fy, pair.anchor);

  // omega-product: algebraic normalization of the twin
  double wp = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j))
        wp = std::max(wp, std::fabs(frame.w(i, j) * twinned.w(i, j) - 1.0));
  pair.residuals.omega_product = wp;

  // twin residual: frame recomputed from the integrated field vs the twin
  FrameField check = generalized_gradient(pair.target, opts.spacelike_margin);
  double tr = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) {
        tr = std::max(tr, std::fabs(check.a(i, j) - twinned.a(i, j)));
        tr = std::max(tr, std::fabs(check.b(i, j) - twinned.b(i, j)));
      }
  pair.residuals.twin = tr;
  return pair;
}

double roundtrip_error(const DualPair& pair, const DualizeOptions& opts) {
  DualizeOptions back = opts;
  back.prescribed_H = pair.source.params.bundle;
  back.anchor = pair.anchor;
  DualPair rec = dualize(pair.target, back);
  return gauge_distance(rec.target, pair.source);
}

}  // namespace twingraph
