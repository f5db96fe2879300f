#include "twingraph/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "twingraph/errors.hpp"
#include "twingraph/field_ops.hpp"

namespace twingraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string tag(const char* name, double R) {
  std::ostringstream os;
  os << name << "[R=" << R << "]";
  return os.str();
}

// Nested growing windows: radii from max(burn_in, 0.4 rmax) out to rmax.
std::vector<double> window_radii(const DomainSpec& d, double burn_in,
                                 int count) {
  double rmax = -1.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) rmax = std::max(rmax, std::hypot(d.x(i), d.y(j)));
  if (rmax < 0.0) throw DomainError("mask has no cells");
  double r0 = std::min(std::max(burn_in, 0.4 * rmax), rmax);
  count = std::max(1, count);
  std::vector<double> radii;
  if (count == 1 || r0 >= rmax) {
    radii.push_back(rmax);
    return radii;
  }
  for (int k = 0; k < count; ++k)
    radii.push_back(r0 + k * (rmax - r0) / (count - 1));
  return radii;
}

void gate_cmc(const ScalarField& u, const EstimateOptions& opt,
              double* mean_out, bool minimal) {
  CmcCheck cmc = cmc_deviation(u, opt.spacelike_margin);
  double scale = std::max(1.0, std::fabs(cmc.mean));
  if (cmc.extrapolated > opt.cmc_tol * scale ||
      (minimal && std::fabs(cmc.mean) > opt.cmc_tol)) {
    std::ostringstream msg;
    msg << "curvature is not constant" << (minimal ? " zero" : "")
        << ": mean " << cmc.mean << ", deviation " << cmc.extrapolated;
    throw NumericError(NumericFailure::NotConstantCurvature, msg.str());
  }
  if (mean_out) *mean_out = cmc.mean;
}

void finish(EstimateReport& rep, double viol) {
  if (!std::isfinite(viol)) viol = viol > 0.0 ? 1.0 : -1.0;
  rep.max_violation = viol;
  rep.pass = viol <= 0.0;
}

}  // namespace

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["bound"] = bound;
  nlohmann::json w = nlohmann::json::object();
  for (const auto& kv : witnesses) w[kv.first] = kv.second;
  j["witnesses"] = w;
  j["max_violation"] = max_violation;
  j["pass"] = pass;
  return j.dump(2);
}

double EstimateReport::find(const std::string& key) const {
  for (const auto& kv : witnesses)
    if (kv.first == key) return kv.second;
  throw DomainError("no witness named " + key);
}

EstimateReport heinz_flux_check(const ScalarField& u,
                                const std::vector<double>& disks,
                                const EstimateOptions& opt) {
  const DomainSpec& d = u.domain;
  if (disks.empty()) throw DomainError("no disk radii given");
  double H = 0.0;
  gate_cmc(u, opt, &H, false);

  EstimateReport rep;
  rep.bound = "heinz_flux";
  rep.witnesses.emplace_back("H", H);
  double viol = -kInf;

  for (double R : disks) {
    if (!(R > 0.0)) throw DomainError("disk radius must be positive");
    int ilo = static_cast<int>(std::floor((-R - d.x0) / d.h));
    int ihi = static_cast<int>(std::ceil((R - d.x0) / d.h));
    int jlo = static_cast<int>(std::floor((-R - d.y0) / d.h));
    int jhi = static_cast<int>(std::ceil((R - d.y0) / d.h));
    double R2 = R * R;
    auto covered = [&](int i, int j) {
      double x = d.x0 + i * d.h, y = d.y0 + j * d.h;
      return x * x + y * y <= R2;
    };
    long n = 0;
    for (int j = jlo; j <= jhi; ++j)
      for (int i = ilo; i <= ihi; ++i) {
        if (!covered(i, j)) continue;
        if (!interior_cell(d, i, j)) {
          std::ostringstream msg;
          msg << "disk R=" << R << " is not contained in the mask interior";
          throw DomainError(msg.str());
        }
        ++n;
      }
    if (n == 0) throw DomainError("disk contains no cells");

    auto in_region = [&](int i, int j) {
      return i >= ilo && i <= ihi && j >= jlo && j <= jhi && covered(i, j);
    };
    long double div_sum = 0.0L, flux_sum = 0.0L, area = 0.0L, length = 0.0L;
    for (int j = jlo; j <= jhi; ++j)
      for (int i = ilo; i <= ihi; ++i) {
        if (!covered(i, j)) continue;
        double fe = half_flux_x(u, i, j, opt.spacelike_margin);
        double fw = half_flux_x(u, i - 1, j, opt.spacelike_margin);
        double fn = half_flux_y(u, i, j, opt.spacelike_margin);
        double fs = half_flux_y(u, i, j - 1, opt.spacelike_margin);
        div_sum += (static_cast<long double>(fe) - fw + fn - fs) * d.h;
        double x = d.x(i), y = d.y(j);
        double lam = conformal_factor(u.params, x, y);
        area += static_cast<long double>(lam) * lam * d.h * d.h;
        double hh = 0.5 * d.h;
        if (!in_region(i + 1, j)) {
          flux_sum += static_cast<long double>(fe) * d.h;
          length += conformal_factor(u.params, x + hh, y) * d.h;
        }
        if (!in_region(i - 1, j)) {
          flux_sum -= static_cast<long double>(fw) * d.h;
          length += conformal_factor(u.params, x - hh, y) * d.h;
        }
        if (!in_region(i, j + 1)) {
          flux_sum += static_cast<long double>(fn) * d.h;
          length += conformal_factor(u.params, x, y + hh) * d.h;
        }
        if (!in_region(i, j - 1)) {
          flux_sum -= static_cast<long double>(fs) * d.h;
          length += conformal_factor(u.params, x, y - hh) * d.h;
        }
      }
    double flux = static_cast<double>(flux_sum);
    double telescope = static_cast<double>(std::fabs(div_sum - flux_sum));
    double twoHA = 2.0 * H * static_cast<double>(area);
    double len = static_cast<double>(length);
    rep.witnesses.emplace_back(tag("flux", R), flux);
    rep.witnesses.emplace_back(tag("two_H_area", R), twoHA);
    rep.witnesses.emplace_back(tag("length", R), len);
    rep.witnesses.emplace_back(tag("telescope", R), telescope);
    viol = std::max(viol, telescope - 1e-12);
    viol = std::max(viol, std::fabs(twoHA - flux) - opt.flux_tol_factor * d.h);
    if (u.params.riemannian()) viol = std::max(viol, std::fabs(flux) - len);
  }
  finish(rep, viol);
  return rep;
}

EstimateReport cheng_yau_check(const ScalarField& v,
                               const EstimateOptions& opt) {
  if (v.params.riemannian() || v.params.kappa != 0.0)
    throw DomainError(
        "gradient estimate needs a Lorentzian space over the flat base");
  generalized_gradient(v, opt.spacelike_margin);  // spacelike gate
  double H = 0.0;
  gate_cmc(v, opt, &H, false);
  if (!(H > opt.cmc_tol))
    throw DomainError("mean curvature must be positive");

  const DomainSpec& d = v.domain;
  std::vector<double> ux, uy;
  chart_gradient(v, ux, uy);
  std::vector<double> radius, value;
  double ratio_max = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double x = d.x(i), y = d.y(j);
      double r2 = x * x + y * y;
      double g2 = ux[k] * ux[k] + uy[k] * uy[k];
      double q = (1.0 + r2) * (1.0 + r2);
      radius.push_back(std::sqrt(r2));
      value.push_back((1.0 - g2) * q);
      if (1.0 - g2 > 0.0) {
        double w = v.at(i, j) - x * ux[k] - y * uy[k];
        ratio_max = std::max(ratio_max, 4.0 * w * w / ((1.0 - g2) * q));
      }
    }

  EstimateReport rep;
  rep.bound = "cheng_yau_gradient";
  rep.witnesses.emplace_back("H", H);
  rep.witnesses.emplace_back("cy_ratio_max", ratio_max);
  std::vector<double> radii = window_radii(d, opt.burn_in, opt.windows);
  double viol = -kInf, prev = kInf, afull = kInf;
  for (double R : radii) {
    double a = kInf;
    for (size_t k = 0; k < radius.size(); ++k)
      if (radius[k] <= R) a = std::min(a, value[k]);
    if (!std::isfinite(a)) continue;
    rep.witnesses.emplace_back(tag("A*", R), a);
    if (std::isfinite(prev)) viol = std::max(viol, a - prev);
    prev = a;
    afull = a;
  }
  rep.witnesses.emplace_back("A*", afull);
  viol = std::max(viol, -afull);
  finish(rep, viol);
  return rep;
}

EstimateReport nil_growth_check(const ScalarField& u,
                                const EstimateOptions& opt) {
  if (!u.params.riemannian() || u.params.kappa != 0.0)
    throw DomainError("growth bounds need the flat Riemannian base");
  gate_cmc(u, opt, nullptr, true);

  const DomainSpec& d = u.domain;
  FrameField f = generalized_gradient(u, opt.spacelike_margin);
  std::vector<double> radius, bval, cval;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      double x = d.x(i), y = d.y(j);
      double r2 = x * x + y * y;
      double g = std::hypot(f.a(i, j), f.b(i, j));
      radius.push_back(std::sqrt(r2));
      bval.push_back(g / (1.0 + r2));
      cval.push_back(std::fabs(u.at(i, j)) / std::pow(1.0 + r2, 1.5));
    }

  EstimateReport rep;
  rep.bound = "nil_growth";
  std::vector<double> radii = window_radii(d, opt.burn_in, opt.windows);
  double viol = -kInf;
  double bprev = -kInf, cprev = -kInf, bfull = 0.0, cfull = 0.0;
  for (double R : radii) {
    double b = 0.0, c = 0.0;
    long n = 0;
    for (size_t k = 0; k < radius.size(); ++k)
      if (radius[k] <= R) {
        b = std::max(b, bval[k]);
        c = std::max(c, cval[k]);
        ++n;
      }
    if (n == 0) continue;
    rep.witnesses.emplace_back(tag("B*", R), b);
    rep.witnesses.emplace_back(tag("C*", R), c);
    if (R >= opt.burn_in && bprev > -kInf) {
      viol = std::max(viol, b - bprev - 1e-12);
      viol = std::max(viol, c - cprev - 1e-12);
    }
    bprev = b;
    cprev = c;
    bfull = b;
    cfull = c;
  }
  rep.witnesses.emplace_back("B*", bfull);
  rep.witnesses.emplace_back("C*", cfull);
  if (!std::isfinite(bfull) || !std::isfinite(cfull)) viol = 1.0;
  finish(rep, viol);
  return rep;
}

double coarea_identity(const ScalarField& u, const ScalarField& f,
                       double* graph_side, double* base_side) {
  if (!u.domain.same_layout(f.domain))
    throw DomainError("test field layout differs from the graph layout");
  const DomainSpec& d = u.domain;
  FrameField fr = generalized_gradient(u);
  FundamentalFormField I = form_from_frame(fr, true);
  long double lhs = 0.0L, rhs = 0.0L;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j) || !f.domain.inside(i, j)) continue;
      double dA = std::sqrt(I.det(i, j)) * d.h * d.h;
      double nu = 1.0 / fr.w(i, j);
      lhs += static_cast<long double>(f.at(i, j)) * nu * dA;
      double lam = conformal_factor(u.params, d.x(i), d.y(j));
      rhs += static_cast<long double>(f.at(i, j)) * lam * lam * d.h * d.h;
    }
  if (graph_side) *graph_side = static_cast<double>(lhs);
  if (base_side) *base_side = static_cast<double>(rhs);
  return static_cast<double>(std::fabs(lhs - rhs));
}

EstimateReport angle_integrability_probe(const ScalarField& u,
                                         const EstimateOptions& opt) {
  if (!u.params.riemannian() || u.params.kappa != 0.0)
    throw DomainError("growth probe needs the flat Riemannian base");
  gate_cmc(u, opt, nullptr, true);

  const DomainSpec& d = u.domain;
  FrameField f = generalized_gradient(u, opt.spacelike_margin);
  std::vector<double> radius, weight;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      double x = d.x(i), y = d.y(j);
      double lam = conformal_factor(u.params, x, y);
      radius.push_back(std::hypot(x, y));
      weight.push_back(lam * lam * d.h * d.h / f.w(i, j));
    }

  EstimateReport rep;
  rep.bound = "angle_integrability";
  std::vector<double> radii = window_radii(d, opt.burn_in, opt.windows);
  if (radii.size() < 2)
    throw DomainError("mask too small to probe growth across windows");
  std::vector<double> integral;
  for (double R : radii) {
    long double s = 0.0L;
    for (size_t k = 0; k < radius.size(); ++k)
      if (radius[k] <= R) s += weight[k];
    integral.push_back(static_cast<double>(s));
    rep.witnesses.emplace_back(tag("I", R), static_cast<double>(s));
  }
  double min_slope = kInf;
  for (size_t k = 1; k < radii.size(); ++k) {
    double dlog = std::log(radii[k]) - std::log(radii[k - 1]);
    if (dlog <= 0.0) continue;
    min_slope = std::min(min_slope, (integral[k] - integral[k - 1]) / dlog);
  }
  rep.witnesses.emplace_back("min_log_slope", min_slope);
  finish(rep, opt.slope_floor - min_slope);
  return rep;
}

}  // namespace twingraph
