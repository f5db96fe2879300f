#include "twingraph/space.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "twingraph/errors.hpp"

namespace twingraph {

double conformal_factor(const SpaceParams& sp, double x, double y) {
  double q = 1.0 + 0.25 * sp.kappa * (x * x + y * y);
  if (q <= 0.0) throw DomainError("point outside the admissible chart");
  return 1.0 / q;
}

bool in_chart(const SpaceParams& sp, double x, double y) {
  return 1.0 + 0.25 * sp.kappa * (x * x + y * y) > 0.0;
}

double metric_eval(const SpaceParams& sp, const std::array<double, 3>& point,
                   const std::array<double, 3>& vec) {
  double x = point[0], y = point[1];
  double lam = conformal_factor(sp, x, y);
  double a = vec[0], b = vec[1], c = vec[2];
  double eps = sp.epsilon();
  double fiber = c + eps * sp.bundle * lam * (y * a - x * b);
  return lam * lam * (a * a + b * b) + eps * fiber * fiber;
}

double cheeger_constant(double kappa) {
  return kappa >= 0.0 ? 0.0 : 0.5 * std::sqrt(-kappa);
}

std::optional<RadiusInterval> timelike_circle_range(const SpaceParams& sp) {
  // Along gamma(t) = (r cos t, r sin t, 0):
  //   <gamma', gamma'> = lambda^2 r^2 (1 - tau^2 r^2),
  // so the circle is timelike iff |tau| r > 1, within the chart radius.
  if (sp.causal != Causal::Lorentzian)
    throw DomainError("timelike circles require a Lorentzian space");
  double tau = std::fabs(sp.bundle);
  if (tau == 0.0) return std::nullopt;
  double lo = 1.0 / tau;
  double hi = sp.kappa < 0.0 ? 2.0 / std::sqrt(-sp.kappa)
                             : std::numeric_limits<double>::infinity();
  if (lo >= hi) return std::nullopt;
  return RadiusInterval{lo, hi};
}

ExistenceVerdict existence_classifier(double kappa, double tau) {
  double disc = kappa + 4.0 * tau * tau;
  if (disc == 0.0) return ExistenceVerdict::CriticalRegime;
  if (disc < 0.0) return ExistenceVerdict::SubcriticalRegime;
  return kappa <= 0.0 ? ExistenceVerdict::NoCompleteSpacelike
                      : ExistenceVerdict::OutsideHypothesis;
}

std::string verdict_name(ExistenceVerdict v) {
  switch (v) {
    case ExistenceVerdict::NoCompleteSpacelike: return "no_complete_spacelike";
    case ExistenceVerdict::CriticalRegime: return "critical";
    case ExistenceVerdict::SubcriticalRegime: return "subcritical";
    case ExistenceVerdict::OutsideHypothesis: return "outside_hypothesis";
  }
  return "unknown";
}

SiblingParams daniel_parameter_map(double kappa1, double tau1, double H1,
                                   double tau2) {
  // kappa2 = kappa1 + 4 (tau2^2 - tau1^2) keeps kappa - 4 tau^2 and is exact
  // when tau2 == tau1.
  double radicand = tau1 * tau1 + H1 * H1 - tau2 * tau2;
  if (radicand < 0.0)
    throw NumericError(NumericFailure::InfeasibleTarget,
                       "no sibling space: tau2^2 exceeds tau1^2 + H1^2");
  SiblingParams out;
  out.kappa = kappa1 + 4.0 * (tau2 * tau2 - tau1 * tau1);
  out.tau = tau2;
  out.H = std::sqrt(radicand);
  return out;
}

int DomainSpec::count_inside() const {
  int n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

bool DomainSpec::full_rectangle() const {
  return count_inside() == nx * ny;
}

bool DomainSpec::same_layout(const DomainSpec& other) const {
  return nx == other.nx && ny == other.ny && x0 == other.x0 &&
         y0 == other.y0 && h == other.h;
}

bool DomainSpec::connected() const {
  int total = count_inside();
  if (total == 0) return false;
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::queue<std::pair<int, int>> q;
  for (int j = 0; j < ny && q.empty(); ++j)
    for (int i = 0; i < nx && q.empty(); ++i)
      if (inside(i, j)) {
        q.emplace(i, j);
        seen[index(i, j)] = 1;
      }
  int reached = 0;
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    ++reached;
    for (int k = 0; k < 4; ++k) {
      int ii = i + dx[k], jj = j + dy[k];
      if (inside(ii, jj) && !seen[index(ii, jj)]) {
        seen[index(ii, jj)] = 1;
        q.emplace(ii, jj);
      }
    }
  }
  return reached == total;
}

int DomainSpec::euler_characteristic() const {
  // Treat each unmasked cell as a closed unit square; chi = V - E + F over
  // the resulting cell complex.  A cell has corners (i..i+1, j..j+1).
  auto cell = [&](int i, int j) { return inside(i, j); };
  long V = 0, E = 0, F = count_inside();
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      bool v = cell(i, j) || cell(i - 1, j) || cell(i, j - 1) ||
               cell(i - 1, j - 1);
      V += v;
      // horizontal edge from corner (i,j) to (i+1,j)
      if (i < nx && (cell(i, j) || cell(i, j - 1))) ++E;
      // vertical edge from corner (i,j) to (i,j+1)
      if (j < ny && (cell(i, j) || cell(i - 1, j))) ++E;
    }
  return static_cast<int>(V - E + F);
}

namespace {

DomainSpec symmetric_grid(double half, double h) {
  int m = static_cast<int>(std::ceil(half / h - 1e-12));
  int n = 2 * m + 1;
  DomainSpec d;
  d.h = h;
  d.nx = d.ny = n;
  d.x0 = -m * h;
  d.y0 = -m * h;
  d.mask.assign(static_cast<size_t>(n) * n, 1);
  return d;
}

}  // namespace

DomainSpec DomainSpec::disk(double R, double h, double pad) {
  DomainSpec d = symmetric_grid(R + pad, h);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      double x = d.x(i), y = d.y(j);
      d.mask[d.index(i, j)] = (x * x + y * y <= R * R) ? 1 : 0;
    }
  return d;
}

DomainSpec DomainSpec::rectangle(double hx, double hy, double h) {
  int mx = static_cast<int>(std::ceil(hx / h - 1e-12));
  int my = static_cast<int>(std::ceil(hy / h - 1e-12));
  DomainSpec d;
  d.h = h;
  d.nx = 2 * mx + 1;
  d.ny = 2 * my + 1;
  d.x0 = -mx * h;
  d.y0 = -my * h;
  d.mask.assign(static_cast<size_t>(d.nx) * d.ny, 1);
  return d;
}

void DomainSpec::validate_chart(const SpaceParams& sp) const {
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (inside(i, j) && !in_chart(sp, x(i), y(j)))
        throw DomainError("grid cell outside the admissible chart");
}

}  // namespace twingraph
