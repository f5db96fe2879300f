#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twingraph {

enum class Causal { Riemannian, Lorentzian };

// Parameters of the one-chart model of a homogeneous 3-space fibering over a
// surface of curvature kappa, with bundle curvature `bundle` (usually written
// tau).  The chart lives on { (x,y) : 1 + (kappa/4)(x^2+y^2) > 0 } and the
// metric is
//   lambda^2 (dx^2 + dy^2) + eps (dz + eps tau lambda (y dx - x dy))^2,
// lambda = (1 + kappa (x^2+y^2)/4)^(-1), eps = +1 Riemannian, -1 Lorentzian.
struct SpaceParams {
  double kappa = 0.0;
  double bundle = 0.0;
  Causal causal = Causal::Riemannian;

  double epsilon() const { return causal == Causal::Riemannian ? 1.0 : -1.0; }
  bool riemannian() const { return causal == Causal::Riemannian; }
};

double conformal_factor(const SpaceParams& sp, double x, double y);

// Chart admissibility: 1 + (kappa/4) r^2 > 0.
bool in_chart(const SpaceParams& sp, double x, double y);

// Squared length of tangent vector v at point p in the model metric.
// Negative values signal timelike vectors in the Lorentzian case.
double metric_eval(const SpaceParams& sp, const std::array<double, 3>& point,
                   const std::array<double, 3>& vec);

// Cheeger constant of the base surface: 0 for kappa >= 0, sqrt(-kappa)/2
// for kappa < 0.
double cheeger_constant(double kappa);

// Open interval of chart radii r for which the horizontal circle
// t -> (r cos t, r sin t, 0) is timelike.  Empty optional when no such
// radius exists within the admissible chart.
struct RadiusInterval {
  double lo = 0.0;
  double hi = 0.0;  // +inf for unbounded
};
std::optional<RadiusInterval> timelike_circle_range(const SpaceParams& sp);

// Classification of (kappa, tau) against the completeness obstruction for
// spacelike surfaces: discriminant kappa + 4 tau^2.
enum class ExistenceVerdict {
  NoCompleteSpacelike,   // kappa + 4 tau^2 > 0 and kappa <= 0
  CriticalRegime,        // kappa + 4 tau^2 = 0
  SubcriticalRegime,     // kappa + 4 tau^2 < 0
  OutsideHypothesis,     // kappa > 0 (and discriminant > 0)
};
ExistenceVerdict existence_classifier(double kappa, double tau);
std::string verdict_name(ExistenceVerdict v);

// Sibling-space parameter map: given (kappa1, tau1, H1) and a desired tau2,
// returns (kappa2, H2) with kappa2 - 4 tau2^2 = kappa1 - 4 tau1^2 and
// tau2^2 + H2^2 = tau1^2 + H1^2.  H2 is returned nonnegative; throws when
// the radicand tau1^2 + H1^2 - tau2^2 is negative.
struct SiblingParams {
  double kappa = 0.0;
  double tau = 0.0;
  double H = 0.0;
};
SiblingParams daniel_parameter_map(double kappa1, double tau1, double H1,
                                   double tau2);

// Cell-centered rectangular grid with a boolean inside-mask.  Cell (i,j)
// has center (x0 + i h, y0 + j h); values are stored row-major, j outer.
struct DomainSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> mask;  // size nx*ny, 1 = inside

  int index(int i, int j) const { return j * nx + i; }
  bool in_bounds(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny;
  }
  bool inside(int i, int j) const {
    return in_bounds(i, j) && mask[index(i, j)] != 0;
  }
  double x(int i) const { return x0 + i * h; }
  double y(int j) const { return y0 + j * h; }
  int count_inside() const;
  bool full_rectangle() const;

  // All unmasked cells 4-connected?
  bool connected() const;
  // Euler characteristic of the union of closed unit cells.
  int euler_characteristic() const;
  bool simply_connected() const { return connected() && euler_characteristic() == 1; }

  bool same_layout(const DomainSpec& other) const;

  // Symmetric grid of odd cell counts covering [-half, half]^2 with the
  // origin on a cell center; mask keeps cells with center radius <= R.
  static DomainSpec disk(double R, double h, double pad = 0.0);
  static DomainSpec rectangle(double hx, double hy, double h);

  // Every unmasked cell must satisfy the chart condition.
  void validate_chart(const SpaceParams& sp) const;
};

}  // namespace twingraph
