#include "twingraph/field.hpp"

#include <limits>

namespace twingraph {

ScalarField::ScalarField(DomainSpec d, SpaceParams sp)
    : domain(std::move(d)), params(sp) {
  values.assign(static_cast<size_t>(domain.nx) * domain.ny,
                std::numeric_limits<double>::quiet_NaN());
}

ScalarField ScalarField::sample(const DomainSpec& d, const SpaceParams& sp,
                                const std::function<double(double, double)>& f) {
  d.validate_chart(sp);
  ScalarField out(d, sp);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) out.at(i, j) = f(d.x(i), d.y(j));
  return out;
}

}  // namespace twingraph
