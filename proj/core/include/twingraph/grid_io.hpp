#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "twingraph/field.hpp"

namespace twingraph {

// Text format for sampled graphs: one JSON header line
//   {"schema_version":1,"kappa":..,"bundle":..,"causal":"riemannian",
//    "nx":..,"ny":..,"x0":..,"y0":..,"h":..[,"H_expected":..]}
// followed by ny comma-separated rows (j outer, i inner) whose entries are
// shortest round-trip doubles; masked cells hold the token NaN.  Values
// re-read bit-exactly.
struct GridFile {
  ScalarField field;
  std::optional<double> expected_H;
};

void write_grid(std::ostream& os, const ScalarField& u,
                std::optional<double> expected_H = {});
void write_grid_file(const std::string& path, const ScalarField& u,
                     std::optional<double> expected_H = {});

GridFile read_grid(std::istream& is);
GridFile read_grid_file(const std::string& path);

}  // namespace twingraph
