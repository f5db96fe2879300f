#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "doctest.h"
#include "twingraph/errors.hpp"
#include "twingraph/grid_io.hpp"

using namespace twingraph;

namespace {

std::uint64_t bits(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  return u;
}

ScalarField awkward_field() {
  DomainSpec d;
  d.nx = 3;
  d.ny = 2;
  d.x0 = -0.1;
  d.y0 = 0.2;
  d.h = 0.05;
  d.mask = {1, 1, 1, 1, 0, 1};
  SpaceParams sp{-1.25, 0.75, Causal::Lorentzian};
  ScalarField u(d, sp);
  u.at(0, 0) = 5e-324;                   // smallest denormal
  u.at(1, 0) = -0.0;
  u.at(2, 0) = 1e308;
  u.at(0, 1) = 3.141592653589793;
  u.at(2, 1) = -1.0 / 3.0;
  return u;
}

}  // namespace

TEST_CASE("grids survive a write-read cycle bit-exactly") {
  ScalarField u = awkward_field();
  std::stringstream ss;
  write_grid(ss, u, 0.625);
  GridFile gf = read_grid(ss);

  const DomainSpec& d = gf.field.domain;
  CHECK(d.nx == 3);
  CHECK(d.ny == 2);
  CHECK(d.x0 == -0.1);
  CHECK(d.y0 == 0.2);
  CHECK(d.h == 0.05);
  CHECK(gf.field.params.kappa == -1.25);
  CHECK(gf.field.params.bundle == 0.75);
  CHECK(gf.field.params.causal == Causal::Lorentzian);
  REQUIRE(gf.expected_H.has_value());
  CHECK(*gf.expected_H == 0.625);

  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) {
      CHECK(d.inside(i, j) == u.domain.inside(i, j));
      if (d.inside(i, j)) CHECK(bits(gf.field.at(i, j)) == bits(u.at(i, j)));
    }
  CHECK(bits(gf.field.at(1, 0)) == bits(-0.0));  // signed zero preserved
}

TEST_CASE("expected curvature header is optional") {
  ScalarField u = awkward_field();
  std::stringstream ss;
  write_grid(ss, u);
  GridFile gf = read_grid(ss);
  CHECK(!gf.expected_H.has_value());
}

TEST_CASE("file round trip") {
  ScalarField u = awkward_field();
  std::string path = "grid_io_roundtrip.grid";
  write_grid_file(path, u, -2.0);
  GridFile gf = read_grid_file(path);
  CHECK(*gf.expected_H == -2.0);
  CHECK(bits(gf.field.at(2, 0)) == bits(1e308));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_grid_file(path), FormatError);
}

TEST_CASE("malformed inputs are rejected with format errors") {
  auto expect_bad = [](const std::string& text) {
    std::stringstream ss(text);
    CHECK_THROWS_AS(read_grid(ss), FormatError);
  };

  expect_bad("");  // no header at all
  expect_bad("not json\n1,2\n");
  expect_bad("[1,2,3]\n");  // header not an object

  std::string hdr =
      R"({"schema_version":1,"kappa":0,"bundle":0,"causal":"riemannian",)"
      R"("nx":2,"ny":2,"x0":0,"y0":0,"h":0.1})";
  expect_bad(hdr + "\n1,2\n");            // missing second row
  expect_bad(hdr + "\n1,2,3\n4,5\n");     // too many columns
  expect_bad(hdr + "\n1\n4,5\n");         // too few columns
  expect_bad(hdr + "\n1,inf\n4,5\n");     // non-finite unmasked value
  expect_bad(hdr + "\n1,zz\n4,5\n");      // unparsable token
  expect_bad(hdr + "\n1,2\n4,5\ntrail\n");

  expect_bad(R"({"schema_version":2,"kappa":0,"bundle":0,)"
             R"("causal":"riemannian","nx":1,"ny":1,"x0":0,"y0":0,"h":0.1})"
             "\n1\n");
  expect_bad(R"({"schema_version":1,"kappa":0,"bundle":0,"causal":"euclid",)"
             R"("nx":1,"ny":1,"x0":0,"y0":0,"h":0.1})"
             "\n1\n");
  expect_bad(R"({"schema_version":1,"kappa":0,"bundle":0,)"
             R"("causal":"riemannian","nx":0,"ny":1,"x0":0,"y0":0,"h":0.1})"
             "\n");
  expect_bad(R"({"schema_version":1,"kappa":0,"bundle":0,)"
             R"("causal":"riemannian","nx":1,"ny":1,"x0":0,"y0":0,"h":-0.1})"
             "\n1\n");
  expect_bad(R"({"schema_version":1,"bundle":0,"causal":"riemannian",)"
             R"("nx":1,"ny":1,"x0":0,"y0":0,"h":0.1})"
             "\n1\n");  // kappa missing
}

TEST_CASE("writing a non-finite unmasked value fails") {
  ScalarField u = awkward_field();
  u.at(0, 0) = std::nan("");
  std::stringstream ss;
  CHECK_THROWS_AS(write_grid(ss, u), FormatError);
}

TEST_CASE("fully masked rows still carry their cell count") {
  std::string hdr =
      R"({"schema_version":1,"kappa":0,"bundle":0,"causal":"riemannian",)"
      R"("nx":3,"ny":2,"x0":0,"y0":0,"h":0.1})";
  std::stringstream ss(hdr + "\nNaN,NaN,NaN\n1,NaN,3\n");
  GridFile gf = read_grid(ss);
  CHECK(gf.field.domain.count_inside() == 2);
  CHECK(!gf.field.domain.inside(0, 0));
  CHECK(gf.field.at(0, 1) == 1.0);
  CHECK(gf.field.at(2, 1) == 3.0);
}

TEST_CASE("windows line endings are tolerated") {
  std::string hdr =
      R"({"schema_version":1,"kappa":0,"bundle":0,"causal":"riemannian",)"
      R"("nx":2,"ny":1,"x0":0,"y0":0,"h":0.1})";
  std::stringstream ss(hdr + "\r\n0.5,NaN\r\n");
  GridFile gf = read_grid(ss);
  CHECK(gf.field.at(0, 0) == 0.5);
  CHECK(!gf.field.domain.inside(1, 0));
}
