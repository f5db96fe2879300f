// twingraph: command line front end for the vertical-graph toolkit.
//
// Exit codes: 0 success, 1 usage, 2 domain/format error, 3 numeric failure.
// Errors print a single JSON line on stderr:
//   {"error":"usage|format|domain|numeric"[,"failure":"..."],"message":"..."}

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twingraph/catalog.hpp"
#include "twingraph/duality.hpp"
#include "twingraph/errors.hpp"
#include "twingraph/estimates.hpp"
#include "twingraph/field_ops.hpp"
#include "twingraph/grid_io.hpp"
#include "twingraph/hessian.hpp"
#include "twingraph/solver.hpp"
#include "twingraph/space.hpp"

namespace {

using namespace twingraph;
using nlohmann::json;

// Flag values that fail their own mini-grammar (shapes, anchors, disk lists)
// are usage errors, not data errors.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& tok, const std::string& what) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw UsageError(what + ": cannot parse number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// --shape disk:R or rect:a,b (half-widths a, b).
DomainSpec parse_shape(const std::string& spec, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw UsageError("--h: step must be positive");
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  if (kind == "disk" && colon != std::string::npos) {
    double R = parse_number(spec.substr(colon + 1), "--shape disk radius");
    if (!(R > 0.0)) throw UsageError("--shape: disk radius must be positive");
    return DomainSpec::disk(R, h);
  }
  if (kind == "rect" && colon != std::string::npos) {
    auto parts = split(spec.substr(colon + 1), ',');
    if (parts.size() != 2)
      throw UsageError("--shape: rect takes two half-widths, rect:a,b");
    double a = parse_number(parts[0], "--shape rect half-width");
    double b = parse_number(parts[1], "--shape rect half-width");
    if (!(a > 0.0) || !(b > 0.0))
      throw UsageError("--shape: rect half-widths must be positive");
    return DomainSpec::rectangle(a, b, h);
  }
  throw UsageError("--shape: expected disk:R or rect:a,b, got '" + spec + "'");
}

// --bc const:c
std::function<double(double, double)> parse_bc(const std::string& spec) {
  auto colon = spec.find(':');
  if (spec.substr(0, colon) == "const" && colon != std::string::npos) {
    double c = parse_number(spec.substr(colon + 1), "--bc const value");
    return [c](double, double) { return c; };
  }
  throw UsageError("--bc: expected const:c, got '" + spec + "'");
}

std::pair<int, int> cell_from_coords(const DomainSpec& d, double cx,
                                     double cy) {
  int i = static_cast<int>(std::llround((cx - d.x0) / d.h));
  int j = static_cast<int>(std::llround((cy - d.y0) / d.h));
  if (!d.inside(i, j))
    throw DomainError("anchor (" + shortest(cx) + "," + shortest(cy) +
                      ") does not hit an unmasked cell");
  return {i, j};
}

void write_output(const std::string& out, const ScalarField& u,
                  std::optional<double> expected_H) {
  if (out.empty())
    write_grid(std::cout, u, expected_H);
  else
    write_grid_file(out, u, expected_H);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  return os;
}

// ---------------------------------------------------------------- curvature

struct CurvatureArgs {
  std::string grid;
  double margin = 1e-8;
};

int cmd_curvature(const CurvatureArgs& a) {
  GridFile g = read_grid_file(a.grid);
  ScalarField H = mean_curvature(g.field, a.margin);
  const DomainSpec& d = H.domain;

  long double sum = 0.0;
  long cells = 0;
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (H.inside(i, j)) {
        double v = H.at(i, j);
        sum += v;
        ++cells;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
  if (cells == 0)
    throw DomainError("no cell has the full 3x3 neighborhood unmasked");

  std::string line;
  for (int j = 0; j < d.ny; ++j) {
    line.clear();
    for (int i = 0; i < d.nx; ++i) {
      if (i) line += ',';
      line += H.inside(i, j) ? shortest(H.at(i, j)) : "NaN";
    }
    std::cout << line << '\n';
  }
  std::cout << "# H min=" << shortest(mn) << " max=" << shortest(mx)
            << " mean=" << shortest(static_cast<double>(sum / cells))
            << " cells=" << cells << '\n';
  return 0;
}

// ------------------------------------------------------------------ dualize

struct DualizeArgs {
  std::string grid;
  std::string anchor;  // "cx,cy" chart coordinates, empty = centroid cell
  std::string out;
  std::string report;
  double cmc_tol = 1e-3;
  double margin = 1e-8;
  double H_override = std::numeric_limits<double>::quiet_NaN();
};

json dual_report(const DualPair& pair, const DualizeOptions& o) {
  json r;
  r["H"] = pair.source_H;
  r["anchor"] = {pair.anchor.first, pair.anchor.second};
  r["anchor_xy"] = {pair.source.domain.x(pair.anchor.first),
                    pair.source.domain.y(pair.anchor.second)};
  r["integrability_residual"] = pair.residuals.integrability;
  r["twin_residual"] = pair.residuals.twin;
  r["omega_product_residual"] = pair.residuals.omega_product;
  r["roundtrip_residual"] = roundtrip_error(pair, o);
  return r;
}

int cmd_dualize(const DualizeArgs& a) {
  GridFile g = read_grid_file(a.grid);
  DualizeOptions o;
  o.cmc_tol = a.cmc_tol;
  o.spacelike_margin = a.margin;
  if (!std::isnan(a.H_override))
    o.prescribed_H = a.H_override;
  else if (g.expected_H)
    o.prescribed_H = *g.expected_H;
  if (!a.anchor.empty()) {
    auto parts = split(a.anchor, ',');
    if (parts.size() != 2) throw UsageError("--anchor: expected cx,cy");
    o.anchor = cell_from_coords(g.field.domain,
                                parse_number(parts[0], "--anchor"),
                                parse_number(parts[1], "--anchor"));
  }
  DualPair pair = dualize(g.field, o);
  // The dual is CMC tau_source in its own space.
  write_output(a.out, pair.target, g.field.params.bundle);
  json rep = dual_report(pair, o);
  if (!a.report.empty())
    open_out(a.report) << rep.dump(2) << '\n';
  else if (!a.out.empty())
    std::cout << rep.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string ugrid, vgrid;
  double cmc_tol = 1e-3;
  double margin = 1e-8;
};

int cmd_verify(const VerifyArgs& a) {
  GridFile gu = read_grid_file(a.ugrid);
  GridFile gv = read_grid_file(a.vgrid);
  const ScalarField& u = gu.field;
  const ScalarField& v = gv.field;
  if (!u.domain.same_layout(v.domain))
    throw FormatError("grids do not share a layout");
  if (u.params.kappa != v.params.kappa)
    throw FormatError("grids live over different base curvatures");
  if (u.params.causal == v.params.causal)
    throw FormatError("a twin pair needs one graph of each causal type");

  FrameField fu = generalized_gradient(u, a.margin);
  FrameField fv = generalized_gradient(v, a.margin);
  TwinDirection dir =
      u.params.riemannian() ? TwinDirection::EtoL : TwinDirection::LtoE;
  FrameField tw = twin_gradient(fu, dir, v.params.bundle);

  const DomainSpec& d = u.domain;
  double omega_prod = 0.0, nu_prod = 0.0, twin = 0.0, conf = 0.0;
  FundamentalFormField Iu = form_from_frame(fu);
  FundamentalFormField Iv = form_from_frame(fv);
  long common = 0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!u.inside(i, j) || !v.inside(i, j)) continue;
      ++common;
      int k = d.index(i, j);
      double wu = fu.omega[k], wv = fv.omega[k];
      omega_prod = std::max(omega_prod, std::fabs(wu * wv - 1.0));
      nu_prod = std::max(nu_prod, std::fabs(1.0 / (wu * wv) - 1.0));
      twin = std::max({twin, std::fabs(fv.alpha[k] - tw.alpha[k]),
                       std::fabs(fv.beta[k] - tw.beta[k])});
      double s = 1.0 / (wu * wu);
      conf = std::max({conf, std::fabs(Iv.e11[k] - s * Iu.e11[k]),
                       std::fabs(Iv.e12[k] - s * Iu.e12[k]),
                       std::fabs(Iv.e22[k] - s * Iu.e22[k])});
    }
  if (common == 0) throw FormatError("grids have no unmasked cell in common");

  DualizeOptions o;
  o.cmc_tol = a.cmc_tol;
  o.spacelike_margin = a.margin;
  o.prescribed_H = v.params.bundle;
  DualPair pair = dualize(u, o);

  json r;
  r["common_cells"] = common;
  r["omega_product_residual"] = omega_prod;
  r["nu_product_residual"] = nu_prod;
  r["twin_residual"] = twin;
  r["conformality_residual"] = conf;
  r["forward_gauge_distance"] = gauge_distance(pair.target, v);
  r["roundtrip_residual"] = roundtrip_error(pair, o);
  std::cout << r.dump(2) << '\n';
  return 0;
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  double kappa = 0.0;
  double tau = 0.0;
  double H = 0.0;
  std::string shape;
  std::string bc = "const:0";
  double h = 0.05;
  double tol = 1e-8;
  bool lorentzian = false;
  std::string out;
  double margin = 1e-8;
};

int cmd_solve(const SolveArgs& a) {
  DirichletProblem prob;
  prob.domain = parse_shape(a.shape, a.h);
  prob.params = {a.kappa, a.tau,
                 a.lorentzian ? Causal::Lorentzian : Causal::Riemannian};
  prob.domain.validate_chart(prob.params);
  prob.H = a.H;
  prob.boundary = parse_bc(a.bc);

  SolveOptions so;
  so.tol = a.tol;
  so.spacelike_margin = a.margin;
  SolveReport rep;
  ScalarField u = solve_dirichlet(prob, so, &rep);
  write_output(a.out, u, a.H);
  if (!a.out.empty()) {
    json r;
    r["outer_iterations"] = rep.outer_iterations;
    r["residual"] = rep.residual;
    if (!prob.params.riemannian()) r["min_spacelike"] = rep.min_spacelike;
    std::cout << r.dump(2) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ example

struct ExampleArgs {
  std::string name;
  double H = 1.0;
  std::string shape;
  double h = 0.05;
  std::string out;
};

int cmd_example(const ExampleArgs& a) {
  DomainSpec d = parse_shape(a.shape, a.h);
  CatalogEntry e = make_example(a.name, a.H, d);
  write_output(a.out, e.field, e.expected_H);
  return 0;
}

// ------------------------------------------------------------------ hessian

struct HessianArgs {
  std::string grid;
  std::string out;
  double cmc_tol = 1e-3;
  double margin = 1e-8;
};

int cmd_hessian(const HessianArgs& a) {
  GridFile g = read_grid_file(a.grid);
  HessianOptions o;
  o.cmc_tol = a.cmc_tol;
  o.spacelike_margin = a.margin;
  HessianSolution s = hessian_from_minimal(g.field, o);
  if (!a.out.empty()) write_grid_file(a.out, s.f);

  double det_sup = 0.0;
  const DomainSpec& d = s.det_residual.domain;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (s.det_residual.inside(i, j))
        det_sup = std::max(det_sup, std::fabs(s.det_residual.at(i, j)));

  json r;
  r["det_residual_sup"] = det_sup;
  r["mixed_residual"] = s.mixed_residual;
  r["convex"] = s.convex;
  r["anchor"] = {s.anchor.first, s.anchor.second};
  std::cout << r.dump(2) << '\n';
  return 0;
}

// -------------------------------------------------------------- feasibility

struct FeasibilityArgs {
  double kappa = 0.0;
  double tau = 0.0;
};

int cmd_feasibility(const FeasibilityArgs& a) {
  ExistenceVerdict v = existence_classifier(a.kappa, a.tau);
  SpaceParams sp{a.kappa, a.tau, Causal::Lorentzian};
  auto range = timelike_circle_range(sp);
  std::string radii = "empty";
  if (range) {
    std::string hi = std::isinf(range->hi) ? "inf" : shortest(range->hi);
    radii = "(" + shortest(range->lo) + "," + hi + ")";
  }
  json r;
  r["kappa"] = a.kappa;
  r["tau"] = a.tau;
  r["discriminant"] = a.kappa + 4.0 * a.tau * a.tau;
  r["verdict"] = verdict_name(v);
  r["timelike_radii"] = radii;
  r["base_cheeger"] = cheeger_constant(a.kappa);
  std::cout << r.dump(2) << '\n';
  return 0;
}

// ----------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string grid;
  std::string disks;  // heinz only
  EstimateOptions opt;
};

std::vector<double> parse_disks(const std::string& spec) {
  if (spec.empty()) throw UsageError("--disks: at least one radius required");
  std::vector<double> out;
  for (const auto& tok : split(spec, ',')) {
    double R = parse_number(tok, "--disks");
    if (!(R > 0.0)) throw UsageError("--disks: radii must be positive");
    out.push_back(R);
  }
  return out;
}

int cmd_estimate(const std::string& kind, const EstimateArgs& a) {
  GridFile g = read_grid_file(a.grid);
  EstimateReport rep;
  if (kind == "heinz") {
    rep = heinz_flux_check(g.field, parse_disks(a.disks), a.opt);
  } else if (kind == "chengyau") {
    rep = cheng_yau_check(g.field, a.opt);
  } else if (kind == "nilgrowth") {
    rep = nil_growth_check(g.field, a.opt);
  } else if (kind == "coarea") {
    ScalarField f = ScalarField::sample(g.field.domain, g.field.params,
                                        [](double, double) { return 1.0; });
    double graph_side = 0.0, base_side = 0.0;
    double res = coarea_identity(g.field, f, &graph_side, &base_side);
    rep.bound = "coarea identity";
    rep.witnesses = {{"graph_side", graph_side},
                     {"base_side", base_side},
                     {"residual", res}};
    double tol = 1e-10 * std::max(1.0, std::fabs(base_side));
    rep.max_violation = res - tol;
    rep.pass = rep.max_violation <= 0.0;
  } else {
    rep = angle_integrability_probe(g.field, a.opt);
  }
  std::cout << rep.to_json() << '\n';
  return 0;
}

// --------------------------------------------------------------------- mesh

struct MeshArgs {
  std::string grid;
  std::string out;
};

void write_obj(std::ostream& os, const ScalarField& u) {
  const DomainSpec& d = u.domain;
  std::vector<long> vid(d.mask.size(), 0);
  long next = 1;
  std::string line;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!u.inside(i, j)) continue;
      vid[d.index(i, j)] = next++;
      line = "v ";
      line += shortest(d.x(i));
      line += ' ';
      line += shortest(d.y(j));
      line += ' ';
      line += shortest(u.at(i, j));
      line += '\n';
      os << line;
    }
  if (next == 1) throw DomainError("grid has no unmasked cells");
  for (int j = 0; j + 1 < d.ny; ++j)
    for (int i = 0; i + 1 < d.nx; ++i) {
      if (!u.inside(i, j) || !u.inside(i + 1, j) || !u.inside(i, j + 1) ||
          !u.inside(i + 1, j + 1))
        continue;
      long v00 = vid[d.index(i, j)], v10 = vid[d.index(i + 1, j)];
      long v01 = vid[d.index(i, j + 1)], v11 = vid[d.index(i + 1, j + 1)];
      os << "f " << v00 << ' ' << v10 << ' ' << v11 << '\n';
      os << "f " << v00 << ' ' << v11 << ' ' << v01 << '\n';
    }
}

int cmd_mesh(const MeshArgs& a) {
  GridFile g = read_grid_file(a.grid);
  if (a.out.empty()) {
    write_obj(std::cout, g.field);
  } else {
    auto os = open_out(a.out);
    write_obj(os, g.field);
    if (!os) throw FormatError("write to " + a.out + " failed");
  }
  return 0;
}

int emit_error(const char* kind, const std::string& msg,
               const char* failure = nullptr) {
  json j;
  j["error"] = kind;
  if (failure) j["failure"] = failure;
  j["message"] = msg;
  std::cerr << j.dump() << '\n';
  if (std::string(kind) == "usage") return 1;
  if (std::string(kind) == "numeric") return 3;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertical graphs in homogeneous 3-spaces: curvature, twin "
               "duality, Dirichlet solver, estimates"};
  app.require_subcommand(1);
  // The grid step flag is --h, so help must not claim -h.
  app.set_help_flag("--help", "print this help message and exit");
  auto subcommand = [](CLI::App* parent, const std::string& name,
                       const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->set_help_flag("--help", "print this help message and exit");
    return s;
  };

  CurvatureArgs curv;
  auto* c_curv = subcommand(
      &app, "curvature", "mean curvature field of a graph, CSV plus summary");
  c_curv->add_option("grid", curv.grid, "input grid file")->required();
  c_curv->add_option("--margin", curv.margin, "spacelike margin");

  DualizeArgs dua;
  auto* c_dua = subcommand(
      &app, "dualize", "twin graph in the sibling space, plus residual report");
  c_dua->add_option("grid", dua.grid, "input grid file")->required();
  c_dua->add_option("--anchor", dua.anchor,
                    "gauge anchor as chart coordinates cx,cy");
  c_dua->add_option("--out", dua.out, "output grid file (default stdout)");
  c_dua->add_option("--report", dua.report, "residual report JSON file");
  c_dua->add_option("--cmc-tol", dua.cmc_tol, "curvature constancy gate");
  c_dua->add_option("--margin", dua.margin, "spacelike margin");
  c_dua->add_option("--H", dua.H_override,
                    "prescribe the source curvature instead of measuring");

  VerifyArgs ver;
  auto* c_ver = subcommand(
      &app, "verify", "residuals certifying two grids form a twin pair");
  c_ver->add_option("ugrid", ver.ugrid, "first grid file")->required();
  c_ver->add_option("vgrid", ver.vgrid, "second grid file")->required();
  c_ver->add_option("--cmc-tol", ver.cmc_tol, "curvature constancy gate");
  c_ver->add_option("--margin", ver.margin, "spacelike margin");

  SolveArgs sol;
  auto* c_sol = subcommand(
      &app, "solve",
      "prescribed-curvature Dirichlet problem on a disk or rectangle");
  c_sol->add_option("--kappa", sol.kappa, "base curvature")->required();
  c_sol->add_option("--tau", sol.tau, "bundle curvature")->required();
  c_sol->add_option("--H", sol.H, "target mean curvature")->required();
  c_sol->add_option("--shape", sol.shape, "disk:R or rect:a,b")->required();
  c_sol->add_option("--bc", sol.bc, "boundary data, const:c");
  c_sol->add_option("--h", sol.h, "grid step");
  c_sol->add_option("--tol", sol.tol, "curvature residual target");
  c_sol->add_flag("--lorentzian", sol.lorentzian,
                  "solve for a spacelike graph");
  c_sol->add_option("--out", sol.out, "output grid file (default stdout)");
  c_sol->add_option("--margin", sol.margin, "spacelike margin");

  ExampleArgs exa;
  auto* c_exa = subcommand(
      &app, "example", "sample a closed-form graph from the catalog onto a grid");
  std::string names;
  for (const auto& n : catalog_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  c_exa->add_option("name", exa.name, "one of: " + names)->required();
  c_exa->add_option("--H", exa.H, "curvature or bundle parameter");
  c_exa->add_option("--shape", exa.shape, "disk:R or rect:a,b")->required();
  c_exa->add_option("--h", exa.h, "grid step");
  c_exa->add_option("--out", exa.out, "output grid file (default stdout)");

  HessianArgs hes;
  auto* c_hes = subcommand(&app, "hessian",
                           "convex potential with unit Hessian determinant "
                           "from a flat minimal graph");
  c_hes->add_option("grid", hes.grid, "input grid file")->required();
  c_hes->add_option("--out", hes.out, "potential grid file");
  c_hes->add_option("--cmc-tol", hes.cmc_tol, "minimality gate");
  c_hes->add_option("--margin", hes.margin, "spacelike margin");

  FeasibilityArgs fea;
  auto* c_fea = subcommand(&app, "feasibility",
                           "classify (kappa, tau) against the "
                           "complete-spacelike obstruction");
  c_fea->add_option("--kappa", fea.kappa, "base curvature")->required();
  c_fea->add_option("--tau", fea.tau, "bundle curvature")->required();

  auto* c_est = subcommand(&app, "estimate",
                           "integral estimates and growth witnesses");
  c_est->require_subcommand(1);
  EstimateArgs est;
  auto add_estimate_options = [&est](CLI::App* sub) {
    sub->add_option("grid", est.grid, "input grid file")->required();
    sub->add_option("--cmc-tol", est.opt.cmc_tol, "curvature constancy gate");
    sub->add_option("--margin", est.opt.spacelike_margin, "spacelike margin");
  };
  auto* e_heinz =
      subcommand(c_est, "heinz", "divergence vs boundary flux on disks");
  add_estimate_options(e_heinz);
  e_heinz->add_option("--disks", est.disks, "radii R1,R2,...")->required();
  e_heinz->add_option("--flux-factor", est.opt.flux_tol_factor,
                      "|2 H area - flux| <= factor * h");
  auto* e_cy = subcommand(
      c_est, "chengyau", "gradient bound witness for spacelike curvature graphs");
  add_estimate_options(e_cy);
  e_cy->add_option("--burn-in", est.opt.burn_in, "first window radius");
  e_cy->add_option("--windows", est.opt.windows, "window count");
  auto* e_nil = subcommand(
      c_est, "nilgrowth", "growth witnesses for minimal graphs with bundle twist");
  add_estimate_options(e_nil);
  e_nil->add_option("--burn-in", est.opt.burn_in, "stability radius");
  e_nil->add_option("--windows", est.opt.windows, "window count");
  auto* e_coa = subcommand(
      c_est, "coarea", "graph-vs-base quadrature identity for the angle weight");
  add_estimate_options(e_coa);
  auto* e_ang = subcommand(
      c_est, "angle", "log-slope divergence probe of the angle integral");
  add_estimate_options(e_ang);
  e_ang->add_option("--burn-in", est.opt.burn_in, "first window radius");
  e_ang->add_option("--windows", est.opt.windows, "window count");
  e_ang->add_option("--slope-floor", est.opt.slope_floor,
                    "required d(integral)/d(log R)");

  MeshArgs mes;
  auto* c_mes = subcommand(&app, "mesh",
                           "chart-coordinate OBJ mesh of a graph");
  c_mes->add_option("grid", mes.grid, "input grid file")->required();
  c_mes->add_option("--out", mes.out, "output OBJ file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what());
  }

  try {
    if (c_curv->parsed()) return cmd_curvature(curv);
    if (c_dua->parsed()) return cmd_dualize(dua);
    if (c_ver->parsed()) return cmd_verify(ver);
    if (c_sol->parsed()) return cmd_solve(sol);
    if (c_exa->parsed()) return cmd_example(exa);
    if (c_hes->parsed()) return cmd_hessian(hes);
    if (c_fea->parsed()) return cmd_feasibility(fea);
    if (c_est->parsed())
      return cmd_estimate(c_est->get_subcommands().at(0)->get_name(), est);
    if (c_mes->parsed()) return cmd_mesh(mes);
    return emit_error("usage", "no subcommand given");
  } catch (const UsageError& e) {
    return emit_error("usage", e.what());
  } catch (const FormatError& e) {
    return emit_error("format", e.what());
  } catch (const DomainError& e) {
    return emit_error("domain", e.what());
  } catch (const NumericError& e) {
    return emit_error("numeric", e.what(), failure_name(e.kind()));
  } catch (const std::exception& e) {
    return emit_error("numeric", e.what(), "unknown");
  }
}
