#include "twingraph/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twingraph/errors.hpp"

namespace twingraph {

namespace {

const char* causal_name(Causal c) {
  return c == Causal::Riemannian ? "riemannian" : "lorentzian";
}

void append_double(std::string& out, double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

double parse_double(const std::string& tok, int row, int col) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << "bad value '" << tok << "' at row " << row << ", column " << col;
    throw FormatError(msg.str());
  }
  return v;
}

}  // namespace

void write_grid(std::ostream& os, const ScalarField& u,
                std::optional<double> expected_H) {
  const DomainSpec& d = u.domain;
  if (d.nx <= 0 || d.ny <= 0) throw DomainError("empty grid");
  nlohmann::json hdr;
  hdr["schema_version"] = 1;
  hdr["kappa"] = u.params.kappa;
  hdr["bundle"] = u.params.bundle;
  hdr["causal"] = causal_name(u.params.causal);
  hdr["nx"] = d.nx;
  hdr["ny"] = d.ny;
  hdr["x0"] = d.x0;
  hdr["y0"] = d.y0;
  hdr["h"] = d.h;
  if (expected_H) hdr["H_expected"] = *expected_H;
  os << hdr.dump() << '\n';

  std::string line;
  for (int j = 0; j < d.ny; ++j) {
    line.clear();
    for (int i = 0; i < d.nx; ++i) {
      if (i) line.push_back(',');
      if (!d.inside(i, j)) {
        line.append("NaN");
      } else {
        double v = u.at(i, j);
        if (!std::isfinite(v)) {
          std::ostringstream msg;
          msg << "non-finite value at cell (" << i << "," << j << ")";
          throw FormatError(msg.str());
        }
        append_double(line, v);
      }
    }
    os << line << '\n';
  }
  if (!os) throw FormatError("write failed");
}

void write_grid_file(const std::string& path, const ScalarField& u,
                     std::optional<double> expected_H) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  write_grid(os, u, expected_H);
}

GridFile read_grid(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  nlohmann::json hdr;
  try {
    hdr = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad header: ") + e.what());
  }
  if (!hdr.is_object()) throw FormatError("header is not a JSON object");
  if (!hdr.contains("schema_version") ||
      !hdr["schema_version"].is_number_integer() ||
      hdr["schema_version"].get<int>() != 1)
    throw FormatError("unsupported schema_version");
  for (const char* key : {"kappa", "bundle", "x0", "y0", "h"})
    if (!hdr.contains(key) || !hdr[key].is_number())
      throw FormatError(std::string("header misses numeric '") + key + "'");
  for (const char* key : {"nx", "ny"})
    if (!hdr.contains(key) || !hdr[key].is_number_integer())
      throw FormatError(std::string("header misses integer '") + key + "'");
  if (!hdr.contains("causal") || !hdr["causal"].is_string())
    throw FormatError("header misses 'causal'");

  DomainSpec d;
  d.nx = hdr["nx"].get<int>();
  d.ny = hdr["ny"].get<int>();
  d.x0 = hdr["x0"].get<double>();
  d.y0 = hdr["y0"].get<double>();
  d.h = hdr["h"].get<double>();
  if (d.nx <= 0 || d.ny <= 0) throw FormatError("grid dimensions must be positive");
  if (!(d.h > 0.0) || !std::isfinite(d.h) || !std::isfinite(d.x0) ||
      !std::isfinite(d.y0))
    throw FormatError("grid geometry must be finite with positive spacing");
  d.mask.assign(static_cast<size_t>(d.nx) * d.ny, 0);

  SpaceParams sp;
  sp.kappa = hdr["kappa"].get<double>();
  sp.bundle = hdr["bundle"].get<double>();
  std::string causal = hdr["causal"].get<std::string>();
  if (causal == "riemannian")
    sp.causal = Causal::Riemannian;
  else if (causal == "lorentzian")
    sp.causal = Causal::Lorentzian;
  else
    throw FormatError("causal must be 'riemannian' or 'lorentzian'");
  if (!std::isfinite(sp.kappa) || !std::isfinite(sp.bundle))
    throw FormatError("space parameters must be finite");

  GridFile gf;
  if (hdr.contains("H_expected")) {
    if (!hdr["H_expected"].is_number())
      throw FormatError("H_expected must be numeric");
    gf.expected_H = hdr["H_expected"].get<double>();
  }

  ScalarField u(d, sp);
  for (int j = 0; j < d.ny; ++j) {
    if (!std::getline(is, line)) {
      std::ostringstream msg;
      msg << "missing row " << j << " of " << d.ny;
      throw FormatError(msg.str());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int i = 0;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      std::string tok = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (i >= d.nx) throw FormatError("too many columns in row " +
                                       std::to_string(j));
      if (tok != "NaN") {
        u.values[d.index(i, j)] = parse_double(tok, j, i);
        u.domain.mask[d.index(i, j)] = 1;
      }
      ++i;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (i != d.nx) {
      std::ostringstream msg;
      msg << "row " << j << " has " << i << " columns, expected " << d.nx;
      throw FormatError(msg.str());
    }
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw FormatError("trailing data after the grid rows");
  }
  gf.field = u;
  return gf;
}

GridFile read_grid_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  return read_grid(is);
}

}  // namespace twingraph
