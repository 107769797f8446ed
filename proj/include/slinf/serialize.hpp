/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_SERIALIZE_HPP
#define SLINF_SERIALIZE_HPP

#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slinf/alpha.hpp"
#include "slinf/bochner.hpp"
#include "slinf/classb.hpp"
#include "slinf/density.hpp"
#include "slinf/errors.hpp"
#include "slinf/group.hpp"
#include "slinf/kernels.hpp"

namespace slinf {

using nlohmann::json;

/// Shortest-roundtrip decimal form of a double (17 significant digits).
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- Alpha: JSON array of numbers; the trivial point is [] ----

inline json alpha_to_json(const Alpha& alpha) {
  json arr = json::array();
  for (double v : alpha.values()) arr.push_back(v);
  return arr;
}

inline Alpha alpha_from_json(const json& j) {
  if (!j.is_array()) throw io_error("alpha: expected a JSON array");
  std::vector<double> vals;
  for (const auto& v : j) {
    if (!v.is_number()) throw io_error("alpha: expected numbers");
    vals.push_back(v.get<double>());
  }
  return Alpha(std::move(vals));
}

// ---- CartanProfile: JSON array ----

inline json profile_to_json(const CartanProfile& prof) {
  json arr = json::array();
  for (double v : prof.values()) arr.push_back(v);
  return arr;
}

inline CartanProfile profile_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw io_error("profile: expected a nonempty JSON array");
  std::vector<double> vals;
  for (const auto& v : j) vals.push_back(v.get<double>());
  return CartanProfile(std::move(vals));
}

// ---- GroupElement: {"n": n, "entries": [re, im, re, im, ...]} row-major ----

inline json element_to_json(const GroupElement& g) {
  json entries = json::array();
  const auto& m = g.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(m(i, j).real());
      entries.push_back(m(i, j).imag());
    }
  }
  return json{{"n", g.dim()}, {"entries", std::move(entries)}};
}

inline GroupElement element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw io_error("element: expected {\"n\", \"entries\"}");
  const int n = j.at("n").get<int>();
  const auto& entries = j.at("entries");
  if (n < 1 || !entries.is_array() ||
      entries.size() != static_cast<std::size_t>(2 * n * n))
    throw io_error("element: entries must hold 2 n^2 numbers");
  Eigen::MatrixXcd m(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) {
      const double re = entries[k++].get<double>();
      const double im = entries[k++].get<double>();
      m(i, c) = complexd{re, im};
    }
  }
  return GroupElement(std::move(m));
}

// ---- Measure: {"psi_at_e": x, "atoms": [{"alpha": [...], "weight": w}]} ----

struct MeasureFile {
  DiscreteParamMeasure measure;
  double psi_at_e = 0.0;
};

inline json measure_to_json(const DiscreteParamMeasure& mu, double psi_at_e = 0.0) {
  json atoms = json::array();
  for (std::size_t k = 0; k < mu.size(); ++k)
    atoms.push_back(json{{"alpha", alpha_to_json(mu.atoms()[k])}, {"weight", mu.weights()[k]}});
  return json{{"psi_at_e", psi_at_e}, {"atoms", std::move(atoms)}};
}

inline MeasureFile measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms"))
    throw io_error("measure: expected {\"psi_at_e\", \"atoms\"}");
  MeasureFile out;
  out.psi_at_e = j.value("psi_at_e", 0.0);
  if (out.psi_at_e < 0.0) throw validation_error("measure: psi_at_e must be >= 0");
  std::vector<Alpha> atoms;
  std::vector<double> weights;
  for (const auto& a : j.at("atoms")) {
    atoms.push_back(alpha_from_json(a.at("alpha")));
    weights.push_back(a.at("weight").get<double>());
  }
  out.measure = DiscreteParamMeasure(std::move(atoms), std::move(weights));
  return out;
}

// ---- GramReport / SchoenbergReport / BoundednessReport -> JSON ----

inline json gram_report_to_json(const GramReport& r) {
  json j{{"size", r.size},
         {"hermiticity_defect", r.hermiticity_defect},
         {"extremal_eigenvalue", r.extremal_eigenvalue},
         {"passed", r.passed}};
  if (r.witness) {
    json w = json::array();
    for (Eigen::Index i = 0; i < r.witness->size(); ++i)
      w.push_back(json::array({(*r.witness)(i).real(), (*r.witness)(i).imag()}));
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json schoenberg_report_to_json(const SchoenbergReport& r) {
  json exp_checks = json::array();
  for (const auto& [t, rep] : r.exp_checks)
    exp_checks.push_back(json{{"t", t}, {"report", gram_report_to_json(rep)}});
  return json{{"exp_checks", std::move(exp_checks)},
              {"negtype", gram_report_to_json(r.negtype)},
              {"passed", r.passed}};
}

inline json boundedness_report_to_json(const BoundednessReport& r) {
  json rows = json::array();
  for (const auto& [lam, dev] : r.stress_rows)
    rows.push_back(json::array({lam, dev}));
  return json{{"bound", r.bound},
              {"observed_sup", r.observed_sup},
              {"passed", r.passed},
              {"stress", std::move(rows)}};
}

// ---- CSV: ClassBSamples (lambda, re, im) and DensityGrid (t, value) ----

inline void samples_to_csv(const ClassBSamples& s, std::ostream& os) {
  os << "lambda,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    os << format_double(s.lambdas[k]) << ',' << format_double(s.values[k].real()) << ','
       << format_double(s.values[k].imag()) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw io_error("csv: trailing characters in number '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw io_error("csv: not a number: '" + s + "'");
  } catch (const std::out_of_range&) {
    throw io_error("csv: number out of range: '" + s + "'");
  }
}

}  // namespace detail

inline ClassBSamples samples_from_csv(std::istream& is) {
  std::string line;
  std::vector<double> lambdas;
  std::vector<complexd> values;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("lambda", 0) == 0) continue;  // header
    }
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 3) throw io_error("samples csv: expected 3 columns");
    lambdas.push_back(detail::parse_double(cells[0]));
    values.emplace_back(detail::parse_double(cells[1]), detail::parse_double(cells[2]));
  }
  return ClassBSamples(std::move(lambdas), std::move(values));
}

inline void density_to_csv(const DensityGrid& d, std::ostream& os) {
  os << "t,value\n";
  for (std::size_t k = 0; k < d.values.size(); ++k)
    os << format_double(d.t_at(k)) << ',' << format_double(d.values[k]) << '\n';
}

inline DensityGrid density_from_csv(std::istream& is) {
  std::string line;
  std::vector<double> ts;
  std::vector<double> vals;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("t,", 0) == 0) continue;
    }
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 2) throw io_error("density csv: expected 2 columns");
    ts.push_back(detail::parse_double(cells[0]));
    vals.push_back(detail::parse_double(cells[1]));
  }
  if (ts.size() < 2) throw io_error("density csv: need at least 2 rows");
  const double step = ts[1] - ts[0];
  if (!(step > 0.0)) throw io_error("density csv: t must be increasing");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (std::abs(ts[k] - ts[0] - static_cast<double>(k) * step) > 1e-9)
      throw io_error("density csv: t must be uniformly spaced");
  }
  return DensityGrid{ts[0], step, std::move(vals)};
}

}  // namespace slinf

#endif
