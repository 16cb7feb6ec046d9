#ifndef ANTIBIDIAG_REPORT_HPP
#define ANTIBIDIAG_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inverse.hpp"
#include "matrix.hpp"
#include "recurrence.hpp"
#include "scalar.hpp"

namespace antibidiag {

using json = nlohmann::json;

/// Machine-readable result of a solve (or roundtrip) job.
///
/// Scalars that are exact in the rational backend (input, a_j^2, q
/// coefficients) are kept as text: shortest round-trip decimals for float64,
/// "p/q" for rational. JSON writes them as numbers for float64 and as strings
/// for rational.
struct SolveReport {
  struct Diagnostics {
    double max_residual = 0;
    std::optional<double> roundtrip_error;
    double min_modulus_gap = 0;
    bool interlacing_ok = true;
    double parity_defect = 0;
    double sigma2_crosscheck = 0;
    friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
  };
  struct Level {
    std::size_t degree = 0;
    std::vector<double> roots;
    bool interlaces = true;
    friend bool operator==(const Level&, const Level&) = default;
  };

  std::string command = "solve";
  std::string backend = "float64";
  std::vector<std::string> input;
  std::vector<double> a;
  std::vector<std::string> a_squared;
  std::vector<std::vector<double>> antibidiagonal;
  std::vector<std::vector<double>> jacobi;
  Diagnostics diagnostics;
  std::vector<Level> interlacing;
  std::optional<std::vector<double>> recovered;
  std::optional<std::vector<std::vector<std::string>>> q_polys;
  std::vector<std::string> warnings;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

template <Scalar T>
std::vector<std::vector<double>> to_rows(const Matrix<T>& m) {
  std::vector<std::vector<double>> rows(m.n(), std::vector<double>(m.n()));
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j) rows[i - 1][j - 1] = to_double(m(i, j));
  return rows;
}

template <Scalar T>
std::vector<std::string> to_text(const std::vector<T>& v) {
  std::vector<std::string> out;
  for (const T& x : v) out.push_back(format_scalar(x));
  return out;
}

/// Collects a reconstruction into a report. The rational backend has no
/// square roots, so a and both matrices are float64 images there.
template <Scalar T>
SolveReport make_solve_report(const Spectrum<T>& spectrum, const ReconstructionTrace<T>& trace, bool verbose) {
  SolveReport r;
  r.backend = std::string(scalar_traits<T>::name);
  r.input = to_text(spectrum.values());
  const auto& c = trace.coefficients;
  r.a_squared.push_back(format_scalar(T(c.a1 * c.a1)));
  for (const T& s : c.a_squared) r.a_squared.push_back(format_scalar(s));

  CoefficientVector<double> a_float;
  if constexpr (is_exact_v<T>) {
    std::vector<double> a{to_double(c.a1)};
    for (const T& s : c.a_squared) a.push_back(std::sqrt(to_double(s)));
    a_float = CoefficientVector<double>(std::move(a));
    r.warnings.push_back("a and the matrices are float64 images of exact square roots; a_squared is exact");
  } else {
    a_float = *trace.a;
  }
  r.a = a_float.values();
  r.antibidiagonal = to_rows(build_antibidiagonal(a_float).entries());
  r.jacobi = to_rows(build_jacobi_special(a_float).entries());

  const auto p = forward_p(c).top();
  double residual = 0;
  for (const T& l : spectrum.values()) residual = std::max(residual, std::fabs(to_double(eval(p, l))));
  r.diagnostics.max_residual = residual;
  r.diagnostics.min_modulus_gap = to_double(min_modulus_gap(spectrum));
  r.diagnostics.interlacing_ok = trace.interlacing_ok;
  r.diagnostics.parity_defect = trace.parity_defect;
  r.diagnostics.sigma2_crosscheck = trace.sigma2_crosscheck;
  for (const auto& level : trace.interlacing) r.interlacing.push_back({level.degree, level.roots, level.interlaces_parent});
  if (verbose) {
    std::vector<std::vector<std::string>> q;
    for (const auto& poly : trace.q.polys) q.push_back(to_text(poly.coeffs()));
    r.q_polys = std::move(q);
  }
  r.warnings.insert(r.warnings.end(), trace.warnings.begin(), trace.warnings.end());
  return r;
}

namespace detail {

inline json scalar_text_to_json(const std::string& text, bool exact) {
  if (exact) return text;
  return *parse_scalar<double>(text);
}

inline std::string scalar_text_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  return format_scalar(j.get<double>());
}

inline json text_array(const std::vector<std::string>& v, bool exact) {
  json arr = json::array();
  for (const auto& s : v) arr.push_back(scalar_text_to_json(s, exact));
  return arr;
}

inline std::vector<std::string> text_array_from(const json& j) {
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(scalar_text_from_json(x));
  return out;
}

}  // namespace detail

inline json to_json(const SolveReport& r) {
  const bool exact = r.backend == "rational";
  json doc;
  doc["command"] = r.command;
  doc["backend"] = r.backend;
  doc["input"] = {{"spectrum", detail::text_array(r.input, exact)}};
  doc["a"] = r.a;
  doc["a_squared"] = detail::text_array(r.a_squared, exact);
  doc["antibidiagonal"] = r.antibidiagonal;
  doc["jacobi"] = r.jacobi;
  json diag;
  diag["max_residual"] = r.diagnostics.max_residual;
  diag["roundtrip_error"] = r.diagnostics.roundtrip_error ? json(*r.diagnostics.roundtrip_error) : json(nullptr);
  diag["min_modulus_gap"] = r.diagnostics.min_modulus_gap;
  diag["interlacing_ok"] = r.diagnostics.interlacing_ok;
  diag["parity_defect"] = r.diagnostics.parity_defect;
  diag["sigma2_crosscheck"] = r.diagnostics.sigma2_crosscheck;
  doc["diagnostics"] = diag;
  json levels = json::array();
  for (const auto& l : r.interlacing)
    levels.push_back({{"degree", l.degree}, {"roots", l.roots}, {"interlaces", l.interlaces}});
  doc["interlacing"] = levels;
  if (r.recovered) doc["recovered"] = *r.recovered;
  if (r.q_polys) {
    json q = json::array();
    for (const auto& poly : *r.q_polys) q.push_back(detail::text_array(poly, exact));
    doc["q_polys"] = q;
  }
  doc["warnings"] = r.warnings;
  return doc;
}

inline SolveReport solve_report_from_json(const json& doc) {
  SolveReport r;
  r.command = doc.at("command").get<std::string>();
  r.backend = doc.at("backend").get<std::string>();
  r.input = detail::text_array_from(doc.at("input").at("spectrum"));
  r.a = doc.at("a").get<std::vector<double>>();
  r.a_squared = detail::text_array_from(doc.at("a_squared"));
  r.antibidiagonal = doc.at("antibidiagonal").get<std::vector<std::vector<double>>>();
  r.jacobi = doc.at("jacobi").get<std::vector<std::vector<double>>>();
  const json& diag = doc.at("diagnostics");
  r.diagnostics.max_residual = diag.at("max_residual").get<double>();
  if (!diag.at("roundtrip_error").is_null()) r.diagnostics.roundtrip_error = diag.at("roundtrip_error").get<double>();
  r.diagnostics.min_modulus_gap = diag.at("min_modulus_gap").get<double>();
  r.diagnostics.interlacing_ok = diag.at("interlacing_ok").get<bool>();
  r.diagnostics.parity_defect = diag.at("parity_defect").get<double>();
  r.diagnostics.sigma2_crosscheck = diag.at("sigma2_crosscheck").get<double>();
  for (const auto& l : doc.at("interlacing"))
    r.interlacing.push_back(
        {l.at("degree").get<std::size_t>(), l.at("roots").get<std::vector<double>>(), l.at("interlaces").get<bool>()});
  if (doc.contains("recovered")) r.recovered = doc.at("recovered").get<std::vector<double>>();
  if (doc.contains("q_polys")) {
    std::vector<std::vector<std::string>> q;
    for (const auto& poly : doc.at("q_polys")) q.push_back(detail::text_array_from(poly));
    r.q_polys = std::move(q);
  }
  r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  return r;
}

// ---------------------------------------------------------------------------
// Text renderings of any report document
// ---------------------------------------------------------------------------

namespace detail {

inline std::string leaf_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_scalar(v.get<double>());
  return v.dump();
}

inline void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(*it, path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, leaf_text(v));
  }
}

inline bool is_matrix(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  return std::all_of(v.begin(), v.end(), [&](const json& row) {
    return row.is_array() && row.size() == v.size() &&
           std::all_of(row.begin(), row.end(), [](const json& x) { return x.is_number() || x.is_string(); });
  });
}

inline bool is_flat(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void render_pretty(const json& v, const std::string& key, int indent, std::ostream& os) {
  const std::string pad(std::size_t(indent), ' ');
  if (is_matrix(v)) {
    os << pad << key << ":\n";
    std::size_t width = 0;
    for (const auto& row : v)
      for (const auto& x : row) width = std::max(width, leaf_text(x).size());
    for (const auto& row : v) {
      os << pad << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "  " : " ") << std::setw(int(width)) << leaf_text(row[j]);
      os << " ]\n";
    }
  } else if (is_flat(v)) {
    os << pad << key << ": ";
    if (v.empty()) os << "(none)";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << leaf_text(v[i]);
    os << "\n";
  } else if (v.is_object()) {
    os << pad << key << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it) render_pretty(*it, it.key(), indent + 2, os);
  } else if (v.is_array()) {
    os << pad << key << ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) render_pretty(v[i], "[" + std::to_string(i) + "]", indent + 2, os);
  } else {
    os << pad << key << ": " << leaf_text(v) << "\n";
  }
}

}  // namespace detail

/// One "path,value" line per leaf.
inline void write_csv(const json& doc, std::ostream& os) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(doc, "", rows);
  os << "field,value\n";
  for (const auto& [k, v] : rows) os << detail::csv_escape(k) << "," << detail::csv_escape(v) << "\n";
}

/// Aligned human-readable rendering. When the document carries both a and
/// a_squared they are tabulated side by side.
inline void write_pretty(const json& doc, std::ostream& os) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "a_squared" && doc.contains("a") && doc["a"].size() == it->size()) continue;
    if (it.key() == "a" && doc.contains("a_squared") && doc["a_squared"].size() == it->size()) {
      os << "coefficients:\n";
      os << "  " << std::setw(4) << "j" << "  " << std::setw(24) << "a_j" << "  " << "a_j^2\n";
      for (std::size_t j = 0; j < it->size(); ++j)
        os << "  " << std::setw(4) << j + 1 << "  " << std::setw(24) << detail::leaf_text((*it)[j]) << "  "
           << detail::leaf_text(doc["a_squared"][j]) << "\n";
      continue;
    }
    detail::render_pretty(*it, it.key(), 0, os);
  }
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_REPORT_HPP
