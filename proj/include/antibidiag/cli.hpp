#ifndef ANTIBIDIAG_CLI_HPP
#define ANTIBIDIAG_CLI_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "error.hpp"
#include "inverse.hpp"
#include "matrix.hpp"
#include "recurrence.hpp"
#include "report.hpp"
#include "scalar.hpp"
#include "spectral.hpp"
#include "verify.hpp"

namespace antibidiag::cli {

enum class Command { Solve, Forward, Roundtrip, Sqrt, Signreg, VerifyAll };
enum class Backend { Float64, Rational };
enum class Format { Json, Csv, Pretty };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 3;

/// Which named list an input value sequence is.
enum class InputKind { Spectrum, A, Mus };

inline std::string_view input_key(InputKind k) {
  switch (k) {
    case InputKind::Spectrum: return "spectrum";
    case InputKind::A: return "a";
    case InputKind::Mus: return "mus";
  }
  return "";
}

struct JobSpec {
  Command command = Command::Solve;
  Backend backend = Backend::Float64;
  std::optional<std::string> spectrum;  // inline comma-separated values
  std::optional<std::string> a;
  std::optional<std::string> mus;
  std::optional<std::string> input_path;  // JSON or one-value-per-line CSV
  Format format = Format::Json;
  TolerancePolicy policy;
  std::optional<std::size_t> max_power;
  std::uint64_t seed = verify::SuiteConfig{}.seed;
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> cases;
  bool verbose = false;
};

inline int exit_status(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Numerical: return kExitNumerical;
    case ErrorCategory::Usage: return kExitUsage;
  }
  return kExitUsage;
}

// ---------------------------------------------------------------------------
// Input
// ---------------------------------------------------------------------------

/// Splits "3,-2,1" into tokens. A blank string is the empty list.
inline std::vector<std::string> split_values(std::string_view text) {
  std::vector<std::string> out;
  if (detail::trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.emplace_back(detail::trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool looks_non_finite(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.erase(0, 1);
  return s == "nan" || s == "inf" || s == "infinity";
}

template <Scalar T>
std::vector<T> parse_values(const std::vector<std::string>& tokens, InputKind kind) {
  std::vector<T> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string where = std::string(input_key(kind)) + " entry " + std::to_string(i + 1) + " '" + tokens[i] + "'";
    if (looks_non_finite(tokens[i])) throw Error(ErrorCode::NonFinite, where + " is not finite");
    auto v = parse_scalar<T>(tokens[i]);
    if (!v) throw Error(ErrorCode::MalformedInput, where + " is not a number");
    if constexpr (!is_exact_v<T>) {
      if (!std::isfinite(*v)) throw Error(ErrorCode::NonFinite, where + " is not finite");
    }
    out.push_back(*v);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string json_number_text(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw Error(ErrorCode::MalformedInput, path + " holds a non-numeric value");
}

/// Reads the value list for `kind` from a JSON document or a CSV file.
inline std::vector<std::string> load_file_tokens(const std::string& path, const std::vector<InputKind>& accepted,
                                                 InputKind& found) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedInput, "'" + path + "' is not valid JSON: " + e.what());
    }
    for (InputKind k : accepted) {
      const std::string key(input_key(k));
      if (!doc.contains(key)) continue;
      if (!doc[key].is_array()) throw Error(ErrorCode::MalformedInput, "\"" + key + "\" must be an array");
      std::vector<std::string> tokens;
      for (const auto& v : doc[key]) tokens.push_back(json_number_text(v, key));
      found = k;
      return tokens;
    }
    std::string keys;
    for (InputKind k : accepted) keys += (keys.empty() ? "\"" : ", \"") + std::string(input_key(k)) + "\"";
    throw Error(ErrorCode::MalformedInput, "'" + path + "' has none of the keys " + keys);
  }
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto t = detail::trim(line);
    if (!t.empty()) tokens.emplace_back(t);
  }
  found = accepted.front();
  return tokens;
}

/// Resolves exactly one input source among the inline flags and --input.
inline std::vector<std::string> input_tokens(const JobSpec& job, const std::vector<InputKind>& accepted,
                                             InputKind& found) {
  std::vector<std::pair<InputKind, const std::optional<std::string>*>> inline_sources{
      {InputKind::Spectrum, &job.spectrum}, {InputKind::A, &job.a}, {InputKind::Mus, &job.mus}};
  std::size_t given = job.input_path ? 1 : 0;
  for (const auto& [k, src] : inline_sources) {
    if (!src->has_value()) continue;
    if (std::find(accepted.begin(), accepted.end(), k) == accepted.end())
      throw Error(ErrorCode::MalformedInput, "--" + std::string(input_key(k)) + " does not apply to this command");
    ++given;
  }
  if (given != 1) {
    std::string flags;
    for (InputKind k : accepted) flags += "--" + std::string(input_key(k)) + ", ";
    throw Error(ErrorCode::MalformedInput, "give exactly one of " + flags + "--input");
  }
  if (job.input_path) return load_file_tokens(*job.input_path, accepted, found);
  for (const auto& [k, src] : inline_sources)
    if (src->has_value()) {
      found = k;
      return split_values(**src);
    }
  return {};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

template <Scalar T>
json text_json(const std::vector<T>& v) {
  json arr = json::array();
  for (const T& x : v) {
    if constexpr (is_exact_v<T>) {
      arr.push_back(format_scalar(x));
    } else {
      arr.push_back(x);
    }
  }
  return arr;
}

template <Scalar T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 1; i <= m.n(); ++i) {
    std::vector<T> row;
    for (std::size_t j = 1; j <= m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(text_json(row));
  }
  return rows;
}

template <Scalar T>
json run_solve(const JobSpec& job, std::vector<T> values) {
  const auto spectrum = validate_spectrum(std::move(values));
  const auto trace = solve(spectrum, job.policy);
  return to_json(make_solve_report(spectrum, trace, job.verbose));
}

template <Scalar T>
json run_roundtrip(const JobSpec& job, std::vector<T> values) {
  const auto spectrum = validate_spectrum(std::move(values));
  const auto rt = solve_roundtrip(spectrum, job.policy);
  SolveReport r = make_solve_report(spectrum, rt.trace, job.verbose);
  r.command = "roundtrip";
  r.recovered = std::vector<double>();
  for (const T& x : rt.recovered) r.recovered->push_back(to_double(x));
  r.diagnostics.roundtrip_error = to_double(rt.max_error);
  return to_json(r);
}

template <Scalar T>
json run_forward(const JobSpec& job, std::vector<T> values) {
  const CoefficientVector<T> a(std::move(values));
  const auto p = forward_p(a);
  const auto q = forward_q(a);
  const auto s = squared_form(a);
  json doc;
  doc["command"] = "forward";
  doc["backend"] = std::string(scalar_traits<T>::name);
  doc["input"] = {{"a", text_json(a.values())}};
  std::vector<T> sq{T(s.a1 * s.a1)};
  sq.insert(sq.end(), s.a_squared.begin(), s.a_squared.end());
  doc["a_squared"] = text_json(sq);
  doc["characteristic"] = text_json(p.top().coeffs());
  doc["systems_agree"] = p.top() == q.top();
  doc["antibidiagonal"] = matrix_json(build_antibidiagonal(a).entries());
  doc["jacobi"] = matrix_json(build_jacobi_special(a).entries());
  if (job.verbose) {
    json pp = json::array(), qq = json::array();
    for (const auto& poly : p.polys) pp.push_back(text_json(poly.coeffs()));
    for (const auto& poly : q.polys) qq.push_back(text_json(poly.coeffs()));
    doc["p_polys"] = pp;
    doc["q_polys"] = qq;
  }
  if constexpr (!is_exact_v<T>) {
    const auto eig = eigensolve_tridiagonal(build_jacobi_special(a), job.policy);
    doc["eigenvalues"] = order_by_modulus(eig.values());
  } else {
    doc["eigenvalues"] = nullptr;
  }
  doc["warnings"] = json::array();
  return doc;
}

template <Scalar T>
json run_sqrt(const JobSpec& job, std::vector<T> values) {
  const PositiveTuple<T> mus(std::move(values));
  const auto r = jacobi_sqrt(mus, job.policy);
  json doc;
  doc["command"] = "sqrt";
  doc["backend"] = std::string(scalar_traits<T>::name);
  doc["input"] = {{"mus", text_json(mus.values())}};
  doc["spectrum"] = text_json(r.spectrum);
  doc["a"] = text_json(r.a.values());
  doc["antibidiagonal"] = matrix_json(r.antibidiagonal.entries());
  doc["jacobi"] = matrix_json(r.jacobi.entries());
  if constexpr (!is_exact_v<T>) {
    const auto eig = eigensolve_tridiagonal(r.jacobi, job.policy).values();
    double err = 0;
    const std::size_t n = mus.size();
    for (std::size_t j = 0; j < n; ++j)
      err = std::max(err, std::fabs(eig[n - 1 - j] - mus.values()[j]) / mus.values()[j]);
    doc["diagnostics"] = {{"spectrum_error", err}};
  }
  doc["warnings"] = json::array();
  return doc;
}

template <Scalar T>
json run_signreg(const JobSpec& job, std::vector<T> values, InputKind kind) {
  json doc;
  doc["command"] = "signreg";
  doc["backend"] = std::string(scalar_traits<T>::name);
  doc["input"] = {{std::string(input_key(kind)), text_json(values)}};
  std::vector<std::string> warnings;
  StructuredMatrix<T> a_mat;
  if (kind == InputKind::A) {
    a_mat = build_antibidiagonal(CoefficientVector<T>(std::move(values)));
  } else {
    if constexpr (!scalar_traits<T>::has_sqrt) {
      throw Error(ErrorCode::BackendUnsupported,
                  "a solved matrix has irrational entries; pass --a with the rational backend");
    } else {
      const auto spectrum = validate_spectrum(std::move(values));
      const auto trace = solve(spectrum, job.policy, SolveOptions{false, false});
      a_mat = build_antibidiagonal(*trace.a);
      warnings = trace.warnings;
    }
  }
  const std::size_t n = a_mat.n();
  guard_minor_count(n, n);
  const auto sig = signature_sequence(n);
  const auto report = classify_sign_regular(a_mat, n, sig, job.policy, ClassifyOptions{true});
  const std::size_t max_power = job.max_power.value_or(default_max_power(n));
  const auto power = check_class_plus(a_mat, max_power, job.policy);

  doc["matrix"] = matrix_json(a_mat.entries());
  doc["signature"] = sig.epsilons;
  json orders = json::array();
  for (const auto& o : report.orders) {
    json e{{"order", o.order},
           {"epsilon", o.epsilon},
           {"conforming", o.conforming},
           {"strict", o.strict},
           {"principal_conforming", o.principal_conforming},
           {"principal_strict", o.principal_strict},
           {"minors_checked", o.minors_checked}};
    if (o.worst)
      e["worst"] = {{"rows", o.worst->rows},
                    {"cols", o.worst->cols},
                    {"value", o.worst->value},
                    {"normalized", o.worst->normalized}};
    orders.push_back(e);
  }
  doc["orders"] = orders;
  doc["conforming"] = report.conforming();
  doc["achieved_class"] = report.achieved_class;
  doc["strict"] = report.strict;
  doc["principal_conforming"] = report.principal_conforming;
  doc["max_power"] = max_power;
  doc["class_plus_power"] = power ? json(*power) : json(nullptr);
  doc["warnings"] = warnings;
  return doc;
}

inline std::vector<std::size_t> default_sizes() {
  std::vector<std::size_t> s;
  for (std::size_t n = 1; n <= 12; ++n) s.push_back(n);
  return s;
}

inline json run_verify_all(const JobSpec& job, bool& all_passed) {
  verify::SuiteConfig cfg;
  cfg.seed = job.seed;
  cfg.sizes = job.sizes.empty() ? default_sizes() : job.sizes;
  cfg.policy = job.policy;
  if (job.cases) cfg.cases = *job.cases;
  const auto results = verify::run_all(cfg);
  json props = json::array();
  all_passed = true;
  for (const auto& r : results) {
    json e{{"name", r.name},
           {"cases", r.cases},
           {"failures", r.failures},
           {"skipped", r.skipped},
           {"passed", r.passed()},
           {"detail", r.detail}};
    if (job.verbose) e["seconds"] = r.seconds;
    props.push_back(e);
    all_passed = all_passed && r.passed();
  }
  return {{"command", "verify-all"},
          {"seed", cfg.seed},
          {"sizes", cfg.sizes},
          {"cases", cfg.cases},
          {"properties", props},
          {"passed", all_passed}};
}

template <Scalar T>
json dispatch(const JobSpec& job) {
  InputKind kind = InputKind::Spectrum;
  switch (job.command) {
    case Command::Solve:
      return run_solve(job, parse_values<T>(input_tokens(job, {InputKind::Spectrum}, kind), kind));
    case Command::Roundtrip:
      if constexpr (is_exact_v<T>)
        throw Error(ErrorCode::BackendUnsupported, "roundtrip eigensolve needs --backend float64");
      return run_roundtrip(job, parse_values<T>(input_tokens(job, {InputKind::Spectrum}, kind), kind));
    case Command::Forward:
      return run_forward(job, parse_values<T>(input_tokens(job, {InputKind::A}, kind), kind));
    case Command::Sqrt:
      if constexpr (!scalar_traits<T>::has_sqrt)
        throw Error(ErrorCode::BackendUnsupported, "sqrt needs square roots; use --backend float64");
      return run_sqrt(job, parse_values<T>(input_tokens(job, {InputKind::Mus}, kind), kind));
    case Command::Signreg: {
      auto tokens = input_tokens(job, {InputKind::A, InputKind::Spectrum}, kind);
      return run_signreg(job, parse_values<T>(tokens, kind), kind);
    }
    case Command::VerifyAll:
      break;
  }
  throw Error(ErrorCode::MalformedInput, "unhandled command");
}

inline void emit(const json& doc, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json: out << doc.dump(2) << "\n"; break;
    case Format::Csv: write_csv(doc, out); break;
    case Format::Pretty: write_pretty(doc, out); break;
  }
}

/// Executes a job. Output is written only on success; failures print one
/// "error: Code: detail" line to `err`.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (!job.policy.valid()) throw Error(ErrorCode::MalformedInput, "tolerances must be finite and non-negative");
    json doc;
    int status = kExitOk;
    if (job.command == Command::VerifyAll) {
      bool passed = true;
      doc = run_verify_all(job, passed);
      if (!passed) status = kExitNumerical;
    } else if (job.backend == Backend::Rational) {
      doc = dispatch<Rational>(job);
    } else {
      doc = dispatch<Float64>(job);
    }
    std::ostringstream buffer;
    emit(doc, job.format, buffer);
    out << buffer.str();
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e.category());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitNumerical;
  }
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

/// Parses "1-12,15" into {1, ..., 12, 15}.
inline std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& tok : split_values(text)) {
    const auto dash = tok.find('-');
    auto num = [&](std::string_view s) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || v == 0)
        throw Error(ErrorCode::MalformedInput, "bad size '" + std::string(s) + "' in --sizes");
      return v;
    };
    if (dash == std::string::npos) {
      out.push_back(num(tok));
    } else {
      const auto lo = num(detail::trim(std::string_view(tok).substr(0, dash)));
      const auto hi = num(detail::trim(std::string_view(tok).substr(dash + 1)));
      if (lo > hi) throw Error(ErrorCode::MalformedInput, "empty range '" + tok + "' in --sizes");
      for (auto n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  if (out.empty()) throw Error(ErrorCode::MalformedInput, "--sizes is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Full command line entry point.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Inverse eigenvalue solver for positive symmetric anti-bidiagonal matrices", "antibidiag"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "antibidiag 1.0.0");

  JobSpec job;
  std::string backend = "float64", format = "json", sizes;
  std::optional<double> tol_abs, tol_rel, root_tol;
  std::optional<std::size_t> max_power, cases;

  const std::map<std::string, Backend> backends{{"float64", Backend::Float64}, {"rational", Backend::Rational}};
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"pretty", Format::Pretty}};

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"solve", "Reconstruct the positive anti-bidiagonal matrix with a given spectrum", Command::Solve},
      {"forward", "Characteristic polynomials of the matrix built from a", Command::Forward},
      {"roundtrip", "Solve, then recompute the eigenvalues and report the error", Command::Roundtrip},
      {"sqrt", "Jacobi matrix with spectrum mus and a positive anti-bidiagonal square root", Command::Sqrt},
      {"signreg", "Sign-regularity class of a supplied or solved matrix", Command::Signreg},
      {"verify-all", "Run the randomized property suite", Command::VerifyAll},
  };
  std::vector<std::pair<CLI::App*, Command>> parsers;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough(false);
    if (s.command == Command::Solve || s.command == Command::Roundtrip || s.command == Command::Signreg)
      sub->add_option("--spectrum", job.spectrum, "Comma-separated eigenvalues, e.g. 3,-2,1")->allow_extra_args(false);
    if (s.command == Command::Forward || s.command == Command::Signreg)
      sub->add_option("--a", job.a, "Comma-separated positive coefficients a_1..a_n")->allow_extra_args(false);
    if (s.command == Command::Sqrt)
      sub->add_option("--mus", job.mus, "Comma-separated strictly decreasing positive values")->allow_extra_args(false);
    if (s.command != Command::VerifyAll) {
      sub->add_option("--input", job.input_path, "JSON {\"spectrum\"|\"a\"|\"mus\": [...]} or one value per line");
      sub->add_option("--backend", backend, "float64 or rational")->check(CLI::IsMember({"float64", "rational"}));
    }
    sub->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--tol-abs", tol_abs, "Absolute comparison tolerance");
    sub->add_option("--tol-rel", tol_rel, "Relative comparison tolerance");
    sub->add_option("--root-tol", root_tol, "Root-finding tolerance");
    if (s.command == Command::Signreg)
      sub->add_option("--max-power", max_power, "Largest power of A^2 tried for total positivity");
    if (s.command == Command::VerifyAll) {
      sub->add_option("--seed", job.seed, "Sampling seed");
      sub->add_option("--sizes", sizes, "Orders to sample, e.g. 1-12,15");
      sub->add_option("--cases", cases, "Cases per property");
    }
    sub->add_flag("--verbose,-v", job.verbose, "Include intermediate polynomials and timings");
    parsers.emplace_back(sub, s.command);
  }

  // "--spectrum=" names an empty list; CLI11 reads it as a missing value.
  std::vector<std::string> args(argv, argv + argc);
  for (std::size_t i = 1; i < args.size(); ++i)
    if (args[i] == "--spectrum=" || args[i] == "--a=" || args[i] == "--mus=") {
      args[i].pop_back();
      args.insert(args.begin() + std::ptrdiff_t(i) + 1, "");
      ++i;
    }
  std::vector<const char*> raw;
  for (const auto& a : args) raw.push_back(a.c_str());

  try {
    app.parse(int(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& [sub, command] : parsers)
    if (sub->parsed()) job.command = command;
  job.backend = backends.at(backend);
  job.format = formats.at(format);
  if (tol_abs) job.policy.eq_abs = *tol_abs;
  if (tol_rel) job.policy.eq_rel = *tol_rel;
  if (root_tol) job.policy.root_tol = *root_tol;
  job.max_power = max_power;
  job.cases = cases;
  if (!sizes.empty()) {
    try {
      job.sizes = parse_sizes(sizes);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return run(job, out, err);
}

}  // namespace antibidiag::cli

#endif  // ANTIBIDIAG_CLI_HPP
