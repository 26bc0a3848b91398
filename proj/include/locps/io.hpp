#pragma once

// JSON matrix files and report payloads.
//
// MatrixFile:
//   { "n": 3, "mode": "rational", "entries": [["1/1", "-1/1", ...], ...],
//     "family": {...}?, "s_squared": "5/8"? }
// float files carry JSON numbers, rational files carry "p/q" strings.

#include "locps/harness.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>
#include <string>
#include <variant>

namespace locps {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed matrix file or report input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyMatrix = std::variant<SymMatrix<double>, SymMatrix<Rational>, SymMatrix<Surd>>;

struct MatrixFile {
  AnyMatrix matrix;
  json family;  // null when absent
  std::optional<Rational> s_squared;
};

// ---------------------------------------------------------------------------
// scalars

inline json scalar_json(double x) { return x; }
inline json scalar_json(const Rational& x) { return to_string(x); }
inline json scalar_json(const Surd& x) { return x.is_rational() ? json(to_string(x.rational_part())) : json(x.str()); }

inline json index_json(const IndexSet& s) { return s.one_based(); }

// ---------------------------------------------------------------------------
// matrices

template <Scalar T>
json matrix_json(const SymMatrix<T>& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.order(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.order(); ++j) row.push_back(scalar_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
  requires(!std::is_same_v<T, Surd>)
json matrix_file_json(const SymMatrix<T>& a, const json& family = nullptr) {
  json j;
  j["n"] = a.order();
  j["mode"] = std::is_same_v<T, double> ? "float" : "rational";
  j["entries"] = matrix_json(a);
  if (!family.is_null()) j["family"] = family;
  return j;
}

inline MatrixFile parse_matrix_file(const json& j) {
  if (!j.is_object()) throw FormatError("matrix file: top level must be an object");
  for (const char* key : {"n", "mode", "entries"})
    if (!j.contains(key)) throw FormatError(std::string("matrix file: missing field '") + key + "'");
  if (!j["n"].is_number_unsigned()) throw FormatError("matrix file: 'n' must be a nonnegative integer");
  const auto n = j["n"].get<std::size_t>();
  const std::string mode = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
  if (mode != "float" && mode != "rational") throw FormatError("matrix file: 'mode' must be \"float\" or \"rational\"");
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.size() != n) throw FormatError("matrix file: 'entries' must have n rows");
  for (const auto& row : rows)
    if (!row.is_array() || row.size() != n) throw FormatError("matrix file: every row must have n entries");

  MatrixFile out;
  if (j.contains("family")) out.family = j["family"];
  if (j.contains("s_squared")) {
    if (!j["s_squared"].is_string()) throw FormatError("matrix file: 's_squared' must be a \"p/q\" string");
    try {
      out.s_squared = parse_fraction(j["s_squared"].get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(std::string("matrix file: bad 's_squared': ") + e.what());
    }
  }

  auto check_symmetric = [&](auto const& at) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        if (!(at(i, k) == at(k, i)))
          throw FormatError("matrix file: not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
  };

  if (mode == "float") {
    std::vector<double> v;
    v.reserve(n * n);
    for (const auto& row : rows)
      for (const auto& x : row) {
        if (!x.is_number()) throw FormatError("matrix file: float mode entries must be JSON numbers");
        v.push_back(x.get<double>());
      }
    check_symmetric([&](std::size_t i, std::size_t k) { return v[i * n + k]; });
    out.matrix = SymMatrix<double>(n, std::move(v));
  } else {
    std::vector<Rational> v;
    v.reserve(n * n);
    for (const auto& row : rows)
      for (const auto& x : row) {
        if (!x.is_string()) throw FormatError("matrix file: rational mode entries must be \"p/q\" strings");
        try {
          v.push_back(parse_fraction(x.get<std::string>()));
        } catch (const std::exception& e) {
          throw FormatError(std::string("matrix file: ") + e.what());
        }
      }
    check_symmetric([&](std::size_t i, std::size_t k) { return v[i * n + k]; });
    out.matrix = SymMatrix<Rational>(n, std::move(v));
  }
  return out;
}

inline MatrixFile read_matrix_file(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  return parse_matrix_file(j);
}

// ---------------------------------------------------------------------------
// payloads

inline json tolerance_json(const TolerancePolicy& t) {
  return {{"eig_rel", t.eig_rel}, {"det_rel", t.det_rel}, {"slack_rel", t.slack_rel}};
}

inline json witness_json(const SubmatrixWitness& w) {
  return {{"indices", index_json(w.indices)}, {"verdict", to_string(w.verdict)}, {"min_eigenvalue", w.min_eigenvalue}};
}

inline json signature_json(const Signature& s) {
  return {{"negative", s.negative}, {"zero", s.zero}, {"positive", s.positive}};
}

template <Scalar T>
json membership_json(const MembershipReport<T>& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back(witness_json(x));
  return {{"classification", to_string(r.classification)},
          {"in_locally_psd_cone", in_locally_psd_cone(r.classification)},
          {"det", scalar_json(r.det_value)},
          {"det_value", to_double(r.det_value)},
          {"signature", signature_json(r.signature)},
          {"global", to_string(r.global)},
          {"exact", r.exact},
          {"witnesses", w}};
}

inline json local_json(const LocalReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back(witness_json(x));
  return {{"k", r.k}, {"all_psd", r.all_psd}, {"all_pd", r.all_pd}, {"witnesses", w}};
}

template <Scalar T>
json verdict_json(const BoundVerdict<T>& v) {
  json conds = json::array();
  for (const auto& c : v.conditions) conds.push_back({{"name", c.name}, {"met", c.met}, {"detail", c.detail}});
  json j = {{"inequality", to_string(v.id)},
            {"sense", v.sense == Sense::AtLeast ? ">=" : "<="},
            {"lhs", scalar_json(v.lhs)},
            {"rhs", scalar_json(v.rhs)},
            {"constant", scalar_json(v.constant)},
            {"slack", scalar_json(v.slack)},
            {"lhs_value", to_double(v.lhs)},
            {"rhs_value", to_double(v.rhs)},
            {"holds", v.holds},
            {"preconditions_met", v.preconditions_met},
            {"conditions", conds}};
  if (v.membership) j["membership"] = to_string(*v.membership);
  if (!v.alpha.empty() || v.id == InequalityId::ExtFisher || v.id == InequalityId::ExtKoteljanskii ||
      v.id == InequalityId::ClassicalFisher || v.id == InequalityId::ClassicalKoteljanskii) {
    j["alpha"] = index_json(v.alpha);
    j["beta"] = index_json(v.beta);
  }
  return j;
}

inline json record_json(const VerdictRecord& r) {
  json j = {{"label", r.label},
            {"trial", r.trial},
            {"inequality", to_string(r.id)},
            {"alpha", index_json(r.alpha)},
            {"beta", index_json(r.beta)},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"constant", r.constant},
            {"slack", r.slack},
            {"relative_slack", r.relative_slack},
            {"holds", r.holds},
            {"preconditions_met", r.preconditions_met}};
  if (r.lhs_exact) {
    j["lhs_exact"] = *r.lhs_exact;
    j["rhs_exact"] = *r.rhs_exact;
    j["constant_exact"] = *r.constant_exact;
    j["slack_exact"] = *r.slack_exact;
  }
  j["matrix"] = matrix_json(r.matrix);
  return j;
}

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json fuzz_json(const FuzzReport& r, std::size_t max_records) {
  json v = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_records; ++i) v.push_back(record_json(r.violations[i]));
  json p = json::array();
  for (const auto& x : r.probes) p.push_back(record_json(x));
  return {{"kind", to_string(r.kind)},
          {"n", r.n},
          {"seed", r.seed},
          {"trials", r.trials},
          {"rejects", r.rejects},
          {"preconditions_failed", r.preconditions_failed},
          {"min_slack", finite_or_null(r.min_slack)},
          {"min_relative_slack", finite_or_null(r.min_relative_slack)},
          {"min_ratio", finite_or_null(r.min_ratio)},
          {"violation_count", r.violations.size()},
          {"violations", v},
          {"probes", p}};
}

inline json suite_json(const IdentitySuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"trials", c.trials},
                      {"failures", c.failures},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance}});
  return {{"n", r.n}, {"trials", r.trials}, {"seed", r.seed}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace locps
