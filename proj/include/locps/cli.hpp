#pragma once

// The `locps` command line. run_cli is callable in-process; the tool's main
// is a thin wrapper around it.
//
// Exit codes: 0 success, 1 an --expect assertion failed, 2 bad usage,
// malformed input or a guard violation.

#include "locps/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>

namespace locps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExpectFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Invalid command-line arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "1,2,3", "{1,2,3}" or "" (empty set); 1-based.
inline IndexSet parse_index_list(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '{' && c != '}' && c != '[' && c != ']') s.push_back(c);
  std::vector<std::size_t> idx;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t next = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad index list '" + std::string(text) + "': expected 1-based integers separated by commas");
    const unsigned long v = std::stoul(tok);
    if (v == 0) throw UsageError("bad index list '" + std::string(text) + "': indices are 1-based");
    idx.push_back(v);
    pos = next + 1;
  }
  try {
    return IndexSet::from_one_based(idx);
  } catch (const std::exception& e) {
    throw UsageError("bad index list '" + std::string(text) + "': " + e.what());
  }
}

inline InequalityId parse_kind(std::string s) {
  for (char& c : s) c = static_cast<char>(c == '_' ? '-' : std::tolower(static_cast<unsigned char>(c)));
  static const std::map<std::string, InequalityId> names = {
      {"ext-hadamard", InequalityId::ExtHadamard},
      {"leading-block", InequalityId::LeadingBlock},
      {"ext-fisher", InequalityId::ExtFisher},
      {"ext-koteljanskii", InequalityId::ExtKoteljanskii},
      {"classical-hadamard", InequalityId::ClassicalHadamard},
      {"classical-fisher", InequalityId::ClassicalFisher},
      {"classical-koteljanskii", InequalityId::ClassicalKoteljanskii},
  };
  const auto it = names.find(s);
  if (it == names.end()) throw UsageError("unknown fuzz kind '" + s + "'");
  return it->second;
}

namespace detail {

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
  bool pretty = false;
  std::string output;
  TolerancePolicy tol;
};

inline std::uint64_t default_seed() {
  const char* env = std::getenv("LOCPS_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string_view(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("LOCPS_SEED is not an unsigned integer: '") + env + "'");
  }
}

inline Rational parse_parameter(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError("bad value for --" + name + ": " + e.what());
  }
}

inline void emit(Context& ctx, const std::string& text) {
  if (ctx.output.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream f(ctx.output);
  if (!f) throw UsageError("cannot open '" + ctx.output + "' for writing");
  f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json report(const Context& ctx, const std::string& command, std::string_view mode, json payload) {
  return {{"schema_version", kSchemaVersion},
          {"command", {{"name", command}, {"argv", ctx.argv}}},
          {"tolerance", tolerance_json(ctx.tol)},
          {"mode", mode},
          {"payload", std::move(payload)}};
}

/// Loads a matrix file. A fisher-sharp float file with an "s_squared"
/// sidecar is rebuilt as the exact quadratic-field matrix after checking
/// that the stored floats agree with it.
inline MatrixFile load(Context& ctx, const std::string& path, bool use_sidecar) {
  MatrixFile mf;
  if (path == "-") {
    mf = read_matrix_file(ctx.in);
  } else {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open '" + path + "'");
    mf = read_matrix_file(f);
  }
  if (!use_sidecar || !mf.s_squared || !mf.family.is_object() || mf.family.value("name", "") != "fisher-sharp")
    return mf;
  const auto* stored = std::get_if<SymMatrix<double>>(&mf.matrix);
  if (stored == nullptr) return mf;
  const std::size_t n = stored->order();
  if (n < 3) throw FormatError("fisher-sharp sidecar: n must be at least 3");
  if (fisher_sharp_params(n).s_squared != *mf.s_squared)
    throw FormatError("fisher-sharp sidecar: s_squared does not match the family at n = " + std::to_string(n));
  SymMatrix<Surd> exact = fisher_sharp(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(exact(i, j).to_double() - (*stored)(i, j)) > 1e-12)
        throw FormatError("fisher-sharp sidecar: stored entries disagree with the exact family");
  mf.matrix = std::move(exact);
  return mf;
}

template <Scalar T>
std::string_view mode_of() {
  return scalar_traits<T>::mode;
}

// ---------------------------------------------------------------------------
// pretty rendering

inline std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get<double>();
    return s.str();
  }
  if (v.is_array()) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + cell(v[i]);
    return out + "}";
  }
  return v.dump();
}

inline std::string table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) s << (c ? "  " : "") << std::left << std::setw(int(w[c])) << r[c];
    s << "\n";
  };
  line(head);
  std::vector<std::string> rule;
  for (auto x : w) rule.emplace_back(x, '-');
  line(rule);
  for (const auto& r : rows) line(r);
  return s.str();
}

inline std::string pretty_matrix(const json& entries) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""};
  for (std::size_t j = 0; j < entries.size(); ++j) head.push_back(std::to_string(j + 1));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::vector<std::string> r{std::to_string(i + 1)};
    for (const auto& x : entries[i]) r.push_back(cell(x));
    rows.push_back(std::move(r));
  }
  return table(head, rows);
}

inline std::string pretty_membership(const json& p) {
  std::ostringstream s;
  s << "classification  " << cell(p["classification"]) << "\n"
    << "det             " << cell(p["det"]) << "\n"
    << "global          " << cell(p["global"]) << "\n"
    << "signature       (" << p["signature"]["negative"] << ", " << p["signature"]["zero"] << ", "
    << p["signature"]["positive"] << ")\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& w : p["witnesses"])
    rows.push_back({cell(w["indices"]), cell(w["verdict"]), cell(w["min_eigenvalue"])});
  s << table({"submatrix", "verdict", "min eigenvalue"}, rows);
  return s.str();
}

inline std::string pretty_verdicts(const json& list) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : list) {
    std::string sets = v.contains("alpha") ? cell(v["alpha"]) + " " + cell(v["beta"]) : "";
    rows.push_back({cell(v["inequality"]), sets, cell(v["lhs"]), cell(v["sense"]), cell(v["rhs"]), cell(v["constant"]),
                    cell(v["slack"]), cell(v["preconditions_met"]), cell(v["holds"])});
  }
  return table({"inequality", "alpha beta", "lhs", "", "rhs", "constant", "slack", "preconditions", "holds"}, rows);
}

// ---------------------------------------------------------------------------
// commands

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  std::optional<std::string> x, r, t;
  bool allow_out_of_regime = false;
  bool as_float = false;
};

inline int run_gen(Context& ctx, const GenOptions& o) {
  json family = {{"name", o.family}};
  auto need = [&](const std::optional<std::string>& v, const char* name) {
    if (!v) throw UsageError("gen " + o.family + " needs --" + name);
    const Rational q = parse_parameter(name, *v);
    family[name] = to_string(q);
    return q;
  };
  auto need_n = [&] {
    if (o.n == 0) throw UsageError("gen " + o.family + " needs --n");
    family["n"] = o.n;
    return o.n;
  };

  json file;
  if (o.family == "fisher-sharp") {
    const std::size_t n = need_n();
    const auto exact = fisher_sharp(n);
    file = matrix_file_json(exact.map([](const Surd& s) { return s.to_double(); }), family);
    file["s_squared"] = to_string(fisher_sharp_params(n).s_squared);
  } else {
    SymMatrix<Rational> a;
    if (o.family == "uniform-offdiag") {
      const std::size_t n = need_n();
      a = uniform_offdiag<Rational>(n, need(o.x, "x"), o.allow_out_of_regime);
    } else if (o.family == "ar-family") {
      const std::size_t n = need_n();
      a = ar_family<Rational>(n, need(o.r, "r"));
    } else if (o.family == "bordered-equality") {
      a = bordered_equality<Rational>(need_n());
    } else if (o.family == "kotel-example") {
      a = kotel_example<Rational>();
    } else if (o.family == "counterexample-2x2") {
      a = counterexample_2x2<Rational>(need(o.t, "t"));
    } else if (o.family == "counterexample-bordered") {
      a = counterexample_bordered<Rational>(need(o.t, "t"));
    } else {
      throw UsageError("unknown family '" + o.family + "'");
    }
    file = o.as_float ? matrix_file_json(a.to_double_matrix(), family) : matrix_file_json(a, family);
  }
  emit(ctx, ctx.pretty ? pretty_matrix(file["entries"]) : dump(file));
  return kExitOk;
}

/// locally-psd accepts both S+ classes, psd accepts PD as well.
inline bool expectation_met(const std::string& expect, Classification c) {
  if (expect == "locally-psd" || expect == "in-cone") return in_locally_psd_cone(c);
  if (expect == "locally-pd") return c == Classification::LocallyPD;
  if (expect == "psd") return c == Classification::PD || c == Classification::PSD;
  if (expect == "pd") return c == Classification::PD;
  if (expect == "none") return c == Classification::None;
  throw UsageError("unknown --expect value '" + expect + "' (pd, psd, locally-psd, locally-pd, in-cone, none)");
}

struct CheckOptions {
  std::string file;
  std::optional<std::size_t> k;
  std::optional<std::string> expect;
  bool no_sidecar = false;
};

inline int run_check(Context& ctx, const CheckOptions& o) {
  if (o.expect) (void)expectation_met(*o.expect, Classification::None);
  MatrixFile mf = load(ctx, o.file, !o.no_sidecar);
  return std::visit(
      [&]<class T>(const SymMatrix<T>& a) {
        const auto rep = classify_membership(a, ctx.tol);
        json payload = membership_json(rep);
        if (o.k) payload["local"] = local_json(locally_psd_verdict(a, *o.k, ctx.tol));
        bool ok = true;
        if (o.expect) {
          ok = expectation_met(*o.expect, rep.classification);
          payload["expect"] = {{"value", *o.expect}, {"met", ok}};
        }
        if (ctx.pretty) {
          std::string text = pretty_membership(payload);
          if (o.expect) text += "\nexpect " + *o.expect + ": " + (ok ? "met" : "NOT met") + "\n";
          emit(ctx, text);
        } else {
          emit(ctx, dump(report(ctx, "check", mode_of<T>(), std::move(payload))));
        }
        return ok ? kExitOk : kExitExpectFailed;
      },
      mf.matrix);
}

struct BoundsOptions {
  std::string file;
  std::optional<std::string> alpha, beta;
  std::string which = "all";
  std::optional<std::string> expect;
  bool no_sidecar = false;
};

inline int run_bounds(Context& ctx, const BoundsOptions& o) {
  static const std::vector<std::string> kinds = {"hadamard", "leading", "fisher", "koteljanskii", "classical"};
  if (o.which != "all" && std::find(kinds.begin(), kinds.end(), o.which) == kinds.end())
    throw UsageError("unknown --which '" + o.which + "' (all, hadamard, leading, fisher, koteljanskii, classical)");
  if (o.expect && *o.expect != "holds" && *o.expect != "fails")
    throw UsageError("unknown --expect value '" + *o.expect + "' (holds, fails)");
  const std::optional<IndexSet> alpha = o.alpha ? std::optional(parse_index_list(*o.alpha)) : std::nullopt;
  const std::optional<IndexSet> beta = o.beta ? std::optional(parse_index_list(*o.beta)) : std::nullopt;
  MatrixFile mf = load(ctx, o.file, !o.no_sidecar);

  return std::visit(
      [&]<class T>(const SymMatrix<T>& a) {
        const std::size_t n = a.order();
        if (alpha) alpha->check_range(n);
        if (beta) beta->check_range(n);
        const bool all = o.which == "all";
        json verdicts = json::array();
        json skipped = json::array();
        auto skip = [&](const std::string& what, const std::string& why) {
          if (!all) throw UsageError(what + ": " + why);
          skipped.push_back({{"inequality", what}, {"reason", why}});
        };

        if (all || o.which == "hadamard") {
          if (n < 3) skip("hadamard", "needs n >= 3");
          else verdicts.push_back(verdict_json(check_extended_hadamard(a, ctx.tol)));
        }
        if (all || o.which == "leading") {
          if (n < 3) skip("leading", "needs n >= 3");
          else verdicts.push_back(verdict_json(check_leading_block(a, ctx.tol)));
        }
        if (all || o.which == "fisher") {
          if (n < 3) skip("fisher", "needs n >= 3");
          else if (!alpha) skip("fisher", "needs --alpha");
          else if (alpha->empty() || alpha->size() == n) skip("fisher", "--alpha must be a nonempty proper subset");
          else verdicts.push_back(verdict_json(check_extended_fisher(a, *alpha, ctx.tol)));
        }
        if (all || o.which == "koteljanskii") {
          if (!alpha || !beta) {
            skip("koteljanskii", "needs --alpha and --beta");
          } else {
            const std::size_t r = set_union(*alpha, *beta).size() - set_intersection(*alpha, *beta).size();
            if (r < 3) skip("koteljanskii", "needs |(alpha u beta) \\ (alpha n beta)| >= 3");
            else verdicts.push_back(verdict_json(check_extended_koteljanskii(a, *alpha, *beta, ctx.tol)));
          }
        }
        if (all || o.which == "classical") {
          if (all && !alpha) {
            skip("classical", "needs --alpha");
          } else {
            for (const auto& v : check_classical(a, alpha.value_or(IndexSet{}), beta.value_or(IndexSet{}), ctx.tol))
              verdicts.push_back(verdict_json(v));
          }
        }

        bool ok = true;
        if (o.expect) {
          const bool want = *o.expect == "holds";
          for (const auto& v : verdicts) ok = ok && v["holds"].get<bool>() == want;
        }
        if (ctx.pretty) {
          std::string text = pretty_verdicts(verdicts);
          for (const auto& s : skipped) text += "skipped " + cell(s["inequality"]) + ": " + cell(s["reason"]) + "\n";
          if (o.expect) text += "expect " + *o.expect + ": " + (ok ? "met" : "NOT met") + "\n";
          emit(ctx, text);
        } else {
          json payload = {{"n", n}, {"verdicts", verdicts}, {"skipped", skipped}};
          if (o.expect) payload["expect"] = {{"value", *o.expect}, {"met", ok}};
          emit(ctx, dump(report(ctx, "bounds", mode_of<T>(), std::move(payload))));
        }
        return ok ? kExitOk : kExitExpectFailed;
      },
      mf.matrix);
}

struct FuzzOptions {
  std::string kind;
  std::size_t n = 0;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  double perturb = 0.05;
  bool no_probes = false;
  std::size_t max_records = 20;
  std::optional<std::string> expect;
};

inline int run_fuzz(Context& ctx, const FuzzOptions& o) {
  if (o.expect && *o.expect != "no-violations")
    throw UsageError("unknown --expect value '" + *o.expect + "' (no-violations)");
  SampleConfig cfg;
  cfg.n = o.n;
  cfg.count = o.trials;
  cfg.seed = o.seed ? *o.seed : default_seed();
  cfg.perturb_scale = o.perturb;
  cfg.tol = ctx.tol;
  IndexSelector sel;
  sel.inject_boundary_probes = !o.no_probes;
  const FuzzReport rep = fuzz_bound(parse_kind(o.kind), cfg, sel);
  const bool ok = !o.expect || rep.violations.empty();
  json payload = fuzz_json(rep, o.max_records);
  if (ctx.pretty) {
    std::ostringstream s;
    s << "kind " << payload["kind"].get<std::string>() << ", n " << rep.n << ", seed " << rep.seed << ", trials "
      << rep.trials << ", rejects " << rep.rejects << "\n"
      << "violations " << rep.violations.size() << ", preconditions failed " << rep.preconditions_failed << "\n"
      << "min slack " << cell(payload["min_slack"]) << ", min relative slack " << cell(payload["min_relative_slack"])
      << ", min det/prod(diag) " << cell(payload["min_ratio"]) << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& list : {payload["violations"], payload["probes"]})
      for (const auto& r : list)
        rows.push_back({cell(r["label"]), cell(r["trial"]), cell(r["alpha"]), cell(r["beta"]), cell(r["lhs"]),
                        cell(r["rhs"]), cell(r["slack"]), cell(r["holds"])});
    if (!rows.empty()) s << "\n" << table({"label", "trial", "alpha", "beta", "lhs", "rhs", "slack", "holds"}, rows);
    emit(ctx, s.str());
  } else {
    if (o.expect) payload["expect"] = {{"value", *o.expect}, {"met", ok}};
    emit(ctx, dump(report(ctx, "fuzz", "float", std::move(payload))));
  }
  return ok ? kExitOk : kExitExpectFailed;
}

struct SuiteOptions {
  std::size_t n = 0;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  double rel_tol = 1e-10;
  bool expect_pass = false;
};

inline int run_suite(Context& ctx, const SuiteOptions& o) {
  const auto rep = identity_suite(o.n, o.trials, o.seed ? *o.seed : default_seed(), ctx.tol, o.rel_tol);
  const bool ok = !o.expect_pass || rep.passed();
  if (ctx.pretty) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : rep.checks)
      rows.push_back({c.name, std::to_string(c.trials), std::to_string(c.failures), cell(json(c.max_error)),
                      cell(json(c.tolerance))});
    emit(ctx, table({"identity", "trials", "failures", "max error", "tolerance"}, rows) +
                  (rep.passed() ? "all identities passed\n" : "FAILURES\n"));
  } else {
    emit(ctx, dump(report(ctx, "suite", "float", suite_json(rep))));
  }
  return ok ? kExitOk : kExitExpectFailed;
}

inline constexpr std::size_t kOracleLimit = 12;

inline int run_oracle(Context& ctx, const std::string& path, bool no_sidecar) {
  MatrixFile mf = load(ctx, path, !no_sidecar);
  const std::size_t n = std::visit([](const auto& a) { return a.order(); }, mf.matrix);
  if (n > kOracleLimit)
    throw GuardExceeded("oracle: n = " + std::to_string(n) + " exceeds the guard of " + std::to_string(kOracleLimit));
  auto body = [&]<class T>(const SymMatrix<T>& a) {
    const PrincipalMinorTable<T> table(a);
    json minors = json::array();
    for (std::size_t k = 1; k <= n; ++k)
      for_each_subset(n, k, [&](const IndexSet& s) {
        minors.push_back({{"indices", index_json(s)}, {"value", scalar_json(table.minor(table.mask_of(s)))}});
      });
    const json det = scalar_json(table.minor((std::uint64_t{1} << n) - 1));
    if (ctx.pretty) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& m : minors) rows.push_back({cell(m["indices"]), cell(m["value"])});
      emit(ctx, "determinant " + cell(det) + "\n\n" + detail::table({"indices", "minor"}, rows));
    } else {
      emit(ctx, dump(report(ctx, "oracle", mode_of<T>(),
                            {{"n", n}, {"determinant", det}, {"principal_minors", minors}})));
    }
    return kExitOk;
  };
  // Floats convert exactly, so the oracle never works in floating point.
  if (const auto* d = std::get_if<SymMatrix<double>>(&mf.matrix)) return body(to_rational(*d));
  if (const auto* q = std::get_if<SymMatrix<Rational>>(&mf.matrix)) return body(*q);
  return body(std::get<SymMatrix<Surd>>(mf.matrix));
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  detail::Context ctx{in, out, err, args, false, {}, {}};

  CLI::App app{"Determinant bounds on the (n-1)-locally PSD cone", "locps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "locps 1.0");

  double eig_rel = ctx.tol.eig_rel;
  double det_rel = ctx.tol.det_rel;
  std::optional<double> tol;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--pretty", ctx.pretty, "Human-readable tables instead of JSON");
    sub->add_option("-o,--output", ctx.output, "Write to FILE instead of stdout");
    sub->add_option("--tol", tol, "Relative tolerance for eigenvalues and slack");
    sub->add_option("--eig-tol", eig_rel, "Relative eigenvalue tolerance");
    sub->add_option("--det-tol", det_rel, "Relative tolerance for det < 0");
  };

  detail::GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a named family as a matrix file");
  g->add_option("family", gen.family,
                "uniform-offdiag, ar-family, bordered-equality, fisher-sharp, kotel-example, counterexample-2x2, "
                "counterexample-bordered")
      ->required();
  g->add_option("--n", gen.n, "Order");
  g->add_option("--x", gen.x, "Off-diagonal magnitude (uniform-offdiag)");
  g->add_option("--r", gen.r, "Off-diagonal value (ar-family)");
  g->add_option("--t", gen.t, "Parameter t (counterexamples)");
  g->add_flag("--allow-out-of-regime", gen.allow_out_of_regime);
  g->add_flag("--float", gen.as_float, "Emit float mode");
  common(g);

  detail::CheckOptions check;
  auto* c = app.add_subcommand("check", "Classify cone membership");
  c->add_option("file", check.file, "Matrix file or - for stdin")->required();
  c->add_option("--k", check.k, "Also report every order-k principal submatrix");
  c->add_option("--expect", check.expect, "pd, psd, locally-psd, locally-pd, in-cone or none");
  c->add_flag("--no-sidecar", check.no_sidecar, "Ignore an exact s_squared sidecar");
  common(c);

  detail::BoundsOptions bounds;
  auto* b = app.add_subcommand("bounds", "Evaluate the determinant inequalities");
  b->add_option("file", bounds.file, "Matrix file or - for stdin")->required();
  b->add_option("--alpha", bounds.alpha, "1-based index list, e.g. 1,2,3");
  b->add_option("--beta", bounds.beta, "1-based index list");
  b->add_option("--which", bounds.which, "all, hadamard, leading, fisher, koteljanskii or classical");
  b->add_option("--expect", bounds.expect, "holds or fails");
  b->add_flag("--no-sidecar", bounds.no_sidecar, "Ignore an exact s_squared sidecar");
  common(b);

  detail::FuzzOptions fuzz;
  auto* f = app.add_subcommand("fuzz", "Randomised search for violations");
  f->add_option("--kind", fuzz.kind, "ext-hadamard, leading-block, ext-fisher, ext-koteljanskii, classical-*")
      ->required();
  f->add_option("--n", fuzz.n, "Order")->required();
  f->add_option("--trials", fuzz.trials, "Number of samples");
  f->add_option("--seed", fuzz.seed, "Seed (default: LOCPS_SEED or 0)");
  f->add_option("--perturb", fuzz.perturb, "Rank-one perturbation scale");
  f->add_option("--max-records", fuzz.max_records, "Violations listed in the report");
  f->add_flag("--no-probes", fuzz.no_probes, "Skip the built-in boundary probes");
  f->add_option("--expect", fuzz.expect, "no-violations");
  common(f);

  detail::SuiteOptions suite;
  auto* s = app.add_subcommand("suite", "Randomised linear-algebra identity checks");
  s->add_option("--n", suite.n, "Order (3..8)")->required();
  s->add_option("--trials", suite.trials, "Instances per identity");
  s->add_option("--seed", suite.seed, "Seed (default: LOCPS_SEED or 0)");
  s->add_option("--rel-tol", suite.rel_tol, "Relative tolerance");
  s->add_flag("--expect-pass", suite.expect_pass, "Exit 1 unless every identity passes");
  common(s);

  std::string oracle_file;
  bool oracle_no_sidecar = false;
  auto* o = app.add_subcommand("oracle", "Exact determinant and every principal minor");
  o->add_option("file", oracle_file, "Matrix file or - for stdin")->required();
  o->add_flag("--no-sidecar", oracle_no_sidecar, "Ignore an exact s_squared sidecar");
  common(o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitBadInput;
  }

  try {
    ctx.tol.eig_rel = eig_rel;
    ctx.tol.det_rel = det_rel;
    if (tol) ctx.tol.eig_rel = ctx.tol.slack_rel = *tol;
    if (*g) return detail::run_gen(ctx, gen);
    if (*c) return detail::run_check(ctx, check);
    if (*b) return detail::run_bounds(ctx, bounds);
    if (*f) return detail::run_fuzz(ctx, fuzz);
    if (*s) return detail::run_suite(ctx, suite);
    if (*o) return detail::run_oracle(ctx, oracle_file, oracle_no_sidecar);
  } catch (const std::exception& e) {
    err << "locps: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace locps::cli
