#pragma once

// Seeded sampling of cone members, property fuzzing of the bound checkers and
// a suite of algebraic identities.
//
// Every trial draws from its own random stream derived from (seed, trial), so
// reports do not depend on evaluation order.

#include "locps/bounds.hpp"
#include "locps/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace locps {

/// SplitMix64. Used instead of <random> distributions so that streams are
/// bit-identical across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform in the open interval (lo, hi).
  double uniform_open(double lo, double hi) {
    double x;
    do x = uniform(lo, hi);
    while (x <= lo || x >= hi);
    return x;
  }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : (*this)() % bound; }

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, index, salt).
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (salt + 1)));
  const std::uint64_t base = mix();
  SplitMix64 g(base + 0x9E3779B97F4A7C15ULL * (index + 1));
  g();
  return g;
}

struct SampleConfig {
  std::size_t n = 4;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  double perturb_scale = 0.05;
  double diag_lo = 0.5;
  double diag_hi = 2.0;
  /// Total rejection guard; 0 means 100 * count.
  std::size_t max_rejects = 0;
  TolerancePolicy tol{};

  std::size_t reject_limit() const { return max_rejects ? max_rejects : 100 * std::max<std::size_t>(count, 1); }
};

struct SampleBatch {
  std::vector<SymMatrix<double>> matrices;
  std::size_t rejects = 0;
};

namespace detail {

inline std::vector<double> random_unit_vector(std::size_t n, SplitMix64& rng) {
  std::vector<double> v(n);
  double norm = 0;
  do {
    norm = 0;
    for (auto& x : v) {
      x = rng.uniform(-1.0, 1.0);
      norm += x * x;
    }
  } while (norm < 1e-6);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

/// One candidate of the cone sampler (before verification):
/// A(r) -> random permutation -> diagonal congruence -> rank-one perturbations.
inline SymMatrix<double> cone_candidate(const SampleConfig& cfg, SplitMix64& rng) {
  const std::size_t n = cfg.n;
  const double lo = -1.0 / static_cast<double>(n - 2);
  const double hi = -1.0 / static_cast<double>(n - 1);
  SymMatrix<double> a = ar_family<double>(n, rng.uniform_open(lo, hi));

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  a = permute<double>(a, perm);

  std::vector<double> d(n);
  for (auto& x : d) x = std::sqrt(cfg.diag_lo == cfg.diag_hi ? cfg.diag_lo : rng.uniform(cfg.diag_lo, cfg.diag_hi));
  a = diagonal_congruence<double>(a, d);

  if (cfg.perturb_scale > 0) {
    std::vector<double> entries(a.entries().begin(), a.entries().end());
    for (std::size_t term = 0; term < n; ++term) {
      const double eps = rng.uniform(-cfg.perturb_scale, cfg.perturb_scale);
      const auto v = random_unit_vector(n, rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) entries[i * n + j] += eps * v[i] * v[j];
    }
    a = SymMatrix<double>(n, std::move(entries));
  }
  return a;
}

/// Draws one verified member of S+_{n,n-1}, counting rejected candidates.
inline SymMatrix<double> draw_cone_member(const SampleConfig& cfg, SplitMix64& rng, std::size_t& rejects) {
  while (true) {
    SymMatrix<double> a = cone_candidate(cfg, rng);
    if (in_locally_psd_cone(classify_membership(a, cfg.tol).classification)) return a;
    if (++rejects > cfg.reject_limit())
      throw SamplerExhausted("cone sampler: rejection guard of " + std::to_string(cfg.reject_limit()) + " exceeded");
  }
}

/// Random PSD matrix G G^T with G of size n x m, m uniform in 1..n.
inline SymMatrix<double> draw_gram_psd(std::size_t n, SplitMix64& rng) {
  const std::size_t m = 1 + rng.below(n);
  std::vector<double> g(n * m);
  for (auto& x : g) x = rng.uniform(-1.0, 1.0);
  SymMatrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < m; ++k) s += g[i * m + k] * g[j * m + k];
      a.set(i, j, s);
    }
  return a;
}

/// Bordered matrix [[B, b], [b^T, a_nn]] with B Gram PSD, a_nn >= 0 and
/// |b_i| <= sqrt(b_ii a_nn); accepted only when det(A) <= 0.
inline SymMatrix<double> draw_leading_block(const SampleConfig& cfg, SplitMix64& rng, std::size_t& rejects) {
  const std::size_t n = cfg.n;
  while (true) {
    const SymMatrix<double> b = draw_gram_psd(n - 1, rng);
    SymMatrix<double> a(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i; j + 1 < n; ++j) a.set(i, j, b(i, j));
    const double ann = rng.below(10) == 0 ? 0.0 : rng.uniform(0.0, 2.0);
    a.set(n - 1, n - 1, ann);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double cap = std::sqrt(b(i, i) * ann);
      const double u = rng.below(2) == 0 ? (rng.below(2) == 0 ? -1.0 : 1.0) : rng.uniform(-1.0, 1.0);
      a.set(i, n - 1, u * cap);
    }
    if (determinant(a) <= 0.0) return a;
    if (++rejects > cfg.reject_limit())
      throw SamplerExhausted("leading-block sampler: rejection guard of " + std::to_string(cfg.reject_limit()) +
                             " exceeded");
  }
}

}  // namespace detail

/// Verified random members of S+_{n,n-1}: A(r) with r uniform in
/// (-1/(n-2), -1/(n-1)), a random symmetric permutation, diagonal
/// congruence with d_i uniform in [diag_lo, diag_hi], then perturb_scale-sized
/// rank-one perturbations. Each candidate is re-classified from scratch and
/// rejected unless it is LOCALLY_PSD or LOCALLY_PD.
inline SampleBatch sample_cone(const SampleConfig& cfg) {
  if (cfg.n < 3) throw std::domain_error("sample_cone: n must be at least 3");
  SampleBatch out;
  out.matrices.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    SplitMix64 rng = stream(cfg.seed, i);
    out.matrices.push_back(detail::draw_cone_member(cfg, rng, out.rejects));
  }
  return out;
}

// ---------------------------------------------------------------------------
// fuzzing

/// A fixed matrix evaluated exactly alongside the random trials.
struct Probe {
  std::string label;
  SymMatrix<Rational> matrix;
  IndexSet alpha;
  IndexSet beta;
};

struct IndexSelector {
  /// Adds the built-in boundary probes for EXT_FISHER / EXT_KOTELJANSKII.
  bool inject_boundary_probes = true;
  std::vector<Probe> extra_probes;
};

struct VerdictRecord {
  std::string label;
  /// Trial index; -1 for probes.
  std::int64_t trial = -1;
  InequalityId id{};
  IndexSet alpha;
  IndexSet beta;
  double lhs = 0, rhs = 0, constant = 0, slack = 0, relative_slack = 0;
  std::optional<std::string> lhs_exact, rhs_exact, constant_exact, slack_exact;
  bool holds = false;
  bool preconditions_met = false;
  SymMatrix<double> matrix;
};

struct FuzzReport {
  InequalityId kind{};
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t rejects = 0;
  std::size_t preconditions_failed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  /// slack / max(1, |lhs|, |rhs|); a violation is exactly min_relative_slack < -slack_rel.
  double min_relative_slack = std::numeric_limits<double>::infinity();
  /// min det(A) / (a_11...a_nn) over trials and probes with a positive diagonal product.
  double min_ratio = std::numeric_limits<double>::infinity();
  /// Ordered by trial index, probes last.
  std::vector<VerdictRecord> violations;
  std::vector<VerdictRecord> probes;
};

namespace detail {

template <Scalar T>
VerdictRecord make_record(const BoundVerdict<T>& v, const SymMatrix<T>& a, std::int64_t trial, std::string label) {
  VerdictRecord r;
  r.label = std::move(label);
  r.trial = trial;
  r.id = v.id;
  r.alpha = v.alpha;
  r.beta = v.beta;
  r.lhs = to_double(v.lhs);
  r.rhs = to_double(v.rhs);
  r.constant = to_double(v.constant);
  r.slack = to_double(v.slack);
  r.relative_slack = r.slack / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  if constexpr (is_exact_v<T>) {
    r.lhs_exact = to_string(v.lhs);
    r.rhs_exact = to_string(v.rhs);
    r.constant_exact = to_string(v.constant);
    r.slack_exact = to_string(v.slack);
  }
  r.holds = v.holds;
  r.preconditions_met = v.preconditions_met;
  r.matrix = a.to_double_matrix();
  return r;
}

inline IndexSet random_proper_subset(std::size_t n, SplitMix64& rng) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  return IndexSet::from_mask(1 + rng.below(full - 1), n);
}

inline IndexSet random_subset(std::size_t n, SplitMix64& rng) {
  return IndexSet::from_mask(rng.below(std::uint64_t{1} << n), n);
}

/// alpha, beta with alpha u beta = {1..n} and r = |alpha xor beta| >= 3.
inline std::pair<IndexSet, IndexSet> random_koteljanskii_pair(std::size_t n, SplitMix64& rng) {
  while (true) {
    std::vector<std::size_t> a, b;
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      switch (rng.below(3)) {
        case 0: a.push_back(i); b.push_back(i); break;  // gamma
        case 1: a.push_back(i); ++r; break;             // mu
        default: b.push_back(i); ++r; break;            // nu
      }
    }
    if (r >= 3) return {IndexSet(std::move(a)), IndexSet(std::move(b))};
  }
}

inline std::vector<Probe> boundary_probes(InequalityId kind, std::size_t n) {
  std::vector<Probe> out;
  if (n < 3) return out;
  std::vector<std::size_t> head(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) head[i] = i;
  const auto extremal = uniform_offdiag<Rational>(n, Rational(1) / Rational(n - 2));
  const std::string name = "uniform_offdiag(" + std::to_string(n) + ", 1/" + std::to_string(n - 2) + ")";
  if (kind == InequalityId::ExtFisher) {
    out.push_back({name, extremal, IndexSet(head), {}});
  } else if (kind == InequalityId::ExtKoteljanskii) {
    out.push_back({name, extremal, IndexSet(head), IndexSet{n - 1}});
    if (n == 6)
      out.push_back({"kotel_example", kotel_example<Rational>(), IndexSet::from_one_based({1, 2, 3, 4}),
                     IndexSet::from_one_based({3, 4, 5, 6})});
  }
  return out;
}

template <Scalar T>
BoundVerdict<T> evaluate(InequalityId kind, const SymMatrix<T>& a, const IndexSet& alpha, const IndexSet& beta,
                         const TolerancePolicy& tol) {
  switch (kind) {
    case InequalityId::ExtHadamard: return check_extended_hadamard(a, tol);
    case InequalityId::LeadingBlock: return check_leading_block(a, tol);
    case InequalityId::ExtFisher: return check_extended_fisher(a, alpha, tol);
    case InequalityId::ExtKoteljanskii: return check_extended_koteljanskii(a, alpha, beta, tol);
    case InequalityId::ClassicalHadamard: return check_classical(a, alpha, beta, tol)[0];
    case InequalityId::ClassicalFisher: return check_classical(a, alpha, beta, tol)[1];
    case InequalityId::ClassicalKoteljanskii: return check_classical(a, alpha, beta, tol)[2];
  }
  throw std::invalid_argument("unknown inequality");
}

inline void accumulate(FuzzReport& rep, VerdictRecord rec, const TolerancePolicy& tol) {
  rep.min_slack = std::min(rep.min_slack, rec.slack);
  rep.min_relative_slack = std::min(rep.min_relative_slack, rec.relative_slack);
  if (!rec.preconditions_met) ++rep.preconditions_failed;
  double diag = 1;
  for (std::size_t i = 0; i < rec.matrix.order(); ++i) diag *= rec.matrix(i, i);
  if (diag > 0) rep.min_ratio = std::min(rep.min_ratio, determinant(rec.matrix) / diag);
  (void)tol;
  if (!rec.holds) rep.violations.push_back(std::move(rec));
}

}  // namespace detail

/// Samples cfg.count matrices from the sampler matching `kind`, evaluates the
/// inequality on each and aggregates. Cone kinds use sample_cone, LEADING_BLOCK
/// the bordered sampler, CLASSICAL_* Gram PSD matrices. Probes are evaluated
/// exactly and recorded after the trials.
inline FuzzReport fuzz_bound(InequalityId kind, const SampleConfig& cfg, const IndexSelector& selector = {}) {
  if (cfg.n < 3) throw std::domain_error("fuzz_bound: n must be at least 3");
  if (cfg.n > 20) throw GuardExceeded("fuzz_bound: n must be at most 20");
  FuzzReport rep;
  rep.kind = kind;
  rep.n = cfg.n;
  rep.seed = cfg.seed;
  rep.trials = cfg.count;
  const std::size_t n = cfg.n;

  for (std::size_t t = 0; t < cfg.count; ++t) {
    SplitMix64 rng = stream(cfg.seed, t);
    SymMatrix<double> a;
    switch (kind) {
      case InequalityId::ExtHadamard:
      case InequalityId::ExtFisher:
      case InequalityId::ExtKoteljanskii: a = detail::draw_cone_member(cfg, rng, rep.rejects); break;
      case InequalityId::LeadingBlock: a = detail::draw_leading_block(cfg, rng, rep.rejects); break;
      default: a = detail::draw_gram_psd(n, rng); break;
    }
    SplitMix64 pick = stream(cfg.seed, t, 1);
    IndexSet alpha, beta;
    if (kind == InequalityId::ExtFisher) {
      alpha = detail::random_proper_subset(n, pick);
    } else if (kind == InequalityId::ExtKoteljanskii) {
      std::tie(alpha, beta) = detail::random_koteljanskii_pair(n, pick);
    } else {
      alpha = detail::random_subset(n, pick);
      beta = detail::random_subset(n, pick);
    }
    const auto v = detail::evaluate(kind, a, alpha, beta, cfg.tol);
    detail::accumulate(rep, detail::make_record(v, a, static_cast<std::int64_t>(t), "trial"), cfg.tol);
  }

  std::vector<Probe> probes;
  if (selector.inject_boundary_probes) probes = detail::boundary_probes(kind, n);
  probes.insert(probes.end(), selector.extra_probes.begin(), selector.extra_probes.end());
  for (const auto& p : probes) {
    const auto v = detail::evaluate(kind, p.matrix, p.alpha, p.beta, cfg.tol);
    auto rec = detail::make_record(v, p.matrix, -1, p.label);
    rep.probes.push_back(rec);
    detail::accumulate(rep, std::move(rec), cfg.tol);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// identity suite

struct IdentityCheck {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_error = 0;
  double tolerance = 0;
};

struct IdentitySuiteReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.failures == 0; });
  }
};

/// e_k of the given values for k = 0..n.
inline std::vector<double> elementary_symmetric(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * x[i];
  return e;
}

namespace detail {

inline SymMatrix<double> random_symmetric(std::size_t n, SplitMix64& rng) {
  SymMatrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
  return a;
}

inline SymMatrix<double> random_pd(std::size_t n, SplitMix64& rng) {
  SymMatrix<double> g = draw_gram_psd(n, rng);
  std::vector<double> e(g.entries().begin(), g.entries().end());
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] += 0.5;
  return SymMatrix<double>(n, std::move(e));
}

inline void record(IdentityCheck& c, double err) {
  ++c.trials;
  c.max_error = std::max(c.max_error, err);
  if (!(err <= c.tolerance)) ++c.failures;
}

/// Positions of `sub` inside the ascending list `within`.
inline IndexSet positions_in(const IndexSet& sub, const IndexSet& within) {
  std::vector<std::size_t> pos;
  for (std::size_t i : sub) {
    auto it = std::lower_bound(within.begin(), within.end(), i);
    pos.push_back(static_cast<std::size_t>(it - within.begin()));
  }
  return IndexSet(std::move(pos));
}

}  // namespace detail

/// Algebraic identities on random instances:
///  (i)   sum of order-k principal minors = e_k(eigenvalues), all k
///  (ii)  A/B = (A/C)/(B/C) for nested principal blocks C in B
///  (iii) det(A) = det(A[alpha]) det(A/A[alpha])
///  (iv)  on unit-diagonal sampled cone members: lambda_min >= -1/(n-2),
///        |a_ij| <= 1, exactly one negative eigenvalue, E_{n-1} >= 0.
inline IdentitySuiteReport identity_suite(std::size_t n, std::size_t trials, std::uint64_t seed,
                                          const TolerancePolicy& tol = {}, double rel_tol = 1e-10) {
  if (n < 3 || n > 8) throw std::domain_error("identity_suite: n must lie in 3..8");
  IdentitySuiteReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  IdentityCheck charpoly{"characteristic_coefficients", 0, 0, 0, rel_tol};
  IdentityCheck quotient{"crabtree_haynsworth_quotient", 0, 0, 0, rel_tol};
  IdentityCheck schur_det{"schur_determinant", 0, 0, 0, rel_tol};
  IdentityCheck neg_eig{"cone_min_eigenvalue", 0, 0, 0, tol.eig_rel};
  IdentityCheck entries{"cone_unit_entries", 0, 0, 0, tol.eig_rel};
  IdentityCheck signature{"cone_signature", 0, 0, 0, 0};
  IdentityCheck minors{"cone_minor_sum", 0, 0, 0, tol.eig_rel};

  SampleConfig cone_cfg;
  cone_cfg.n = n;
  cone_cfg.count = trials;
  cone_cfg.seed = seed;
  cone_cfg.tol = tol;
  std::size_t rejects = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    {
      SplitMix64 rng = stream(seed, t, 10);
      const auto a = detail::random_symmetric(n, rng);
      const auto e = elementary_symmetric(eigenvalues(a).values);
      std::vector<double> abs_vals;
      for (double v : eigenvalues(a).values) abs_vals.push_back(std::abs(v));
      const auto scale = elementary_symmetric(abs_vals);
      double err = 0;
      for (std::size_t k = 1; k <= n; ++k)
        err = std::max(err, std::abs(sum_principal_minors(a, k) - e[k]) / std::max(1.0, scale[k]));
      detail::record(charpoly, err);
    }
    {
      SplitMix64 rng = stream(seed, t, 11);
      const auto a = detail::random_pd(n, rng);
      // B with 2..n-1 indices, C a nonempty proper subset of B
      IndexSet b;
      do b = detail::random_proper_subset(n, rng);
      while (b.size() < 2);
      const std::uint64_t bmask = PrincipalMinorTable<double>::mask_of(b);
      std::uint64_t cmask = 0;
      do cmask = rng.below(bmask + 1) & bmask;
      while (cmask == 0 || cmask == bmask);
      const IndexSet c = IndexSet::from_mask(cmask, n);

      const auto direct = schur_complement(a, b);
      const auto a_over_c = schur_complement(a, c);
      const auto nested = schur_complement(a_over_c, detail::positions_in(set_difference(b, c), c.complement(n)));
      double err = 0;
      for (std::size_t i = 0; i < direct.order(); ++i)
        for (std::size_t j = 0; j < direct.order(); ++j) err = std::max(err, std::abs(direct(i, j) - nested(i, j)));
      detail::record(quotient, err / std::max(1.0, a.norm_inf()));

      const IndexSet alpha = detail::random_proper_subset(n, rng);
      const double det = determinant(a);
      const double prod = principal_minor(a, alpha) * determinant(schur_complement(a, alpha));
      detail::record(schur_det, std::abs(det - prod) / std::max(1.0, std::abs(det)));
    }
    {
      SplitMix64 rng = stream(seed, t, 12);
      const auto a = normalize_unit_diagonal(detail::draw_cone_member(cone_cfg, rng, rejects));
      const double bound = -1.0 / static_cast<double>(n - 2);
      detail::record(neg_eig, std::max(0.0, bound - eigenvalues(a).min()) / std::max(1.0, a.norm_inf()));
      double worst = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a(i, j)) - 1.0);
      detail::record(entries, std::max(0.0, worst));
      detail::record(signature, eigen_signature(a, tol).negative == 1 ? 0.0 : 1.0);
      detail::record(minors, std::max(0.0, -sum_principal_minors(a, n - 1)) / std::max(1.0, a.norm_inf()));
    }
  }
  rep.checks = {charpoly, quotient, schur_det, neg_eig, entries, signature, minors};
  return rep;
}

}  // namespace locps
