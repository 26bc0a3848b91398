#pragma once

// Determinant inequalities, evaluated and reported rather than assumed.
//
// Extended (lower) bounds on S+_{n,n-1}:
//   EXT_HADAMARD      det(A) >= c_H(n) * a_11...a_nn
//   LEADING_BLOCK     det(A) >= c_L(n) * a_11...a_nn   (bordered form, conditions on B, b, a_nn)
//   EXT_FISHER        det(A) >= c_H(n) * det(A[alpha]) det(A[alpha^c])
//   EXT_KOTELJANSKII  det(A[a u b]) det(A[a n b]) >= c_H(r) * det(A[a]) det(A[b])
// with c_H(n) = -(1/(n-2)) ((n-1)/(n-2))^(n-1) and c_L(n) = -(n-1) ((n-1)/(n-2))^(n-2).
//
// Classical (upper) bounds on the PSD cone: Hadamard, Fischer, Koteljanskii.
//
// Slack is always signed so that slack >= 0 means the inequality holds:
// lhs - rhs for lower bounds, rhs - lhs for upper bounds.

#include "locps/cone.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace locps {

enum class InequalityId {
  ExtHadamard,
  LeadingBlock,
  ExtFisher,
  ExtKoteljanskii,
  ClassicalHadamard,
  ClassicalFisher,
  ClassicalKoteljanskii,
};

inline const char* to_string(InequalityId id) {
  switch (id) {
    case InequalityId::ExtHadamard: return "EXT_HADAMARD";
    case InequalityId::LeadingBlock: return "LEADING_BLOCK";
    case InequalityId::ExtFisher: return "EXT_FISHER";
    case InequalityId::ExtKoteljanskii: return "EXT_KOTELJANSKII";
    case InequalityId::ClassicalHadamard: return "CLASSICAL_HADAMARD";
    case InequalityId::ClassicalFisher: return "CLASSICAL_FISHER";
    case InequalityId::ClassicalKoteljanskii: return "CLASSICAL_KOTELJANSKII";
  }
  return "?";
}

/// Whether the inequality reads lhs >= rhs (lower bound) or lhs <= rhs.
enum class Sense { AtLeast, AtMost };

struct Condition {
  std::string name;
  bool met = false;
  std::string detail;
};

template <Scalar T>
struct BoundVerdict {
  InequalityId id{};
  Sense sense = Sense::AtLeast;
  T lhs{0};
  T rhs{0};
  /// Multiplier of the product on the right-hand side (1 for the classical bounds).
  T constant{1};
  T slack{0};
  bool holds = false;
  bool preconditions_met = false;
  std::vector<Condition> conditions;
  std::optional<Classification> membership;
  IndexSet alpha;
  IndexSet beta;
};

/// c_H(n) = -(1/(n-2)) ((n-1)/(n-2))^(n-1).
template <Scalar T = Rational>
T hadamard_constant(std::size_t n) {
  if (n < 3) throw std::domain_error("hadamard_constant: n must be at least 3");
  const Rational q = make_rational(static_cast<std::int64_t>(n - 1), static_cast<std::int64_t>(n - 2));
  const Rational c = -pow_int(q, static_cast<unsigned>(n - 1)) / Rational(n - 2);
  return from_rational<T>(c);
}

/// c_L(n) = -(n-1) ((n-1)/(n-2))^(n-2).
template <Scalar T = Rational>
T leading_constant(std::size_t n) {
  if (n < 3) throw std::domain_error("leading_constant: n must be at least 3");
  const Rational q = make_rational(static_cast<std::int64_t>(n - 1), static_cast<std::int64_t>(n - 2));
  const Rational c = -Rational(n - 1) * pow_int(q, static_cast<unsigned>(n - 2));
  return from_rational<T>(c);
}

namespace detail {

template <Scalar T>
void finish(BoundVerdict<T>& v, const TolerancePolicy& tol) {
  v.slack = v.sense == Sense::AtLeast ? T(v.lhs - v.rhs) : T(v.rhs - v.lhs);
  if constexpr (is_exact_v<T>) {
    (void)tol;
    v.holds = sign_of(v.slack) >= 0;
  } else {
    const double scale = std::max({1.0, std::abs(v.lhs), std::abs(v.rhs)});
    v.holds = v.slack >= -tol.slack_rel * scale;
  }
  v.preconditions_met = true;
  for (const auto& c : v.conditions) v.preconditions_met = v.preconditions_met && c.met;
}

template <Scalar T>
Condition membership_condition(const SymMatrix<T>& a, const TolerancePolicy& tol, const std::string& what,
                               std::optional<Classification>* out) {
  const auto rep = classify_membership(a, tol);
  if (out) *out = rep.classification;
  return {what + " in S+_{m,m-1}", in_locally_psd_cone(rep.classification),
          std::string("classification ") + to_string(rep.classification)};
}

template <Scalar T>
bool nonpositive_within(const T& x, const SymMatrix<T>& a, const TolerancePolicy& tol) {
  if constexpr (is_exact_v<T>) {
    (void)a;
    (void)tol;
    return sign_of(x) <= 0;
  } else {
    return x <= -tol.det_neg_tol(a.norm_inf(), a.order());
  }
}

}  // namespace detail

/// det(A) >= c_H(n) a_11...a_nn. Precondition: A in S+_{n,n-1}.
template <Scalar T>
BoundVerdict<T> check_extended_hadamard(const SymMatrix<T>& a, const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  if (n < 3) throw std::domain_error("extended Hadamard bound needs n >= 3");
  BoundVerdict<T> v;
  v.id = InequalityId::ExtHadamard;
  v.constant = hadamard_constant<T>(n);
  v.lhs = determinant(a);
  v.rhs = v.constant * a.diagonal_product();
  v.conditions.push_back(detail::membership_condition(a, tol, "A", &v.membership));
  detail::finish(v, tol);
  return v;
}

/// det(A) >= c_L(n) a_11...a_nn for A = [[B, b], [b^T, a_nn]] with B PSD,
/// det(A) <= 0, a_nn >= 0 and |b_i| <= sqrt(a_ii a_nn).
template <Scalar T>
BoundVerdict<T> check_leading_block(const SymMatrix<T>& a, const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  if (n < 3) throw std::domain_error("leading-block bound needs n >= 3");
  BoundVerdict<T> v;
  v.id = InequalityId::LeadingBlock;
  v.constant = leading_constant<T>(n);
  v.lhs = determinant(a);
  v.rhs = v.constant * a.diagonal_product();

  const std::size_t last = n - 1;
  std::vector<std::size_t> lead(last);
  for (std::size_t i = 0; i < last; ++i) lead[i] = i;
  const auto b_verdict = psd_verdict(principal_submatrix(a, IndexSet(lead)), tol);
  v.conditions.push_back({"B = A[1..n-1] PSD", b_verdict.verdict != Definiteness::Indefinite,
                          std::string(to_string(b_verdict.verdict)) +
                              ", min eigenvalue " + to_string(b_verdict.min_eigenvalue)});
  v.conditions.push_back({"det(A) <= 0", detail::nonpositive_within(v.lhs, a, tol), "det(A) = " + to_string(v.lhs)});
  const T& ann = a(last, last);
  v.conditions.push_back({"a_nn >= 0", sign_of(ann) >= 0, "a_nn = " + to_string(ann)});
  for (std::size_t i = 0; i < last; ++i) {
    // |b_i| <= sqrt(a_ii a_nn)  <=>  b_i^2 <= a_ii a_nn  (with a_ii a_nn >= 0)
    const T bi2 = a(i, last) * a(i, last);
    const T cap = a(i, i) * ann;
    bool met = sign_of(cap) >= 0;
    if constexpr (is_exact_v<T>) {
      met = met && bi2 <= cap;
    } else {
      met = met && bi2 <= cap * (1 + 4e-16) + 1e-300;
    }
    v.conditions.push_back({"|b_" + std::to_string(i + 1) + "| <= sqrt(a_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                " a_nn)",
                            met, "b_i^2 = " + to_string(bi2) + ", a_ii a_nn = " + to_string(cap)});
  }
  detail::finish(v, tol);
  return v;
}

/// det(A) >= c_H(n) det(A[alpha]) det(A[alpha^c]). alpha must be a nonempty
/// proper subset: for alpha = {} or {1..n} the right side is c_H(n) det(A),
/// which exceeds det(A) whenever det(A) < 0, so the inequality cannot hold.
template <Scalar T>
BoundVerdict<T> check_extended_fisher(const SymMatrix<T>& a, const IndexSet& alpha, const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  if (n < 3) throw std::domain_error("extended Fischer bound needs n >= 3");
  alpha.check_range(n);
  if (alpha.empty() || alpha.size() == n)
    throw std::invalid_argument(
        "extended Fischer bound: alpha must be a nonempty proper subset; for a trivial alpha the bound reads "
        "det(A) >= c_H(n) det(A), which is false whenever det(A) < 0");
  BoundVerdict<T> v;
  v.id = InequalityId::ExtFisher;
  v.alpha = alpha;
  v.beta = alpha.complement(n);
  v.constant = hadamard_constant<T>(n);
  v.lhs = determinant(a);
  v.rhs = v.constant * principal_minor(a, alpha) * principal_minor(a, v.beta);
  v.conditions.push_back(detail::membership_condition(a, tol, "A", &v.membership));
  detail::finish(v, tol);
  return v;
}

/// det(A[w]) det(A[g]) >= c_H(r) det(A[alpha]) det(A[beta]) with w = alpha u beta,
/// g = alpha n beta and r = |w \ g| >= 3. Precondition: A[w] in S+_{m,m-1}.
template <Scalar T>
BoundVerdict<T> check_extended_koteljanskii(const SymMatrix<T>& a, const IndexSet& alpha, const IndexSet& beta,
                                            const TolerancePolicy& tol = {}) {
  alpha.check_range(a.order());
  beta.check_range(a.order());
  const IndexSet omega = set_union(alpha, beta);
  const IndexSet gamma = set_intersection(alpha, beta);
  const std::size_t r = omega.size() - gamma.size();
  if (r < 3)
    throw std::invalid_argument("extended Koteljanskii bound needs r = |(alpha u beta) \\ (alpha n beta)| >= 3, got " +
                                std::to_string(r));
  BoundVerdict<T> v;
  v.id = InequalityId::ExtKoteljanskii;
  v.alpha = alpha;
  v.beta = beta;
  v.constant = hadamard_constant<T>(r);
  const SymMatrix<T> sub = principal_submatrix(a, omega);
  v.lhs = determinant(sub) * principal_minor(a, gamma);
  v.rhs = v.constant * principal_minor(a, alpha) * principal_minor(a, beta);
  v.conditions.push_back(detail::membership_condition(sub, tol, "A[alpha u beta]", &v.membership));
  detail::finish(v, tol);
  return v;
}

/// Classical Hadamard, Fischer (alpha) and Koteljanskii (alpha, beta)
/// upper bounds. Precondition: A PSD.
template <Scalar T>
std::array<BoundVerdict<T>, 3> check_classical(const SymMatrix<T>& a, const IndexSet& alpha, const IndexSet& beta,
                                               const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  alpha.check_range(n);
  beta.check_range(n);
  const auto g = psd_verdict(a, tol);
  const Condition psd{"A PSD", g.verdict != Definiteness::Indefinite,
                      std::string(to_string(g.verdict)) + ", min eigenvalue " + to_string(g.min_eigenvalue)};
  const T det = determinant(a);

  std::array<BoundVerdict<T>, 3> out;
  auto& had = out[0];
  had.id = InequalityId::ClassicalHadamard;
  had.sense = Sense::AtMost;
  had.lhs = det;
  had.rhs = a.diagonal_product();

  auto& fis = out[1];
  fis.id = InequalityId::ClassicalFisher;
  fis.sense = Sense::AtMost;
  fis.alpha = alpha;
  fis.beta = alpha.complement(n);
  fis.lhs = det;
  fis.rhs = principal_minor(a, alpha) * principal_minor(a, fis.beta);

  auto& kot = out[2];
  kot.id = InequalityId::ClassicalKoteljanskii;
  kot.sense = Sense::AtMost;
  kot.alpha = alpha;
  kot.beta = beta;
  kot.lhs = principal_minor(a, set_union(alpha, beta)) * principal_minor(a, set_intersection(alpha, beta));
  kot.rhs = principal_minor(a, alpha) * principal_minor(a, beta);

  for (auto& v : out) {
    v.conditions.push_back(psd);
    detail::finish(v, tol);
  }
  return out;
}

}  // namespace locps
