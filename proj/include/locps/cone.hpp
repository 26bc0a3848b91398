#pragma once

// Membership tests for the PSD/PD cones and the (n-1)-locally PSD cone
//   S+_{n,n-1}  = { A : every order-(n-1) principal submatrix PSD, det(A) < 0 }
//   S++_{n,n-1} = the same with PD submatrices.
// Floating-mode verdicts use eigenvalues with two-sided tolerances around 0;
// exact modes decide by principal-minor signs and ignore tolerances.

#include "locps/errors.hpp"
#include "locps/linalg.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locps {

struct TolerancePolicy {
  /// Relative eigenvalue tolerance, scaled by max(1, ||A||_inf).
  double eig_rel = 1e-9;
  /// det counts as strictly negative below -det_rel * max(1, ||A||_inf)^n.
  double det_rel = 1e-12;
  /// Inequality slack tolerance, scaled by max(1, |lhs|, |rhs|).
  double slack_rel = 1e-9;

  double eig_tol(double norm) const { return eig_rel * std::max(1.0, norm); }
  double det_neg_tol(double norm, std::size_t n) const {
    return -det_rel * std::pow(std::max(1.0, norm), static_cast<double>(n));
  }
};

enum class Definiteness { PD, PSD, Indefinite };

inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PD: return "PD";
    case Definiteness::PSD: return "PSD";
    case Definiteness::Indefinite: return "INDEFINITE";
  }
  return "?";
}

enum class Classification { PD, PSD, LocallyPSD, LocallyPD, None };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::PD: return "PD";
    case Classification::PSD: return "PSD";
    case Classification::LocallyPSD: return "LOCALLY_PSD";
    case Classification::LocallyPD: return "LOCALLY_PD";
    case Classification::None: return "NONE";
  }
  return "?";
}

/// LOCALLY_PSD or LOCALLY_PD, i.e. membership in S+_{n,n-1}.
inline bool in_locally_psd_cone(Classification c) {
  return c == Classification::LocallyPSD || c == Classification::LocallyPD;
}

struct PsdVerdict {
  Definiteness verdict = Definiteness::Indefinite;
  /// Smallest eigenvalue (in exact modes computed in double, informational).
  double min_eigenvalue = 0;
};

struct SubmatrixWitness {
  IndexSet indices;
  Definiteness verdict = Definiteness::Indefinite;
  double min_eigenvalue = 0;
};

struct LocalReport {
  std::size_t k = 0;
  std::vector<SubmatrixWitness> witnesses;  // lexicographic by index set
  bool all_psd = true;
  bool all_pd = true;
};

using Signature = Inertia;

template <Scalar T>
struct MembershipReport {
  Classification classification = Classification::None;
  T det_value{0};
  Signature signature;
  Definiteness global = Definiteness::Indefinite;
  /// Order-(n-1) principal submatrices.
  std::vector<SubmatrixWitness> witnesses;
  bool exact = is_exact_v<T>;
};

/// All 2^n principal minors of A indexed by bitmask (bit i = index i).
template <Scalar T>
class PrincipalMinorTable {
 public:
  explicit PrincipalMinorTable(const SymMatrix<T>& a) : n_(a.order()) {
    if (n_ > kMinorEnumerationLimit)
      throw GuardExceeded("principal minor table: order " + std::to_string(n_) + " exceeds the guard");
    minors_.reserve(std::size_t{1} << n_);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask)
      minors_.push_back(principal_minor(a, IndexSet::from_mask(mask, n_)));
  }

  std::size_t order() const { return n_; }
  const T& minor(std::uint64_t mask) const { return minors_[mask]; }

  static std::uint64_t mask_of(const IndexSet& s) {
    std::uint64_t m = 0;
    for (std::size_t i : s) m |= std::uint64_t{1} << i;
    return m;
  }

  /// Exact definiteness of A[s]: PD by leading minors, PSD by all minors.
  Definiteness definiteness(std::uint64_t s) const {
    bool pd = true;
    std::uint64_t lead = 0;
    for (std::size_t i = 0; i < n_ && pd; ++i) {
      if (!(s >> i & 1u)) continue;
      lead |= std::uint64_t{1} << i;
      pd = sign_of(minors_[lead]) > 0;
    }
    if (pd) return Definiteness::PD;
    for (std::uint64_t sub = s; sub != 0; sub = (sub - 1) & s)
      if (sign_of(minors_[sub]) < 0) return Definiteness::Indefinite;
    return Definiteness::PSD;
  }

  /// Exact inertia of the full matrix (Descartes' rule on the real-rooted
  /// characteristic polynomial).
  Inertia inertia() const {
    std::vector<T> e(n_ + 1, T(0));
    for (std::uint64_t mask = 0; mask < minors_.size(); ++mask) {
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      e[k] = e[k] + minors_[mask];
    }
    std::vector<int> coeff(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) coeff[k] = (k % 2 == 0 ? 1 : -1) * sign_of(e[k]);
    return detail::inertia_from_coefficient_signs(coeff);
  }

 private:
  std::size_t n_;
  std::vector<T> minors_;
};

namespace detail {

inline double min_eigenvalue_of(const SymMatrix<double>& a) {
  return a.order() == 0 ? 0.0 : eigenvalues(a).min();
}

inline Definiteness definiteness_from_min_eig(double min_eig, double eps) {
  if (min_eig > eps) return Definiteness::PD;
  if (min_eig >= -eps) return Definiteness::PSD;
  return Definiteness::Indefinite;
}

}  // namespace detail

/// Global PSD/PD verdict with the minimal eigenvalue as witness.
template <Scalar T>
PsdVerdict psd_verdict(const SymMatrix<T>& a, const TolerancePolicy& tol = {}) {
  PsdVerdict out;
  out.min_eigenvalue = detail::min_eigenvalue_of(a.to_double_matrix());
  if constexpr (is_exact_v<T>) {
    if (leading_minors_positive(a))
      out.verdict = Definiteness::PD;
    else
      out.verdict = all_principal_minors_nonnegative(a) ? Definiteness::PSD : Definiteness::Indefinite;
  } else {
    out.verdict = detail::definiteness_from_min_eig(out.min_eigenvalue, tol.eig_tol(a.norm_inf()));
  }
  return out;
}

namespace detail {

template <Scalar T>
LocalReport local_report(const SymMatrix<T>& a, std::size_t k, const TolerancePolicy& tol,
                         const PrincipalMinorTable<T>* table) {
  LocalReport rep;
  rep.k = k;
  const double eps = tol.eig_tol(a.norm_inf());
  for_each_subset(a.order(), k, [&](const IndexSet& alpha) {
    SubmatrixWitness w{alpha, Definiteness::Indefinite,
                       min_eigenvalue_of(principal_submatrix(a, alpha).to_double_matrix())};
    if constexpr (is_exact_v<T>) {
      (void)eps;
      w.verdict = table->definiteness(PrincipalMinorTable<T>::mask_of(alpha));
    } else {
      (void)table;
      w.verdict = definiteness_from_min_eig(w.min_eigenvalue, eps);
    }
    rep.all_psd = rep.all_psd && w.verdict != Definiteness::Indefinite;
    rep.all_pd = rep.all_pd && w.verdict == Definiteness::PD;
    rep.witnesses.push_back(std::move(w));
  });
  return rep;
}

}  // namespace detail

/// Verdict for every order-k principal submatrix, in lexicographic order.
/// Submatrix tolerances scale with the norm of the full matrix.
template <Scalar T>
LocalReport locally_psd_verdict(const SymMatrix<T>& a, std::size_t k, const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  if (k < 1 || k > n) throw std::out_of_range("locally_psd_verdict: need 1 <= k <= n");
  if (binomial(n, k) > 1'000'000)
    throw GuardExceeded("locally_psd_verdict: C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") exceeds the enumeration guard of 10^6");
  if constexpr (is_exact_v<T>) {
    const PrincipalMinorTable<T> table(a);
    return detail::local_report(a, k, tol, &table);
  } else {
    return detail::local_report<T>(a, k, tol, nullptr);
  }
}

/// (negative, zero, positive) eigenvalue counts. Floating mode counts
/// eigenvalues against +-eig_tol; exact modes use exact_inertia.
template <Scalar T>
Signature eigen_signature(const SymMatrix<T>& a, const TolerancePolicy& tol = {}) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return exact_inertia(a);
  } else {
    Signature s;
    const double eps = tol.eig_tol(a.norm_inf());
    for (double v : eigenvalues(a).values) {
      if (v < -eps)
        ++s.negative;
      else if (v > eps)
        ++s.positive;
      else
        ++s.zero;
    }
    return s;
  }
}

template <Scalar T>
bool det_strictly_negative(const T& det, const SymMatrix<T>& a, const TolerancePolicy& tol) {
  if constexpr (is_exact_v<T>) {
    (void)a;
    (void)tol;
    return sign_of(det) < 0;
  } else {
    return det < tol.det_neg_tol(a.norm_inf(), a.order());
  }
}

/// Classifies A as PD, PSD, LOCALLY_PD (S++_{n,n-1}), LOCALLY_PSD
/// (S+_{n,n-1} minus S++) or NONE. The locally-PSD test runs first: it needs
/// det(A) below det_neg_tol, which excludes the PSD cases.
template <Scalar T>
MembershipReport<T> classify_membership(const SymMatrix<T>& a, const TolerancePolicy& tol = {}) {
  const std::size_t n = a.order();
  if (n < 2) throw std::invalid_argument("classify_membership: order must be at least 2");
  MembershipReport<T> rep;
  LocalReport local;
  if constexpr (is_exact_v<T>) {
    const PrincipalMinorTable<T> table(a);
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    rep.det_value = table.minor(all);
    rep.signature = table.inertia();
    rep.global = table.definiteness(all);
    local = detail::local_report(a, n - 1, tol, &table);
  } else {
    rep.det_value = determinant(a);
    const Spectrum spec = eigenvalues(a);
    const double eps = tol.eig_tol(a.norm_inf());
    for (double v : spec.values) {
      if (v < -eps)
        ++rep.signature.negative;
      else if (v > eps)
        ++rep.signature.positive;
      else
        ++rep.signature.zero;
    }
    rep.global = detail::definiteness_from_min_eig(spec.min(), eps);
    local = detail::local_report<T>(a, n - 1, tol, nullptr);
  }
  rep.witnesses = std::move(local.witnesses);

  if (det_strictly_negative(rep.det_value, a, tol) && local.all_psd) {
    rep.classification = local.all_pd ? Classification::LocallyPD : Classification::LocallyPSD;
  } else if (rep.global == Definiteness::PD) {
    rep.classification = Classification::PD;
  } else if (rep.global == Definiteness::PSD) {
    rep.classification = Classification::PSD;
  } else {
    rep.classification = Classification::None;
  }
  return rep;
}

}  // namespace locps
