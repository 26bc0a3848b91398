#pragma once

// Elementary kernels on symmetric matrices: principal submatrices,
// determinants, eigenvalues, Schur complements, diagonal normalization and
// principal-minor sums.

#include "locps/errors.hpp"
#include "locps/scalar.hpp"
#include "locps/sym_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <vector>

namespace locps {

/// Largest order for which all principal minors may be enumerated.
inline constexpr std::size_t kMinorEnumerationLimit = 20;

/// A[alpha]. An empty alpha yields the order-0 matrix (determinant 1).
template <Scalar T>
SymMatrix<T> principal_submatrix(const SymMatrix<T>& a, const IndexSet& alpha) {
  alpha.check_range(a.order());
  const std::size_t k = alpha.size();
  std::vector<T> out;
  out.reserve(k * k);
  for (std::size_t i : alpha)
    for (std::size_t j : alpha) out.push_back(a(i, j));
  return SymMatrix<T>(k, std::move(out));
}

namespace detail {

/// Row-major dense working matrix used by the elimination kernels.
template <class T>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<T> v;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(v[i * cols + j], v[k * cols + j]);
  }
};

template <class T>
Dense<T> block(const SymMatrix<T>& a, const IndexSet& rows, const IndexSet& cols) {
  Dense<T> d(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) d(i, j) = a(rows[i], cols[j]);
  return d;
}

inline double lu_determinant(Dense<double> m) {
  const std::size_t n = m.rows;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      m.swap_rows(piv, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Bareiss fraction-free elimination; every division is exact.
template <class T>
T bareiss_determinant(Dense<T> m) {
  const std::size_t n = m.rows;
  if (n == 0) return T(1);
  int sgn = 1;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sign_of(m(k, k)) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sign_of(m(piv, k)) == 0) ++piv;
      if (piv == n) return T(0);
      m.swap_rows(piv, k);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev;
      }
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return sgn < 0 ? T(-det) : det;
}

}  // namespace detail

/// Determinant: partial-pivot LU in floating mode, Bareiss in exact modes.
template <Scalar T>
T determinant(const SymMatrix<T>& a) {
  const std::size_t n = a.order();
  if (n == 0) return T(1);
  const auto all = IndexSet::full(n);
  if constexpr (is_exact_v<T>) {
    return detail::bareiss_determinant(detail::block(a, all, all));
  } else {
    return detail::lu_determinant(detail::block(a, all, all));
  }
}

/// det(A[alpha]), with det(A[empty]) = 1.
template <Scalar T>
T principal_minor(const SymMatrix<T>& a, const IndexSet& alpha) {
  return determinant(principal_submatrix(a, alpha));
}

// ---------------------------------------------------------------------------
// eigenvalues (floating mode only)

/// Ascending eigenvalues.
struct Spectrum {
  std::vector<double> values;

  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double sum() const {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
};

struct EigenDecomposition {
  Spectrum spectrum;
  /// Column-major n*n orthogonal matrix; column k pairs with spectrum.values[k].
  std::vector<double> vectors;
};

inline Eigen::MatrixXd to_eigen(const SymMatrix<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

inline EigenDecomposition eigen_decompose(const SymMatrix<double>& a) {
  EigenDecomposition out;
  if (a.order() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("symmetric eigensolver did not converge within its iteration cap (order " +
                       std::to_string(a.order()) + ")");
  const auto& ev = solver.eigenvalues();
  out.spectrum.values.assign(ev.data(), ev.data() + ev.size());
  const auto& q = solver.eigenvectors();
  out.vectors.assign(q.data(), q.data() + q.size());
  return out;
}

inline Spectrum eigenvalues(const SymMatrix<double>& a) {
  Spectrum out;
  if (a.order() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("symmetric eigensolver did not converge within its iteration cap (order " +
                       std::to_string(a.order()) + ")");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  return out;
}

// ---------------------------------------------------------------------------
// Schur complement

namespace detail {

/// Solves M X = R in place (R overwritten by X). Throws SingularBlock.
template <class T>
void solve_in_place(Dense<T> m, Dense<T>& rhs, double singular_tol) {
  const std::size_t n = m.rows;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    if constexpr (is_exact_v<T>) {
      while (piv < n && sign_of(m(piv, k)) == 0) ++piv;
      if (piv == n) throw SingularBlock("pivot block is singular");
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
      if (std::abs(m(piv, k)) <= singular_tol) throw SingularBlock("pivot block is numerically singular");
    }
    if (piv != k) {
      m.swap_rows(piv, k);
      rhs.swap_rows(piv, k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sign_of(m(i, k)) == 0) continue;
      T f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
      for (std::size_t j = 0; j < rhs.cols; ++j) rhs(i, j) = rhs(i, j) - f * rhs(k, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rhs.cols; ++j) rhs(i, j) = rhs(i, j) / m(i, i);
}

}  // namespace detail

/// A / A[alpha] = A[alpha^c] - A[alpha^c, alpha] A[alpha]^{-1} A[alpha, alpha^c],
/// indexed by alpha^c in ascending order.
template <Scalar T>
SymMatrix<T> schur_complement(const SymMatrix<T>& a, const IndexSet& alpha) {
  const std::size_t n = a.order();
  alpha.check_range(n);
  const IndexSet rest = alpha.complement(n);
  double singular_tol = 0;
  if constexpr (!is_exact_v<T>) {
    singular_tol = 1e-13 * std::max(1.0, principal_submatrix(a, alpha).norm_inf());
  }
  detail::Dense<T> x = detail::block(a, alpha, rest);
  detail::solve_in_place(detail::block(a, alpha, alpha), x, singular_tol);
  const std::size_t m = rest.size();
  std::vector<T> out(m * m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      T s = a(rest[i], rest[j]);
      for (std::size_t k = 0; k < alpha.size(); ++k) s = s - a(rest[i], alpha[k]) * x(k, j);
      out[i * m + j] = s;
    }
  }
  return SymMatrix<T>(m, std::move(out));
}

/// D^{-1/2} A D^{-1/2} with D = diag(A). Exact modes require every
/// a_ii * a_jj to be a rational square.
template <Scalar T>
SymMatrix<T> normalize_unit_diagonal(const SymMatrix<T>& a) {
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    if (sign_of(a(i, i)) <= 0)
      throw std::domain_error("normalize_unit_diagonal: diagonal entry " + std::to_string(i + 1) +
                              " is not strictly positive");
  SymMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, i, T(1));
    for (std::size_t j = i + 1; j < n; ++j) {
      T scale = scalar_traits<T>::sqrt(a(i, i) * a(j, j));
      out.set(i, j, a(i, j) / scale);
    }
  }
  return out;
}

/// D A D for a diagonal D given by its entries (diagonal congruence).
template <Scalar T>
SymMatrix<T> diagonal_congruence(const SymMatrix<T>& a, std::span<const T> d) {
  const std::size_t n = a.order();
  if (d.size() != n) throw std::invalid_argument("diagonal_congruence: size mismatch");
  SymMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set(i, j, d[i] * a(i, j) * d[j]);
  return out;
}

/// P A P^T where row i of the result is row perm[i] of A.
template <Scalar T>
SymMatrix<T> permute(const SymMatrix<T>& a, std::span<const std::size_t> perm) {
  const std::size_t n = a.order();
  if (perm.size() != n) throw std::invalid_argument("permute: size mismatch");
  SymMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set(i, j, a(perm[i], perm[j]));
  return out;
}

// ---------------------------------------------------------------------------
// principal-minor enumeration

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Calls f(IndexSet) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(IndexSet(c));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Sum of all order-k principal minors (the k-th characteristic coefficient
/// up to sign).
template <Scalar T>
T sum_principal_minors(const SymMatrix<T>& a, std::size_t k) {
  const std::size_t n = a.order();
  if (k > n) throw std::out_of_range("sum_principal_minors: k exceeds the order");
  if (n > kMinorEnumerationLimit)
    throw GuardExceeded("sum_principal_minors: order " + std::to_string(n) + " exceeds the enumeration guard of " +
                        std::to_string(kMinorEnumerationLimit));
  T s(0);
  for_each_subset(n, k, [&](const IndexSet& alpha) { s = s + principal_minor(a, alpha); });
  return s;
}

struct Inertia {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

namespace detail {

/// Inertia of a real-rooted degree-n polynomial from the signs of its
/// coefficients c_0 t^n + ... + c_n: Descartes' rule is exact here.
inline Inertia inertia_from_coefficient_signs(const std::vector<int>& coeff) {
  const std::size_t n = coeff.size() - 1;
  Inertia out;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k <= n; ++k)
    if (coeff[k] != 0) last_nonzero = k;
  out.zero = n - last_nonzero;
  int prev = 0;
  for (int c : coeff) {
    if (c == 0) continue;
    if (prev != 0 && c != prev) ++out.positive;
    prev = c;
  }
  out.negative = n - out.zero - out.positive;
  return out;
}

}  // namespace detail

/// Exact inertia from the characteristic coefficients E_0..E_n, where
/// p(t) = sum_k (-1)^k E_k t^{n-k}.
template <Scalar T>
  requires(is_exact_v<T>)
Inertia exact_inertia(const SymMatrix<T>& a) {
  const std::size_t n = a.order();
  std::vector<int> coeff(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const int s = k == 0 ? 1 : sign_of(sum_principal_minors(a, k));
    coeff[k] = (k % 2 == 0) ? s : -s;
  }
  return detail::inertia_from_coefficient_signs(coeff);
}

/// True iff every principal minor is >= 0 (exact PSD test).
template <Scalar T>
  requires(is_exact_v<T>)
bool all_principal_minors_nonnegative(const SymMatrix<T>& a) {
  const std::size_t n = a.order();
  if (n > kMinorEnumerationLimit) throw GuardExceeded("principal minor enumeration guard exceeded");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask)
    if (sign_of(principal_minor(a, IndexSet::from_mask(mask, n))) < 0) return false;
  return true;
}

/// True iff every leading principal minor is > 0 (Sylvester's criterion).
template <Scalar T>
  requires(is_exact_v<T>)
bool leading_minors_positive(const SymMatrix<T>& a) {
  std::vector<std::size_t> lead;
  for (std::size_t k = 0; k < a.order(); ++k) {
    lead.push_back(k);
    if (sign_of(principal_minor(a, IndexSet(lead))) <= 0) return false;
  }
  return true;
}

}  // namespace locps
