#pragma once

// Named matrix families: extremal equality cases, approaching families and
// counterexamples. All constructors are exact whenever T is exact.

#include "locps/sym_matrix.hpp"

#include <stdexcept>
#include <string>

namespace locps {

namespace detail {

inline void require_order_at_least_3(std::size_t n, const char* what) {
  if (n < 3) throw std::domain_error(std::string(what) + ": n must be at least 3");
}

template <Scalar T>
SymMatrix<T> constant_offdiag(std::size_t n, const T& diag, const T& off) {
  SymMatrix<T> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, diag);
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, off);
  }
  return a;
}

}  // namespace detail

/// Unit diagonal, every off-diagonal entry -x. The default regime is
/// 0 < x <= 1/(n-2); pass allow_out_of_regime to probe other values.
/// Lies in S+_{n,n-1} exactly when 1/(n-1) < x <= 1/(n-2).
template <Scalar T>
SymMatrix<T> uniform_offdiag(std::size_t n, const T& x, bool allow_out_of_regime = false) {
  detail::require_order_at_least_3(n, "uniform_offdiag");
  if (!allow_out_of_regime) {
    const T upper = T(1) / from_rational<T>(Rational(n - 2));
    if (!(sign_of(x) > 0 && x <= upper))
      throw std::domain_error("uniform_offdiag: x must lie in (0, 1/(n-2)]; set allow_out_of_regime to override");
  }
  return detail::constant_offdiag(n, T(1), T(-x));
}

/// A(r) = (1-r) I + r 11^T; in S++_{n,n-1} for -1/(n-2) < r < -1/(n-1).
template <Scalar T>
SymMatrix<T> ar_family(std::size_t n, const T& r) {
  detail::require_order_at_least_3(n, "ar_family");
  return detail::constant_offdiag(n, T(1), r);
}

/// [[B, 1], [1^T, 1]] with B unit-diagonal, off-diagonal -1/(n-2). det(B) = 0
/// and the leading-block bound is attained.
template <Scalar T>
SymMatrix<T> bordered_equality(std::size_t n) {
  detail::require_order_at_least_3(n, "bordered_equality");
  const T off = T(-1) / from_rational<T>(Rational(n - 2));
  SymMatrix<T> a = detail::constant_offdiag(n, T(1), off);
  for (std::size_t i = 0; i + 1 < n; ++i) a.set(i, n - 1, T(1));
  return a;
}

struct FisherSharpParams {
  Rational p;          ///< ((n-2)/(n-1))^(n-1) = det(B)
  Rational t;          ///< (1-p)/(n-1)
  Rational s_squared;  ///< (1 + (n-2)p) / ((n-1)(n-2))
};

inline FisherSharpParams fisher_sharp_params(std::size_t n) {
  detail::require_order_at_least_3(n, "fisher_sharp");
  const auto nn = static_cast<std::int64_t>(n);
  FisherSharpParams out;
  out.p = pow_int(make_rational(nn - 2, nn - 1), static_cast<unsigned>(n - 1));
  out.t = (1 - out.p) / Rational(nn - 1);
  out.s_squared = (1 + Rational(nn - 2) * out.p) / Rational((nn - 1) * (nn - 2));
  return out;
}

/// [[I - tJ, s1], [s1^T, 1]]: in S+_{n,n-1}, det = -1/(n-2), and the
/// extended Fischer bound with alpha = {n} is attained. s is irrational in
/// general, so the matrix lives in Q(sqrt(s^2)).
inline SymMatrix<Surd> fisher_sharp(std::size_t n) {
  const FisherSharpParams prm = fisher_sharp_params(n);
  const Surd s = Surd::sqrt_of(prm.s_squared);
  SymMatrix<Surd> a = detail::constant_offdiag(n, Surd(1 - prm.t), Surd(-prm.t));
  for (std::size_t i = 0; i + 1 < n; ++i) a.set(i, n - 1, s);
  a.set(n - 1, n - 1, Surd(1));
  return a;
}

/// (1-c) I_6 + c J_6 with c = -1/4.
template <Scalar T>
SymMatrix<T> kotel_example() {
  return detail::constant_offdiag(6, T(1), from_rational<T>(make_rational(-1, 4)));
}

/// [[1, t], [t, 1]]: in S++_{2,1} for t > 1 while det = 1 - t^2 is unbounded below.
template <Scalar T>
SymMatrix<T> counterexample_2x2(const T& t) {
  return SymMatrix<T>{{T(1), t}, {t, T(1)}};
}

/// [[1, 0, t], [0, 1, 0], [t, 0, 1]]: violates |b_1| <= sqrt(a_11 a_33) for t > 1.
template <Scalar T>
SymMatrix<T> counterexample_bordered(const T& t) {
  return SymMatrix<T>{{T(1), T(0), t}, {T(0), T(1), T(0)}, {t, T(0), T(1)}};
}

}  // namespace locps
