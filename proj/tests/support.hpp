#pragma once

#include "locps/families.hpp"
#include "locps/linalg.hpp"
#include "oracles.hpp"

#include <random>

namespace testing_support {

using locps::Rational;
using locps::SymMatrix;

inline Rational q(std::int64_t p, std::int64_t d = 1) { return locps::make_rational(p, d); }

inline oracle::Grid to_grid(const SymMatrix<Rational>& a) {
  oracle::Grid g(a.order(), std::vector<Rational>(a.order()));
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) g[i][j] = a(i, j);
  return g;
}

/// Symmetric matrix with entries p/q, |p| <= 9, 1 <= q <= 7.
inline SymMatrix<Rational> random_rational(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  SymMatrix<Rational> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, q(num(rng), den(rng)));
  return a;
}

/// G G^T + I in floating point.
inline SymMatrix<double> random_pd(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  std::vector<double> g(n * n);
  for (auto& x : g) x = z(rng);
  SymMatrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = i == j ? 1.0 : 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g[i * n + k] * g[j * n + k];
      a.set(i, j, s);
    }
  return a;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace testing_support
