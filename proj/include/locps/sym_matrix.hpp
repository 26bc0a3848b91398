#pragma once

#include "locps/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace locps {

/// Sorted subset of {0..n-1}. Indices are 0-based internally; the CLI and
/// reports use 1-based lists.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> zero_based) : IndexSet(std::vector<std::size_t>(zero_based)) {}
  explicit IndexSet(std::vector<std::size_t> zero_based) : idx_(std::move(zero_based)) {
    std::sort(idx_.begin(), idx_.end());
    if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
      throw std::invalid_argument("index set contains duplicates");
  }

  static IndexSet from_one_based(std::span<const std::size_t> one_based) {
    std::vector<std::size_t> v;
    v.reserve(one_based.size());
    for (std::size_t i : one_based) {
      if (i == 0) throw std::out_of_range("1-based index 0 is out of range");
      v.push_back(i - 1);
    }
    return IndexSet(std::move(v));
  }
  static IndexSet from_one_based(std::initializer_list<std::size_t> one_based) {
    return from_one_based(std::span<const std::size_t>(one_based.begin(), one_based.size()));
  }

  /// {0..n-1}
  static IndexSet full(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return IndexSet(std::move(v));
  }

  static IndexSet from_mask(std::uint64_t mask, std::size_t n) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) v.push_back(i);
    return IndexSet(std::move(v));
  }

  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  std::size_t operator[](std::size_t k) const { return idx_[k]; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  const std::vector<std::size_t>& indices() const { return idx_; }

  bool contains(std::size_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

  void check_range(std::size_t n) const {
    if (!idx_.empty() && idx_.back() >= n)
      throw std::out_of_range("index " + std::to_string(idx_.back() + 1) + " out of range 1.." +
                              std::to_string(n));
  }

  IndexSet complement(std::size_t n) const {
    check_range(n);
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if (!contains(i)) v.push_back(i);
    return IndexSet(std::move(v));
  }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> v(idx_);
    for (auto& i : v) ++i;
    return v;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t k = 0; k < idx_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(idx_[k] + 1);
    }
    return s + "}";
  }

  friend IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    std::vector<std::size_t> v;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
    return IndexSet(std::move(v));
  }
  friend IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    std::vector<std::size_t> v;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
    return IndexSet(std::move(v));
  }
  friend IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    std::vector<std::size_t> v;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
    return IndexSet(std::move(v));
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> idx_;
};

/// Dense real symmetric matrix over scalar T. Every constructor mirrors the
/// upper triangle, so entries(i,j) == entries(j,i) holds exactly.
template <Scalar T>
class SymMatrix {
 public:
  using scalar_type = T;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}

  /// Row-major n*n entries; the lower triangle is overwritten by the upper.
  SymMatrix(std::size_t n, std::vector<T> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw std::invalid_argument("SymMatrix: expected n*n entries");
    mirror_upper();
  }

  SymMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("SymMatrix: rows must be square");
      a_.insert(a_.end(), row.begin(), row.end());
    }
    mirror_upper();
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = T(1);
    return m;
  }

  std::size_t order() const { return n_; }
  static constexpr bool exact() { return is_exact_v<T>; }
  static constexpr const char* mode() { return scalar_traits<T>::mode; }

  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const T& v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const T> entries() const { return a_; }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < n_; ++i) s = s + (*this)(i, i);
    return s;
  }

  T diagonal_product() const {
    T s(1);
    for (std::size_t i = 0; i < n_; ++i) s = s * (*this)(i, i);
    return s;
  }

  /// max_i sum_j |a_ij|, in double.
  double norm_inf() const {
    double best = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += std::abs(to_double((*this)(i, j)));
      best = std::max(best, row);
    }
    return best;
  }

  template <class F>
  auto map(F&& f) const -> SymMatrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(f(x));
    return SymMatrix<U>(n_, std::move(out));
  }

  SymMatrix<double> to_double_matrix() const {
    return map([](const T& x) { return locps::to_double(x); });
  }

  friend bool operator==(const SymMatrix& x, const SymMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  void mirror_upper() {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) a_[i * n_ + j] = a_[j * n_ + i];
  }

  std::size_t n_ = 0;
  std::vector<T> a_;
};

/// Exact conversion of a floating matrix into rationals (every double is a
/// dyadic rational).
inline SymMatrix<Rational> to_rational(const SymMatrix<double>& a) {
  return a.map([](double x) { return Rational(x); });
}

/// Rounds every entry to the nearest multiple of `grid` (e.g. 1e-12) and
/// returns it as an exact rational.
inline SymMatrix<Rational> rationalize(const SymMatrix<double>& a, std::int64_t grid_inverse) {
  return a.map([grid_inverse](double x) {
    const double scaled = std::nearbyint(x * static_cast<double>(grid_inverse));
    return Rational(BigInt(static_cast<long long>(scaled)), BigInt(grid_inverse));
  });
}

}  // namespace locps
