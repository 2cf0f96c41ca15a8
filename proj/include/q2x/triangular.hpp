#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace q2x {

/// Packed storage for quantities indexed by degree n and order 0 <= m <= n,
/// n = 0..p-1. Entry (n, m) lives at n(n+1)/2 + m. Negative orders are not
/// stored; they follow from the conjugate symmetry F(n,-m) = conj(F(n,m)) that
/// every tilde-basis quantity in this library obeys.
template <class Real>
class TriangularCoeffs {
 public:
  using value_type = std::complex<Real>;

  TriangularCoeffs() = default;

  explicit TriangularCoeffs(int p) : p_(p) {
    if (p < 1) throw std::invalid_argument("truncation number must be >= 1");
    data_.assign(size_for(p), value_type{});
  }

  static constexpr std::size_t size_for(int p) { return std::size_t(p) * std::size_t(p + 1) / 2; }
  static constexpr std::size_t index(int n, int m) { return std::size_t(n) * std::size_t(n + 1) / 2 + std::size_t(m); }

  int truncation() const noexcept { return p_; }
  std::size_t size() const noexcept { return data_.size(); }

  value_type& operator()(int n, int m) {
    assert(0 <= m && m <= n && n < p_);
    return data_[index(n, m)];
  }
  const value_type& operator()(int n, int m) const {
    assert(0 <= m && m <= n && n < p_);
    return data_[index(n, m)];
  }

  /// Value for any order m; zero for |m| > n, conjugate reconstruction for m < 0.
  value_type value(int n, int m) const {
    if (n < 0 || n >= p_) throw std::out_of_range("degree outside truncation");
    if (m > n || -m > n) return {};
    return m >= 0 ? data_[index(n, m)] : std::conj(data_[index(n, -m)]);
  }

  /// Orders 0..n of degree n.
  std::span<value_type> row(int n) { return {data_.data() + index(n, 0), std::size_t(n + 1)}; }
  std::span<const value_type> row(int n) const { return {data_.data() + index(n, 0), std::size_t(n + 1)}; }

  std::span<value_type> data() noexcept { return data_; }
  std::span<const value_type> data() const noexcept { return data_; }

 private:
  int p_ = 0;
  std::vector<value_type> data_;
};

/// Real-basis counterpart over all orders m = -n..n, entry (n, m) at n^2 + n + m.
template <class Real>
class RealTriangular {
 public:
  RealTriangular() = default;
  explicit RealTriangular(int p) : p_(p), data_(std::size_t(p) * std::size_t(p)) {}

  static constexpr std::size_t index(int n, int m) { return std::size_t(n * n + n + m); }

  int truncation() const noexcept { return p_; }

  Real& operator()(int n, int m) {
    assert(-n <= m && m <= n && n < p_);
    return data_[index(n, m)];
  }
  Real operator()(int n, int m) const {
    assert(-n <= m && m <= n && n < p_);
    return data_[index(n, m)];
  }

  std::span<const Real> data() const noexcept { return data_; }

 private:
  int p_ = 0;
  std::vector<Real> data_;
};

}  // namespace q2x
