#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace soliton {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Truncated power series sum_k c_k t^k, templated on the coefficient ring.
/// All binary operations truncate to the smaller of the two orders, so the
/// result is exact through the order it reports.
template <typename Scalar>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::size_t order) : coeffs_(order + 1, Scalar(0)) {}
  PowerSeries(std::initializer_list<Scalar> c) : coeffs_(c) {}
  explicit PowerSeries(std::vector<Scalar> c) : coeffs_(std::move(c)) {}

  static PowerSeries constant(const Scalar& c, std::size_t order) {
    PowerSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }
  /// The identity series t.
  static PowerSeries variable(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) s.coeffs_[1] = Scalar(1);
    return s;
  }

  std::size_t order() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar& operator[](std::size_t k) { return coeffs_[k]; }
  const Scalar& operator[](std::size_t k) const { return coeffs_[k]; }

  PowerSeries truncated(std::size_t order) const {
    PowerSeries out(order);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
  }

  PowerSeries derivative() const {
    if (coeffs_.size() <= 1) return PowerSeries(0);
    PowerSeries out(order() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out.coeffs_[k - 1] = Scalar(static_cast<long>(k)) * coeffs_[k];
    return out;
  }

  /// Antiderivative with constant term `c0`.
  PowerSeries integral(const Scalar& c0) const {
    PowerSeries out(order() + 1);
    out.coeffs_[0] = c0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k + 1] = coeffs_[k] / Scalar(static_cast<long>(k + 1));
    return out;
  }

  /// Multiply by t^shift (raises the order).
  PowerSeries shifted(std::size_t shift) const {
    PowerSeries out(order() + shift);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k + shift] = coeffs_[k];
    return out;
  }

  /// Series reciprocal; requires a nonzero constant term.
  PowerSeries reciprocal() const {
    PowerSeries out(order());
    out.coeffs_[0] = Scalar(1) / coeffs_[0];
    for (std::size_t k = 1; k <= order(); ++k) {
      Scalar acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * out.coeffs_[k - j];
      out.coeffs_[k] = -acc / coeffs_[0];
    }
    return out;
  }

  /// Horner evaluation in any type the coefficients convert to.
  template <typename T>
  T evaluate(const T& t) const {
    T acc(0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * t + T(coeffs_[k]);
    return acc;
  }

  PowerSeries& operator+=(const PowerSeries& o) { return *this = *this + o; }
  PowerSeries& operator-=(const PowerSeries& o) { return *this = *this - o; }
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t m = std::min(a.order(), b.order());
    PowerSeries out(m);
    for (std::size_t k = 0; k <= m; ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return out;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t m = std::min(a.order(), b.order());
    PowerSeries out(m);
    for (std::size_t k = 0; k <= m; ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return out;
  }
  friend PowerSeries operator-(const PowerSeries& a) {
    PowerSeries out(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) out.coeffs_[k] = -a.coeffs_[k];
    return out;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t m = std::min(a.order(), b.order());
    PowerSeries out(m);
    for (std::size_t i = 0; i <= m; ++i) {
      if (a.coeffs_[i] == Scalar(0)) continue;
      for (std::size_t j = 0; i + j <= m; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }
  friend PowerSeries operator*(const Scalar& c, const PowerSeries& a) {
    PowerSeries out(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) out.coeffs_[k] = c * a.coeffs_[k];
    return out;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Scalar> coeffs_;
};

using RationalSeries = PowerSeries<Rational>;

}  // namespace soliton
