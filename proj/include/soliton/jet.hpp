#pragma once

#include <cstddef>
#include <vector>

#include "soliton/profile.hpp"
#include "soliton/series.hpp"
#include "soliton/signs.hpp"

namespace soliton {

/// Exact truncated Taylor expansion f(s) ~ sum_k a_k (s - center)^k.
class TaylorJet {
 public:
  TaylorJet(Rational center, RationalSeries coeffs) : center_(std::move(center)), coeffs_(std::move(coeffs)) {}

  const Rational& center() const { return center_; }
  std::size_t order() const { return coeffs_.order(); }
  const Rational& coefficient(std::size_t k) const { return coeffs_[k]; }
  const RationalSeries& series() const { return coeffs_; }

  /// k-th derivative at the center, k! a_k.
  Rational derivative_at_center(std::size_t k) const;

  /// Value of the derivative of order `deriv` (0..2) at s, in scalar type T.
  template <typename T>
  T evaluate(const T& s, int deriv = 0) const {
    RationalSeries c = coeffs_;
    for (int d = 0; d < deriv; ++d) c = c.derivative();
    return c.evaluate(T(s) - T(center_));
  }
  double operator()(double s) const { return evaluate<double>(s); }

 private:
  Rational center_;
  RationalSeries coeffs_;
};

/// Jet of the reduced equation for the pure pole h(s) = c/s, started with
/// f(0) = value and f'(0) = 0. Requires 1 + eps~ c != 0 and order >= 2.
TaylorJet jet_at_pole(const SignPair& signs, const Rational& c, std::size_t order, const Rational& value = 0);

/// Jet for general exact local data of h (pole coefficient plus regular part).
/// With a pole the slope must be zero; at a regular center any slope is allowed.
TaylorJet taylor_jet(const SignPair& signs, const LaurentData& h, const Rational& value, const Rational& slope,
                     std::size_t order);

/// Formal substitution of the jet into s*(f'' - (eps~ + eps f'^2)(1 - f' h)):
/// the returned series must vanish identically for a correct jet. Its order is
/// jet.order() - 1.
RationalSeries formal_residual(const SignPair& signs, const LaurentData& h, const TaylorJet& jet);

}  // namespace soliton
