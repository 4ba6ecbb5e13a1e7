#include "soliton/jet.hpp"

#include "soliton/error.hpp"

namespace soliton {

namespace {

// P(t) = t*h(center + t) = c + t*R(t), to the requested order.
RationalSeries pole_weighted(const LaurentData& h, std::size_t order) {
  RationalSeries p(order);
  p[0] = h.pole_coefficient;
  for (std::size_t k = 1; k <= order && k - 1 <= h.regular.order(); ++k) p[k] = h.regular[k - 1];
  return p;
}

// (eps~ + eps w^2)(t - w P), truncated to `order`.
RationalSeries weighted_rhs(const SignPair& signs, const RationalSeries& w, const RationalSeries& p, std::size_t order) {
  const RationalSeries t = RationalSeries::variable(order);
  const RationalSeries first = RationalSeries::constant(signs.epsilon_tilde, order) + Rational(signs.epsilon) * (w * w);
  return first * (t - w * p);
}

}  // namespace

Rational TaylorJet::derivative_at_center(std::size_t k) const {
  Rational fact(1);
  for (std::size_t j = 2; j <= k; ++j) fact *= static_cast<long>(j);
  return fact * coeffs_[k];
}

TaylorJet taylor_jet(const SignPair& signs, const LaurentData& h, const Rational& value, const Rational& slope,
                     std::size_t order) {
  if (order < 2) throw Error(ErrorKind::DegenerateJet, "jet order must be at least 2");
  const bool singular = h.pole_coefficient != 0;
  if (singular && slope != 0) throw Error(ErrorKind::DegenerateJet, "a singular start forces f'(center) = 0");

  const std::size_t m = order - 1;  // order of w = f'
  const RationalSeries p = pole_weighted(h, m);
  RationalSeries w(m);
  w[0] = slope;
  // Multiplying the equation by t turns the pole into the constant P(0) = c;
  // at order k the unknown w_k enters with weight k + eps~ c.
  for (std::size_t k = 1; k <= m; ++k) {
    const Rational denom = Rational(static_cast<long>(k)) + Rational(signs.epsilon_tilde) * h.pole_coefficient;
    if (denom == 0)
      throw Error(ErrorKind::DegenerateJet, "recurrence denominator vanishes at order " + std::to_string(k));
    const RationalSeries rhs = weighted_rhs(signs, w, p, k);
    // w_k is zero so far; the k-th coefficient of rhs holds everything but the w_k term.
    w[k] = rhs[k] / denom;
  }
  return TaylorJet(h.center, w.integral(value));
}

TaylorJet jet_at_pole(const SignPair& signs, const Rational& c, std::size_t order, const Rational& value) {
  if (1 + Rational(signs.epsilon_tilde) * c == 0) throw Error(ErrorKind::DegenerateJet, "1 + eps~ c vanishes");
  return taylor_jet(signs, LaurentData{Rational(0), c, RationalSeries(order)}, value, Rational(0), order);
}

RationalSeries formal_residual(const SignPair& signs, const LaurentData& h, const TaylorJet& jet) {
  const std::size_t m = jet.order() - 1;
  const RationalSeries w = jet.series().derivative();
  const RationalSeries lhs = w.derivative().shifted(1);  // t f''
  return lhs.truncated(m) - weighted_rhs(signs, w, pole_weighted(h, m), m);
}

}  // namespace soliton
