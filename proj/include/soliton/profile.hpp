#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "soliton/series.hpp"

namespace soliton {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double s) const { return s > lo && s < hi; }
  bool contains_closed(double s) const { return s >= lo && s <= hi; }
  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

struct Pole {
  Rational location;
  Rational coefficient;  ///< lim (s - location) h(s)
};

/// Exact local expansion h(s) = c/(s - center) + sum_k r_k (s - center)^k.
/// A regular center has c == 0.
struct LaurentData {
  Rational center;
  Rational pole_coefficient;
  RationalSeries regular;
};

/// The fiber mean-curvature function h: I -> R driving the reduced equation.
class CurvatureProfile {
 public:
  struct RationalPole {
    Rational c;
    Rational location;
  };
  struct TanhScaled {
    Rational c;
  };
  struct CothScaled {
    Rational c;
  };
  struct Constant {
    Rational c;
  };
  struct Tabulated {
    std::vector<double> s;
    std::vector<double> h;
    std::vector<double> slope;  ///< monotone (Fritsch-Carlson) node slopes
  };
  using Form = std::variant<RationalPole, TanhScaled, CothScaled, Constant, Tabulated>;

  static CurvatureProfile rational_pole(Rational c, Rational location, Interval domain);
  static CurvatureProfile tanh_scaled(Rational c, Interval domain = Interval::real_line());
  static CurvatureProfile coth_scaled(Rational c, Interval domain = Interval::positive());
  static CurvatureProfile constant(Rational c, Interval domain = Interval::real_line());
  /// Monotone cubic interpolation through the samples; abscissas strictly increasing.
  static CurvatureProfile tabulated(std::vector<double> s, std::vector<double> h);

  double operator()(double s) const { return value(s); }
  double value(double s) const;
  double derivative(double s) const;

  const Interval& domain() const { return domain_; }
  const Form& form() const { return form_; }
  std::optional<Pole> pole() const;

  /// Exact local series at `center` when the form admits rational coefficients
  /// there (poles, tanh at 0, constants, rational poles at rational centers).
  std::optional<LaurentData> local_series(const Rational& center, std::size_t order) const;

  /// Human-readable formula, e.g. "1/s" or "-1*tanh(s)".
  std::string formula() const;

 private:
  CurvatureProfile(Form form, Interval domain) : form_(std::move(form)), domain_(domain) {}

  Form form_;
  Interval domain_;
};

/// Exact Taylor series at 0 of tanh, and of s*coth(s).
RationalSeries tanh_series(std::size_t order);
RationalSeries s_coth_series(std::size_t order);

}  // namespace soliton
