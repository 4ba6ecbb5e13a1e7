#include "soliton/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/error.hpp"

namespace soliton {

namespace {

constexpr double kCothRefusal = 1e-8;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> monotone_slopes(const std::vector<double>& s, const std::vector<double>& h) {
  const std::size_t n = s.size();
  std::vector<double> delta(n - 1), m(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
  // Fritsch-Carlson limiter
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / delta[i];
    const double b = m[i + 1] / delta[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double t = 3.0 / std::sqrt(r);
      m[i] = t * a * delta[i];
      m[i + 1] = t * b * delta[i];
    }
  }
  return m;
}

void check_domain(const Interval& d, double s) {
  if (!d.contains_closed(s)) {
    std::ostringstream os;
    os << "s=" << s << " outside profile domain (" << d.lo << ", " << d.hi << ")";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
}

}  // namespace

CurvatureProfile CurvatureProfile::rational_pole(Rational c, Rational location, Interval domain) {
  return {RationalPole{std::move(c), std::move(location)}, domain};
}
CurvatureProfile CurvatureProfile::tanh_scaled(Rational c, Interval domain) { return {TanhScaled{std::move(c)}, domain}; }
CurvatureProfile CurvatureProfile::coth_scaled(Rational c, Interval domain) { return {CothScaled{std::move(c)}, domain}; }
CurvatureProfile CurvatureProfile::constant(Rational c, Interval domain) { return {Constant{std::move(c)}, domain}; }

CurvatureProfile CurvatureProfile::tabulated(std::vector<double> s, std::vector<double> h) {
  if (s.size() < 2 || s.size() != h.size())
    throw Error(ErrorKind::InvalidArgument, "tabulated profile needs >= 2 matching samples");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i + 1] > s[i])) throw Error(ErrorKind::InvalidArgument, "tabulated abscissas must increase strictly");
  auto slope = monotone_slopes(s, h);
  Interval domain{s.front(), s.back()};
  return {Tabulated{std::move(s), std::move(h), std::move(slope)}, domain};
}

double CurvatureProfile::value(double s) const {
  check_domain(domain_, s);
  return std::visit(
      Overloaded{
          [&](const RationalPole& p) {
            const double d = s - to_double(p.location);
            if (d == 0.0) throw Error(ErrorKind::OutOfDomain, "evaluation at the pole");
            return to_double(p.c) / d;
          },
          [&](const TanhScaled& p) { return to_double(p.c) * std::tanh(s); },
          [&](const CothScaled& p) {
            if (std::abs(s) < kCothRefusal) throw Error(ErrorKind::OutOfDomain, "coth evaluated inside the pole guard");
            return to_double(p.c) / std::tanh(s);
          },
          [&](const Constant& p) { return to_double(p.c); },
          [&](const Tabulated& t) {
            auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
            std::size_t i = (it == t.s.begin()) ? 0 : static_cast<std::size_t>(it - t.s.begin()) - 1;
            if (i + 1 >= t.s.size()) i = t.s.size() - 2;
            const double h = t.s[i + 1] - t.s[i];
            const double u = (s - t.s[i]) / h;
            const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
            const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
            return h00 * t.h[i] + h * h10 * t.slope[i] + h01 * t.h[i + 1] + h * h11 * t.slope[i + 1];
          },
      },
      form_);
}

double CurvatureProfile::derivative(double s) const {
  check_domain(domain_, s);
  return std::visit(
      Overloaded{
          [&](const RationalPole& p) {
            const double d = s - to_double(p.location);
            return -to_double(p.c) / (d * d);
          },
          [&](const TanhScaled& p) {
            const double c = std::cosh(s);
            return to_double(p.c) / (c * c);
          },
          [&](const CothScaled& p) {
            if (std::abs(s) < kCothRefusal) throw Error(ErrorKind::OutOfDomain, "coth evaluated inside the pole guard");
            const double sh = std::sinh(s);
            return -to_double(p.c) / (sh * sh);
          },
          [&](const Constant&) { return 0.0; },
          [&](const Tabulated& t) {
            auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
            std::size_t i = (it == t.s.begin()) ? 0 : static_cast<std::size_t>(it - t.s.begin()) - 1;
            if (i + 1 >= t.s.size()) i = t.s.size() - 2;
            const double h = t.s[i + 1] - t.s[i];
            const double u = (s - t.s[i]) / h;
            const double d00 = 6 * u * u - 6 * u, d10 = 3 * u * u - 4 * u + 1;
            const double d01 = -6 * u * u + 6 * u, d11 = 3 * u * u - 2 * u;
            return (d00 * t.h[i] + d01 * t.h[i + 1]) / h + d10 * t.slope[i] + d11 * t.slope[i + 1];
          },
      },
      form_);
}

std::optional<Pole> CurvatureProfile::pole() const {
  if (const auto* p = std::get_if<RationalPole>(&form_)) return Pole{p->location, p->c};
  if (const auto* p = std::get_if<CothScaled>(&form_)) return Pole{Rational(0), p->c};
  return std::nullopt;
}

std::optional<LaurentData> CurvatureProfile::local_series(const Rational& center, std::size_t order) const {
  return std::visit(
      Overloaded{
          [&](const RationalPole& p) -> std::optional<LaurentData> {
            if (center == p.location) return LaurentData{center, p.c, RationalSeries(order)};
            // c/(d + t) = (c/d) sum (-t/d)^k
            const Rational d = center - p.location;
            RationalSeries r(order);
            Rational term = p.c / d;
            for (std::size_t k = 0; k <= order; ++k, term *= -1 / d) r[k] = term;
            return LaurentData{center, Rational(0), std::move(r)};
          },
          [&](const TanhScaled& p) -> std::optional<LaurentData> {
            if (center != 0) return std::nullopt;
            return LaurentData{center, Rational(0), p.c * tanh_series(order)};
          },
          [&](const CothScaled& p) -> std::optional<LaurentData> {
            if (center != 0) return std::nullopt;
            // c*coth(s) - c/s = c * (s*coth(s) - 1) / s
            const RationalSeries sc = s_coth_series(order + 1);
            RationalSeries r(order);
            for (std::size_t k = 0; k <= order; ++k) r[k] = p.c * sc[k + 1];
            return LaurentData{center, p.c, std::move(r)};
          },
          [&](const Constant& p) -> std::optional<LaurentData> {
            return LaurentData{center, Rational(0), RationalSeries::constant(p.c, order)};
          },
          [&](const Tabulated&) -> std::optional<LaurentData> { return std::nullopt; },
      },
      form_);
}

std::string CurvatureProfile::formula() const {
  return std::visit(Overloaded{
                        [](const RationalPole& p) {
                          if (p.location == 0) return p.c.str() + "/s";
                          return p.c.str() + "/(s-" + p.location.str() + ")";
                        },
                        [](const TanhScaled& p) { return p.c.str() + "*tanh(s)"; },
                        [](const CothScaled& p) { return p.c.str() + "*coth(s)"; },
                        [](const Constant& p) { return p.c.str(); },
                        [](const Tabulated& t) { return "tabulated[" + std::to_string(t.s.size()) + "]"; },
                    },
                    form_);
}

namespace {

// sinh(s)/s and cosh(s) as exact series.
RationalSeries sinh_over_s(std::size_t order) {
  RationalSeries out(order);
  Rational fact(1);  // (k+1)!
  for (std::size_t k = 0; k <= order; ++k) {
    fact *= static_cast<long>(k + 1);
    if (k % 2 == 0) out[k] = Rational(1) / fact;
  }
  return out;
}

RationalSeries cosh_series(std::size_t order) {
  RationalSeries out(order);
  Rational fact(1);
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    if (k % 2 == 0) out[k] = Rational(1) / fact;
  }
  return out;
}

}  // namespace

RationalSeries tanh_series(std::size_t order) {
  // tanh(s) = s * (sinh(s)/s) / cosh(s)
  const RationalSeries q = sinh_over_s(order) * cosh_series(order).reciprocal();
  return q.shifted(1).truncated(order);
}

RationalSeries s_coth_series(std::size_t order) { return cosh_series(order) * sinh_over_s(order).reciprocal(); }

}  // namespace soliton
