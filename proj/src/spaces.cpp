#include "soliton/spaces.hpp"

#include <charconv>
#include <cmath>

#include "soliton/error.hpp"

namespace soliton {

namespace {

void require_dimension(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "space dimension n must be >= 2");
}

std::string with_n(std::string_view prefix, int n) { return std::string(prefix) + ":n=" + std::to_string(n); }

}  // namespace

SpaceDescriptor euclidean_rotational(int n) {
  require_dimension(n);
  return {with_n("euclidean", n),
          SpaceFamily::EuclideanRotational,
          n,
          1,
          1,
          CurvatureProfile::rational_pole(n - 1, 0, Interval::positive()),
          "(n-1)/s",
          std::nullopt,
          n == 2 ? EmbeddingKind::RevolutionEuclidean : EmbeddingKind::None};
}

SpaceDescriptor minkowski_rotational(int n) {
  require_dimension(n);
  return {with_n("minkowski", n),
          SpaceFamily::MinkowskiRotational,
          n,
          1,
          -1,
          CurvatureProfile::rational_pole(n - 1, 0, Interval::positive()),
          "(n-1)/s",
          std::nullopt,
          n == 2 ? EmbeddingKind::RevolutionMinkowski : EmbeddingKind::None};
}

SpaceDescriptor desitter_rotational(int n) {
  require_dimension(n);
  RawQuotientData raw{Interval::real_line(),
                      [](double tau) { return -1.0 - tau * tau; },
                      [](double tau) { return -2.0 * tau; },
                      [n](double tau) { return -n * tau; },
                      [](double s) { return std::sinh(s); }};
  return {with_n("desitter", n),
          SpaceFamily::DeSitterRotational,
          n,
          -1,
          1,
          CurvatureProfile::tanh_scaled(-(n - 1), Interval::real_line()),
          "-(n-1)*tanh(s)",
          std::move(raw),
          EmbeddingKind::None};
}

SpaceDescriptor hyperbolic_rotational(int n) {
  require_dimension(n);
  RawQuotientData raw{{1.0, std::numeric_limits<double>::infinity()},
                      [](double tau) { return tau * tau - 1.0; },
                      [](double tau) { return 2.0 * tau; },
                      [n](double tau) { return n * tau; },
                      [](double s) { return std::cosh(s); }};
  return {with_n("hyperbolic", n),
          SpaceFamily::HyperbolicRotational,
          n,
          1,
          1,
          CurvatureProfile::coth_scaled(n - 1, Interval::positive()),
          "(n-1)*coth(s)",
          std::move(raw),
          EmbeddingKind::None};
}

SpaceDescriptor boost_omega1() {
  return {"boost:omega1", SpaceFamily::BoostOmega1, 2, 1, 1,
          CurvatureProfile::rational_pole(1, 0, Interval::positive()), "1/s", std::nullopt,
          EmbeddingKind::BoostQuadrant};
}

SpaceDescriptor boost_omega2() {
  return {"boost:omega2", SpaceFamily::BoostOmega2, 2, -1, 1,
          CurvatureProfile::rational_pole(-1, 0, Interval::positive()), "-1/s", std::nullopt,
          EmbeddingKind::BoostQuadrant};
}

std::vector<SpaceDescriptor> catalog() {
  std::vector<SpaceDescriptor> out;
  for (int n : {2, 3}) {
    out.push_back(euclidean_rotational(n));
    out.push_back(minkowski_rotational(n));
    out.push_back(desitter_rotational(n));
    out.push_back(hyperbolic_rotational(n));
  }
  out.push_back(boost_omega1());
  out.push_back(boost_omega2());
  return out;
}

SpaceDescriptor lookup_space(std::string_view id) {
  if (id == "boost:omega1") return boost_omega1();
  if (id == "boost:omega2") return boost_omega2();
  const auto colon = id.find(":n=");
  if (colon != std::string_view::npos) {
    const std::string_view family = id.substr(0, colon);
    const std::string_view digits = id.substr(colon + 3);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && n >= 2) {
      if (family == "euclidean") return euclidean_rotational(n);
      if (family == "minkowski") return minkowski_rotational(n);
      if (family == "desitter") return desitter_rotational(n);
      if (family == "hyperbolic") return hyperbolic_rotational(n);
    }
  }
  throw Error(ErrorKind::UnknownSpace, "no space named '" + std::string(id) + "'");
}

double fiber_mean_curvature_raw(const SpaceDescriptor& space, double tau) {
  if (!space.raw) throw Error(ErrorKind::NoRawData, space.name + " is defined in normalized form");
  if (!space.raw->raw_domain.contains_closed(tau)) throw Error(ErrorKind::OutOfDomain, "tau outside the raw domain");
  return space.raw->divergence(tau);
}

double LiftedFunction::operator()(std::span<const double> point) const {
  if (point.size() != total_dim_) throw Error(ErrorKind::InvalidArgument, "point has the wrong dimension");
  return eval_(point);
}

Eigen::Vector3d hopf_projection(std::complex<double> z1, std::complex<double> z2) {
  const std::complex<double> w = 2.0 * z1 * std::conj(z2);
  return {w.real(), w.imag(), std::norm(z1) + std::norm(z2)};
}

LiftedFunction lift(const LiftDescriptor& descriptor, BaseFunction base, std::size_t base_dim) {
  switch (descriptor.kind) {
    case LiftDescriptor::Kind::ProductExtend: {
      const std::size_t extra = descriptor.extra_factor_signs.size();
      return LiftedFunction(extra + base_dim, [base = std::move(base), extra](std::span<const double> p) {
        return base(p.subspan(extra));
      });
    }
    case LiftDescriptor::Kind::HopfH13: {
      if (base_dim != 1) throw Error(ErrorKind::UnsupportedLift, "the Hopf lift needs a radial profile on H^2");
      return LiftedFunction(4, [base = std::move(base)](std::span<const double> p) {
        const std::complex<double> z1(p[0], p[1]), z2(p[2], p[3]);
        if (std::abs(-std::norm(z1) + std::norm(z2) + 1.0) > 1e-9)
          throw Error(ErrorKind::OutOfDomain, "point is not on H^3_1");
        const double x3 = hopf_projection(z1, z2)(2);
        const double s = std::acosh(std::max(1.0, x3));
        const double coords[1] = {s};
        return base(coords);
      });
    }
    case LiftDescriptor::Kind::GenericHarmonic: {
      if (!descriptor.harmonic)
        throw Error(ErrorKind::UnsupportedLift, "only harmonic submersions (H_fib == 0) lift generically");
      if (!descriptor.projection) throw Error(ErrorKind::InvalidArgument, "generic lift needs a projection");
      const std::size_t total = base_dim + static_cast<std::size_t>(descriptor.fiber_dimension);
      return LiftedFunction(total, [base = std::move(base), proj = descriptor.projection](std::span<const double> p) {
        const std::vector<double> b = proj(p);
        return base(b);
      });
    }
  }
  throw Error(ErrorKind::UnsupportedLift, "unknown lift kind");
}

LiftedFunction lift(const LiftDescriptor& descriptor, const ProfileSolution& base) {
  return lift(descriptor, [base](std::span<const double> x) { return base.f(x[0]); }, 1);
}

}  // namespace soliton
