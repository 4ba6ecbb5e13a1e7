#include "soliton/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "soliton/error.hpp"
#include "soliton/profile_ode.hpp"

namespace soliton {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Fourth-order first derivative of g at s, central when the stencil fits in
// [lo, hi] and one-sided otherwise.
template <typename G>
double fd_derivative(const G& g, double s, double k, double lo, double hi) {
  if (s - 2 * k >= lo && s + 2 * k <= hi) return (-g(s + 2 * k) + 8 * g(s + k) - 8 * g(s - k) + g(s - 2 * k)) / (12 * k);
  if (s + 4 * k <= hi)
    return (-25 * g(s) + 48 * g(s + k) - 36 * g(s + 2 * k) + 16 * g(s + 3 * k) - 3 * g(s + 4 * k)) / (12 * k);
  return (25 * g(s) - 48 * g(s - k) + 36 * g(s - 2 * k) - 16 * g(s - 3 * k) + 3 * g(s - 4 * k)) / (12 * k);
}

struct Accumulator {
  double max_abs = 0;
  double sum_sq = 0;
  std::size_t count = 0;
  std::vector<double> where;

  void add(double r, std::vector<double> at) {
    const double a = std::abs(r);
    if (!(a <= max_abs) || count == 0) {  // NaN propagates as a failure
      if (!(a <= max_abs)) {
        max_abs = std::isnan(a) ? std::numeric_limits<double>::infinity() : a;
        where = std::move(at);
      }
    }
    sum_sq += std::isfinite(r) ? r * r : std::numeric_limits<double>::infinity();
    ++count;
  }
  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    if (o.max_abs > max_abs || count == 0) {
      max_abs = o.max_abs;
      where = o.where;
    }
    sum_sq += o.sum_sq;
    count += o.count;
  }
  ResidualReport report() const {
    ResidualReport r;
    r.max_abs = max_abs;
    r.rms = count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
    r.sample_count = count;
    r.location_of_max = where;
    return r;
  }
};

// Calls visit(s, fd_step) at Chebyshev points inside each node interval.
template <typename Visit>
void for_each_sample(const ProfileSolution& sol, std::size_t samples, const Visit& visit) {
  if (sol.size() < 8) throw Error(ErrorKind::TooFewNodes, "residual checks need at least 8 nodes");
  const auto& nodes = sol.nodes();
  const std::size_t intervals = nodes.size() - 1;
  const std::size_t per = std::max<std::size_t>(2, (samples + intervals - 1) / intervals);
  const double span = sol.s_end() - sol.domain_begin();
  for (std::size_t i = 0; i < intervals; ++i) {
    const double a = nodes[i].t, b = nodes[i + 1].t;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    // The step follows the local node spacing, which the integrator already
    // adapts to the solution's length scale; neighbours are included so that
    // short intervals left by events and range ends do not amplify roundoff.
    double local = b - a;
    if (i > 0) local = std::max(local, a - nodes[i - 1].t);
    if (i + 2 < nodes.size()) local = std::max(local, nodes[i + 2].t - b);
    const double step = std::clamp(local / 4, 1e-6, std::min(1e-3, span / 16));
    for (std::size_t j = 0; j < per; ++j) {
      const double s = mid + half * std::cos((2.0 * j + 1) * std::numbers::pi / (2.0 * per));
      visit(s, step);
    }
  }
}

double gradient_weight(int epsilon, int eps_tilde, double fprime, int& causal) {
  const double q = epsilon + eps_tilde * fprime * fprime;
  if (std::abs(q) < 1e-14) throw Error(ErrorKind::DegenerateW, "eps + eps~ f'^2 vanishes");
  causal = q > 0 ? 1 : -1;
  return std::sqrt(std::abs(q));
}

}  // namespace

std::string ResidualReport::serialize() const {
  std::ostringstream os;
  os << "max_abs=" << fmt12(max_abs) << '\n';
  os << "rms=" << fmt12(rms) << '\n';
  os << "n=" << sample_count << '\n';
  if (grid_spacing) os << "h_grid=" << fmt12(*grid_spacing) << '\n';
  if (!location_of_max.empty()) {
    os << "argmax=";
    for (std::size_t i = 0; i < location_of_max.size(); ++i) os << (i ? "," : "") << fmt12(location_of_max[i]);
    os << '\n';
  }
  os << "skipped=" << skipped << '\n';
  return os.str();
}

ResidualReport ResidualReport::parse(const std::string& text) {
  const auto number = [](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) throw Error(ErrorKind::InvalidArgument, "bad value for " + key + ": " + v);
    return x;
  };
  const auto count = [&](const std::string& key, const std::string& v) {
    const double x = number(key, v);
    if (x < 0 || x != std::floor(x)) throw Error(ErrorKind::InvalidArgument, "bad count for " + key + ": " + v);
    return static_cast<std::size_t>(x);
  };
  ResidualReport r;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "max_abs") r.max_abs = number(key, value);
    else if (key == "rms") r.rms = number(key, value);
    else if (key == "n") r.sample_count = count(key, value);
    else if (key == "h_grid") r.grid_spacing = number(key, value);
    else if (key == "skipped") r.skipped = count(key, value);
    else if (key == "argmax") {
      std::istringstream vs(value);
      std::string item;
      while (std::getline(vs, item, ',')) r.location_of_max.push_back(number(key, item));
    }
  }
  return r;
}

ResidualReport ode_residual(const ProfileSolution& solution, const SecondOrderSystem& system, std::size_t samples) {
  Accumulator acc;
  const double lo = solution.domain_begin(), hi = solution.s_end();
  const auto fp = [&](double s) { return solution.fprime(s); };
  for_each_sample(solution, samples, [&](double s, double step) {
    const double fpp = fd_derivative(fp, s, step, lo, hi);
    acc.add(fpp - system.accel(s, solution.f(s), solution.fprime(s)), {s});
  });
  return acc.report();
}

ResidualReport ode_residual(const ProfileSolution& solution, const SignPair& signs, const CurvatureProfile& profile,
                            std::size_t samples) {
  return ode_residual(solution, soliton_system(signs, profile), samples);
}

ResidualReport h_perturbed_residual(const ProfileSolution& solution, const SignPair& signs,
                                    const CurvatureProfile& profile, std::size_t samples) {
  Accumulator acc;
  const double lo = solution.domain_begin(), hi = solution.s_end();
  const auto slope_over_w = [&](double s) {
    int causal = 0;
    const double w = solution.fprime(s);
    return w / gradient_weight(signs.epsilon, signs.epsilon_tilde, w, causal);
  };
  for_each_sample(solution, samples, [&](double s, double step) {
    int causal = 0;
    const double w = solution.fprime(s);
    const double W = gradient_weight(signs.epsilon, signs.epsilon_tilde, w, causal);
    const double fib = w * profile(s) / W;  // H_fib along the graph normal
    acc.add(signs.epsilon_tilde * fd_derivative(slope_over_w, s, step, lo, hi) - 1.0 / W + fib, {s});
  });
  return acc.report();
}

GridChart GridChart::euclidean(int epsilon) {
  return {ChartKind::EuclideanPlane, epsilon, [](double x, double y, double band) { return std::hypot(x, y) < band; }};
}

GridChart GridChart::boost(int epsilon) {
  return {ChartKind::BoostPlane, epsilon, [](double x, double y, double band) {
            return std::abs(std::abs(x) - std::abs(y)) / std::numbers::sqrt2 < band;
          }};
}

GridChart GridChart::line(int epsilon) {
  return {ChartKind::Line, epsilon, [](double, double, double) { return false; }};
}

namespace {

template <typename Body>
void parallel_rows(std::size_t rows, unsigned threads, const Body& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
  if (threads == 1) {
    for (std::size_t j = 0; j < rows; ++j) body(j);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t j = t; j < rows; j += threads) body(j);
    });
}

}  // namespace

ResidualReport pde_residual_grid(const GridChart& chart, const std::function<double(double, double)>& u,
                                 const GridSpec& grid, unsigned threads) {
  const double h = grid.spacing;
  const bool planar = chart.kind != ChartKind::Line;
  const auto nx = static_cast<std::size_t>(std::llround((grid.x_end - grid.x_begin) / h)) + 1;
  const std::size_t ny = planar ? static_cast<std::size_t>(std::llround((grid.y_end - grid.y_begin) / h)) + 1 : 1;
  if (nx < 5 || (planar && ny < 5)) throw Error(ErrorKind::InvalidArgument, "grid too small for the stencil");
  const double sigma = chart.kind == ChartKind::BoostPlane ? -1.0 : 1.0;  // sign of dy^2
  const auto X = [&](std::size_t i) { return grid.x_begin + static_cast<double>(i) * h; };
  const auto Y = [&](std::size_t j) { return planar ? grid.y_begin + static_cast<double>(j) * h : 0.0; };

  std::vector<double> U(nx * ny);
  parallel_rows(ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < nx; ++i) U[j * nx + i] = u(X(i), Y(j));
  });
  const auto at = [&](std::size_t i, std::size_t j) { return U[j * nx + i]; };

  // grad u / W at interior nodes; W and eps' recorded for the residual.
  std::vector<double> Vx(nx * ny, 0.0), Vy(nx * ny, 0.0), Winv(nx * ny, 0.0);
  std::vector<int> causal(nx * ny, 0);
  const std::size_t jlo = planar ? 1 : 0, jhi = planar ? ny - 1 : 1;
  parallel_rows(ny, threads, [&](std::size_t j) {
    if (j < jlo || j >= jhi) return;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const double ux = (at(i + 1, j) - at(i - 1, j)) / (2 * h);
      const double uy = planar ? (at(i, j + 1) - at(i, j - 1)) / (2 * h) : 0.0;
      const double q = chart.epsilon + ux * ux + sigma * uy * uy;
      const std::size_t k = j * nx + i;
      if (q == 0) {
        causal[k] = 0;
        continue;
      }
      causal[k] = q > 0 ? 1 : -1;
      const double W = std::sqrt(std::abs(q));
      Vx[k] = ux / W;
      Vy[k] = sigma * uy / W;
      Winv[k] = 1.0 / W;
    }
  });

  std::vector<Accumulator> rows(ny);
  std::vector<std::size_t> skipped(ny, 0);
  std::vector<int> row_causal(ny, 0);
  std::vector<char> mixed(ny, 0), degenerate(ny, 0);
  const std::size_t rlo = planar ? 2 : 0, rhi = planar ? ny - 2 : 1;
  parallel_rows(ny, threads, [&](std::size_t j) {
    if (j < rlo || j >= rhi) return;
    for (std::size_t i = 2; i + 2 < nx; ++i) {
      if (chart.near_singular(X(i), Y(j), 3 * h)) {
        ++skipped[j];
        continue;
      }
      const std::size_t k = j * nx + i;
      const std::size_t neighbours[] = {k, k - 1, k + 1};
      for (std::size_t n : neighbours) {
        if (causal[n] == 0) degenerate[j] = 1;
        if (row_causal[j] == 0) row_causal[j] = causal[n];
        if (causal[n] != row_causal[j]) mixed[j] = 1;
      }
      if (planar)
        for (std::size_t n : {k - nx, k + nx}) {
          if (causal[n] == 0) degenerate[j] = 1;
          if (causal[n] != row_causal[j]) mixed[j] = 1;
        }
      double div = (Vx[k + 1] - Vx[k - 1]) / (2 * h);
      if (planar) div += (Vy[k + nx] - Vy[k - nx]) / (2 * h);
      rows[j].add(div - Winv[k], planar ? std::vector{X(i), Y(j)} : std::vector{X(i)});
    }
  });

  Accumulator total;
  std::size_t skipped_total = 0;
  int reference = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    if (degenerate[j]) throw Error(ErrorKind::DegenerateW, "eps' (eps + |grad u|^2) vanishes on the grid");
    if (mixed[j] || (reference != 0 && row_causal[j] != 0 && row_causal[j] != reference))
      throw Error(ErrorKind::InvalidArgument, "causal character changes across the grid");
    if (row_causal[j] != 0) reference = row_causal[j];
    total.merge(rows[j]);
    skipped_total += skipped[j];
  }
  ResidualReport report = total.report();
  report.grid_spacing = h;
  report.skipped = skipped_total;
  return report;
}

double revolution_mean_curvature(double s, double fprime, double fsecond, int epsilon) {
  const double theta = 0.3;  // any meridian; the surface is rotation invariant
  const double c = std::cos(theta), sn = std::sin(theta);
  const Eigen::Matrix3d G = Eigen::Vector3d(1.0, 1.0, static_cast<double>(epsilon)).asDiagonal();
  const Eigen::Vector3d Xs(c, sn, fprime), Xt(-s * sn, s * c, 0.0);
  const Eigen::Vector3d Xss(0.0, 0.0, fsecond), Xst(-sn, c, 0.0), Xtt(-s * c, -s * sn, 0.0);

  // Normal: G-orthogonal to both tangents, oriented with positive dt component.
  Eigen::Vector3d N = G.inverse() * Xs.cross(Xt);
  if (N(2) < 0) N = -N;
  const double q = N.dot(G * N);
  if (std::abs(q) < 1e-14 * N.squaredNorm()) throw Error(ErrorKind::DegenerateMetric, "normal is lightlike");
  const Eigen::Vector3d nu = N / std::sqrt(std::abs(q));

  Eigen::Matrix2d first, second;
  first << Xs.dot(G * Xs), Xs.dot(G * Xt), Xt.dot(G * Xs), Xt.dot(G * Xt);
  second << Xss.dot(G * nu), Xst.dot(G * nu), Xst.dot(G * nu), Xtt.dot(G * nu);
  if (std::abs(first.determinant()) < 1e-14) throw Error(ErrorKind::DegenerateMetric, "induced metric is degenerate");
  return (first.inverse() * second).trace();
}

double revolution_mean_curvature(const ProfileSolution& solution, const SpaceDescriptor& space, int epsilon, double s) {
  const bool ok = space.dim_n == 2 && (space.family == SpaceFamily::EuclideanRotational ||
                                       space.family == SpaceFamily::MinkowskiRotational);
  if (!ok) throw Error(ErrorKind::NoEmbedding, space.name + " is not a surface of revolution in flat 3-space");
  if (!(s > 0)) throw Error(ErrorKind::OutOfDomain, "s must be interior (s > 0)");
  return revolution_mean_curvature(s, solution.fprime(s), solution.fsecond(s), epsilon);
}

double soliton_mean_curvature(int epsilon, double fprime) {
  const double q = epsilon + fprime * fprime;
  if (q == 0) throw Error(ErrorKind::DegenerateW, "lightlike graph");
  return epsilon / std::sqrt(std::abs(q));
}

double radial_divergence_curvature(const std::function<double(double)>& fprime, int epsilon, double s, double step) {
  const auto flux = [&](double r) {
    const double w = fprime(r);
    return r * w / std::sqrt(std::abs(epsilon + w * w));
  };
  const double d = (-flux(s + 2 * step) + 8 * flux(s + step) - 8 * flux(s - step) + flux(s - 2 * step)) / (12 * step);
  return epsilon * d / s;
}

}  // namespace soliton
