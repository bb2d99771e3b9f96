#include "fnn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fnn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kAngleTol = 1e-10;
const double kSqrt13 = std::sqrt(13.0);
const double kTheta3Star = std::acos(3.0 / std::sqrt(13.0));

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol, long long& evals, double& arg) {
  constexpr double invphi = 0.6180339887498948482;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (b - a > tol) {
    if (fc >= fd) {  // ties contract toward the lower end
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  arg = 0.5 * (a + b);
  ++evals;
  return f(arg);
}

int grid_resolution(int dims) {
  if (dims <= 2) return 64;
  if (dims == 3) return 16;
  return 8;
}

ScenarioConfig tied_config(double t3, double t5, double g, double v1,
                           double v2) {
  return ScenarioConfig::make({kPi / 2.0, 0.0, t3, -t3, t5, -t5}, g, v1, v2);
}

void check_pipeline_agreement(const ScenarioConfig& config) {
  if (pipeline_closed_form_gap(config) > 1e-9)
    throw std::runtime_error(
        "pipeline and closed-form witness values disagree beyond 1e-9");
}

// min(r1, r2) on the tied slice with theta5 at its optimal direction.
double balanced_value(double t3, double g, double v1, double v2) {
  const auto kt = kt_coefficients(t3, std::sqrt(1.0 - g * g));
  const double r1 = v1 * v2 * g * (3.0 * std::cos(t3) + 2.0 * std::sin(t3));
  const double r2 = v1 * v2 * kt.bound();
  return std::min(r1, r2);
}

double bisect(const std::function<bool(double)>& above, double lo, double hi,
              double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OptimizationResult maximize_min(const std::vector<AngleFunction>& objectives,
                                int dims, std::span<const double> lo,
                                std::span<const double> hi, std::string label) {
  if (objectives.empty())
    throw std::invalid_argument("maximize_min: no objective functions");
  if (dims < 1 || dims > 6)
    throw std::invalid_argument("maximize_min: dims must be in [1,6]");
  if (static_cast<int>(lo.size()) != dims || static_cast<int>(hi.size()) != dims)
    throw std::invalid_argument("maximize_min: bounds size mismatch");

  long long evals = 0;
  auto eval = [&](std::span<const double> x) {
    double m = objectives[0](x);
    for (std::size_t k = 1; k < objectives.size(); ++k)
      m = std::min(m, objectives[k](x));
    ++evals;
    return m;
  };

  const int n = grid_resolution(dims);
  std::vector<double> width(dims);
  for (int d = 0; d < dims; ++d) width[d] = (hi[d] - lo[d]) / n;

  // full product grid, lexicographic order; keep the best few cells
  struct Cell {
    double value;
    long index;
  };
  std::vector<Cell> top;
  std::vector<int> idx(dims, 0);
  std::vector<double> x(dims);
  long total = 1;
  for (int d = 0; d < dims; ++d) total *= n;
  auto point_of = [&](long flat, std::vector<double>& out) {
    for (int d = dims - 1; d >= 0; --d) {
      out[d] = lo[d] + (flat % n + 0.5) * width[d];
      flat /= n;
    }
  };
  for (long flat = 0; flat < total; ++flat) {
    point_of(flat, x);
    const double v = eval(x);
    top.push_back({v, flat});
  }
  std::stable_sort(top.begin(), top.end(),
                   [](const Cell& a, const Cell& b) { return a.value > b.value; });
  const std::size_t starts = std::min<std::size_t>(8, top.size());

  std::vector<double> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> p(dims);
    point_of(top[s].index, p);
    double cur = top[s].value;

    for (int pass = 0; pass < 300; ++pass) {
      double moved = 0.0;
      for (int d = 0; d < dims; ++d) {
        const double a = std::max(lo[d], p[d] - width[d]);
        const double b = std::min(hi[d], p[d] + width[d]);
        double arg = p[d];
        const double fm = golden_max(
            [&](double t) {
              std::vector<double> q = p;
              q[d] = t;
              return eval(q);
            },
            a, b, kAngleTol, evals, arg);
        if (fm > cur) {
          moved = std::max(moved, std::abs(arg - p[d]));
          p[d] = arg;
          cur = fm;
        }
      }
      if (moved < kAngleTol) break;
    }

    if (cur > best_value ||
        (cur == best_value && std::lexicographical_compare(p.begin(), p.end(),
                                                           best.begin(),
                                                           best.end()))) {
      best_value = cur;
      best = p;
    }
  }

  OptimizationResult result;
  result.best_angles = best;
  result.best_value = eval(best);
  result.objective = std::move(label);
  result.evaluations = evals;
  return result;
}

SweepRecord passive_analysis(double g, double v1, double v2) {
  const double t3 = kTheta3Star;
  const auto kt = kt_coefficients(t3, std::sqrt(1.0 - g * g));
  const double t5 = std::acos(kt.k / kt.bound());

  const ScenarioConfig config = tied_config(t3, t5, g, v1, v2);
  check_pipeline_agreement(config);

  const KgtValues values = closed_form_kgt(config);
  SweepRecord rec;
  rec.g = g;
  rec.r1 = values.r1();
  rec.r2 = values.r2();
  rec.r_m = std::min(rec.r1, rec.r2);
  for (int k = 0; k < 6; ++k) rec.angles[k] = config.angle(k);
  return rec;
}

SweepRecord active_analysis(double g, double v1, double v2) {
  auto slice_kgt = [&](std::span<const double> x) {
    return closed_form_kgt(tied_config(x[0], x[1], g, v1, v2));
  };
  std::vector<AngleFunction> objectives = {
      [&](std::span<const double> x) { return slice_kgt(x).r_cns_1; },
      [&](std::span<const double> x) { return slice_kgt(x).r_nsc_1; },
      [&](std::span<const double> x) { return slice_kgt(x).r_cns_2; },
      [&](std::span<const double> x) { return slice_kgt(x).r_nsc_2; }};
  const std::array<double, 2> lo = {-kPi, -kPi};
  const std::array<double, 2> hi = {kPi, kPi};
  OptimizationResult opt = maximize_min(objectives, 2, lo, hi, "active");

  // Alternating polish: theta5 to the Charlie2 optimum, then theta3 to the
  // max of the min along the trade-off. Lands on the balance point whenever
  // the two curves cross.
  double t3 = opt.best_angles[0];
  double t5 = opt.best_angles[1];
  const double f = std::sqrt(1.0 - g * g);
  long long evals = 0;
  for (int it = 0; it < 200; ++it) {
    const auto kt = kt_coefficients(t3, f);
    const double t5_new = std::atan2(kt.t, kt.k);
    double t3_new = t3;
    golden_max(
        [&](double t) {
          const auto ktt = kt_coefficients(t, f);
          const double r1 =
              v1 * v2 * g * (3.0 * std::cos(t) + 2.0 * std::sin(t));
          const double r2 =
              v1 * v2 * (ktt.k * std::cos(t5_new) + ktt.t * std::sin(t5_new));
          return std::min(r1, r2);
        },
        std::max(-kPi, t3 - 0.5), std::min(kPi, t3 + 0.5), 1e-12, evals,
        t3_new);
    const double moved = std::max(std::abs(t3_new - t3), std::abs(t5_new - t5));
    t3 = t3_new;
    t5 = t5_new;
    if (moved < 1e-13) break;
  }

  const ScenarioConfig config = tied_config(t3, t5, g, v1, v2);
  check_pipeline_agreement(config);

  const KgtValues values = closed_form_kgt(config);
  SweepRecord rec;
  rec.g = g;
  rec.r1 = values.r1();
  rec.r2 = values.r2();
  rec.r_m = std::min(rec.r1, rec.r2);
  for (int k = 0; k < 6; ++k) rec.angles[k] = config.angle(k);
  return rec;
}

std::vector<SweepRecord> fixed_angle_sweep(double theta3, double theta5,
                                           std::span<const double> g_grid,
                                           double v1, double v2) {
  std::vector<SweepRecord> records;
  records.reserve(g_grid.size());
  for (double g : g_grid) {
    if (!(g >= 0.0 && g <= 1.0))
      throw std::invalid_argument("fixed_angle_sweep: g outside [0,1]");
    const ScenarioConfig config = tied_config(theta3, theta5, g, v1, v2);
    const KgtValues values = closed_form_kgt(config);
    SweepRecord rec;
    rec.g = g;
    rec.r1 = values.r1();
    rec.r2 = values.r2();
    rec.r_m = std::min(rec.r1, rec.r2);
    for (int k = 0; k < 6; ++k) rec.angles[k] = config.angle(k);
    records.push_back(rec);
  }
  return records;
}

std::pair<double, double> fixed_angle_window(double theta3, double theta5,
                                             double v1, double v2) {
  const double s = v1 * v2;
  auto r1 = [&](double g) {
    return s * g * (3.0 * std::cos(theta3) + 2.0 * std::sin(theta3));
  };
  auto r2 = [&](double g) {
    const auto kt = kt_coefficients(theta3, std::sqrt(1.0 - g * g));
    return s * (kt.k * std::cos(theta5) + kt.t * std::sin(theta5));
  };
  if (!(r1(1.0) > 3.0) || !(r2(0.0) > 3.0)) return {1.0, 0.0};  // empty
  const double lo = bisect([&](double g) { return r1(g) > 3.0; }, 0.0, 1.0, 1e-5);
  const double hi = bisect([&](double g) { return !(r2(g) > 3.0); }, 0.0, 1.0, 1e-5);
  if (lo >= hi) return {1.0, 0.0};
  return {lo, hi};
}

std::pair<double, double> fixed_theta3_window(double theta3, double v1,
                                              double v2) {
  const double s = v1 * v2;
  auto r1 = [&](double g) {
    return s * g * (3.0 * std::cos(theta3) + 2.0 * std::sin(theta3));
  };
  auto r2 = [&](double g) {
    return s * kt_coefficients(theta3, std::sqrt(1.0 - g * g)).bound();
  };
  if (!(r1(1.0) > 3.0) || !(r2(0.0) > 3.0)) return {1.0, 0.0};
  const double lo = bisect([&](double g) { return r1(g) > 3.0; }, 0.0, 1.0, 1e-5);
  const double hi = bisect([&](double g) { return !(r2(g) > 3.0); }, 0.0, 1.0, 1e-5);
  if (lo >= hi) return {1.0, 0.0};
  return {lo, hi};
}

double active_optimum_value(double g, double v1, double v2) {
  long long evals = 0;
  double arg = 0.0;
  return golden_max(
      [&](double t3) { return balanced_value(t3, g, v1, v2); }, 0.0, kPi / 2.0,
      1e-12, evals, arg);
}

std::pair<double, double> active_peak(double v1, double v2) {
  long long evals = 0;
  // coarse scan then golden refinement over g
  double best_g = 0.0, best_v = -1.0;
  for (int k = 0; k < 64; ++k) {
    const double g = (k + 0.5) / 64.0;
    const double v = active_optimum_value(g, v1, v2);
    if (v > best_v) {
      best_v = v;
      best_g = g;
    }
  }
  double arg = best_g;
  const double value = golden_max(
      [&](double g) { return active_optimum_value(g, v1, v2); },
      std::max(0.0, best_g - 1.0 / 64.0), std::min(1.0, best_g + 1.0 / 64.0),
      1e-12, evals, arg);
  return {arg, value};
}

double active_window_lower_edge(double v1, double v2) {
  const auto [g_peak, peak] = active_peak(v1, v2);
  if (!(peak > 3.0))
    throw std::runtime_error("active_window_lower_edge: no violation window");
  return bisect(
      [&](double g) { return active_optimum_value(g, v1, v2) > 3.0; }, 0.0,
      g_peak, 1e-5);
}

OptimizationResult standard_max(double v1, double v2) {
  std::vector<AngleFunction> objectives = {
      [&](std::span<const double> x) {
        return closed_form_r1(tied_config(x[0], 0.0, 1.0, v1, v2)).first;
      },
      [&](std::span<const double> x) {
        return closed_form_r1(tied_config(x[0], 0.0, 1.0, v1, v2)).second;
      }};
  const std::array<double, 1> lo = {-kPi};
  const std::array<double, 1> hi = {kPi};
  return maximize_min(objectives, 1, lo, hi, "standard-max");
}

double noise_threshold(NoiseMode mode) {
  auto violates = [&](double v) {
    if (mode == NoiseMode::kStandardFnn)
      return standard_max(v, v).best_value > 3.0;
    return active_peak(v, v).second > 3.0;
  };
  if (!violates(1.0))
    throw std::runtime_error("noise_threshold: no violation at unit visibility");
  return bisect(violates, 0.0, 1.0, 1e-5);
}

}  // namespace fnn
