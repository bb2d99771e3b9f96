#include "fnn/kgt.hpp"

#include <cmath>

namespace fnn {

namespace {

constexpr std::array<double, 3> kSignB0 = {1.0, 1.0, -1.0};
constexpr std::array<double, 3> kSignB1 = {1.0, -1.0, 0.0};

double reduce(const MarginalDistribution& m,
              double (*weight)(int a, int b, int c)) {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c) s += weight(a, b, c) * m.at(a, b, c);
  return s;
}

double sign_ac(int a, int c) { return ((a + c) % 2 == 0) ? 1.0 : -1.0; }

// Effective Bloch components of Charlie2's observable after the averaged
// weak-measurement channel: the direction n(theta) = (cos, sin) in the x-z
// plane shrinks to F n(theta) + (1-F)/2 [cos(theta-theta3) n(theta3) +
// cos(theta-theta4) n(theta4)].
double eff_x(double th, double t3, double t4, double f) {
  return f * std::cos(th) +
         0.5 * (1.0 - f) * (std::cos(th - t3) * std::cos(t3) +
                            std::cos(th - t4) * std::cos(t4));
}

double eff_z(double th, double t3, double t4, double f) {
  return f * std::sin(th) +
         0.5 * (1.0 - f) * (std::cos(th - t3) * std::sin(t3) +
                            std::cos(th - t4) * std::sin(t4));
}

}  // namespace

ClosedFormCoefficients kt_coefficients(double theta3, double f) {
  ClosedFormCoefficients c;
  c.k = 1.5 * (1.0 + f - (-1.0 + f) * std::cos(2.0 * theta3));
  c.t = 1.0 + f + (-1.0 + f) * std::cos(2.0 * theta3);
  return c;
}

Correlators correlators_from_marginals(
    const std::array<MarginalDistribution, 4>& marginals) {
  const int observer = marginals[0].observer;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const MarginalDistribution& m = marginals[i * 2 + j];
      if (m.observer != observer || m.i != i || m.j != j)
        throw std::invalid_argument(
            "correlators_from_marginals: incomplete setting coverage");
    }

  Correlators corr;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const MarginalDistribution& m = marginals[i * 2 + j];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 2; ++c) {
            corr.ab0c[i][j] += sign_ac(a, c) * kSignB0[b] * m.at(a, b, c);
            corr.ab1c[i][j] += sign_ac(a, c) * kSignB1[b] * m.at(a, b, c);
          }
    }

  const MarginalDistribution& m10 = marginals[2];  // i=1, j=0
  const MarginalDistribution& m00 = marginals[0];  // i=0, j=0
  const MarginalDistribution& m01 = marginals[1];  // i=0, j=1
  corr.a1 = reduce(m10, [](int a, int, int) { return a ? -1.0 : 1.0; });
  corr.b0 = reduce(m00, [](int, int b, int) { return kSignB0[b]; });
  corr.c0 = reduce(m00, [](int, int, int c) { return c ? -1.0 : 1.0; });
  corr.c1 = reduce(m01, [](int, int, int c) { return c ? -1.0 : 1.0; });
  corr.a1b0 = reduce(m10, [](int a, int b, int) {
    return (a ? -1.0 : 1.0) * kSignB0[b];
  });
  corr.b0c0 = reduce(m00, [](int, int b, int c) {
    return (c ? -1.0 : 1.0) * kSignB0[b];
  });
  corr.b0c1 = reduce(m01, [](int, int b, int c) {
    return (c ? -1.0 : 1.0) * kSignB0[b];
  });
  return corr;
}

std::pair<double, double> kgt_from_correlators(const Correlators& co) {
  const double r_cns = 2.0 * co.ab1c[0][0] - 2.0 * co.ab1c[0][1] +
                       2.0 * co.ab0c[1][0] + co.ab0c[1][1] - co.b0 +
                       co.c1 * (co.a1b0 + co.b0c0 - co.c0);
  const double r_nsc = 2.0 * co.ab1c[0][0] - 2.0 * co.ab1c[0][1] +
                       co.ab0c[1][0] + 2.0 * co.ab0c[1][1] - co.b0 +
                       co.a1 * co.a1b0 + co.a1 * co.b0c1 + co.a1 * co.c0 -
                       co.a1 * co.c1 - co.a1 * co.a1;
  return {r_cns, r_nsc};
}

KgtValues kgt_values(const ScenarioConfig& config) {
  const auto joints = all_joints(config);
  const auto m1 = marginals_for(joints, 1);
  const auto m2 = marginals_for(joints, 2);
  const auto [cns1, nsc1] = kgt_from_correlators(correlators_from_marginals(m1));
  const auto [cns2, nsc2] = kgt_from_correlators(correlators_from_marginals(m2));
  return KgtValues{cns1, nsc1, cns2, nsc2};
}

std::pair<double, double> closed_form_r1(const ScenarioConfig& config) {
  const double t1 = config.angle(0), t2 = config.angle(1);
  const double t3 = config.angle(2), t4 = config.angle(3);
  const double s = config.v1 * config.v2 * config.g;
  const double shared = std::sin(t1) * (std::sin(t3) - std::sin(t4));
  const double cns =
      s * (std::cos(t2) * (2.0 * std::cos(t3) + std::cos(t4)) + shared);
  const double nsc =
      s * (std::cos(t2) * (std::cos(t3) + 2.0 * std::cos(t4)) + shared);
  return {cns, nsc};
}

std::pair<double, double> closed_form_r2(const ScenarioConfig& config) {
  const double t1 = config.angle(0), t2 = config.angle(1);
  const double t3 = config.angle(2), t4 = config.angle(3);
  const double t5 = config.angle(4), t6 = config.angle(5);
  const double f = config.f();
  const double x5 = eff_x(t5, t3, t4, f), x6 = eff_x(t6, t3, t4, f);
  const double z5 = eff_z(t5, t3, t4, f), z6 = eff_z(t6, t3, t4, f);
  const double s = config.v1 * config.v2;
  const double shared = std::sin(t1) * (z5 - z6);
  const double cns = s * (shared + std::cos(t2) * (2.0 * x5 + x6));
  const double nsc = s * (shared + std::cos(t2) * (x5 + 2.0 * x6));
  return {cns, nsc};
}

KgtValues closed_form_kgt(const ScenarioConfig& config) {
  const auto [cns1, nsc1] = closed_form_r1(config);
  const auto [cns2, nsc2] = closed_form_r2(config);
  return KgtValues{cns1, nsc1, cns2, nsc2};
}

double pipeline_closed_form_gap(const ScenarioConfig& config) {
  const KgtValues pipe = kgt_values(config);
  const KgtValues closed = closed_form_kgt(config);
  return std::max({std::abs(pipe.r_cns_1 - closed.r_cns_1),
                   std::abs(pipe.r_nsc_1 - closed.r_nsc_1),
                   std::abs(pipe.r_cns_2 - closed.r_cns_2),
                   std::abs(pipe.r_nsc_2 - closed.r_nsc_2)});
}

}  // namespace fnn
