#pragma once

#include "fnn/scenario.hpp"

namespace fnn {

// Every average appearing in the two witness expressions, for one observer.
// three-body tables are indexed [i][j] by (Alice setting, Charlie setting).
struct Correlators {
  std::array<std::array<double, 2>, 2> ab0c{};  // <A_i B0 C_j>
  std::array<std::array<double, 2>, 2> ab1c{};  // <A_i B1 C_j>
  double a1 = 0.0;                              // <A_1>
  double b0 = 0.0;                              // <B_0>
  double c0 = 0.0, c1 = 0.0;                    // <C_0>, <C_1>
  double a1b0 = 0.0;                            // <A_1 B_0>
  double b0c0 = 0.0, b0c1 = 0.0;                // <B_0 C_j>
};

struct KgtValues {
  double r_cns_1 = 0.0, r_nsc_1 = 0.0;  // Alice-Bob-Charlie1
  double r_cns_2 = 0.0, r_nsc_2 = 0.0;  // Alice-Bob-Charlie2

  double r1() const { return std::min(r_cns_1, r_nsc_1); }
  double r2() const { return std::min(r_cns_2, r_nsc_2); }
};

// Coefficients of the reduced Charlie2 witness K cos(theta5) + T sin(theta5)
// that applies on the tied slice theta1=pi/2, theta2=0, theta4=-theta3,
// theta6=-theta5.
struct ClosedFormCoefficients {
  double k = 0.0;
  double t = 0.0;
  double bound() const { return std::hypot(k, t); }
};

ClosedFormCoefficients kt_coefficients(double theta3, double f);

// B0 folds the three-outcome measurement to +1 on b in {0,1} and -1 on b=2;
// B1 resolves +1 on b=0, -1 on b=1 and ignores b=2. Outcome signs for the
// binary parties are (-1)^a and (-1)^c. One- and two-body averages sum out
// the remaining outcomes with the same signs; slots that are free by
// no-signaling are pinned to setting 0.
Correlators correlators_from_marginals(
    const std::array<MarginalDistribution, 4>& marginals);

/// Evaluate the two witness expressions; returns (r_cns, r_nsc).
std::pair<double, double> kgt_from_correlators(const Correlators& corr);

/// All four witness values through the density-matrix pipeline.
KgtValues kgt_values(const ScenarioConfig& config);

// Closed trigonometric forms of the same four values, derived from the
// swapped-state correlator structure. They agree with the pipeline to
// machine precision at every configuration and with the forms printed for
// this network on the theta2 = 0 slice.
std::pair<double, double> closed_form_r1(const ScenarioConfig& config);
std::pair<double, double> closed_form_r2(const ScenarioConfig& config);
KgtValues closed_form_kgt(const ScenarioConfig& config);

/// Largest absolute difference between the pipeline and closed-form values.
double pipeline_closed_form_gap(const ScenarioConfig& config);

}  // namespace fnn
