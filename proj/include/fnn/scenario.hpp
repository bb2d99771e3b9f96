#pragma once

#include <array>

#include "fnn/states.hpp"

namespace fnn {

// One full parameterization of a network run. Angle slots: theta[0..1] are
// Alice's two settings, theta[2..3] Charlie1's, theta[4..5] Charlie2's.
struct ScenarioConfig {
  std::array<ObservableAngle, 6> theta;
  double g = 1.0;   // precision factor of Charlie1's weak measurement
  double v1 = 1.0;  // visibility of source 1 (Alice-Bob)
  double v2 = 1.0;  // visibility of source 2 (Bob-Charlie)

  static ScenarioConfig make(const std::array<double, 6>& angles, double g,
                             double v1 = 1.0, double v2 = 1.0);
  double f() const { return std::sqrt(1.0 - g * g); }
  WeakMeasurementParams weak_params() const {
    return WeakMeasurementParams::from_precision(g);
  }
  double angle(int slot) const { return theta[slot].radians(); }
};

// P(a, b, c1, c2) for one choice of settings (i, j1, j2).
struct JointDistribution {
  int i = 0, j1 = 0, j2 = 0;
  // indexed [a][b][c1][c2]
  std::array<std::array<std::array<std::array<double, 2>, 2>, 3>, 2> p{};

  double& at(int a, int b, int c1, int c2) { return p[a][b][c1][c2]; }
  double at(int a, int b, int c1, int c2) const { return p[a][b][c1][c2]; }
  double sum() const;
  void validate() const;  // entries in [0,1], total 1 within 1e-10
};

// P(a, b, c_m) for observer m in {1,2} at settings (i, j).
struct MarginalDistribution {
  int observer = 1;
  int i = 0, j = 0;
  std::array<std::array<std::array<double, 2>, 3>, 2> p{};  // [a][b][c]

  double& at(int a, int b, int c) { return p[a][b][c]; }
  double at(int a, int b, int c) const { return p[a][b][c]; }
  double sum() const;
};

// Full measurement pipeline: source pair -> incomplete BSM on Bob's qubits
// -> Alice projector -> Charlie1 weak update -> Charlie2 projector -> trace.
JointDistribution run_pipeline(const ScenarioConfig& config, int i, int j1,
                               int j2);

/// Alice-Bob-Charlie1 marginal: sum over c2 of one joint table.
MarginalDistribution charlie1_marginal(const JointDistribution& joint);

/// Same, checking that the two Charlie2 settings give identical marginals.
MarginalDistribution charlie1_marginal(const JointDistribution& joint_j2a,
                                       const JointDistribution& joint_j2b);

// Alice-Bob-Charlie2 marginal: sum over c1 and average Charlie1's two
// settings with equal weight (the qubit is delivered unbiasedly, so Charlie2
// sees an even mixture of the two upstream measurement choices).
MarginalDistribution charlie2_marginal(const JointDistribution& joint_j1_0,
                                       const JointDistribution& joint_j1_1);

/// All eight joints for a config, indexed by i*4 + j1*2 + j2.
std::array<JointDistribution, 8> all_joints(const ScenarioConfig& config);

/// The four marginals (i, j) for observer m, indexed by i*2 + j.
std::array<MarginalDistribution, 4> marginals_for(
    const std::array<JointDistribution, 8>& joints, int observer);

}  // namespace fnn
