#include "fnn/scenario.hpp"

#include <cmath>

namespace fnn {

ScenarioConfig ScenarioConfig::make(const std::array<double, 6>& angles,
                                    double g, double v1, double v2) {
  if (!(g >= 0.0 && g <= 1.0))
    throw std::invalid_argument("ScenarioConfig: g outside [0,1]");
  if (!(v1 >= 0.0 && v1 <= 1.0) || !(v2 >= 0.0 && v2 <= 1.0))
    throw std::invalid_argument("ScenarioConfig: visibility outside [0,1]");
  ScenarioConfig c;
  for (int k = 0; k < 6; ++k) c.theta[k] = ObservableAngle(angles[k]);
  c.g = g;
  c.v1 = v1;
  c.v2 = v2;
  return c;
}

double JointDistribution::sum() const {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2) s += p[a][b][c1][c2];
  return s;
}

void JointDistribution::validate() const {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2) {
          double v = p[a][b][c1][c2];
          if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
            throw std::runtime_error("JointDistribution: entry outside [0,1]");
        }
  if (std::abs(sum() - 1.0) > 1e-10)
    throw std::runtime_error("JointDistribution: table does not sum to 1");
}

double MarginalDistribution::sum() const {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c) s += p[a][b][c];
  return s;
}

JointDistribution run_pipeline(const ScenarioConfig& config, int i, int j1,
                               int j2) {
  if ((i | j1 | j2) < 0 || i > 1 || j1 > 1 || j2 > 1)
    throw std::invalid_argument("run_pipeline: setting index out of range");

  const ComplexMatrix alice_obs = observable(config.theta[i]);
  const ComplexMatrix c1_obs = observable(config.theta[2 + j1]);
  const ComplexMatrix c2_obs = observable(config.theta[4 + j2]);
  const WeakMeasurementParams wp = config.weak_params();

  // qubit order: (Alice, Bob-left, Bob-right, Charlie)
  const DensityOperator rho_abc(
      kron(werner(config.v1).matrix(), werner(config.v2).matrix()),
      {2, 2, 2, 2});

  const auto bsm = bsm_elements();
  const ComplexMatrix i2 = identity(2);

  JointDistribution out;
  out.i = i;
  out.j1 = j1;
  out.j2 = j2;

  for (int b = 0; b < 3; ++b) {
    const ComplexMatrix u_b = kron(i2, kron(bsm[b].projector, i2));
    const DensityOperator rho_b = conjugate_product(u_b, rho_abc);
    const DensityOperator rho_ac = partial_trace(rho_b, {0, 3});
    for (int a = 0; a < 2; ++a) {
      const ComplexMatrix u_a = kron(projector(alice_obs, a), i2);
      const DensityOperator rho_a = conjugate_product(u_a, rho_ac);
      for (int c1 = 0; c1 < 2; ++c1) {
        const DensityOperator rho_c1 = weak_update(rho_a, c1_obs, c1, wp);
        for (int c2 = 0; c2 < 2; ++c2) {
          const ComplexMatrix u_c2 = kron(i2, projector(c2_obs, c2));
          out.at(a, b, c1, c2) = conjugate_product(u_c2, rho_c1).trace();
        }
      }
    }
  }
  out.validate();
  return out;
}

MarginalDistribution charlie1_marginal(const JointDistribution& joint) {
  MarginalDistribution m;
  m.observer = 1;
  m.i = joint.i;
  m.j = joint.j1;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c1 = 0; c1 < 2; ++c1)
        m.at(a, b, c1) = joint.at(a, b, c1, 0) + joint.at(a, b, c1, 1);
  return m;
}

MarginalDistribution charlie1_marginal(const JointDistribution& joint_j2a,
                                       const JointDistribution& joint_j2b) {
  if (joint_j2a.i != joint_j2b.i || joint_j2a.j1 != joint_j2b.j1)
    throw std::invalid_argument(
        "charlie1_marginal: joints differ in more than Charlie2's setting");
  MarginalDistribution ma = charlie1_marginal(joint_j2a);
  MarginalDistribution mb = charlie1_marginal(joint_j2b);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        if (std::abs(ma.at(a, b, c) - mb.at(a, b, c)) > 1e-12)
          throw std::runtime_error(
              "charlie1_marginal: marginal depends on Charlie2's setting");
  return ma;
}

MarginalDistribution charlie2_marginal(const JointDistribution& joint_j1_0,
                                       const JointDistribution& joint_j1_1) {
  if (joint_j1_0.i != joint_j1_1.i || joint_j1_0.j2 != joint_j1_1.j2)
    throw std::invalid_argument(
        "charlie2_marginal: joints differ in more than Charlie1's setting");
  if (joint_j1_0.j1 != 0 || joint_j1_1.j1 != 1)
    throw std::invalid_argument(
        "charlie2_marginal: need Charlie1 settings 0 and 1");
  MarginalDistribution m;
  m.observer = 2;
  m.i = joint_j1_0.i;
  m.j = joint_j1_0.j2;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c2 = 0; c2 < 2; ++c2)
        m.at(a, b, c2) =
            0.5 * (joint_j1_0.at(a, b, 0, c2) + joint_j1_0.at(a, b, 1, c2) +
                   joint_j1_1.at(a, b, 0, c2) + joint_j1_1.at(a, b, 1, c2));
  return m;
}

std::array<JointDistribution, 8> all_joints(const ScenarioConfig& config) {
  std::array<JointDistribution, 8> out;
  for (int i = 0; i < 2; ++i)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int j2 = 0; j2 < 2; ++j2)
        out[i * 4 + j1 * 2 + j2] = run_pipeline(config, i, j1, j2);
  return out;
}

std::array<MarginalDistribution, 4> marginals_for(
    const std::array<JointDistribution, 8>& joints, int observer) {
  std::array<MarginalDistribution, 4> out;
  if (observer == 1) {
    for (int i = 0; i < 2; ++i)
      for (int j1 = 0; j1 < 2; ++j1)
        out[i * 2 + j1] =
            charlie1_marginal(joints[i * 4 + j1 * 2 + 0], joints[i * 4 + j1 * 2 + 1]);
  } else if (observer == 2) {
    for (int i = 0; i < 2; ++i)
      for (int j2 = 0; j2 < 2; ++j2)
        out[i * 2 + j2] =
            charlie2_marginal(joints[i * 4 + 0 + j2], joints[i * 4 + 2 + j2]);
  } else {
    throw std::invalid_argument("marginals_for: observer must be 1 or 2");
  }
  return out;
}

}  // namespace fnn
