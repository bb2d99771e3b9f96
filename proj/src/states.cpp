#include "fnn/states.hpp"

#include <cmath>

namespace fnn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

ComplexMatrix bell_projector(int x, int z) {
  // |b> = (|0,x> + (-1)^z |1,1-x>)/sqrt(2);  x=0 -> phi family, x=1 -> psi
  Eigen::Vector4<Complex> v = Eigen::Vector4<Complex>::Zero();
  v(x) = 1.0 / std::sqrt(2.0);
  v(3 - x) = (z ? -1.0 : 1.0) / std::sqrt(2.0);
  ComplexMatrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = v(i) * std::conj(v(j));
  return out;
}

}  // namespace

ObservableAngle::ObservableAngle(double radians) {
  if (!std::isfinite(radians))
    throw std::invalid_argument("ObservableAngle: non-finite angle");
  double t = std::remainder(radians, 2.0 * kPi);  // (-pi, pi]
  if (t == kPi) t = -kPi;
  theta_ = t;
}

WeakMeasurementParams WeakMeasurementParams::from_precision(double g) {
  if (!(g >= 0.0 && g <= 1.0))
    throw std::invalid_argument("WeakMeasurementParams: g outside [0,1]");
  WeakMeasurementParams p{g, std::sqrt(1.0 - g * g)};
  p.validate();
  return p;
}

void WeakMeasurementParams::validate() const {
  if (!(g >= 0.0 && g <= 1.0 && f >= 0.0 && f <= 1.0))
    throw std::invalid_argument("WeakMeasurementParams: parameter out of range");
  if (std::abs(f * f + g * g - 1.0) > 1e-12)
    throw std::invalid_argument(
        "WeakMeasurementParams: pointer not optimal (f^2 + g^2 != 1)");
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix observable(ObservableAngle angle) {
  const double t = angle.radians();
  ComplexMatrix m(2, 2);
  m << std::sin(t), std::cos(t), std::cos(t), -std::sin(t);
  return m;
}

ComplexMatrix projector(const ComplexMatrix& obs, int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("projector: outcome must be 0 or 1");
  if (!is_hermitian(obs, kHermitianTol))
    throw std::invalid_argument("projector: observable not Hermitian");
  ComplexMatrix sq = obs * obs;
  if ((sq - identity(obs.rows())).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("projector: observable is not involutive");
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (identity(obs.rows()) + sign * obs);
}

DensityOperator singlet() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  return DensityOperator(std::move(m), {2, 2});
}

DensityOperator werner(double v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument("werner: visibility outside [0,1]");
  ComplexMatrix m = v * singlet().matrix() +
                    (1.0 - v) / 4.0 * ComplexMatrix::Identity(4, 4);
  return DensityOperator(std::move(m), {2, 2});
}

std::array<BsmElement, 3> bsm_elements() {
  ComplexMatrix phi_plus = bell_projector(0, 0);
  ComplexMatrix phi_minus = bell_projector(0, 1);
  ComplexMatrix psi_plus = bell_projector(1, 0);
  ComplexMatrix psi_minus = bell_projector(1, 1);
  return {BsmElement{0, phi_plus},
          BsmElement{1, psi_plus},
          BsmElement{2, phi_minus + psi_minus}};
}

DensityOperator weak_update(const DensityOperator& rho,
                            const ComplexMatrix& obs, int outcome,
                            const WeakMeasurementParams& params) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("weak_update: outcome must be 0 or 1");
  if (rho.subsystem_count() != 2 || rho.dims().back() != obs.rows())
    throw std::invalid_argument(
        "weak_update: observable does not act on the last subsystem");
  params.validate();

  const Eigen::Index da = rho.dims().front();
  ComplexMatrix u_own = kron(identity(da), projector(obs, outcome));
  ComplexMatrix u_other = kron(identity(da), projector(obs, 1 - outcome));

  // The raw term weights (1 -+ G - F)/2 may dip below zero; the state stays
  // positive because the effective block weights are (1 +- G)/2 with
  // off-diagonal damping F/2 = sqrt of their product. Those are what must
  // never go negative.
  const double w_own = (1.0 + params.g - params.f) / 2.0;
  const double w_other = (1.0 - params.g - params.f) / 2.0;
  if (w_own + params.f / 2.0 < 0.0 || w_other + params.f / 2.0 < 0.0)
    throw std::logic_error("weak_update: negative outcome weight");

  ComplexMatrix out = (params.f / 2.0) * rho.matrix() +
                      w_own * (u_own * rho.matrix() * u_own.adjoint()) +
                      w_other * (u_other * rho.matrix() * u_other.adjoint());
  return DensityOperator(std::move(out), rho.dims());
}

}  // namespace fnn
