#pragma once

#include <array>

#include "fnn/linalg.hpp"

namespace fnn {

/// Measurement direction in the x-z plane, normalized into [-pi, pi).
class ObservableAngle {
 public:
  ObservableAngle() : theta_(0.0) {}
  explicit ObservableAngle(double radians);
  double radians() const { return theta_; }

 private:
  double theta_;
};

// Weak-measurement parameters with the optimal pointer: f^2 + g^2 = 1.
// g is the precision (information gain), f the quality (undisturbed weight).
struct WeakMeasurementParams {
  double g;
  double f;

  static WeakMeasurementParams from_precision(double g);
  void validate() const;
};

struct BsmElement {
  int label;               // outcome b in {0,1,2}
  ComplexMatrix projector;  // 4x4, idempotent; ranks 1,1,2
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_z();

/// cos(theta) sigma_x + sin(theta) sigma_z; eigenvalues exactly +-1.
ComplexMatrix observable(ObservableAngle angle);

/// (I + (-1)^outcome * obs) / 2 for a dichotomic obs with obs^2 = I.
ComplexMatrix projector(const ComplexMatrix& obs, int outcome);

/// |psi-><psi-|, trace 1.
DensityOperator singlet();

/// v |psi-><psi-| + (1-v)/4 I4.
DensityOperator werner(double v);

// The three elements of the incomplete Bell-state measurement. Two Bell
// states are resolved individually and the remaining pair is merged into one
// rank-2 outcome. The assignment below (b=0 |phi+>, b=1 |psi+>, b=2 the
// {phi-, psi-} pair) is the one that reproduces the network's maximal
// witness violation sqrt(13) at theta1=pi/2, theta2=0, theta3=-theta4 with
// x-z plane observables; see the scenario tests for the cross-check.
std::array<BsmElement, 3> bsm_elements();

// Post-measurement state of the weak measurement with outcome c on the last
// qubit of a two-qubit state: (F/2) rho plus the two projected terms with
// weights (1 +- G - F)/2, the larger weight on the projector matching the
// outcome. Unnormalized; the trace is the outcome probability.
DensityOperator weak_update(const DensityOperator& rho,
                            const ComplexMatrix& obs, int outcome,
                            const WeakMeasurementParams& params);

}  // namespace fnn
