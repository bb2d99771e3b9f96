#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace fnn {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Largest matrix in this project is 16x16,
// so everything is kept dense and simple.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;

bool all_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

ComplexMatrix identity(Eigen::Index n);

/// Kronecker product: element ((i*rows_b+k),(j*cols_b+l)) = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// A possibly unnormalized quantum state on a tensor product of subsystems.
// The trace carries probability weight along the measurement pipeline, so it
// may be anything in [0, 1]. Hermiticity and the trace bound are checked at
// construction; positivity is checked on demand because a violation always
// means a bug upstream rather than something to repair here.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, std::vector<Eigen::Index> dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  std::size_t subsystem_count() const { return dims_.size(); }

  double trace() const { return matrix_.trace().real(); }
  double min_eigenvalue() const;
  bool is_positive(double tol = kPositivityTol) const;
  /// Throws std::runtime_error if an eigenvalue is below -tol.
  void assert_positive(double tol = kPositivityTol) const;

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  ComplexMatrix matrix_;
  std::vector<Eigen::Index> dims_;
};

/// Trace out every subsystem not listed in `keep`. Kept subsystems stay in
/// their original order; the total trace is preserved.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep);

/// u * rho * u^dagger as an unnormalized state on the same subsystems.
DensityOperator conjugate_product(const ComplexMatrix& u,
                                  const DensityOperator& rho);

}  // namespace fnn
