#include "fnn/linalg.hpp"

#include <cmath>
#include <numeric>

namespace fnn {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix identity(Eigen::Index n) {
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityOperator::DensityOperator(ComplexMatrix matrix,
                                 std::vector<Eigen::Index> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("DensityOperator: matrix must be square");
  if (dims_.empty())
    throw std::invalid_argument("DensityOperator: empty subsystem list");
  Eigen::Index prod = 1;
  for (Eigen::Index d : dims_) {
    if (d <= 0) throw std::invalid_argument("DensityOperator: bad dimension");
    prod *= d;
  }
  if (prod != matrix_.rows())
    throw std::invalid_argument(
        "DensityOperator: subsystem dimensions do not match matrix size");
  if (!all_finite(matrix_))
    throw std::invalid_argument("DensityOperator: non-finite entries");
  if (!is_hermitian(matrix_, kHermitianTol))
    throw std::invalid_argument("DensityOperator: matrix not Hermitian");
  if (matrix_.trace().real() > 1.0 + kTraceTol)
    throw std::invalid_argument("DensityOperator: trace exceeds 1");
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityOperator::is_positive(double tol) const {
  return min_eigenvalue() >= -tol;
}

void DensityOperator::assert_positive(double tol) const {
  if (!is_positive(tol))
    throw std::runtime_error("DensityOperator: negative eigenvalue");
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep) {
  const auto& dims = rho.dims();
  const int n = static_cast<int>(dims.size());

  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n)
      throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (kept[k])
      throw std::invalid_argument("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set is empty");
  if (static_cast<int>(keep.size()) == n)
    throw std::invalid_argument("partial_trace: keep set must be a strict subset");

  std::vector<int> keep_idx, trace_idx;
  for (int k = 0; k < n; ++k) (kept[k] ? keep_idx : trace_idx).push_back(k);

  // row-major strides over the full index
  std::vector<Eigen::Index> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  Eigen::Index dk = 1, dt = 1;
  for (int k : keep_idx) dk *= dims[k];
  for (int k : trace_idx) dt *= dims[k];

  // flat kept/traced index -> offset in the full index space
  auto offsets = [&](const std::vector<int>& subsys, Eigen::Index count) {
    std::vector<Eigen::Index> off(count, 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat, o = 0;
      for (int p = static_cast<int>(subsys.size()) - 1; p >= 0; --p) {
        int k = subsys[p];
        o += (rem % dims[k]) * stride[k];
        rem /= dims[k];
      }
      off[flat] = o;
    }
    return off;
  };
  const auto keep_off = offsets(keep_idx, dk);
  const auto trace_off = offsets(trace_idx, dt);

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t)
        sum += m(keep_off[r] + trace_off[t], keep_off[c] + trace_off[t]);
      out(r, c) = sum;
    }

  std::vector<Eigen::Index> out_dims;
  for (int k : keep_idx) out_dims.push_back(dims[k]);
  return DensityOperator(std::move(out), std::move(out_dims));
}

DensityOperator conjugate_product(const ComplexMatrix& u,
                                  const DensityOperator& rho) {
  if (u.rows() != u.cols() || u.cols() != rho.dim())
    throw std::invalid_argument("conjugate_product: dimension mismatch");
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  return DensityOperator(std::move(out), rho.dims());
}

}  // namespace fnn
