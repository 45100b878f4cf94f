#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace psr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Default absolute tolerance for operator comparisons.
inline constexpr double kDefaultTol = 1e-10;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.derived().cwiseAbs().maxCoeff();
}

// Kronecker product, (a ⊗ b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a_expr,
            const Eigen::MatrixBase<DerivedB>& b_expr) {
  const Matrix a = a_expr;
  const Matrix b = b_expr;
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Mixed-radix register bookkeeping. Wire 0 is the leftmost tensor factor,
// i.e. the most significant digit of a basis index.
int total_dimension(const std::vector<int>& dims);
std::vector<int> wire_strides(const std::vector<int>& dims);
inline int digit_at(int index, int wire, const std::vector<int>& strides,
                    const std::vector<int>& dims) {
  return (index / strides[wire]) % dims[wire];
}

// Pure state of a register of wires with the given local dimensions.
struct StateVector {
  std::vector<int> dims;
  Vector amps;

  StateVector() = default;
  StateVector(std::vector<int> dims_, Vector amps_);
  static StateVector basis(std::vector<int> dims_, int index);

  int total_dim() const { return total_dimension(dims); }
  double norm_error() const { return std::abs(amps.norm() - 1.0); }
};

// Mixed state of a register; `mat` is total_dim x total_dim.
struct DensityMatrix {
  std::vector<int> dims;
  Matrix mat;

  DensityMatrix() = default;
  DensityMatrix(std::vector<int> dims_, Matrix mat_);
  static DensityMatrix pure(const StateVector& s);

  int total_dim() const { return total_dimension(dims); }
  double trace_error() const { return std::abs(mat.trace() - Complex{1.0, 0.0}); }
  double hermiticity_error() const { return max_abs(mat - mat.adjoint()); }
};

// Trace out every wire not listed in `keep`; remaining wires stay in
// ascending wire order. Trace is preserved.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Eigenvalues ascending; columns of `vectors` are the matching orthonormal
// eigenvectors. Input must be Hermitian within 1e-10.
struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};
EigenSystem hermitian_eigensystem(const Matrix& h);
Eigen::VectorXd hermitian_eigenvalues(const Matrix& h);
double min_eigenvalue(const Matrix& h);

// Principal square root of a positive semidefinite matrix. Small negative
// eigenvalues from roundoff are clamped to zero.
Matrix sqrt_psd(const Matrix& h);

// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const Matrix& a, const Matrix& b);
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// True iff a == c*b entrywise for some unit-modulus scalar c.
bool equal_up_to_global_phase(const Matrix& a, const Matrix& b,
                              double tol = kDefaultTol);

}  // namespace psr
