#include "psr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace psr {

int total_dimension(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("register needs at least one wire");
  long long d = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("wire dimension must be positive");
    d *= x;
    if (d > (1LL << 30)) throw std::invalid_argument("register dimension overflow");
  }
  return static_cast<int>(d);
}

std::vector<int> wire_strides(const std::vector<int>& dims) {
  std::vector<int> s(dims.size());
  int acc = 1;
  for (int w = static_cast<int>(dims.size()) - 1; w >= 0; --w) {
    s[w] = acc;
    acc *= dims[w];
  }
  return s;
}

StateVector::StateVector(std::vector<int> dims_, Vector amps_)
    : dims(std::move(dims_)), amps(std::move(amps_)) {
  if (amps.size() != total_dim())
    throw std::invalid_argument("amplitude vector does not match register dimension");
}

StateVector StateVector::basis(std::vector<int> dims_, int index) {
  const int d = total_dimension(dims_);
  if (index < 0 || index >= d) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return StateVector(std::move(dims_), std::move(v));
}

DensityMatrix::DensityMatrix(std::vector<int> dims_, Matrix mat_)
    : dims(std::move(dims_)), mat(std::move(mat_)) {
  if (mat.rows() != total_dim() || mat.cols() != total_dim())
    throw std::invalid_argument("density matrix does not match register dimension");
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  return DensityMatrix(s.dims, s.amps * s.amps.adjoint());
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int total = total_dimension(dims);
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("matrix does not match register dimension");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (int w : kept)
    if (w < 0 || w >= static_cast<int>(dims.size()))
      throw std::invalid_argument("kept wire index out of range");

  std::vector<int> traced;
  for (int w = 0; w < static_cast<int>(dims.size()); ++w)
    if (!std::binary_search(kept.begin(), kept.end(), w)) traced.push_back(w);

  const std::vector<int> strides = wire_strides(dims);
  // Base offsets for every assignment of the kept digits and of the traced
  // digits; a full register index is one offset from each list.
  auto offsets = [&](const std::vector<int>& wires) {
    std::vector<int> out{0};
    for (int w : wires) {
      std::vector<int> next;
      next.reserve(out.size() * dims[w]);
      for (int base : out)
        for (int x = 0; x < dims[w]; ++x) next.push_back(base + x * strides[w]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<int> kept_off = offsets(kept);
  const std::vector<int> traced_off = offsets(traced);

  const int dk = static_cast<int>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int t : traced_off) acc += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) throw std::invalid_argument("must keep at least one wire");
  Matrix m = partial_trace(rho.mat, rho.dims, kept);
  std::vector<int> out_dims;
  out_dims.reserve(kept.size());
  for (int w : kept) {
    if (w < 0 || w >= static_cast<int>(rho.dims.size()))
      throw std::invalid_argument("kept wire index out of range");
    out_dims.push_back(rho.dims[w]);
  }
  return DensityMatrix(std::move(out_dims), std::move(m));
}

static void check_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix is not square");
  if (max_abs(h - h.adjoint()) > 1e-10)
    throw std::invalid_argument("matrix is not Hermitian");
}

EigenSystem hermitian_eigensystem(const Matrix& h) {
  check_hermitian(h);
  const int n = static_cast<int>(h.rows());
  Matrix a = 0.5 * (h + h.adjoint());
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(1.0, a.norm());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double ab = std::abs(beta);
        if (ab <= 1e-18 * scale) continue;
        // Phase u makes the (p,q) block real symmetric, then a classical
        // Jacobi rotation annihilates it.
        const Complex u = std::conj(beta) / ab;  // multiplies column q
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (alpha - gamma) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G is identity except G(p,p)=c, G(p,q)=-s, G(q,p)=u s, G(q,q)=u c.
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + u * s * akq;
          a(k, q) = -s * akp + u * c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(u) * s * aqk;
          a(q, k) = -s * apk + std::conj(u) * c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + u * s * vkq;
          v(k, q) = -s * vkp + u * c * vkq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    es.values(i) = a(order[i], order[i]).real();
    es.vectors.col(i) = v.col(order[i]);
  }
  return es;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  return hermitian_eigensystem(h).values;
}

double min_eigenvalue(const Matrix& h) {
  return hermitian_eigenvalues(h)(0);
}

Matrix sqrt_psd(const Matrix& h) {
  EigenSystem es = hermitian_eigensystem(h);
  const int n = static_cast<int>(es.values.size());
  // Eigenvalues at round-off scale are exact zeros of a PSD input; taking
  // their square root would turn eps-sized noise into sqrt(eps)-sized output.
  const double cutoff = 1e-13 * std::max(0.0, es.values(n - 1));
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double lam = es.values(i);
    if (lam <= cutoff) continue;
    out += std::sqrt(lam) * (es.vectors.col(i) * es.vectors.col(i).adjoint());
  }
  return out;
}

double fidelity(const Matrix& a, const Matrix& b) {
  const Matrix ra = sqrt_psd(a);
  const Matrix inner = sqrt_psd(ra * b * ra);
  const double tr = inner.trace().real();
  return tr * tr;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims != b.dims) throw std::invalid_argument("fidelity between unlike registers");
  return fidelity(a.mat, b.mat);
}

bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("shape mismatch");
  // Anchor the phase on the largest entry of b.
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (std::abs(b(i, j)) > best) best = std::abs(b(i, j)), bi = i, bj = j;
  if (best <= tol) return max_abs(a) <= tol;
  const Complex ratio = a(bi, bj) / b(bi, bj);
  const double r = std::abs(ratio);
  if (std::abs(r - 1.0) > tol) return false;
  const Complex phase = ratio / r;
  return max_abs(a - phase * b) <= tol;
}

}  // namespace psr
