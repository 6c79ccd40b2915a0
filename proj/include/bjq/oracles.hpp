#pragma once

// Brute-force validators for the quantization engine: word enumeration,
// exact tau interpolation, and numerical matrix representations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bjq/operator.hpp"
#include "bjq/polynomial.hpp"

namespace bjq::oracles {

/// Average over all distinct interleavings of the r x̂'s and s p̂'s of each
/// dof, tensored across dofs. Throws std::invalid_argument when some dof has
/// r + s > 10.
NormalOp weyl_symmetrization(const PhasePoly& a);

/// Born-Jordan operator via exact Vandermonde interpolation of op_tau at the
/// nodes 0, 1, 1/2, 1/3, ... followed by term-wise integration.
NormalOp tau_interpolation(const PhasePoly& a);

/// Integral over [0,1] of a TauOp recovered from its values at degree+1 nodes.
NormalOp interpolated_integral(const TauOp& t);

/// The fixed interpolation node sequence 0, 1, 1/2, 1/3, ...
std::vector<Rational> interpolation_nodes(std::size_t count);

/// Truncated oscillator-basis matrices of x̂_j, p̂_j (unit mass and frequency):
/// x̂ = sqrt(hbar/2)(a + a^+), p̂ = i sqrt(hbar/2)(a^+ - a), tensored over dofs.
template <class Real = double>
class MatrixRep {
 public:
  using Complex = std::complex<Real>;
  using Sparse = Eigen::SparseMatrix<Complex>;
  using Dense = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  MatrixRep(std::size_t dofs, std::size_t truncation, Real hbar)
      : n_(dofs), size_(truncation), hbar_(hbar) {
    if (dofs == 0 || truncation < 2) throw std::invalid_argument("MatrixRep needs n >= 1, N >= 2");
    if (!(hbar > 0)) throw std::invalid_argument("MatrixRep needs hbar > 0");
    std::size_t total = 1;
    for (std::size_t j = 0; j < dofs; ++j) {
      total *= truncation;
      if (total > 4096) throw std::invalid_argument("MatrixRep dimension N^n exceeds 4096");
    }
    dim_ = total;
    Dense ladder = Dense::Zero(size_, size_);
    for (std::size_t k = 1; k < size_; ++k) ladder(k - 1, k) = std::sqrt(Real(k));
    const Real scale = std::sqrt(hbar / 2);
    x1_ = scale * (ladder + ladder.adjoint());
    p1_ = Complex(0, scale) * (ladder.adjoint() - ladder);
  }

  std::size_t dofs() const { return n_; }
  std::size_t truncation() const { return size_; }
  std::size_t dim() const { return dim_; }
  Real hbar() const { return hbar_; }

  /// Single-dof truncated matrices.
  const Dense& x1() const { return x1_; }
  const Dense& p1() const { return p1_; }

  /// x̂_j or p̂_j on the full tensor space.
  Sparse x(std::size_t j) const { return embed(x1_, j); }
  Sparse p(std::size_t j) const { return embed(p1_, j); }
  Sparse identity() const {
    Sparse id(dim_, dim_);
    id.setIdentity();
    return id;
  }

  /// Kronecker product of one single-dof factor per dof (dof 1 outermost).
  Sparse kron(const std::vector<Dense>& factors) const {
    if (factors.size() != n_) throw DimensionError("one factor per degree of freedom required");
    std::vector<Eigen::Triplet<Complex>> trip;
    // Iterate over the nonzeros of each factor.
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Complex>>> nz(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t r = 0; r < size_; ++r)
        for (std::size_t c = 0; c < size_; ++c)
          if (factors[j](r, c) != Complex(0)) nz[j].emplace_back(r, c, factors[j](r, c));
    for (const auto& v : nz)
      if (v.empty()) return Sparse(dim_, dim_);
    std::vector<std::size_t> pick(n_, 0);
    while (true) {
      std::size_t row = 0, col = 0;
      Complex val(1);
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& [r, c, v] = nz[j][pick[j]];
        row = row * size_ + r;
        col = col * size_ + c;
        val *= v;
      }
      trip.emplace_back(static_cast<int>(row), static_cast<int>(col), val);
      std::size_t j = n_;
      while (j > 0 && ++pick[j - 1] == nz[j - 1].size()) pick[--j] = 0;
      if (j == 0) break;
    }
    Sparse out(dim_, dim_);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
  }

  /// Per-dof basis index of a flattened tensor index.
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> out(n_);
    for (std::size_t j = n_; j > 0; --j) {
      out[j - 1] = flat % size_;
      flat /= size_;
    }
    return out;
  }

  /// True when every per-dof index is below N - margin.
  bool interior(std::size_t flat, std::size_t margin) const {
    for (std::size_t k : unflatten(flat))
      if (k + margin >= size_) return false;
    return true;
  }

 private:
  Sparse embed(const Dense& m, std::size_t j) const {
    std::vector<Dense> f(n_, Dense::Identity(size_, size_));
    f.at(j) = m;
    return kron(f);
  }

  std::size_t n_, size_, dim_;
  Real hbar_;
  Dense x1_, p1_;
};

/// Numerical matrix of a normal-ordered operator with hbar substituted.
template <class Real>
typename MatrixRep<Real>::Sparse matrix_eval(const NormalOp& a, const MatrixRep<Real>& rep) {
  using Dense = typename MatrixRep<Real>::Dense;
  using Complex = typename MatrixRep<Real>::Complex;
  if (a.dof() != rep.dofs()) throw DimensionError("operator and representation dof differ");
  const std::size_t n = rep.dofs(), N = rep.truncation();
  typename MatrixRep<Real>::Sparse out(rep.dim(), rep.dim());
  for (const auto& [e, c] : a.terms()) {
    std::vector<Dense> factors;
    for (std::size_t j = 0; j < n; ++j) {
      Dense m = Dense::Identity(N, N);
      for (unsigned k = 0; k < e.x(j); ++k) m = m * rep.x1();
      for (unsigned k = 0; k < e.p(j); ++k) m = m * rep.p1();
      factors.push_back(std::move(m));
    }
    const std::complex<double> v = c.evaluate(static_cast<double>(rep.hbar()));
    out += Complex(static_cast<Real>(v.real()), static_cast<Real>(v.imag())) * rep.kron(factors);
  }
  return out;
}

/// Largest |A - B| over entries whose row and column are interior (every
/// per-dof index below N - margin), divided by max(1, largest |B| there).
template <class Real>
Real interior_relative_error(const typename MatrixRep<Real>::Sparse& a,
                             const typename MatrixRep<Real>::Sparse& b, const MatrixRep<Real>& rep,
                             std::size_t margin) {
  typename MatrixRep<Real>::Sparse diff = a - b;
  Real err = 0, scale = 1;
  for (int k = 0; k < b.outerSize(); ++k)
    for (typename MatrixRep<Real>::Sparse::InnerIterator it(b, k); it; ++it)
      if (rep.interior(it.row(), margin) && rep.interior(it.col(), margin))
        scale = std::max(scale, std::abs(it.value()));
  for (int k = 0; k < diff.outerSize(); ++k)
    for (typename MatrixRep<Real>::Sparse::InnerIterator it(diff, k); it; ++it)
      if (rep.interior(it.row(), margin) && rep.interior(it.col(), margin))
        err = std::max(err, std::abs(it.value()));
  return err / scale;
}

}  // namespace bjq::oracles
