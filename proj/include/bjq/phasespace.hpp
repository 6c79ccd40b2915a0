#pragma once

// Sampled wavefunctions and phase-space distributions: Wigner, ambiguity
// (symplectic Fourier transform of Wigner) and Born-Jordan-Wigner.
//
// Grid conventions, per degree of freedom, for a wavefunction sampled at
// x_j = xmin + j dx (j < N, N a power of two):
//   Wigner p-axis:      p_m = -N dp / 2 + m dp,  dp = pi hbar / (N dx)
//   ambiguity axes:     xi_x step 2 dx, xi_p step 2 pi hbar / (N dx), both centred on 0
// Samples outside the window are taken as zero.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bjq/polynomial.hpp"

namespace bjq::phasespace {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Axis {
  std::size_t size = 0;
  double min = 0.0;
  double step = 0.0;

  double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Product of axis sizes.
std::size_t grid_points(std::span<const Axis> axes);

/// Wavefunction sampled on a rectangular grid of one or two dofs, row-major
/// with dof 1 outermost.
class WaveGrid {
 public:
  WaveGrid(std::vector<Axis> axes, Eigen::ArrayXcd values, double hbar = 1.0);

  /// Product of oscillator eigenfunctions with the given per-dof levels.
  static WaveGrid oscillator(std::span<const unsigned> levels, std::vector<Axis> axes,
                             double hbar = 1.0);

  std::size_t dof() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  const Eigen::ArrayXcd& values() const { return values_; }
  double hbar() const { return hbar_; }

  /// sum |psi|^2 dx^n
  double norm_squared() const;
  bool is_normalized() const;

 private:
  std::vector<Axis> axes_;
  Eigen::ArrayXcd values_;
  double hbar_;
};

enum class GridKind { wigner, bj_wigner, ambiguity };

/// Values on an (x, p) grid, flattened row-major as (x_1..x_n, p_1..p_n).
/// For an ambiguity grid the x and p axes hold xi_x and xi_p. `dual_x`/`dual_p`
/// record the axes the grid was transformed from, so the inverse transform
/// lands back on them.
struct PhaseGrid {
  GridKind kind = GridKind::wigner;
  double hbar = 1.0;
  std::vector<Axis> x_axes;
  std::vector<Axis> p_axes;
  std::vector<Axis> dual_x;
  std::vector<Axis> dual_p;
  Eigen::ArrayXcd values;
  /// Largest |Im| removed when the grid was made real (real kinds only).
  double imag_residue = 0.0;
  bool input_normalized = true;

  std::size_t dof() const { return x_axes.size(); }
  std::size_t x_points() const { return grid_points(x_axes); }
  std::size_t p_points() const { return grid_points(p_axes); }
  /// dx^n dp^n
  double cell() const;
  Eigen::ArrayXd real() const { return values.real(); }
  std::complex<double> at(std::size_t x_flat, std::size_t p_flat) const {
    return values(static_cast<Eigen::Index>(x_flat * p_points() + p_flat));
  }
};

/// sinc(xi_p . xi_x / (2 hbar)).
double theta(std::span<const double> xi_x, std::span<const double> xi_p, double hbar);

PhaseGrid wigner(const WaveGrid& psi);

/// Ambiguity function computed directly from psi (lag products Fourier
/// transformed over x), on the centred ambiguity grid.
PhaseGrid ambiguity(const WaveGrid& psi);

/// F_sigma G(z) = (2 pi hbar)^-n sum exp(-i (p.x' - p'.x)/hbar) G(z') dz'.
/// Involutive: applying it twice returns the original grid.
PhaseGrid symplectic_ft(const PhaseGrid& g);

/// Inverse symplectic transform of ambiguity(psi) * theta.
PhaseGrid bj_wigner(const WaveGrid& psi);

struct Marginals {
  Eigen::ArrayXd x;  // integrated over p, indexed by x-flat
  Eigen::ArrayXd p;  // integrated over x, indexed by p-flat
};

Marginals marginals(const PhaseGrid& g);

/// Riemann sum of a(x, p) G(x, p) dx^n dp^n with hbar substituted in a.
double expect(const PhaseGrid& g, const PhasePoly& a, double hbar);
inline double expect(const PhaseGrid& g, const PhasePoly& a) { return expect(g, a, g.hbar); }

}  // namespace bjq::phasespace
