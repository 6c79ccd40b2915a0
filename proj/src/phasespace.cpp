#include "bjq/phasespace.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace bjq::phasespace {

namespace {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_axes(std::span<const Axis> axes) {
  if (axes.empty() || axes.size() > 2) throw GridError("grids support one or two degrees of freedom");
  for (const Axis& a : axes) {
    if (!is_power_of_two(a.size)) throw GridError("axis size must be a power of two (got " +
                                                  std::to_string(a.size) + ")");
    if (!(a.step > 0) || !std::isfinite(a.min)) throw GridError("axis step must be positive");
  }
}

// Row-major multi-index helpers over a shape.
std::vector<std::size_t> unflatten(std::size_t flat, std::span<const std::size_t> shape) {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t d = shape.size(); d > 0; --d) {
    idx[d - 1] = flat % shape[d - 1];
    flat /= shape[d - 1];
  }
  return idx;
}

std::vector<std::size_t> sizes(std::span<const Axis> axes) {
  std::vector<std::size_t> s;
  for (const Axis& a : axes) s.push_back(a.size);
  return s;
}

std::size_t stride_of(std::span<const std::size_t> shape, std::size_t axis) {
  std::size_t s = 1;
  for (std::size_t d = axis + 1; d < shape.size(); ++d) s *= shape[d];
  return s;
}

// S_b = sum_a g_a exp(sign * i u_a v_b / hbar) along one axis of a row-major
// array, with u_a = u.min + a u.step, v_b = v.min + b v.step and
// N u.step v.step = 2 pi hbar.
void dft_axis(Eigen::ArrayXcd& data, std::span<const std::size_t> shape, std::size_t axis,
              const Axis& u, const Axis& v, int sign, double hbar) {
  const std::size_t n = shape[axis];
  if (u.size != n || v.size != n) throw GridError("axis length mismatch in transform");
  const double product = static_cast<double>(n) * u.step * v.step / (2 * std::numbers::pi * hbar);
  if (std::abs(product - 1.0) > 1e-9) throw GridError("axes are not Fourier-conjugate");
  const std::size_t stride = stride_of(shape, axis);
  const std::size_t total = static_cast<std::size_t>(data.size());
  const double s = static_cast<double>(sign);

  std::vector<Complex> pre(n), post(n);
  for (std::size_t a = 0; a < n; ++a) pre[a] = std::polar(1.0, s * static_cast<double>(a) * u.step * v.min / hbar);
  for (std::size_t b = 0; b < n; ++b) post[b] = std::polar(1.0, s * u.min * v.at(b) / hbar);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> in(n), out(n);
  for (std::size_t base = 0; base < total; ++base) {
    if ((base / stride) % n != 0) continue;
    for (std::size_t a = 0; a < n; ++a) in[a] = data(static_cast<Eigen::Index>(base + a * stride)) * pre[a];
    if (sign < 0)
      fft.fwd(out, in);
    else
      fft.inv(out, in);
    for (std::size_t b = 0; b < n; ++b) data(static_cast<Eigen::Index>(base + b * stride)) = out[b] * post[b];
  }
}

Axis wigner_p_axis(const Axis& x, double hbar) {
  const double dp = std::numbers::pi * hbar / (static_cast<double>(x.size) * x.step);
  return {x.size, -0.5 * static_cast<double>(x.size) * dp, dp};
}

// Centred axis conjugate to `from` under exp(i u v / hbar).
Axis conjugate_axis(const Axis& from, double hbar) {
  const double step = 2 * std::numbers::pi * hbar / (static_cast<double>(from.size) * from.step);
  return {from.size, -0.5 * static_cast<double>(from.size) * step, step};
}

void make_real(PhaseGrid& g) {
  g.imag_residue = g.values.imag().abs().maxCoeff();
  g.values = g.values.real().cast<Complex>();
}

}  // namespace

std::size_t grid_points(std::span<const Axis> axes) {
  std::size_t p = 1;
  for (const Axis& a : axes) p *= a.size;
  return p;
}

WaveGrid::WaveGrid(std::vector<Axis> axes, Eigen::ArrayXcd values, double hbar)
    : axes_(std::move(axes)), values_(std::move(values)), hbar_(hbar) {
  check_axes(axes_);
  if (!(hbar_ > 0)) throw GridError("hbar must be positive");
  if (static_cast<std::size_t>(values_.size()) != grid_points(axes_))
    throw GridError("sample count does not match the axes");
}

WaveGrid WaveGrid::oscillator(std::span<const unsigned> levels, std::vector<Axis> axes, double hbar) {
  check_axes(axes);
  if (levels.size() != axes.size()) throw GridError("one oscillator level per axis required");
  std::vector<std::vector<double>> factors;
  for (std::size_t d = 0; d < axes.size(); ++d) {
    std::vector<double> f(axes[d].size);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = axes[d].at(i);
      const double xi = x / std::sqrt(hbar);
      double prev = 0.0;
      double cur = std::pow(std::numbers::pi * hbar, -0.25) * std::exp(-0.5 * xi * xi);
      for (unsigned k = 0; k < levels[d]; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
      }
      f[i] = cur;
    }
    factors.push_back(std::move(f));
  }
  const std::vector<std::size_t> shape = sizes(axes);
  Eigen::ArrayXcd values(static_cast<Eigen::Index>(grid_points(axes)));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const auto idx = unflatten(static_cast<std::size_t>(k), shape);
    double v = 1.0;
    for (std::size_t d = 0; d < idx.size(); ++d) v *= factors[d][idx[d]];
    values(k) = v;
  }
  return WaveGrid(std::move(axes), std::move(values), hbar);
}

double WaveGrid::norm_squared() const {
  double cell = 1.0;
  for (const Axis& a : axes_) cell *= a.step;
  return values_.abs2().sum() * cell;
}

bool WaveGrid::is_normalized() const { return std::abs(norm_squared() - 1.0) <= 1e-8; }

double PhaseGrid::cell() const {
  double c = 1.0;
  for (const Axis& a : x_axes) c *= a.step;
  for (const Axis& a : p_axes) c *= a.step;
  return c;
}

double theta(std::span<const double> xi_x, std::span<const double> xi_p, double hbar) {
  if (!(hbar > 0)) throw GridError("hbar must be positive");
  if (xi_x.size() != xi_p.size()) throw GridError("theta needs matching xi_x and xi_p");
  double dot = 0.0;
  for (std::size_t d = 0; d < xi_x.size(); ++d) dot += xi_x[d] * xi_p[d];
  const double u = dot / (2 * hbar);
  if (std::abs(u) < 1e-6) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

PhaseGrid wigner(const WaveGrid& psi) {
  const std::size_t n = psi.dof();
  const double hbar = psi.hbar();
  const std::vector<std::size_t> shape = sizes(psi.axes());
  const std::size_t P = grid_points(psi.axes());

  PhaseGrid g;
  g.kind = GridKind::wigner;
  g.hbar = hbar;
  g.x_axes = psi.axes();
  for (const Axis& a : psi.axes()) g.p_axes.push_back(wigner_p_axis(a, hbar));
  g.input_normalized = psi.is_normalized();
  g.values = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(P * P));

  double prefactor = 1.0;
  for (const Axis& a : psi.axes()) prefactor *= a.step / (std::numbers::pi * hbar);

  // The p-axis transform is a plain DFT over the lag k; the centred p-grid
  // contributes (-1)^k.
  std::vector<Axis> lag_axes, freq_axes;
  for (std::size_t d = 0; d < n; ++d) {
    lag_axes.push_back({shape[d], 0.0, 1.0});
    freq_axes.push_back({shape[d], 0.0, 2 * std::numbers::pi / static_cast<double>(shape[d])});
  }

  const auto& v = psi.values();
  Eigen::ArrayXcd lag(static_cast<Eigen::Index>(P));
  for (std::size_t jx = 0; jx < P; ++jx) {
    const auto j = unflatten(jx, shape);
    lag.setZero();
    for (std::size_t kf = 0; kf < P; ++kf) {
      const auto kk = unflatten(kf, shape);
      std::size_t plus = 0, minus = 0;
      bool inside = true;
      int parity = 0;
      for (std::size_t d = 0; d < n && inside; ++d) {
        const long N = static_cast<long>(shape[d]);
        long k = static_cast<long>(kk[d]);
        if (k >= N / 2) k -= N;
        const long a = static_cast<long>(j[d]) + k, b = static_cast<long>(j[d]) - k;
        if (a < 0 || a >= N || b < 0 || b >= N) inside = false;
        plus = plus * shape[d] + static_cast<std::size_t>(a);
        minus = minus * shape[d] + static_cast<std::size_t>(b);
        parity += static_cast<int>(k & 1);
      }
      if (!inside) continue;
      Complex c = v(static_cast<Eigen::Index>(plus)) * std::conj(v(static_cast<Eigen::Index>(minus)));
      lag(static_cast<Eigen::Index>(kf)) = (parity % 2) ? -c : c;
    }
    for (std::size_t d = 0; d < n; ++d) dft_axis(lag, shape, d, lag_axes[d], freq_axes[d], -1, 1.0);
    g.values.segment(static_cast<Eigen::Index>(jx * P), static_cast<Eigen::Index>(P)) = lag * prefactor;
  }
  make_real(g);
  return g;
}

PhaseGrid ambiguity(const WaveGrid& psi) {
  const std::size_t n = psi.dof();
  const double hbar = psi.hbar();
  const std::vector<std::size_t> shape = sizes(psi.axes());
  const std::size_t P = grid_points(psi.axes());

  PhaseGrid g;
  g.kind = GridKind::ambiguity;
  g.hbar = hbar;
  g.input_normalized = psi.is_normalized();
  for (const Axis& a : psi.axes()) {
    const double step = 2 * a.step;
    g.x_axes.push_back({a.size, -0.5 * static_cast<double>(a.size) * step, step});
    g.p_axes.push_back(conjugate_axis(a, hbar));
    g.dual_x.push_back(a);
    g.dual_p.push_back(wigner_p_axis(a, hbar));
  }
  g.values = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(P * P));

  double prefactor = 1.0;
  for (const Axis& a : psi.axes()) prefactor *= a.step / (2 * std::numbers::pi * hbar);

  const auto& v = psi.values();
  Eigen::ArrayXcd row(static_cast<Eigen::Index>(P));
  for (std::size_t qf = 0; qf < P; ++qf) {
    // lag q_d = index - N_d/2, so xi_x = 2 q dx
    const auto qi = unflatten(qf, shape);
    row.setZero();
    for (std::size_t jf = 0; jf < P; ++jf) {
      const auto j = unflatten(jf, shape);
      std::size_t plus = 0, minus = 0;
      bool inside = true;
      for (std::size_t d = 0; d < n && inside; ++d) {
        const long N = static_cast<long>(shape[d]);
        const long q = static_cast<long>(qi[d]) - N / 2;
        const long a = static_cast<long>(j[d]) + q, b = static_cast<long>(j[d]) - q;
        if (a < 0 || a >= N || b < 0 || b >= N) inside = false;
        plus = plus * shape[d] + static_cast<std::size_t>(a);
        minus = minus * shape[d] + static_cast<std::size_t>(b);
      }
      if (inside)
        row(static_cast<Eigen::Index>(jf)) =
            v(static_cast<Eigen::Index>(plus)) * std::conj(v(static_cast<Eigen::Index>(minus)));
    }
    for (std::size_t d = 0; d < n; ++d) dft_axis(row, shape, d, psi.axes()[d], g.p_axes[d], -1, hbar);
    g.values.segment(static_cast<Eigen::Index>(qf * P), static_cast<Eigen::Index>(P)) = row * prefactor;
  }
  return g;
}

PhaseGrid symplectic_ft(const PhaseGrid& in) {
  const std::size_t n = in.dof();
  if (n == 0 || in.p_axes.size() != n) throw GridError("malformed phase grid");
  const double hbar = in.hbar;
  for (std::size_t d = 0; d < n; ++d)
    if (in.x_axes[d].size != in.p_axes[d].size) throw GridError("x and p axes differ in length");
  const std::size_t P = in.x_points();
  if (static_cast<std::size_t>(in.values.size()) != P * P) throw GridError("value count mismatch");

  PhaseGrid out;
  out.hbar = hbar;
  out.input_normalized = in.input_normalized;
  out.kind = in.kind == GridKind::ambiguity ? GridKind::wigner : GridKind::ambiguity;
  if (!in.dual_x.empty()) {
    if (in.dual_x.size() != n || in.dual_p.size() != n) throw GridError("malformed dual axes");
    out.x_axes = in.dual_x;
    out.p_axes = in.dual_p;
  } else {
    for (std::size_t d = 0; d < n; ++d) {
      out.x_axes.push_back(conjugate_axis(in.p_axes[d], hbar));
      out.p_axes.push_back(conjugate_axis(in.x_axes[d], hbar));
    }
  }
  out.dual_x = in.x_axes;
  out.dual_p = in.p_axes;

  // Transform in place over the 2n axes (x_1..x_n, p_1..p_n), then swap the
  // x and p blocks: output p_d comes from input x_d and output x_d from input p_d.
  std::vector<std::size_t> shape;
  for (const Axis& a : in.x_axes) shape.push_back(a.size);
  for (const Axis& a : in.p_axes) shape.push_back(a.size);
  Eigen::ArrayXcd work = in.values;
  for (std::size_t d = 0; d < n; ++d) {
    dft_axis(work, shape, d, in.x_axes[d], out.p_axes[d], -1, hbar);
    dft_axis(work, shape, n + d, in.p_axes[d], out.x_axes[d], +1, hbar);
  }
  double prefactor = 1.0;
  for (std::size_t d = 0; d < n; ++d)
    prefactor *= in.x_axes[d].step * in.p_axes[d].step / (2 * std::numbers::pi * hbar);

  out.values.resize(work.size());
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b)
      out.values(static_cast<Eigen::Index>(b * P + a)) = work(static_cast<Eigen::Index>(a * P + b)) * prefactor;
  return out;
}

PhaseGrid bj_wigner(const WaveGrid& psi) {
  PhaseGrid amb = ambiguity(psi);
  const std::size_t n = amb.dof();
  const std::size_t P = amb.x_points();
  const auto xshape = sizes(amb.x_axes);
  const auto pshape = sizes(amb.p_axes);
  std::vector<double> xi_x(n), xi_p(n);
  for (std::size_t a = 0; a < P; ++a) {
    const auto ix = unflatten(a, xshape);
    for (std::size_t d = 0; d < n; ++d) xi_x[d] = amb.x_axes[d].at(ix[d]);
    for (std::size_t b = 0; b < P; ++b) {
      const auto ip = unflatten(b, pshape);
      for (std::size_t d = 0; d < n; ++d) xi_p[d] = amb.p_axes[d].at(ip[d]);
      amb.values(static_cast<Eigen::Index>(a * P + b)) *= theta(xi_x, xi_p, amb.hbar);
    }
  }
  PhaseGrid g = symplectic_ft(amb);
  g.kind = GridKind::bj_wigner;
  make_real(g);
  return g;
}

Marginals marginals(const PhaseGrid& g) {
  if (g.kind == GridKind::ambiguity) throw GridError("marginals are defined for Wigner-type grids only");
  const std::size_t X = g.x_points(), P = g.p_points();
  double dx = 1.0, dp = 1.0;
  for (const Axis& a : g.x_axes) dx *= a.step;
  for (const Axis& a : g.p_axes) dp *= a.step;
  Marginals m{Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(X)),
              Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(P))};
  for (std::size_t a = 0; a < X; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      const double v = g.at(a, b).real();
      m.x(static_cast<Eigen::Index>(a)) += v * dp;
      m.p(static_cast<Eigen::Index>(b)) += v * dx;
    }
  return m;
}

double expect(const PhaseGrid& g, const PhasePoly& a, double hbar) {
  if (g.kind == GridKind::ambiguity) throw GridError("expectation needs a Wigner-type grid");
  if (a.dof() != g.dof()) throw DimensionError("observable and grid dof differ");
  const std::size_t n = g.dof(), X = g.x_points(), P = g.p_points();
  const auto xshape = sizes(g.x_axes), pshape = sizes(g.p_axes);
  std::vector<double> x(n), p(n);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < X; ++i) {
    const auto ix = unflatten(i, xshape);
    for (std::size_t d = 0; d < n; ++d) x[d] = g.x_axes[d].at(ix[d]);
    for (std::size_t k = 0; k < P; ++k) {
      const auto ip = unflatten(k, pshape);
      for (std::size_t d = 0; d < n; ++d) p[d] = g.p_axes[d].at(ip[d]);
      sum += a.evaluate(x, p, hbar) * g.at(i, k).real();
    }
  }
  return (sum * g.cell()).real();
}

}  // namespace bjq::phasespace
