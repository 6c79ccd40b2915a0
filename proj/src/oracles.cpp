#include "bjq/oracles.hpp"

#include <algorithm>
#include <string>

#include "bjq/quantize.hpp"

namespace bjq::oracles {

namespace {

// Mean of all distinct words with r x̂'s and s p̂'s in one dof, normal-ordered.
NormalOp symmetrized_word_average(unsigned r, unsigned s) {
  std::string word = std::string(r, 'x') + std::string(s, 'p');
  std::sort(word.begin(), word.end());
  const NormalOp x = NormalOp::x(1, 0), p = NormalOp::p(1, 0);
  NormalOp sum(1);
  long count = 0;
  do {
    NormalOp product = NormalOp::identity(1);
    for (char ch : word) product = op_mul(product, ch == 'x' ? x : p);
    sum += product;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return sum * HCoeff(make_rational(1, count));
}

NormalOp embed(const NormalOp& single, std::size_t n, std::size_t j) {
  NormalOp out(n);
  for (const auto& [e, c] : single.terms()) {
    Exponents f(n);
    f.x(j) = e.x(0);
    f.p(j) = e.p(0);
    out.add_term(f, c);
  }
  return out;
}

// Inverse of the Vandermonde matrix V(i,k) = t_i^k by Gauss-Jordan elimination.
std::vector<std::vector<Rational>> vandermonde_inverse(const std::vector<Rational>& nodes) {
  const std::size_t m = nodes.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    Rational power = 1;
    for (std::size_t k = 0; k < m; ++k) {
      a[i][k] = power;
      power *= nodes[i];
    }
    a[i][m + i] = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == m) throw std::logic_error("singular Vandermonde system (repeated node)");
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t k = 0; k < 2 * m; ++k) a[row][k] -= f * a[col][k];
    }
  }
  std::vector<std::vector<Rational>> inv(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) inv[i][k] = a[i][m + k];
  return inv;
}

// Recover tau-coefficients from samples at the nodes, then integrate over [0,1].
NormalOp integrate_samples(const std::vector<Rational>& nodes, const std::vector<NormalOp>& samples) {
  const auto inv = vandermonde_inverse(nodes);
  NormalOp out(samples.front().dof());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    NormalOp coeff(out.dof());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (sgn(inv[k][i]) != 0) coeff += samples[i] * HCoeff(inv[k][i]);
    out += coeff * HCoeff(make_rational(1, static_cast<long>(k) + 1));
  }
  return out;
}

}  // namespace

std::vector<Rational> interpolation_nodes(std::size_t count) {
  std::vector<Rational> nodes;
  for (std::size_t i = 0; i < count; ++i)
    nodes.push_back(i == 0 ? Rational(0) : make_rational(1, static_cast<long>(i)));
  return nodes;
}

NormalOp weyl_symmetrization(const PhasePoly& a) {
  const std::size_t n = a.dof();
  NormalOp out(n);
  for (const auto& [e, c] : a.terms()) {
    if (e.max_dof_degree() > 10)
      throw std::invalid_argument("symmetrization oracle limited to degree 10 per dof");
    NormalOp term(n, c);
    for (std::size_t j = 0; j < n; ++j)
      term = tensor_disjoint(term, embed(symmetrized_word_average(e.x(j), e.p(j)), n, j));
    out += term;
  }
  return out;
}

NormalOp tau_interpolation(const PhasePoly& a) {
  NormalOp out(a.dof());
  for (const auto& [e, c] : a.terms()) {
    const PhasePoly mono = PhasePoly::monomial(e, c);
    const auto nodes = interpolation_nodes(e.total_p_degree() + 1);
    std::vector<NormalOp> samples;
    for (const auto& t : nodes) samples.push_back(op_tau(mono, t));
    out += integrate_samples(nodes, samples);
  }
  return out;
}

NormalOp interpolated_integral(const TauOp& t) {
  const auto nodes = interpolation_nodes(t.degree() + 1);
  std::vector<NormalOp> samples;
  for (const auto& node : nodes) samples.push_back(tau_eval(t, node));
  return integrate_samples(nodes, samples);
}

}  // namespace bjq::oracles
