#include "flatrange/triangularize.hpp"

#include <cmath>
#include <string>

#include "flatrange/errors.hpp"
#include "flatrange/hermitian_eig.hpp"

namespace flatrange {

bool is_nilpotent(const CMat& a) {
  const double n = static_cast<double>(a.size());
  const double bound = 1e-8 * std::pow(1.0 + a.frobenius_norm(), n);
  return power(a, static_cast<unsigned>(a.size())).frobenius_norm() <= bound;
}

CMat complete_to_unitary(std::span<const Complex> u) {
  const std::size_t n = u.size();
  // Reflector H = I - 2 w w*/(w* w) with H e_1 = phase * u; then scale the
  // first column so it equals u exactly.
  const double un = norm(u);
  if (un == 0.0) throw DependentVectors("cannot complete a zero vector");
  CVec x(u.begin(), u.end());
  for (auto& z : x) z /= un;

  const Complex x0 = x[0];
  const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
  // w = x - phase * e1 maps e1 to x / phase-aligned sign.
  CVec w = x;
  w[0] -= phase;
  const double wn2 = norm2(w);
  CMat h = CMat::identity(n);
  if (wn2 > 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * w[i] * std::conj(w[j]) / wn2;
  }
  // H (phase e1) = x  =>  H e1 = x / phase. Multiply column 0 by phase.
  for (std::size_t i = 0; i < n; ++i) h(i, 0) *= phase;
  return h;
}

Triangularization nilpotent_triangularize(const CMat& a) {
  if (!is_nilpotent(a)) throw NotNilpotent("||A^n||_F exceeds tolerance");
  const std::size_t n = a.size();
  const double scale = 1.0 + a.frobenius_norm();

  CMat q(n);
  // Orthonormal basis of the not-yet-used subspace, as columns of `rest`.
  std::vector<CVec> rest;
  for (std::size_t k = 0; k < n; ++k) {
    CVec e(n);
    e[k] = 1.0;
    rest.push_back(std::move(e));
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = rest.size();
    CVec y(1, 1.0);
    if (m > 1) {
      const CMat b = compress(a, rest);
      const SingularSystem svd = singular_values(b);
      y = svd.right.column(m - 1);
    }
    CVec qk(n);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i) qk[i] += y[j] * rest[j][i];
    q.set_column(k, qk);

    if (m > 1) {
      const CMat u = complete_to_unitary(y);
      std::vector<CVec> next;
      for (std::size_t c = 1; c < m; ++c) {
        CVec v(n);
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t i = 0; i < n; ++i) v[i] += u(j, c) * rest[j][i];
        next.push_back(std::move(v));
      }
      rest = std::move(next);
    }
  }

  CMat t = q.adjoint() * a * q;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) worst = std::max(worst, std::abs(t(i, j)));
  if (worst > 1e-10 * scale) {
    throw NotNilpotent("triangularisation residual " + std::to_string(worst));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) t(i, j) = 0.0;
  return {std::move(q), std::move(t)};
}

CVec superdiagonal_phases(const CMat& t) {
  const std::size_t n = t.size();
  CVec d(n, 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex s = t(k, k + 1);
    const double m = std::abs(s);
    d[k + 1] = m > 0.0 ? d[k] * std::conj(s) / m : d[k];
  }
  return d;
}

CMat normalize_superdiagonal(const CMat& t) {
  const CVec d = superdiagonal_phases(t);
  const std::size_t n = t.size();
  CMat out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(d[i]) * t(i, j) * d[j];
  for (std::size_t k = 0; k + 1 < n; ++k) out(k, k + 1) = std::abs(t(k, k + 1));
  return out;
}

}  // namespace flatrange
