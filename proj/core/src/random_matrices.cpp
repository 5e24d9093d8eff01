#include "flatrange/random_matrices.hpp"

#include <cmath>

namespace flatrange {

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

CMat gaussian_matrix(std::size_t n, Rng& rng) {
  CMat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = complex_gaussian(rng);
  return a;
}

CMat haar_unitary(std::size_t n, Rng& rng) {
  const CMat g = gaussian_matrix(n, rng);
  CMat q(n);
  // Modified Gram-Schmidt; the R diagonal comes out real positive, which is
  // the normalisation that makes Q Haar distributed.
  std::vector<CVec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    CVec v = g.column(j);
    for (const auto& c : cols) {
      const Complex proj = inner(v, c);
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * c[i];
    }
    const double nv = norm(v);
    for (auto& x : v) x /= nv;
    q.set_column(j, v);
    cols.push_back(std::move(v));
  }
  return q;
}

CMat conjugate(const CMat& a, const CMat& u) { return u.adjoint() * a * u; }

CMat random_strict_upper(std::size_t n, Rng& rng) {
  CMat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = complex_gaussian(rng);
  return a;
}

CMat random_nilpotent(std::size_t n, Rng& rng) {
  const CMat t = random_strict_upper(n, rng);
  return conjugate(t, haar_unitary(n, rng));
}

CMat random_general(std::size_t n, Rng& rng) { return gaussian_matrix(n, rng); }

CMat random_hermitian(std::size_t n, Rng& rng) { return re_part(gaussian_matrix(n, rng)); }

CMat random_reducible_nilpotent4(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  CMat a(4);
  switch (pick(rng)) {
    case 0: {
      const CMat b = random_strict_upper(3, rng);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = b(i, j);
      break;
    }
    case 1:
      a(0, 1) = complex_gaussian(rng);
      a(2, 3) = complex_gaussian(rng);
      break;
    default:
      a(0, 1) = complex_gaussian(rng);
      break;
  }
  return conjugate(a, haar_unitary(4, rng));
}

Reducible5Params random_reducible5(Rng& rng) {
  std::uniform_real_distribution<double> rj(0.2, 3.0);
  std::uniform_real_distribution<double> r2(0.0, 3.0);
  std::uniform_real_distribution<double> rr(0.2, 6.0);
  std::bernoulli_distribution equal(0.25);
  Reducible5Params p;
  p.r1 = rj(rng);
  p.r2 = r2(rng);
  p.r3 = rj(rng);
  p.r = rr(rng);
  if (equal(rng)) p.r2 = p.r3 = p.r1;
  return p;
}

}  // namespace flatrange
