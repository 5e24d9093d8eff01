#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"
#include "flatrange/hermitian_eig.hpp"
#include "flatrange/nilpotent_families.hpp"
#include "flatrange/triangularize.hpp"
#include "support.hpp"

using namespace flatrange;
using testing::jordan;
using testing::max_abs_diff;

TEST_CASE("cmat rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(CMat(0), DimensionError);
  CHECK_THROWS_AS(CMat(9), DimensionError);
  CHECK_THROWS_AS(CMat(2, std::vector<Complex>(3)), DimensionError);
  CHECK_THROWS_AS((CMat{{1.0, std::nan("")}, {0.0, 0.0}}), BadParams);
  CHECK_THROWS_AS((CMat{{1.0, 2.0}, {0.0}}), DimensionError);
}

TEST_CASE("re and im parts") {
  const CMat a{{0.0, 1.0}, {0.0, 0.0}};
  const CMat h = re_part(a);
  CHECK(h(0, 1) == Complex{0.5, 0.0});
  CHECK(h(1, 0) == Complex{0.5, 0.0});
  CHECK(h(0, 0) == Complex{});

  const CMat z(4);
  CHECK(re_part(z) == z);
  CHECK(im_part(z) == z);

  Rng rng(3);
  const CMat g = random_general(5, rng);
  CHECK(max_abs_diff(re_part(g) + Complex{0.0, 1.0} * im_part(g), g) < 1e-15);
  CHECK(hermitian_defect(re_part(g)) == 0.0);
  CHECK(hermitian_defect(im_part(g)) < 1e-15);

  const CMat k = im_part(parallel_canonical(1.0, 1.0, 1.0, 1.0));
  const auto ev = hermitian_eigenvalues(k);
  const double l = std::sqrt(3.0) / 2.0;
  CHECK(ev[0] == doctest::Approx(-l).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(-l).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(l).epsilon(1e-14));
  CHECK(ev[3] == doctest::Approx(l).epsilon(1e-14));
}

TEST_CASE("hermitian_eig examples") {
  const std::vector<Complex> d{3.0, 1.0, 2.0};
  const HermEig e = hermitian_eig(CMat::diagonal(d));
  CHECK(e.values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 2)) == doctest::Approx(1.0));

  const auto j = hermitian_eigenvalues(re_part(jordan(4)));
  const double c1 = std::cos(std::numbers::pi / 5), c2 = std::cos(2 * std::numbers::pi / 5);
  CHECK(j[0] == doctest::Approx(-c1).epsilon(1e-14));
  CHECK(j[1] == doctest::Approx(-c2).epsilon(1e-14));
  CHECK(j[2] == doctest::Approx(c2).epsilon(1e-14));
  CHECK(j[3] == doctest::Approx(c1).epsilon(1e-14));

  const auto r = hermitian_eigenvalues(re_part(real_family(1.0, 2.0, 1.0)));
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(r[2]) < 1e-14);
  CHECK(r[3] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  CHECK_THROWS_AS(hermitian_eig(jordan(3)), NotHermitian);
  CHECK_THROWS_AS(hermitian_eigenvalues(CMat{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
}

TEST_CASE("hermitian_eig invariants on random input") {
  for (std::size_t n = 1; n <= kMaxDim; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      Rng rng(100 * n + static_cast<unsigned>(trial));
      const CMat h = random_hermitian(n, rng);
      const double scale = 1.0 + h.frobenius_norm();
      const HermEig e = hermitian_eig(h);
      for (std::size_t k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
      CMat lam(n);
      for (std::size_t k = 0; k < n; ++k) {
        const CVec v = e.vector(k);
        const CVec hv = h * v;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(hv[i] - e.values[k] * v[i]));
        CHECK(res <= 1e-12 * scale);
        lam(k, k) = e.values[k];
      }
      const CMat gram = e.vectors.adjoint() * e.vectors;
      CHECK(max_abs_diff(gram, CMat::identity(n)) <= 1e-12);
      CHECK((e.vectors * lam * e.vectors.adjoint() - h).frobenius_norm() <= 1e-10 * scale);

      const auto neg = hermitian_eigenvalues(Complex{-1.0, 0.0} * h);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(neg[k] + e.values[n - 1 - k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("singular values agree with eigenvalues of A*A") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat a = random_general(6, rng);
    const auto sv = singular_values(a);
    const auto ev = hermitian_eigenvalues(a.adjoint() * a);
    for (std::size_t k = 0; k < 6; ++k) CHECK(sv.values[k] * sv.values[k] == doctest::Approx(ev[5 - k]).epsilon(1e-10));
  }
  const auto ker = numerical_kernel(jordan(4), 1e-10);
  REQUIRE(ker.size() == 1);
  CHECK(std::abs(ker[0][0]) == doctest::Approx(1.0));
}

TEST_CASE("nilpotent_triangularize examples") {
  const CMat t{{0.0, 1.0, Complex{2.0, 1.0}}, {0.0, 0.0, -3.0}, {0.0, 0.0, 0.0}};
  const Triangularization tr = nilpotent_triangularize(t);
  CHECK(max_abs_diff(tr.q.adjoint() * t * tr.q, tr.t) <= 1e-12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= i; ++j) CHECK(tr.t(i, j) == Complex{});
  // Unitary invariants of an upper triangular nilpotent are preserved.
  const CMat nt = normalize_superdiagonal(tr.t);
  CHECK(nt(0, 1).real() == doctest::Approx(1.0));
  CHECK(nt(1, 2).real() == doctest::Approx(3.0));
  CHECK(std::abs(nt(0, 2)) == doctest::Approx(std::sqrt(5.0)));

  const CMat z(4);
  CHECK(nilpotent_triangularize(z).t == z);

  Rng rng(5);
  const CMat u = haar_unitary(4, rng);
  const CMat a = u * jordan(4) * u.adjoint();
  const CMat j = normalize_superdiagonal(nilpotent_triangularize(a).t);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(j(i, i + 1).real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(j(i, i + 1).imag()) <= 1e-12);
  }
  CHECK(std::abs(j(0, 2)) <= 1e-10);
  CHECK(std::abs(j(1, 3)) <= 1e-10);
  CHECK(std::abs(j(0, 3)) <= 1e-10);

  CHECK_THROWS_AS(nilpotent_triangularize(CMat::identity(3)), NotNilpotent);
}

TEST_CASE("nilpotent_triangularize reconstructs random nilpotent matrices") {
  for (std::size_t n = 2; n <= kMaxDim; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng(1000 * n + static_cast<unsigned>(trial));
      const CMat a = random_nilpotent(n, rng);
      const double scale = 1.0 + a.frobenius_norm();
      const Triangularization tr = nilpotent_triangularize(a);
      CHECK(max_abs_diff(tr.q.adjoint() * tr.q, CMat::identity(n)) <= 1e-12);
      CHECK((tr.q * tr.t * tr.q.adjoint() - a).frobenius_norm() <= 1e-10 * scale);
    }
  }
}

TEST_CASE("normalize_superdiagonal examples") {
  CMat t(4);
  t(0, 1) = Complex{0.0, 1.0};
  t(1, 2) = -1.0;
  t(2, 3) = Complex{0.0, 2.0};
  t(0, 2) = Complex{3.0, 4.0};
  t(1, 3) = Complex{-1.0, 1.0};
  t(0, 3) = 7.0;
  const CMat n = normalize_superdiagonal(t);
  CHECK(std::abs(n(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(n(1, 2) - 1.0) < 1e-15);
  CHECK(std::abs(n(2, 3) - 2.0) < 1e-15);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(n(i, j)) == doctest::Approx(std::abs(t(i, j))));

  const CMat real{{0.0, 1.0, 2.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0}};
  CHECK(max_abs_diff(normalize_superdiagonal(real), real) == 0.0);

  ExceptionalParams p = testing::example_params();
  p.alpha = std::polar(1.0, 0.7);
  p.theta1 = 0.4;
  p.theta2 = -1.1;
  const CMat e = construct_exceptional(p);
  const CMat ne = normalize_superdiagonal(e);
  for (std::size_t i = 0; i < 3; ++i) CHECK(ne(i, i + 1).real() == doctest::Approx(std::abs(e(i, i + 1))));
}
