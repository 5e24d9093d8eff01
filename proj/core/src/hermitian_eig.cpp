#include "flatrange/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "flatrange/errors.hpp"

namespace flatrange {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_hermitian(const CMat& h) {
  const double defect = hermitian_defect(h);
  if (!(defect <= 1e-10 * (1.0 + h.frobenius_norm()))) {
    throw NotHermitian("||H - H*||_F = " + std::to_string(defect));
  }
}

// Rotation parameters that annihilate the (p, q) entry of a Hermitian 2x2
// block [[app, apq], [conj(apq), aqq]]. The unitary is
//   U = [[c, s], [-s conj(e), c conj(e)]],  e = apq / |apq|.
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  double t = 0.0;
  Complex e_conj{1.0, 0.0};
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  Rotation r;
  const double mag = std::abs(apq);
  r.e_conj = std::conj(apq) / mag;
  const double tau = (aqq - app) / (2.0 * mag);
  r.t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  r.c = 1.0 / std::sqrt(1.0 + r.t * r.t);
  r.s = r.t * r.c;
  return r;
}

// Cyclic Jacobi on a working copy. `v` is updated when non-null.
std::vector<double> jacobi(CMat a, CMat* v) {
  const std::size_t n = a.size();
  const double scale = a.frobenius_norm();
  std::vector<double> d(n);
  if (scale == 0.0) return d;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  const double stop = 1e-17 * scale;
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_norm() <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Entry already negligible against both diagonals.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Rotation r = make_rotation(app, aqq, apq);
        const double mag = std::abs(apq);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          const Complex nkp = r.c * akp - r.s * r.e_conj * akq;
          const Complex nkq = r.s * akp + r.c * r.e_conj * akq;
          a(k, p) = nkp;
          a(p, k) = std::conj(nkp);
          a(k, q) = nkq;
          a(q, k) = std::conj(nkq);
        }
        a(p, p) = app - r.t * mag;
        a(q, q) = aqq + r.t * mag;
        a(p, q) = a(q, p) = 0.0;
        if (v != nullptr) {
          CMat& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vm(k, p);
            const Complex vkq = vm(k, q);
            vm(k, p) = r.c * vkp - r.s * r.e_conj * vkq;
            vm(k, q) = r.s * vkp + r.c * r.e_conj * vkq;
          }
        }
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_norm() > stop) {
    throw NoConvergence("Jacobi eigensolver exceeded " + std::to_string(kMaxJacobiSweeps) +
                        " sweeps");
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  return d;
}

CMat symmetrized(const CMat& h) {
  CMat s = h;
  for (std::size_t i = 0; i < h.size(); ++i) {
    s(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const Complex m = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s(i, j) = m;
      s(j, i) = std::conj(m);
    }
  }
  return s;
}

HermEig closed_form_2x2(const CMat& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = h(0, 1);
  HermEig out{{a, d}, CMat::identity(2)};
  if (std::abs(b) == 0.0) {
    if (d < a) {
      out.values = {d, a};
      out.vectors = CMat{{0.0, 1.0}, {1.0, 0.0}};
    }
    return out;
  }
  // One Jacobi rotation diagonalises a 2x2 block exactly.
  const Rotation r = make_rotation(a, d, b);
  const double mag = std::abs(b);
  double l0 = a - r.t * mag;
  double l1 = d + r.t * mag;
  CMat u{{r.c, r.s}, {-r.s * r.e_conj, r.c * r.e_conj}};
  if (l1 < l0) {
    std::swap(l0, l1);
    u = CMat{{u(0, 1), u(0, 0)}, {u(1, 1), u(1, 0)}};
  }
  out.values = {l0, l1};
  out.vectors = u;
  return out;
}

}  // namespace

HermEig hermitian_eig(const CMat& h) {
  check_hermitian(h);
  const std::size_t n = h.size();
  if (n == 1) return HermEig{{h(0, 0).real()}, CMat::identity(1)};
  if (n == 2) return closed_form_2x2(symmetrized(h));

  CMat v = CMat::identity(n);
  const std::vector<double> d = jacobi(symmetrized(h), &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  HermEig out{std::vector<double>(n), CMat(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMat& h) {
  check_hermitian(h);
  const std::size_t n = h.size();
  if (n <= 2) return hermitian_eig(h).values;
  std::vector<double> d = jacobi(symmetrized(h), nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

SingularSystem singular_values(const CMat& a) {
  const std::size_t n = a.size();
  CMat w = a;
  CMat v = CMat::identity(n);
  auto col_dot = [&](std::size_t p, std::size_t q) {
    Complex s = 0.0;  // w_p^* w_q
    for (std::size_t k = 0; k < n; ++k) s += std::conj(w(k, p)) * w(k, q);
    return s;
  };
  auto col_norm2 = [&](std::size_t p) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(w(k, p));
    return s;
  };

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = col_norm2(p);
        const double beta = col_norm2(q);
        const Complex gamma = col_dot(p, q);
        const double mag = std::abs(gamma);
        if (mag <= 4.0 * kEps * std::sqrt(alpha * beta) || mag <= 1e-300) continue;
        converged = false;
        const Rotation r = make_rotation(alpha, beta, gamma);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex wp = w(k, p);
          const Complex wq = w(k, q);
          w(k, p) = r.c * wp - r.s * r.e_conj * wq;
          w(k, q) = r.s * wp + r.c * r.e_conj * wq;
          const Complex vp = v(k, p);
          const Complex vq = v(k, q);
          v(k, p) = r.c * vp - r.s * r.e_conj * vq;
          v(k, q) = r.s * vp + r.c * r.e_conj * vq;
        }
      }
    }
  }
  if (!converged) throw NoConvergence("one-sided Jacobi SVD exceeded sweep cap");

  std::vector<double> sv(n);
  for (std::size_t k = 0; k < n; ++k) sv[k] = std::sqrt(col_norm2(k));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sv[i] > sv[j]; });
  SingularSystem out{std::vector<double>(n), CMat(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = sv[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<CVec> numerical_kernel(const CMat& a, double tol) {
  const SingularSystem svd = singular_values(a);
  std::vector<CVec> basis;
  for (std::size_t k = 0; k < svd.values.size(); ++k) {
    if (svd.values[k] <= tol) basis.push_back(svd.right.column(k));
  }
  return basis;
}

}  // namespace flatrange
