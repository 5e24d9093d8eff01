#include "flatrange/cmat.hpp"

#include <cmath>
#include <string>

#include "flatrange/errors.hpp"

namespace flatrange {
namespace {

void check_dim(std::size_t n) {
  if (n == 0 || n > kMaxDim) {
    throw DimensionError("matrix dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
}

void check_finite(std::span<const Complex> a) {
  for (const auto& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw BadParams("matrix entries must be finite");
    }
  }
}

}  // namespace

CMat::CMat(std::size_t n) : n_(n), a_(n * n) { check_dim(n); }

CMat::CMat(std::size_t n, std::vector<Complex> row_major) : n_(n), a_(std::move(row_major)) {
  check_dim(n);
  if (a_.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " entries, got " +
                         std::to_string(a_.size()));
  }
  check_finite(a_);
}

CMat::CMat(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  check_dim(n_);
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("ragged matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  check_finite(a_);
}

CMat CMat::identity(std::size_t n) {
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(std::span<const Complex> d) {
  CMat m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  check_finite(m.a_);
  return m;
}

CMat CMat::adjoint() const {
  CMat m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex CMat::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::frobenius_norm() const { return norm(a_); }

CVec CMat::column(std::size_t j) const {
  CVec v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMat::set_column(std::size_t j, std::span<const Complex> v) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
}

CMat& CMat::operator+=(const CMat& rhs) {
  if (rhs.n_ != n_) throw DimensionError("size mismatch in +");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
  if (rhs.n_ != n_) throw DimensionError("size mismatch in -");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

CMat& CMat::operator*=(Complex s) {
  for (auto& z : a_) z *= s;
  return *this;
}

CMat operator*(const CMat& lhs, const CMat& rhs) {
  if (lhs.n_ != rhs.n_) throw DimensionError("size mismatch in *");
  const std::size_t n = lhs.n_;
  CMat out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

CVec operator*(const CMat& lhs, std::span<const Complex> x) {
  if (x.size() != lhs.n_) throw DimensionError("size mismatch in matrix-vector product");
  CVec y(lhs.n_);
  for (std::size_t i = 0; i < lhs.n_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < lhs.n_; ++j) s += lhs(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CMat re_part(const CMat& a) {
  CMat h(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

CMat im_part(const CMat& a) {
  const Complex half_over_i{0.0, -0.5};
  CMat k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      k(i, j) = half_over_i * (a(i, j) - std::conj(a(j, i)));
  return k;
}

CMat rotated_re_part(const CMat& a, double theta) {
  return re_part(std::polar(1.0, -theta) * a);
}

CMat rotated_im_part(const CMat& a, double theta) {
  return im_part(std::polar(1.0, -theta) * a);
}

CMat power(const CMat& a, unsigned k) {
  CMat out = CMat::identity(a.size());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

double hermitian_defect(const CMat& a) { return (a - a.adjoint()).frobenius_norm(); }

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionError("size mismatch in inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return s;
}

double norm(std::span<const Complex> x) { return std::sqrt(norm2(x)); }

CMat compress(const CMat& a, std::span<const CVec> basis) {
  const std::size_t k = basis.size();
  CMat c(k);
  for (std::size_t j = 0; j < k; ++j) {
    const CVec aj = a * basis[j];
    for (std::size_t i = 0; i < k; ++i) c(i, j) = inner(aj, basis[i]);
  }
  return c;
}

}  // namespace flatrange
