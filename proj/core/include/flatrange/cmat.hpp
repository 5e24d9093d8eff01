#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace flatrange {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr std::size_t kMaxDim = 8;

/// Dense square complex matrix, row-major, 1 <= n <= kMaxDim.
///
/// Entries must be finite; the constructors reject NaN/Inf. Element access is
/// unchecked in release builds.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t n);
  CMat(std::size_t n, std::vector<Complex> row_major);
  CMat(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMat identity(std::size_t n);
  static CMat diagonal(std::span<const Complex> d);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return a_[i * n_ + j];
  }

  std::span<const Complex> data() const noexcept { return a_; }

  CMat adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;

  CVec column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> v);

  CMat& operator+=(const CMat& rhs);
  CMat& operator-=(const CMat& rhs);
  CMat& operator*=(Complex s);

  friend CMat operator+(CMat lhs, const CMat& rhs) { return lhs += rhs; }
  friend CMat operator-(CMat lhs, const CMat& rhs) { return lhs -= rhs; }
  friend CMat operator*(CMat lhs, Complex s) { return lhs *= s; }
  friend CMat operator*(Complex s, CMat rhs) { return rhs *= s; }
  friend CMat operator*(const CMat& lhs, const CMat& rhs);
  friend CVec operator*(const CMat& lhs, std::span<const Complex> x);

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

/// H = (A + A*) / 2.
CMat re_part(const CMat& a);
/// K = (A - A*) / 2i.
CMat im_part(const CMat& a);

/// Re(e^{-i theta} A).
CMat rotated_re_part(const CMat& a, double theta);
/// Im(e^{-i theta} A).
CMat rotated_im_part(const CMat& a, double theta);

CMat power(const CMat& a, unsigned k);

/// ||A - A*||_F.
double hermitian_defect(const CMat& a);

/// Standard inner product <x, y> = sum x_i conj(y_i) (linear in x).
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
double norm2(std::span<const Complex> x);

/// V* A V for the columns of V given as a list of vectors.
CMat compress(const CMat& a, std::span<const CVec> basis);

}  // namespace flatrange
