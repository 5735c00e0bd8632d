#pragma once

// Exact arithmetic over Q(i): rationals, Gaussian-rational scalars, and small
// dense matrices with echelon-form utilities.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gdaha {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "p/q", an integer, or a decimal ("-0.125", "1.5e-3") exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// An element a + b i of Q(i).
struct QComplex {
  Rational re{0};
  Rational im{0};

  QComplex() = default;
  QComplex(Rational r) : re(std::move(r)) { re.canonicalize(); }  // NOLINT(implicit)
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  QComplex(long r) : re(r) {}  // NOLINT(implicit)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }

  QComplex conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  QComplex inverse() const;

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o) { return *this *= o.inverse(); }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

/// "p/q", "p/q+r/si", "r/si".
std::string format(const QComplex& z);
/// Inverse of format; also accepts decimals in either part and a bare "i".
QComplex parse_qcomplex(std::string_view text);

/// Dense row-major matrix over Q(i).
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix scalar(std::size_t n, const QComplex& c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  QComplex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const QComplex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  QMatrix transpose() const;
  QMatrix column_block(std::size_t first, std::size_t count) const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const QComplex& c);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const QComplex& c) { return a *= c; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Vertical concatenation.
  static QMatrix stack(const std::vector<QMatrix>& blocks);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QComplex> data_;
};

/// Basis of the right null space. Columns are indexed by free variables of the
/// reduced echelon form; row `free[j]` of column j is 1 and the other free rows are 0.
struct ExactNullSpace {
  QMatrix basis;
  std::vector<std::size_t> free_rows;
};

ExactNullSpace null_space(const QMatrix& a);
std::size_t rank(const QMatrix& a);
std::optional<QMatrix> inverse(const QMatrix& a);

/// Coefficients c_0..c_n of det(z I - A), with c_n = 1.
std::vector<QComplex> characteristic_polynomial(const QMatrix& a);

/// Coefficients of prod_i (z - roots_i).
std::vector<QComplex> polynomial_from_roots(const std::vector<QComplex>& roots);

}  // namespace gdaha
