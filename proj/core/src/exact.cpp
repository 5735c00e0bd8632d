#include "gdaha/exact.hpp"

#include <algorithm>
#include <cctype>

#include "gdaha/error.hpp"

namespace gdaha {

namespace {

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  try {
    if (s.find('/') != std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in " + s);
      q.canonicalize();
      return q;
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exponent = std::stol(s.substr(e + 1));
      s.resize(e);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s.erase(0, 1);
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    for (char c : s) {
      if (c == '.') {
        if (seen_point) throw Error(ErrorKind::ParseError, "bad decimal " + std::string(text));
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_point) ++scale;
      } else {
        throw Error(ErrorKind::ParseError, "bad number " + std::string(text));
      }
    }
    if (digits.empty()) throw Error(ErrorKind::ParseError, "bad number " + std::string(text));
    Rational q{mpz_class(digits, 10)};
    q *= pow10(exponent - scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "bad number " + std::string(text));
  }
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

QComplex QComplex::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw std::domain_error("QComplex: division by zero");
  return {re / n, -im / n};
}

QComplex& QComplex::operator*=(const QComplex& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string format(const QComplex& z) {
  if (z.is_real()) return format_rational(z.re);
  std::string out = sgn(z.re) == 0 ? "" : format_rational(z.re);
  if (sgn(z.im) > 0 && !out.empty()) out += "+";
  return out + format_rational(z.im) + "i";
}

QComplex parse_qcomplex(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  if (s.back() != 'i') return QComplex(parse_rational(s));
  s.pop_back();
  // Split before the sign that starts the imaginary part (not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag = [](std::string part) {
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    return parse_rational(part);
  };
  if (split == std::string::npos) return {Rational(0), imag(s)};
  return {parse_rational(s.substr(0, split)), imag(s.substr(split))};
}

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, QComplex(1)); }

QMatrix QMatrix::scalar(std::size_t n, const QComplex& c) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const QComplex& z) { return z.is_zero(); });
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::column_block(std::size_t first, std::size_t count) const {
  QMatrix b(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) b(r, c) = (*this)(r, first + c);
  return b;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::SizeMismatch, "QMatrix +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::SizeMismatch, "QMatrix -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const QComplex& c) {
  for (auto& z : data_) z *= c;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::SizeMismatch, "QMatrix *");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const QComplex& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const QComplex& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

QMatrix QMatrix::stack(const std::vector<QMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(ErrorKind::SizeMismatch, "QMatrix::stack");
    rows += b.rows();
  }
  QMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(offset + r, c) = b(r, c);
    offset += b.rows();
  }
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    QComplex inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      QComplex f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

ExactNullSpace null_space(const QMatrix& a) {
  QMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  ExactNullSpace ns;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) ns.free_rows.push_back(c);
  ns.basis = QMatrix(a.cols(), ns.free_rows.size());
  for (std::size_t j = 0; j < ns.free_rows.size(); ++j) {
    std::size_t f = ns.free_rows[j];
    ns.basis(f, j) = QComplex(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) ns.basis(pivots[r], j) = -m(r, f);
  }
  return ns;
}

std::size_t rank(const QMatrix& a) {
  QMatrix m = a;
  return rref(m).size();
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = QComplex(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.column_block(n, n);
}

std::vector<QComplex> characteristic_polynomial(const QMatrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const std::size_t n = a.rows();
  std::vector<QComplex> c(n + 1);
  c[n] = QComplex(1);
  QMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    QMatrix am = a * m;
    QComplex tr;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / QComplex(static_cast<long>(k));
  }
  return c;
}

std::vector<QComplex> polynomial_from_roots(const std::vector<QComplex>& roots) {
  std::vector<QComplex> p{QComplex(1)};
  for (const auto& r : roots) {
    std::vector<QComplex> next(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace gdaha
