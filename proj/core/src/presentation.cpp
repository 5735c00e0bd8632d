#include "gdaha/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gdaha/error.hpp"

namespace gdaha {

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff c(a.value * b.value);
  if (a.exact && b.exact) c.exact = *a.exact * *b.exact;
  return c;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  Coeff c(a.value + b.value);
  if (a.exact && b.exact) c.exact = *a.exact + *b.exact;
  return c;
}

Coeff operator-(const Coeff& a) {
  Coeff c(-a.value);
  if (a.exact) c.exact = -*a.exact;
  return c;
}

NcExpr NcExpr::scalar(const Coeff& c) {
  NcExpr e;
  e.terms_.push_back({c, {}});
  return e;
}

NcExpr NcExpr::letter(int generator, bool inverse) {
  NcExpr e;
  e.terms_.push_back({Coeff(1L), {Letter{generator, inverse}}});
  return e;
}

NcExpr& NcExpr::operator+=(const NcExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

NcExpr& NcExpr::operator-=(const NcExpr& o) { return *this += -o; }

NcExpr operator-(const NcExpr& a) {
  NcExpr out = a;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

NcExpr operator*(const NcExpr& a, const NcExpr& b) {
  NcExpr out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      Term t{ta.coeff * tb.coeff, ta.word};
      t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
      out.terms_.push_back(std::move(t));
    }
  return out;
}

NcExpr operator*(const Coeff& c, const NcExpr& a) { return NcExpr::scalar(c) * a; }

NcExpr commutator(const NcExpr& a, const NcExpr& b) { return a * b - b * a; }

int Presentation::add_generator(const std::string& label, bool invertible) {
  if (lookup_.count(label)) throw Error(ErrorKind::ParseError, "duplicate generator " + label);
  const int id = static_cast<int>(labels_.size());
  labels_.push_back(label);
  invertible_.push_back(invertible);
  lookup_[label] = id;
  return id;
}

int Presentation::index(const std::string& label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) throw Error(ErrorKind::ParseError, "unknown generator " + label + " in " + name_);
  return it->second;
}

NcExpr Presentation::inv(const std::string& label) const {
  const int g = index(label);
  if (!invertible_[static_cast<std::size_t>(g)])
    throw Error(ErrorKind::ParseError, label + " is not declared invertible");
  return NcExpr::letter(g, true);
}

void Presentation::add_relation(std::string name, NcExpr expr) {
  for (const auto& t : expr.terms())
    for (const auto& l : t.word) {
      if (l.generator < 0 || l.generator >= static_cast<int>(labels_.size()))
        throw Error(ErrorKind::ParseError, "relation " + name + " uses an undeclared generator");
      if (l.inverse && !invertible_[static_cast<std::size_t>(l.generator)])
        throw Error(ErrorKind::ParseError, "relation " + name + " inverts a non-invertible generator");
    }
  relations_.push_back({std::move(name), std::move(expr)});
}

NcExpr Presentation::parse_word(const std::string& text) const {
  std::istringstream in(text);
  std::string token;
  NcExpr out = NcExpr::scalar(Coeff(1L));
  while (in >> token) {
    if (token == "1") continue;
    bool inverse = false;
    if (token.size() > 3 && token.compare(token.size() - 3, 3, "^-1") == 0) {
      inverse = true;
      token.resize(token.size() - 3);
    }
    out = out * (inverse ? inv(token) : gen(token));
  }
  return out;
}

const CMatrix& MatrixRep::operator[](const std::string& label) const {
  return matrices.at(static_cast<std::size_t>(presentation->index(label)));
}

const QMatrix& MatrixRep::exact_at(const std::string& label) const {
  if (!exact) throw Error(ErrorKind::SpecMismatch, "representation is not exact");
  return exact->at(static_cast<std::size_t>(presentation->index(label)));
}

MatrixRep make_rep(std::shared_ptr<const Presentation> presentation, std::vector<CMatrix> matrices) {
  if (matrices.size() != presentation->generators().size())
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(presentation->generators().size()) +
                                             " generator matrices, got " + std::to_string(matrices.size()));
  MatrixRep rep;
  rep.dim = matrices.empty() ? 0 : static_cast<int>(matrices.front().rows());
  for (const auto& m : matrices)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw Error(ErrorKind::SizeMismatch, "generator matrices must be square of equal size");
  rep.presentation = std::move(presentation);
  rep.matrices = std::move(matrices);
  return rep;
}

MatrixRep make_exact_rep(std::shared_ptr<const Presentation> presentation, std::vector<QMatrix> matrices) {
  std::vector<CMatrix> floats;
  floats.reserve(matrices.size());
  for (const auto& q : matrices) floats.push_back(to_cmatrix(q));
  MatrixRep rep = make_rep(std::move(presentation), std::move(floats));
  rep.exact = std::move(matrices);
  return rep;
}

namespace {

class FloatEvaluator {
 public:
  explicit FloatEvaluator(const MatrixRep& rep) : rep_(rep), inverses_(rep.matrices.size()) {}

  CMatrix operator()(const NcExpr& expr) {
    CMatrix acc = CMatrix::Zero(rep_.dim, rep_.dim);
    for (const auto& t : expr.terms()) {
      if (t.word.empty()) {
        acc.diagonal().array() += t.coeff.value;
        continue;
      }
      CMatrix prod = letter(t.word.front());
      for (std::size_t i = 1; i < t.word.size(); ++i) prod = prod * letter(t.word[i]);
      acc += t.coeff.value * prod;
    }
    return acc;
  }

 private:
  const CMatrix& letter(const Letter& l) {
    const auto g = static_cast<std::size_t>(l.generator);
    if (!l.inverse) return rep_.matrices[g];
    if (!inverses_[g]) {
      Eigen::PartialPivLU<CMatrix> lu(rep_.matrices[g]);
      inverses_[g] = lu.inverse();
    }
    return *inverses_[g];
  }

  const MatrixRep& rep_;
  std::vector<std::optional<CMatrix>> inverses_;
};

class ExactEvaluator {
 public:
  explicit ExactEvaluator(const MatrixRep& rep) : rep_(rep), inverses_(rep.matrices.size()) {
    if (!rep.exact) throw Error(ErrorKind::SpecMismatch, "exact evaluation needs an exact representation");
  }

  QMatrix operator()(const NcExpr& expr) {
    const auto n = static_cast<std::size_t>(rep_.dim);
    QMatrix acc(n, n);
    for (const auto& t : expr.terms()) {
      if (!t.coeff.exact) throw Error(ErrorKind::SpecMismatch, "relation coefficient has no exact value");
      if (t.word.empty()) {
        acc += QMatrix::scalar(n, *t.coeff.exact);
        continue;
      }
      QMatrix prod = letter(t.word.front());
      for (std::size_t i = 1; i < t.word.size(); ++i) prod = prod * letter(t.word[i]);
      acc += prod * *t.coeff.exact;
    }
    return acc;
  }

 private:
  const QMatrix& letter(const Letter& l) {
    const auto g = static_cast<std::size_t>(l.generator);
    if (!l.inverse) return (*rep_.exact)[g];
    if (!inverses_[g]) {
      auto inv = inverse((*rep_.exact)[g]);
      if (!inv) throw Error(ErrorKind::SpecMismatch, "generator " + rep_.presentation->generators()[g] + " is singular");
      inverses_[g] = std::move(*inv);
    }
    return *inverses_[g];
  }

  const MatrixRep& rep_;
  std::vector<std::optional<QMatrix>> inverses_;
};

}  // namespace

CMatrix evaluate(const MatrixRep& rep, const NcExpr& expr) { return FloatEvaluator(rep)(expr); }

QMatrix evaluate_exact(const MatrixRep& rep, const NcExpr& expr) { return ExactEvaluator(rep)(expr); }

bool ResidualReport::all_exact_zero() const {
  return exact && std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.exact_zero; });
}

const ResidualEntry* ResidualReport::worst() const {
  if (entries.empty()) return nullptr;
  return &*std::max_element(entries.begin(), entries.end(),
                            [](const auto& a, const auto& b) { return a.norm < b.norm; });
}

ResidualReport relation_residuals(const MatrixRep& rep) {
  ResidualReport report;
  report.exact = rep.is_exact();
  if (report.exact) {
    ExactEvaluator eval(rep);
    for (const auto& rel : rep.presentation->relations()) {
      QMatrix value = eval(rel.expr);
      ResidualEntry e{rel.name, 0.0, value.is_zero()};
      if (!e.exact_zero) e.norm = spectral_norm(to_cmatrix(value));
      report.max = std::max(report.max, e.norm);
      report.entries.push_back(std::move(e));
    }
    return report;
  }
  FloatEvaluator eval(rep);
  for (const auto& rel : rep.presentation->relations()) {
    ResidualEntry e{rel.name, spectral_norm(eval(rel.expr)), false};
    report.max = std::max(report.max, e.norm);
    report.entries.push_back(std::move(e));
  }
  return report;
}

Subspace isotypic_subspace(const MatrixRep& rep, const IsotypicSpec& spec, double tol) {
  Subspace s;
  s.ambient = rep.dim;
  if (spec.conditions.empty()) {
    s.basis = CMatrix::Identity(rep.dim, rep.dim);
    return s;
  }
  FloatEvaluator eval(rep);
  const auto n = rep.dim;
  CMatrix stacked(n * static_cast<Eigen::Index>(spec.conditions.size()), n);
  for (std::size_t c = 0; c < spec.conditions.size(); ++c) {
    CMatrix m = eval(spec.conditions[c].first);
    m.diagonal().array() -= spec.conditions[c].second.value;
    stacked.block(static_cast<Eigen::Index>(c) * n, 0, n, n) = m;
  }
  s.basis = orthonormal_null_space(stacked, tol);
  if (s.rank() == 0) throw Error(ErrorKind::EmptySubspace, "no vector carries the requested character");
  return s;
}

ExactNullSpace exact_isotypic_subspace(const MatrixRep& rep, const IsotypicSpec& spec) {
  const auto n = static_cast<std::size_t>(rep.dim);
  ExactEvaluator eval(rep);
  std::vector<QMatrix> blocks;
  for (const auto& [word, chi] : spec.conditions) {
    if (!chi.exact) throw Error(ErrorKind::SpecMismatch, "character value has no exact form");
    blocks.push_back(eval(word) - QMatrix::scalar(n, *chi.exact));
  }
  ExactNullSpace ns = blocks.empty() ? null_space(QMatrix(0, n)) : null_space(QMatrix::stack(blocks));
  if (ns.free_rows.empty()) throw Error(ErrorKind::EmptySubspace, "no vector carries the requested character");
  return ns;
}

CMatrix restricted_operator(const CMatrix& m, const Subspace& s, double tol) {
  const CMatrix image = m * s.basis;
  const CMatrix r = s.basis.adjoint() * image;
  const double leak = spectral_norm(image - s.basis * r);
  if (leak > tol * std::max(1.0, spectral_norm(m)))
    throw Error(ErrorKind::NotInvariant, "operator leaks out of the subspace by " + std::to_string(leak));
  return r;
}

CMatrix restricted_operator(const MatrixRep& rep, const NcExpr& word, const Subspace& s, double tol) {
  return restricted_operator(evaluate(rep, word), s, tol);
}

QMatrix exact_restricted_operator(const MatrixRep& rep, const NcExpr& word, const ExactNullSpace& s) {
  const QMatrix image = evaluate_exact(rep, word) * s.basis;
  QMatrix r(s.free_rows.size(), s.free_rows.size());
  for (std::size_t i = 0; i < s.free_rows.size(); ++i)
    for (std::size_t j = 0; j < s.free_rows.size(); ++j) r(i, j) = image(s.free_rows[i], j);
  if (!(s.basis * r == image)) throw Error(ErrorKind::NotInvariant, "operator does not preserve the subspace");
  return r;
}

}  // namespace gdaha
