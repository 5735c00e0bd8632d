#pragma once

// Finitely presented algebras: generator labels, noncommutative polynomial
// expressions in the generators, and representations by matrices.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdaha/exact.hpp"
#include "gdaha/linalg.hpp"

namespace gdaha {

/// A scalar with a float value and, when known, its exact value in Q(i).
struct Coeff {
  Complex value{1.0, 0.0};
  std::optional<QComplex> exact;

  Coeff() : exact(QComplex(1)) {}
  Coeff(Complex v) : value(v) {}  // NOLINT(implicit)
  Coeff(const QComplex& q) : value(q.to_complex()), exact(q) {}  // NOLINT(implicit)
  Coeff(long v) : value(static_cast<double>(v)), exact(QComplex(v)) {}  // NOLINT(implicit)

  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a);
  friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
};

struct Letter {
  int generator = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Term {
  Coeff coeff;
  std::vector<Letter> word;
};

/// Element of the free algebra on the generators (with formal inverses).
class NcExpr {
 public:
  NcExpr() = default;
  static NcExpr scalar(const Coeff& c);
  static NcExpr letter(int generator, bool inverse = false);

  const std::vector<Term>& terms() const { return terms_; }

  NcExpr& operator+=(const NcExpr& o);
  NcExpr& operator-=(const NcExpr& o);
  friend NcExpr operator+(NcExpr a, const NcExpr& b) { return a += b; }
  friend NcExpr operator-(NcExpr a, const NcExpr& b) { return a -= b; }
  friend NcExpr operator-(const NcExpr& a);
  friend NcExpr operator*(const NcExpr& a, const NcExpr& b);
  friend NcExpr operator*(const Coeff& c, const NcExpr& a);

 private:
  std::vector<Term> terms_;
};

NcExpr commutator(const NcExpr& a, const NcExpr& b);

struct Relation {
  std::string name;
  /// The relation reads `expr == 0`.
  NcExpr expr;
};

class Presentation {
 public:
  explicit Presentation(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  int add_generator(const std::string& label, bool invertible = false);
  int index(const std::string& label) const;
  bool has(const std::string& label) const { return lookup_.count(label) > 0; }
  const std::vector<std::string>& generators() const { return labels_; }
  bool invertible(int g) const { return invertible_[static_cast<std::size_t>(g)]; }

  NcExpr gen(const std::string& label) const { return NcExpr::letter(index(label)); }
  NcExpr inv(const std::string& label) const;

  /// Throws when the expression uses an undeclared generator or inverts a
  /// generator not declared invertible.
  void add_relation(std::string name, NcExpr expr);
  const std::vector<Relation>& relations() const { return relations_; }

  /// Parses a product of letters such as "T[1]^-1 U[2] T[1]" or "1".
  NcExpr parse_word(const std::string& text) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<bool> invertible_;
  std::map<std::string, int> lookup_;
  std::vector<Relation> relations_;
};

/// Generator matrices for a presentation. Float matrices are always present;
/// exact matrices are present in exact mode.
struct MatrixRep {
  std::shared_ptr<const Presentation> presentation;
  int dim = 0;
  std::vector<CMatrix> matrices;
  std::optional<std::vector<QMatrix>> exact;
  /// Named scalars of the parameter pack the presentation was built from.
  std::map<std::string, Complex> parameters;

  bool is_exact() const { return exact.has_value(); }
  const CMatrix& operator[](const std::string& label) const;
  const QMatrix& exact_at(const std::string& label) const;
};

/// Checks shapes; throws SizeMismatch. Exact matrices, when given, define the float view.
MatrixRep make_rep(std::shared_ptr<const Presentation> presentation, std::vector<CMatrix> matrices);
MatrixRep make_exact_rep(std::shared_ptr<const Presentation> presentation, std::vector<QMatrix> matrices);

CMatrix evaluate(const MatrixRep& rep, const NcExpr& expr);
QMatrix evaluate_exact(const MatrixRep& rep, const NcExpr& expr);

struct ResidualEntry {
  std::string name;
  double norm = 0.0;
  bool exact_zero = false;
};

struct ResidualReport {
  bool exact = false;
  double max = 0.0;
  std::vector<ResidualEntry> entries;

  bool all_exact_zero() const;
  const ResidualEntry* worst() const;
};

/// Operator 2-norm of every relation evaluated in the representation.
ResidualReport relation_residuals(const MatrixRep& rep);

/// Characters of a subalgebra: v with g v = chi(g) v for each listed pair.
struct IsotypicSpec {
  std::vector<std::pair<NcExpr, Coeff>> conditions;
};

struct Subspace {
  int ambient = 0;
  CMatrix basis;
  int rank() const { return static_cast<int>(basis.cols()); }
};

/// Null space of the stacked (g - chi(g)) matrices; throws EmptySubspace.
Subspace isotypic_subspace(const MatrixRep& rep, const IsotypicSpec& spec, double tol);
/// Exact version; the basis is an identity on its free rows. Throws EmptySubspace.
ExactNullSpace exact_isotypic_subspace(const MatrixRep& rep, const IsotypicSpec& spec);

/// Matrix of `word` on S in S's basis; throws NotInvariant when the leakage
/// ||M B - B R|| exceeds tol * max(1, ||M||).
CMatrix restricted_operator(const MatrixRep& rep, const NcExpr& word, const Subspace& s, double tol);
CMatrix restricted_operator(const CMatrix& m, const Subspace& s, double tol);
QMatrix exact_restricted_operator(const MatrixRep& rep, const NcExpr& word, const ExactNullSpace& s);

}  // namespace gdaha
