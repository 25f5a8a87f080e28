#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mband/errors.hpp"
#include "mband/rational.hpp"

namespace mband {

/// Which indeterminate a polynomial is written in. `w` always stands for z^N.
enum class Variable { z, w };

namespace detail {

template <typename T>
bool is_zero(const T& v) {
  return v == T(0);
}

inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double d) { return d; }

inline char variable_name(Variable v) { return v == Variable::z ? 'z' : 'w'; }

}  // namespace detail

/// Finitely supported Laurent polynomial  sum_k c_k x^k  over the scalar T.
///
/// Only nonzero coefficients are stored. Arithmetic between a `z` and a `w`
/// polynomial is rejected unless one side is constant.
template <typename T>
class LaurentPoly {
 public:
  using Scalar = T;

  LaurentPoly() = default;
  explicit LaurentPoly(Variable var) : var_(var) {}
  LaurentPoly(const T& constant, Variable var = Variable::z) : var_(var) { set(0, constant); }  // NOLINT

  static LaurentPoly monomial(const T& coefficient, int exponent, Variable var = Variable::z) {
    LaurentPoly p(var);
    p.set(exponent, coefficient);
    return p;
  }

  /// Coefficients c[i] placed at exponents first_exponent + i.
  static LaurentPoly from_coefficients(int first_exponent, std::span<const T> coefficients,
                                       Variable var = Variable::z) {
    LaurentPoly p(var);
    for (std::size_t i = 0; i < coefficients.size(); ++i)
      p.set(first_exponent + static_cast<int>(i), coefficients[i]);
    return p;
  }

  Variable variable() const { return var_; }
  LaurentPoly with_variable(Variable var) const {
    LaurentPoly p = *this;
    p.var_ = var;
    return p;
  }

  const std::map<int, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  std::size_t term_count() const { return terms_.size(); }

  T coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? T(0) : it->second;
  }

  void set(int exponent, const T& value) {
    if (detail::is_zero(value))
      terms_.erase(exponent);
    else
      terms_[exponent] = value;
  }

  void add_to(int exponent, const T& value) { set(exponent, coefficient(exponent) + value); }

  int min_exponent() const {
    if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
    return terms_.begin()->first;
  }
  int max_exponent() const {
    if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
    return terms_.rbegin()->first;
  }

  /// Dense coefficient list from min_exponent() to max_exponent().
  std::vector<T> dense() const {
    if (terms_.empty()) return {};
    std::vector<T> out(static_cast<std::size_t>(max_exponent() - min_exponent() + 1), T(0));
    for (const auto& [e, c] : terms_) out[static_cast<std::size_t>(e - min_exponent())] = c;
    return out;
  }

  LaurentPoly operator-() const {
    LaurentPoly p(var_);
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& other) {
    var_ = merged_variable(other);
    for (const auto& [e, c] : other.terms_) add_to(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& other) {
    var_ = merged_variable(other);
    for (const auto& [e, c] : other.terms_) add_to(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(const LaurentPoly& other) {
    LaurentPoly product(merged_variable(other));
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : other.terms_) product.add_to(e1 + e2, c1 * c2);
    *this = std::move(product);
    return *this;
  }

  LaurentPoly& operator*=(const T& scalar) {
    if (detail::is_zero(scalar)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
  friend LaurentPoly operator*(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs *= rhs; }
  friend LaurentPoly operator*(LaurentPoly lhs, const T& rhs) { return lhs *= rhs; }
  friend LaurentPoly operator*(const T& lhs, LaurentPoly rhs) { return rhs *= lhs; }

  /// Equal as polynomials; constants compare equal regardless of variable tag.
  friend bool operator==(const LaurentPoly& lhs, const LaurentPoly& rhs) {
    if (lhs.terms_ != rhs.terms_) return false;
    return lhs.var_ == rhs.var_ || lhs.is_constant();
  }

 private:
  Variable merged_variable(const LaurentPoly& other) const {
    if (var_ == other.var_ || other.is_constant()) return var_;
    if (is_constant()) return other.var_;
    throw std::invalid_argument("arithmetic between polynomials in z and in w");
  }

  std::map<int, T> terms_;
  Variable var_ = Variable::z;
};

using RationalPoly = LaurentPoly<Rational>;

/// p(x^{-1}).
template <typename T>
LaurentPoly<T> reflect(const LaurentPoly<T>& p) {
  LaurentPoly<T> out(p.variable());
  for (const auto& [e, c] : p.terms()) out.set(-e, c);
  return out;
}

/// x^k p(x).
template <typename T>
LaurentPoly<T> shift(const LaurentPoly<T>& p, int k) {
  LaurentPoly<T> out(p.variable());
  for (const auto& [e, c] : p.terms()) out.set(e + k, c);
  return out;
}

/// p(x^power), written in `result_var`.
template <typename T>
LaurentPoly<T> substitute_power(const LaurentPoly<T>& p, int power, Variable result_var) {
  LaurentPoly<T> out(result_var);
  for (const auto& [e, c] : p.terms()) out.set(e * power, c);
  return out;
}

template <typename T>
std::complex<double> evaluate(const LaurentPoly<T>& p, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += detail::to_double(c) * std::pow(x, e);
  return acc;
}

template <typename T>
T evaluate_at_one(const LaurentPoly<T>& p) {
  T acc(0);
  for (const auto& [e, c] : p.terms()) acc += c;
  return acc;
}

inline LaurentPoly<double> to_double(const RationalPoly& p) {
  LaurentPoly<double> out(p.variable());
  for (const auto& [e, c] : p.terms()) out.set(e, c.to_double());
  return out;
}

template <typename T>
std::string to_string(const LaurentPoly<T>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (e != 0) os << "*" << detail::variable_name(p.variable()) << "^" << e;
  }
  return os.str();
}

/// Splits H(z) into N components in w = z^N: component j holds the
/// coefficients of z^{Nm+j} at w^m, so that H(z) = sum_j z^j A_j(z^N).
template <typename T>
std::vector<LaurentPoly<T>> polyphase_decompose(const LaurentPoly<T>& h, int n) {
  if (n < 2) throw std::invalid_argument("polyphase_decompose: N must be at least 2");
  std::vector<LaurentPoly<T>> row(static_cast<std::size_t>(n), LaurentPoly<T>(Variable::w));
  for (const auto& [e, c] : h.terms()) {
    int m = e / n;
    int j = e % n;
    if (j < 0) {
      j += n;
      m -= 1;
    }
    row[static_cast<std::size_t>(j)].set(m, c);
  }
  return row;
}

/// Inverse of polyphase_decompose: sum_j z^j A_j(z^N).
template <typename T>
LaurentPoly<T> polyphase_reconstruct(std::span<const LaurentPoly<T>> row, int n) {
  if (n < 2) throw std::invalid_argument("polyphase_reconstruct: N must be at least 2");
  if (row.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("polyphase_reconstruct: row length " + std::to_string(row.size()) +
                                " differs from N = " + std::to_string(n));
  LaurentPoly<T> h(Variable::z);
  for (int j = 0; j < n; ++j)
    for (const auto& [m, c] : row[static_cast<std::size_t>(j)].terms()) h.add_to(n * m + j, c);
  return h;
}

template <typename T>
LaurentPoly<T> polyphase_reconstruct(const std::vector<LaurentPoly<T>>& row, int n) {
  return polyphase_reconstruct(std::span<const LaurentPoly<T>>(row), n);
}

// ---------------------------------------------------------------------------
// Constant rational matrices

/// Exact Gauss-Jordan inverse. Throws SingularMatrixError.
RationalMatrix inverse(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Pivot order of the elimination that picks complement basis vectors.
/// With leftmost pivots the complement favours the highest-index standard
/// basis vectors, e.g. (3,2,1),(0,1,2) are completed by (0,0,1).
enum class ComplementRule { leftmost_pivots, rightmost_pivots };

/// Standard basis vectors completing the rows of `vectors` to a basis of
/// Q^dimension, chosen by pivoted elimination. Throws LinearDependenceError
/// if the rows are dependent.
std::vector<RationalRowVector> complete_basis(const std::vector<RationalRowVector>& vectors,
                                              int dimension,
                                              ComplementRule rule = ComplementRule::leftmost_pivots);

/// Rank-one projection P (acting on row vectors, v -> v P) with
/// target P = target and v P = 0 for every v in `along` and for the
/// standard-basis complement chosen by `rule`.
RationalMatrix make_projection(const RationalRowVector& target,
                               const std::vector<RationalRowVector>& along,
                               ComplementRule rule = ComplementRule::leftmost_pivots);

// ---------------------------------------------------------------------------
// Polynomial matrices

/// Elementary loop factor  I - P + w^exponent P.
struct LoopFactor {
  RationalMatrix projection;
  int exponent = 0;
};

/// constant * factors[0] * factors[1] * ...
struct LoopFactorization {
  RationalMatrix constant;
  std::vector<LoopFactor> factors;
};

/// Matrix of Laurent polynomials in w with exact coefficients. May carry
/// a loop factorization from which it was expanded; the inverse is then
/// available exactly without polynomial-matrix inversion.
class PolyMatrix {
 public:
  PolyMatrix() : PolyMatrix(0, 0) {}
  PolyMatrix(int rows, int cols, Variable var = Variable::w);

  static PolyMatrix identity(int n, Variable var = Variable::w);
  static PolyMatrix from_constant(const RationalMatrix& m, Variable var = Variable::w);
  static PolyMatrix from_factor(const LoopFactor& f);
  /// Expands the product and keeps the factorization attached.
  static PolyMatrix from_factorization(LoopFactorization f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Variable variable() const { return var_; }

  const RationalPoly& operator()(int r, int c) const { return entries_[index(r, c)]; }
  RationalPoly& operator()(int r, int c) { return entries_[index(r, c)]; }

  std::vector<RationalPoly> row(int r) const;
  std::vector<RationalPoly> col(int c) const;

  const std::optional<LoopFactorization>& factorization() const { return factorization_; }
  bool is_factorized() const { return factorization_.has_value(); }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  int rows_;
  int cols_;
  Variable var_;
  std::vector<RationalPoly> entries_;
  std::optional<LoopFactorization> factorization_;
};

/// Plain product; the result carries no factorization.
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& m);
/// Entrywise w -> w^{-1}.
PolyMatrix reflect(const PolyMatrix& m);
PolyMatrix scale(const PolyMatrix& m, const Rational& s);

/// Row vector of polynomials times matrix.
std::vector<RationalPoly> multiply(const std::vector<RationalPoly>& row, const PolyMatrix& m);

PolyMatrix expand(const LoopFactorization& f);

/// Inverse of constant * prod (I - P_k + w^{e_k} P_k), which equals
/// (prod reversed (I - P_k + w^{-e_k} P_k)) * constant^{-1}. Returned in the
/// same left-constant form: constant^{-1} * prod reversed (I - Q_k + w^{-e_k} Q_k)
/// with Q_k = constant P_k constant^{-1}.
LoopFactorization factor_inverse(const LoopFactorization& f);
PolyMatrix factor_inverse(const PolyMatrix& m);

/// Appends a loop factor on the right and keeps the factorization.
PolyMatrix factor_mul(const PolyMatrix& m, const LoopFactor& f);
/// Product with another matrix. Stays factorized when both operands are.
PolyMatrix factor_mul(const PolyMatrix& m, const PolyMatrix& other);

// ---------------------------------------------------------------------------
// Vector coefficients of a polyphase row

/// alpha(w) = sum_j alpha_j w^j, for a row of N polynomials in w.
struct VectorCoefficients {
  int dimension = 0;
  std::map<int, RationalRowVector> vectors;  // exponent -> alpha_j, only nonzero vectors

  RationalRowVector sum() const;
};

VectorCoefficients vector_coefficients(const std::vector<RationalPoly>& row);
std::vector<RationalPoly> to_row(const VectorCoefficients& v);

}  // namespace mband
