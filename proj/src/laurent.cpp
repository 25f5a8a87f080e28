#include "mband/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mband {

namespace {

// Row-reduces `m` in place to reduced echelon form. Columns are scanned in
// `column_order`; returns the pivot columns in the order they were found.
std::vector<int> row_reduce(RationalMatrix& m, const std::vector<int>& column_order) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (int col : column_order) {
    if (row >= m.rows()) break;
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(row).swap(m.row(pivot));
    const Rational lead = m(row, col);
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(row, c) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<int> ascending(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

RationalMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return RationalMatrix::Constant(rows, cols, Rational(0));
}

RationalMatrix identity_matrix(Eigen::Index n) {
  RationalMatrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

RationalMatrix product(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out = zero_matrix(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

}  // namespace

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RationalMatrix aug = zero_matrix(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity_matrix(n);
  const auto pivots = row_reduce(aug, ascending(static_cast<int>(n)));
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots.back() >= n))
    throw SingularMatrixError("matrix is singular");
  return aug.rightCols(n);
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix copy = m;
  return row_reduce(copy, ascending(static_cast<int>(m.cols()))).size();
}

std::vector<RationalRowVector> complete_basis(const std::vector<RationalRowVector>& vectors,
                                              int dimension, ComplementRule rule) {
  if (static_cast<int>(vectors.size()) > dimension)
    throw LinearDependenceError("more vectors than the dimension");
  RationalMatrix m = zero_matrix(static_cast<Eigen::Index>(vectors.size()), dimension);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dimension) throw std::invalid_argument("complete_basis: vector length mismatch");
    m.row(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  std::vector<int> order = ascending(dimension);
  if (rule == ComplementRule::rightmost_pivots) std::reverse(order.begin(), order.end());
  const auto pivots = row_reduce(m, order);
  if (pivots.size() < vectors.size()) throw LinearDependenceError("vectors are linearly dependent");

  std::vector<RationalRowVector> out;
  for (int c = 0; c < dimension; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    RationalRowVector e = RationalRowVector::Constant(dimension, Rational(0));
    e(c) = Rational(1);
    out.push_back(std::move(e));
  }
  return out;
}

RationalMatrix make_projection(const RationalRowVector& target, const std::vector<RationalRowVector>& along,
                               ComplementRule rule) {
  const int n = static_cast<int>(target.size());
  std::vector<RationalRowVector> basis{target};
  basis.insert(basis.end(), along.begin(), along.end());
  const auto complement = complete_basis(basis, n, rule);
  basis.insert(basis.end(), complement.begin(), complement.end());

  RationalMatrix b(n, n);
  for (int i = 0; i < n; ++i) b.row(i) = basis[static_cast<std::size_t>(i)];
  const RationalMatrix b_inv = inverse(b);
  // P = B^{-1} diag(1,0,...,0) B
  RationalMatrix p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = b_inv(i, 0) * target(j);
  return p;
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(int rows, int cols, Variable var)
    : rows_(rows), cols_(cols), var_(var),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), RationalPoly(var)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

PolyMatrix PolyMatrix::identity(int n, Variable var) {
  PolyMatrix m(n, n, var);
  for (int i = 0; i < n; ++i) m(i, i) = RationalPoly(Rational(1), var);
  return m;
}

PolyMatrix PolyMatrix::from_constant(const RationalMatrix& c, Variable var) {
  PolyMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()), var);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) = RationalPoly(c(i, j), var);
  return m;
}

PolyMatrix PolyMatrix::from_factor(const LoopFactor& f) {
  const int n = static_cast<int>(f.projection.rows());
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational p = f.projection(i, j);
      RationalPoly entry(Variable::w);
      entry.add_to(0, (i == j ? Rational(1) : Rational(0)) - p);
      entry.add_to(f.exponent, p);
      m(i, j) = entry;
    }
  return m;
}

PolyMatrix PolyMatrix::from_factorization(LoopFactorization f) {
  PolyMatrix m = from_constant(f.constant);
  for (const auto& factor : f.factors) m = m * from_factor(factor);
  m.factorization_ = std::move(f);
  return m;
}

std::vector<RationalPoly> PolyMatrix::row(int r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(index(r, 0)),
          entries_.begin() + static_cast<std::ptrdiff_t>(index(r, 0) + cols_)};
}

std::vector<RationalPoly> PolyMatrix::col(int c) const {
  std::vector<RationalPoly> out;
  out.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("polynomial matrix size mismatch");
  PolyMatrix out(a.rows(), b.cols(), a.variable());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

PolyMatrix transpose(const PolyMatrix& m) {
  PolyMatrix out(m.cols(), m.rows(), m.variable());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

PolyMatrix reflect(const PolyMatrix& m) {
  PolyMatrix out(m.rows(), m.cols(), m.variable());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = reflect(m(i, j));
  return out;
}

PolyMatrix scale(const PolyMatrix& m, const Rational& s) {
  PolyMatrix out(m.rows(), m.cols(), m.variable());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * s;
  return out;
}

std::vector<RationalPoly> multiply(const std::vector<RationalPoly>& row, const PolyMatrix& m) {
  if (static_cast<int>(row.size()) != m.rows()) throw std::invalid_argument("row length mismatch");
  std::vector<RationalPoly> out(static_cast<std::size_t>(m.cols()), RationalPoly(m.variable()));
  for (int k = 0; k < m.rows(); ++k) {
    if (row[static_cast<std::size_t>(k)].is_zero()) continue;
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(k)] * m(k, j);
  }
  return out;
}

PolyMatrix expand(const LoopFactorization& f) {
  PolyMatrix m = PolyMatrix::from_constant(f.constant);
  for (const auto& factor : f.factors) m = m * PolyMatrix::from_factor(factor);
  return m;
}

LoopFactorization factor_inverse(const LoopFactorization& f) {
  const RationalMatrix c_inv = inverse(f.constant);
  LoopFactorization out{c_inv, {}};
  for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
    out.factors.push_back({product(product(f.constant, it->projection), c_inv), -it->exponent});
  return out;
}

PolyMatrix factor_inverse(const PolyMatrix& m) {
  if (!m.is_factorized()) throw std::invalid_argument("factor_inverse: matrix carries no factorization");
  return PolyMatrix::from_factorization(factor_inverse(*m.factorization()));
}

PolyMatrix factor_mul(const PolyMatrix& m, const LoopFactor& f) {
  if (!m.is_factorized()) throw std::invalid_argument("factor_mul: matrix carries no factorization");
  LoopFactorization g = *m.factorization();
  g.factors.push_back(f);
  return PolyMatrix::from_factorization(std::move(g));
}

PolyMatrix factor_mul(const PolyMatrix& m, const PolyMatrix& other) {
  if (!m.is_factorized() || !other.is_factorized()) return m * other;
  // A0 prod F * B0 prod G = A0 B0 prod (B0^{-1} F B0) prod G
  const auto& a = *m.factorization();
  const auto& b = *other.factorization();
  const RationalMatrix b_inv = inverse(b.constant);
  LoopFactorization g{product(a.constant, b.constant), {}};
  for (const auto& f : a.factors) g.factors.push_back({product(product(b_inv, f.projection), b.constant), f.exponent});
  g.factors.insert(g.factors.end(), b.factors.begin(), b.factors.end());
  return PolyMatrix::from_factorization(std::move(g));
}

// ---------------------------------------------------------------------------

RationalRowVector VectorCoefficients::sum() const {
  RationalRowVector s = RationalRowVector::Constant(dimension, Rational(0));
  for (const auto& [e, v] : vectors) s += v;
  return s;
}

VectorCoefficients vector_coefficients(const std::vector<RationalPoly>& row) {
  VectorCoefficients out;
  out.dimension = static_cast<int>(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    for (const auto& [e, c] : row[j].terms()) {
      auto it = out.vectors.find(e);
      if (it == out.vectors.end())
        it = out.vectors.emplace(e, RationalRowVector::Constant(out.dimension, Rational(0))).first;
      it->second(static_cast<Eigen::Index>(j)) = c;
    }
  return out;
}

std::vector<RationalPoly> to_row(const VectorCoefficients& v) {
  std::vector<RationalPoly> row(static_cast<std::size_t>(v.dimension), RationalPoly(Variable::w));
  for (const auto& [e, vec] : v.vectors)
    for (int j = 0; j < v.dimension; ++j) row[static_cast<std::size_t>(j)].add_to(e, vec(j));
  return row;
}

}  // namespace mband
