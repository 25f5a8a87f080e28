#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mband/filters.hpp"
#include "mband/laurent.hpp"

namespace mband {

enum class BankKind { orthogonal, biorthogonal };

const char* kind_name(BankKind k);

/// How the constant matrix A0 is completed below its first row.
struct A0Completion {
  enum class Strategy { unit_rows, orthogonal_rows, custom };

  Strategy strategy = Strategy::unit_rows;
  RationalMatrix matrix;  // only for custom: N x N, first row constant

  static A0Completion unit_rows() { return {Strategy::unit_rows, {}}; }
  static A0Completion orthogonal_rows() { return {Strategy::orthogonal_rows, {}}; }
  static A0Completion custom(RationalMatrix m) { return {Strategy::custom, std::move(m)}; }
};

const char* strategy_name(A0Completion::Strategy s);

struct BankParameters {
  std::optional<int> degree;
  std::optional<int> half_width;
  std::optional<A0Completion> a0;
};

/// analysis[0] is the scaling filter, analysis[1..N-1] the wavelet channels.
/// Analysis is correlation, a_k = sum_n h_n x[n + N k]; synthesis is
/// x[n] = sum_i sum_k s^i_{n - N k} a^i_k with the synthesis taps s^i.
struct FilterBank {
  int dilation = 2;
  Family family = Family::custom;
  BankKind kind = BankKind::biorthogonal;
  BankParameters parameters;
  std::vector<Filter> analysis;
  std::vector<Filter> synthesis;

  int channels() const { return static_cast<int>(analysis.size()); }
  bool is_exact() const;
};

FilterBank haar_bank(int n);
/// Haar scaling filter with user-chosen wavelet rows. `rows` is (N-1) x N;
/// together with (1,...,1)/sqrt(N) it must form an orthogonal matrix.
FilterBank haar_bank(int n, const Eigen::MatrixXd& rows);

FilterBank shannon_bank(int n, int half_width);

/// N x N matrix with first row (1,...,1)/N. The completion rows live on the
/// scale where the first row is N^degree (1,...,1) and the whole matrix is
/// then divided by N^{degree+1}. A custom first row c (1,...,1) is rescaled
/// the same way by (1/N)/c. Throws SingularMatrixError.
RationalMatrix a0_matrix(int degree, int n, const A0Completion& completion);

/// alpha(w) = base * prod_k (I - P_k + w^{e_k} P_k).
struct RowFactorization {
  RationalRowVector base;
  std::vector<LoopFactor> factors;
};

/// Loop factorization of a polyphase row. Independent vector coefficients
/// get one commuting factor per nonzero exponent (highest positive first,
/// then the negatives upward). Dependent ones are reduced one exponent at a
/// time from the ends of the span. Throws UnsupportedCaseError when an end
/// pair is parallel.
RowFactorization loop_factorize(const VectorCoefficients& alpha);

struct BsplineConstruction {
  VectorCoefficients alpha;
  RowFactorization row;
  PolyMatrix polyphase;  // A(w), factorized
  FilterBank bank;
};

BsplineConstruction construct_bspline_bank(int degree, int n, const A0Completion& a0 = A0Completion::unit_rows());
FilterBank bspline_bank(int degree, int n, const A0Completion& a0 = A0Completion::unit_rows());

/// Sum of the vector coefficients of the scaling filter's polyphase row.
RationalRowVector polyphase_vector_sum(int degree, int n);

/// Polyphase matrix of a set of frequency functions: entry (i, j) is
/// component j of H_i.
PolyMatrix polyphase_matrix(const std::vector<RationalPoly>& functions, int n);

std::vector<RationalPoly> analysis_functions(const FilterBank& bank);
std::vector<RationalPoly> synthesis_functions(const FilterBank& bank);

struct PrReport {
  bool exact_checked = false;
  bool exact_pass = false;
  /// N * S^T(w) A(w^{-1}), identity iff the bank reconstructs perfectly.
  std::optional<PolyMatrix> polyphase_product;
  /// sum_i G_i(z) H_i(z^{-1})
  std::optional<RationalPoly> distortion;
  /// c_j(z), all equal to 1/N iff every alias term vanishes.
  std::vector<RationalPoly> phase_terms;

  /// max over the grid of |sum_i G_i(z) H_i(rho^{-s} z^{-1}) - delta_s|, per s.
  std::vector<double> alias_residuals;
  double float_residual = 0.0;
  double tolerance = 1e-10;
  bool float_pass = false;

  bool pass() const { return float_pass && (!exact_checked || exact_pass); }
};

PrReport verify_pr(const FilterBank& bank, int grid_points = 256, double tolerance = 1e-10);

struct OrthonormalityReport {
  double max_residual = 0.0;
  bool truncated = false;  // filters are truncations of infinite ones
  bool pass = false;
};

/// Checks sum_n f_i[n] f_j[n + N k] = delta_ij delta_k0 over the analysis filters.
OrthonormalityReport check_orthonormality(const FilterBank& bank, double tolerance = 1e-12);

}  // namespace mband
