#include "mband/bank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mband {

namespace {

Filter float_filter(int dilation, int offset, std::vector<double> taps, Family family) {
  Filter f;
  f.dilation = dilation;
  f.offset = offset;
  f.taps = std::move(taps);
  f.family = family;
  return f;
}

RationalMatrix rational_zero(int n) { return RationalMatrix::Constant(n, n, Rational(0)); }

// Frequency function (1/sqrt(N)) sum h_n z^n from the float taps only.
LaurentPoly<double> float_frequency(const Filter& f) {
  LaurentPoly<double> p;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(f.dilation));
  for (int i = 0; i < f.size(); ++i) p.add_to(f.offset + i, f.taps[static_cast<std::size_t>(i)] * inv_sqrt);
  return p;
}

std::map<int, RationalRowVector> nonzero_vectors(const VectorCoefficients& v) {
  std::map<int, RationalRowVector> out;
  for (const auto& [e, vec] : v.vectors)
    if (!std::all_of(vec.begin(), vec.end(), [](const Rational& r) { return r.is_zero(); })) out.emplace(e, vec);
  return out;
}

RowFactorization simultaneous_factorization(const std::map<int, RationalRowVector>& vectors, int n) {
  std::vector<RationalRowVector> all;
  for (const auto& [e, v] : vectors) all.push_back(v);
  const auto complement = complete_basis(all, n);

  RowFactorization out;
  out.base = RationalRowVector::Constant(n, Rational(0));
  for (const auto& v : all) out.base += v;

  auto factor_for = [&](int exponent) {
    std::vector<RationalRowVector> along = complement;
    for (const auto& [e, v] : vectors)
      if (e != exponent) along.push_back(v);
    out.factors.push_back({make_projection(vectors.at(exponent), along), exponent});
  };
  for (auto it = vectors.rbegin(); it != vectors.rend(); ++it)
    if (it->first > 0) factor_for(it->first);
  for (const auto& [e, v] : vectors)
    if (e < 0) factor_for(e);
  return out;
}

RowFactorization reducing_factorization(VectorCoefficients current) {
  std::vector<LoopFactor> stripped;
  for (;;) {
    const auto vectors = nonzero_vectors(current);
    if (vectors.empty()) throw UnsupportedCaseError("loop_factorize: zero polyphase row");
    const int lo = vectors.begin()->first;
    const int hi = vectors.rbegin()->first;
    if (lo == hi) {
      RowFactorization out;
      out.base = vectors.begin()->second;
      if (lo != 0) out.factors.push_back({make_projection(out.base, {}), lo});
      for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) out.factors.push_back(*it);
      return out;
    }
    const bool strip_top = hi > std::max(lo, 0);
    const auto& target = vectors.at(strip_top ? hi : lo);
    const auto& other = vectors.at(strip_top ? lo : hi);
    RationalMatrix p;
    try {
      p = make_projection(target, {other});
    } catch (const LinearDependenceError&) {
      throw UnsupportedCaseError("loop_factorize: extreme vector coefficients are parallel; "
                                 "a monomial loop factorization does not exist on this path");
    }
    // alpha (I - P + w^{-+1} P) moves the target one step towards the middle.
    const int step = strip_top ? -1 : 1;
    current = vector_coefficients(multiply(to_row(current), PolyMatrix::from_factor({p, step})));
    stripped.push_back({p, -step});
  }
}

}  // namespace

const char* kind_name(BankKind k) { return k == BankKind::orthogonal ? "orthogonal" : "biorthogonal"; }

const char* strategy_name(A0Completion::Strategy s) {
  switch (s) {
    case A0Completion::Strategy::unit_rows: return "unit";
    case A0Completion::Strategy::orthogonal_rows: return "orthogonal";
    case A0Completion::Strategy::custom: return "custom";
  }
  return "custom";
}

bool FilterBank::is_exact() const {
  auto exact = [](const Filter& f) { return f.is_exact(); };
  return std::all_of(analysis.begin(), analysis.end(), exact) && std::all_of(synthesis.begin(), synthesis.end(), exact);
}

FilterBank haar_bank(int n) {
  if (n < 2) throw std::invalid_argument("haar_bank: N must be at least 2");
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n - 1, n);
  for (int m = 1; m < n; ++m) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
    for (int j = 0; j < m; ++j) rows(m - 1, j) = norm;
    rows(m - 1, m) = -m * norm;
  }
  return haar_bank(n, rows);
}

FilterBank haar_bank(int n, const Eigen::MatrixXd& rows) {
  if (n < 2) throw std::invalid_argument("haar_bank: N must be at least 2");
  if (rows.rows() != n - 1 || rows.cols() != n)
    throw std::invalid_argument("haar_bank: completion must be (N-1) x N");
  Eigen::MatrixXd full(n, n);
  full.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  full.bottomRows(n - 1) = rows;
  if (!(full * full.transpose()).isIdentity(1e-12))
    throw std::invalid_argument("haar_bank: completion rows do not form an orthogonal matrix");

  FilterBank bank;
  bank.dilation = n;
  bank.family = Family::haar;
  bank.kind = BankKind::orthogonal;
  bank.analysis.push_back(haar_filter(n));
  for (int m = 1; m < n; ++m) {
    std::vector<double> taps;
    for (int j = 0; j < n; ++j) taps.push_back(full(m, j));
    bank.analysis.push_back(float_filter(n, 0, std::move(taps), Family::haar));
  }
  bank.synthesis = bank.analysis;
  return bank;
}

FilterBank shannon_bank(int n, int half_width) {
  FilterBank bank;
  bank.dilation = n;
  bank.family = Family::shannon;
  bank.kind = BankKind::orthogonal;
  bank.parameters.half_width = half_width;
  bank.analysis.push_back(shannon_filter(n, half_width));
  const double root = std::sqrt(static_cast<double>(n));
  for (int k = 1; k < n; ++k) {
    std::vector<double> taps;
    for (int m = -half_width; m <= half_width; ++m) {
      if (m == 0) {
        taps.push_back(1.0 / root);
        continue;
      }
      const double x = std::numbers::pi * m;
      taps.push_back(root * (std::sin((k + 1) * x / n) - std::sin(k * x / n)) / x);
    }
    bank.analysis.push_back(float_filter(n, -half_width, std::move(taps), Family::shannon));
  }
  bank.synthesis = bank.analysis;
  return bank;
}

RationalMatrix a0_matrix(int degree, int n, const A0Completion& completion) {
  if (n < 2) throw std::invalid_argument("a0_matrix: N must be at least 2");
  if (degree < 0) throw std::invalid_argument("a0_matrix: negative degree");
  BigInt top = 1;
  for (int i = 0; i < degree; ++i) top *= n;
  RationalMatrix a = rational_zero(n);
  Rational scale(BigInt(1), top * n);

  switch (completion.strategy) {
    case A0Completion::Strategy::unit_rows:
      for (int i = 1; i < n; ++i) a(i, i) = Rational(1);
      break;
    case A0Completion::Strategy::orthogonal_rows:
      for (int m = 1; m < n; ++m) {
        for (int j = 0; j < m; ++j) a(m, j) = Rational(1);
        a(m, m) = Rational(-m);
      }
      break;
    case A0Completion::Strategy::custom: {
      const auto& c = completion.matrix;
      if (c.rows() != n || c.cols() != n)
        throw std::invalid_argument("a0_matrix: custom matrix must be " + std::to_string(n) + " x " + std::to_string(n));
      const Rational first = c(0, 0);
      for (int j = 0; j < n; ++j)
        if (c(0, j) != first || first.is_zero())
          throw std::invalid_argument("a0_matrix: first row of a custom matrix must be a nonzero constant");
      a = c;
      scale = Rational(BigInt(1), BigInt(n)) / first;
      break;
    }
  }
  if (completion.strategy != A0Completion::Strategy::custom)
    for (int j = 0; j < n; ++j) a(0, j) = Rational(top, BigInt(1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) *= scale;
  (void)inverse(a);  // throws SingularMatrixError
  return a;
}

RowFactorization loop_factorize(const VectorCoefficients& alpha) {
  const auto vectors = nonzero_vectors(alpha);
  if (vectors.empty()) throw UnsupportedCaseError("loop_factorize: zero polyphase row");
  RationalMatrix m(static_cast<Eigen::Index>(vectors.size()), alpha.dimension);
  Eigen::Index r = 0;
  for (const auto& [e, v] : vectors) m.row(r++) = v;
  if (rank(m) == vectors.size()) return simultaneous_factorization(vectors, alpha.dimension);
  return reducing_factorization(alpha);
}

BsplineConstruction construct_bspline_bank(int degree, int n, const A0Completion& a0) {
  BsplineConstruction out;
  const Filter scaling = bspline_filter(degree, n);
  const RationalPoly h0 = *frequency_function(scaling).exact;
  const auto first_row = polyphase_decompose(h0, n);
  out.alpha = vector_coefficients(first_row);
  out.row = loop_factorize(out.alpha);

  const RationalMatrix constant = a0_matrix(degree, n, a0);
  if (constant.row(0) != out.row.base)
    throw std::logic_error("construct_bspline_bank: A0 first row differs from the factorized row base");
  out.polyphase = PolyMatrix::from_factorization({constant, out.row.factors});
  if (out.polyphase.row(0) != first_row)
    throw std::logic_error("construct_bspline_bank: factorization does not reproduce the polyphase row");
  const PolyMatrix inv = factor_inverse(out.polyphase);

  FilterBank& bank = out.bank;
  bank.dilation = n;
  bank.family = Family::bspline;
  bank.kind = BankKind::biorthogonal;
  bank.parameters.degree = degree;
  bank.parameters.a0 = a0;
  const Rational inv_n(BigInt(1), BigInt(n));
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      bank.analysis.push_back(scaling);
    else
      bank.analysis.push_back(filter_from_frequency(polyphase_reconstruct(out.polyphase.row(i), n), n, Family::bspline));

    std::vector<RationalPoly> column = inv.col(i);
    for (auto& p : column) p = reflect(p);
    const RationalPoly g = polyphase_reconstruct(column, n) * inv_n;
    bank.synthesis.push_back(filter_from_frequency(g, n, Family::bspline));
  }
  return out;
}

FilterBank bspline_bank(int degree, int n, const A0Completion& a0) {
  return construct_bspline_bank(degree, n, a0).bank;
}

RationalRowVector polyphase_vector_sum(int degree, int n) {
  const RationalPoly h0 = *frequency_function(bspline_filter(degree, n)).exact;
  return vector_coefficients(polyphase_decompose(h0, n)).sum();
}

PolyMatrix polyphase_matrix(const std::vector<RationalPoly>& functions, int n) {
  PolyMatrix m(static_cast<int>(functions.size()), n);
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto row = polyphase_decompose(functions[i], n);
    for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

namespace {

std::vector<RationalPoly> exact_functions(const std::vector<Filter>& filters) {
  std::vector<RationalPoly> out;
  for (const auto& f : filters) {
    auto ff = frequency_function(f);
    if (!ff.exact) throw std::invalid_argument("filter has no exact taps");
    out.push_back(std::move(*ff.exact));
  }
  return out;
}

}  // namespace

std::vector<RationalPoly> analysis_functions(const FilterBank& bank) { return exact_functions(bank.analysis); }
std::vector<RationalPoly> synthesis_functions(const FilterBank& bank) { return exact_functions(bank.synthesis); }

PrReport verify_pr(const FilterBank& bank, int grid_points, double tolerance) {
  const int n = bank.dilation;
  if (bank.channels() != n || static_cast<int>(bank.synthesis.size()) != n)
    throw std::invalid_argument("verify_pr: bank must have N analysis and N synthesis filters");
  PrReport report;
  report.tolerance = tolerance;

  if (bank.is_exact()) {
    report.exact_checked = true;
    const auto h = analysis_functions(bank);
    const auto g = synthesis_functions(bank);
    const PolyMatrix a = polyphase_matrix(h, n);
    const PolyMatrix s = polyphase_matrix(g, n);
    const PolyMatrix product = scale(transpose(s) * reflect(a), Rational(n));
    report.exact_pass = product == PolyMatrix::identity(n);

    RationalPoly distortion;
    for (int i = 0; i < n; ++i) distortion += g[static_cast<std::size_t>(i)] * reflect(h[static_cast<std::size_t>(i)]);
    report.distortion = distortion;

    const Rational inv_n(BigInt(1), BigInt(n));
    for (int j = 0; j < n; ++j) {
      RationalPoly c;
      for (int l = 0; l < n; ++l) c += shift(substitute_power(product(l, j), n, Variable::z), l - j);
      report.phase_terms.push_back(c * inv_n);
    }
    report.polyphase_product = product;
  }

  std::vector<LaurentPoly<double>> hf, gf;
  for (int i = 0; i < n; ++i) {
    hf.push_back(float_frequency(bank.analysis[static_cast<std::size_t>(i)]));
    gf.push_back(float_frequency(bank.synthesis[static_cast<std::size_t>(i)]));
  }
  report.alias_residuals.assign(static_cast<std::size_t>(n), 0.0);
  for (int t = 0; t < grid_points; ++t) {
    const std::complex<double> z = std::polar(1.0, -2.0 * std::numbers::pi * t / grid_points);
    for (int s = 0; s < n; ++s) {
      const std::complex<double> rho_s = std::polar(1.0, -2.0 * std::numbers::pi * s / n);
      std::complex<double> total = 0.0;
      for (int i = 0; i < n; ++i)
        total += evaluate(gf[static_cast<std::size_t>(i)], z) * evaluate(hf[static_cast<std::size_t>(i)], rho_s / z);
      const double r = std::abs(total - (s == 0 ? 1.0 : 0.0));
      auto& slot = report.alias_residuals[static_cast<std::size_t>(s)];
      slot = std::max(slot, r);
    }
  }
  report.float_residual = *std::max_element(report.alias_residuals.begin(), report.alias_residuals.end());
  report.float_pass = report.float_residual <= tolerance;
  return report;
}

OrthonormalityReport check_orthonormality(const FilterBank& bank, double tolerance) {
  OrthonormalityReport report;
  report.truncated = bank.family == Family::shannon;
  const int n = bank.dilation;
  for (std::size_t i = 0; i < bank.analysis.size(); ++i)
    for (std::size_t j = i; j < bank.analysis.size(); ++j) {
      const Filter& a = bank.analysis[i];
      const Filter& b = bank.analysis[j];
      // sum_m a[m] b[m + N k] is nonzero only when the supports overlap
      const int k_lo = -((a.last_index() - b.first_index()) / n) - 1;
      const int k_hi = (b.last_index() - a.first_index()) / n + 1;
      for (int k = k_lo; k <= k_hi; ++k) {
        double acc = 0.0;
        for (int m = a.first_index(); m <= a.last_index(); ++m) acc += a.tap(m) * b.tap(m + n * k);
        const double expected = (i == j && k == 0) ? 1.0 : 0.0;
        report.max_residual = std::max(report.max_residual, std::abs(acc - expected));
      }
    }
  report.pass = !report.truncated && report.max_residual <= tolerance;
  return report;
}

}  // namespace mband
