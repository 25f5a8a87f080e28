#pragma once

#include <functional>
#include <vector>

#include "mband/bank.hpp"
#include "mband/filters.hpp"
#include "mband/rational.hpp"

namespace mband {

enum class CascadeStart {
  /// Exact values at the integers: the eigenvector of the refinement operator
  /// restricted to the interior integers, summing to one. Falls back to the
  /// Haar indicator when it is not unique.
  integer_samples,
  /// Indicator of [0,1), the textbook start.
  haar_indicator,
};

/// Samples f(m / N^depth) for m = first_index .. first_index + size - 1.
struct RenderedFunction {
  int dilation = 2;
  int depth = 0;
  long first_index = 0;
  std::vector<double> values;
  Rational support_begin{0};
  Rational support_end{0};

  std::size_t size() const { return values.size(); }
  long last_index() const { return first_index + static_cast<long>(values.size()) - 1; }
  double step() const;
  double x(std::size_t i) const;
  /// Sample at grid index m, zero outside the stored range.
  double at_index(long m) const;
  /// Linear interpolation between grid samples, zero outside.
  double operator()(double x) const;
};

/// Renders the scaling function of f on the N^{-depth} grid by iterating
/// phi <- sum_n sqrt(N) h_n phi(N . - n). Shannon filters use sin(pi x)/(pi x).
RenderedFunction cascade_render(const Filter& f, int depth, CascadeStart start = CascadeStart::integer_samples);

/// psi^channel(x) = sum_n sqrt(N) g_n phi(N x - n) with the analysis filters.
RenderedFunction wavelet_render(const FilterBank& bank, int channel, int depth,
                                CascadeStart start = CascadeStart::integer_samples);

/// Tabulates fn on the N^{-depth} grid over [begin, end].
RenderedFunction sample_function(const std::function<double(double)>& fn, int dilation, int depth,
                                 const Rational& begin, const Rational& end);

/// max_m |phi(x_m) - sum_n sqrt(N) h_n phi(N x_m - n)| over the grid of phi.
double refinement_residual(const Filter& f, const RenderedFunction& phi);

}  // namespace mband
