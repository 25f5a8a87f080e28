#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "mband/laurent.hpp"
#include "mband/rational.hpp"

namespace mband {

enum class Family { haar, shannon, bspline, custom };

const char* family_name(Family f);
Family parse_family(const std::string& name);

/// Finite tap sequence h_n, n = offset .. offset + size - 1, for dilation N.
///
/// `taps_exact`, when present, holds sqrt(N) * h_n as exact rationals, so the
/// true tap is taps_exact[i] / sqrt(N).
struct Filter {
  int dilation = 2;
  int offset = 0;
  std::vector<double> taps;
  std::optional<std::vector<Rational>> taps_exact;
  Family family = Family::custom;

  int size() const { return static_cast<int>(taps.size()); }
  int first_index() const { return offset; }
  int last_index() const { return offset + size() - 1; }
  /// h_n, zero outside the support.
  double tap(int n) const;
  bool is_exact() const { return taps_exact.has_value(); }
};

/// H(z) = (1/sqrt(N)) sum_n h_n z^n, evaluated on the unit circle with z = e^{-i omega}.
struct FrequencyFunction {
  int dilation = 2;
  std::optional<RationalPoly> exact;
  LaurentPoly<double> approx;

  std::complex<double> at_z(std::complex<double> z) const { return evaluate(approx, z); }
  std::complex<double> operator()(double omega) const;
};

/// Builds a filter from sqrt(N)-scaled exact taps r_n, taps h_n = r_n / sqrt(N).
Filter make_exact_filter(int dilation, int offset, std::vector<Rational> scaled_taps, Family family);
/// Filter whose frequency function is H; the taps are N * [z^n]H / sqrt(N).
Filter filter_from_frequency(const RationalPoly& h, int dilation, Family family);

Filter haar_filter(int n);

/// Truncated ideal lowpass, h_n = sqrt(N) sin(pi n / N) / (pi n) for |n| <= half_width.
/// The tail decays like 1/n, so the truncated filter never satisfies the
/// scaling conditions exactly.
Filter shannon_filter(int n, int half_width);

inline constexpr int default_max_bspline_degree = 8;

/// B-spline scaling filter by enumerating the multi-indices of |alpha| = degree + 1
/// over N parts. Odd degrees are centred on 0, even degrees on 1/2.
Filter bspline_filter(int degree, int n, int max_degree = default_max_bspline_degree);

/// Closed form for degree 1: sqrt(N) h_n = (N - |n|) / N.
Filter bspline_general_rule(int n);

FrequencyFunction frequency_function(const Filter& f);

}  // namespace mband
