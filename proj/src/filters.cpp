#include "mband/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mband {

namespace {

void require_dilation(int n) {
  if (n < 2) throw std::invalid_argument("dilation N must be at least 2, got " + std::to_string(n));
}

// Calls visit(alpha) for every alpha in N^parts with sum(alpha) == total.
template <typename Visit>
void for_each_composition(int total, int parts, std::vector<int>& alpha, int index, Visit&& visit) {
  if (index == parts - 1) {
    alpha[static_cast<std::size_t>(index)] = total;
    visit(alpha);
    return;
  }
  for (int a = total; a >= 0; --a) {
    alpha[static_cast<std::size_t>(index)] = a;
    for_each_composition(total - a, parts, alpha, index + 1, visit);
  }
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::haar: return "haar";
    case Family::shannon: return "shannon";
    case Family::bspline: return "bspline";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family parse_family(const std::string& name) {
  if (name == "haar") return Family::haar;
  if (name == "shannon") return Family::shannon;
  if (name == "bspline") return Family::bspline;
  if (name == "custom") return Family::custom;
  throw std::invalid_argument("unknown filter family '" + name + "'");
}

double Filter::tap(int n) const {
  if (n < offset || n > last_index()) return 0.0;
  return taps[static_cast<std::size_t>(n - offset)];
}

std::complex<double> FrequencyFunction::operator()(double omega) const {
  return at_z(std::polar(1.0, -omega));
}

Filter make_exact_filter(int dilation, int offset, std::vector<Rational> scaled_taps, Family family) {
  require_dilation(dilation);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dilation));
  Filter f;
  f.dilation = dilation;
  f.offset = offset;
  f.family = family;
  f.taps.reserve(scaled_taps.size());
  for (const auto& r : scaled_taps) f.taps.push_back(r.to_double() * inv_sqrt);
  f.taps_exact = std::move(scaled_taps);
  return f;
}

Filter filter_from_frequency(const RationalPoly& h, int dilation, Family family) {
  if (h.is_zero()) throw std::invalid_argument("filter_from_frequency: zero polynomial");
  std::vector<Rational> r = h.dense();
  for (auto& c : r) c *= Rational(dilation);
  return make_exact_filter(dilation, h.min_exponent(), std::move(r), family);
}

Filter haar_filter(int n) {
  require_dilation(n);
  return make_exact_filter(n, 0, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Family::haar);
}

Filter shannon_filter(int n, int half_width) {
  require_dilation(n);
  if (half_width < 1) throw std::invalid_argument("shannon_filter: half_width must be at least 1");
  const double root = std::sqrt(static_cast<double>(n));
  Filter f;
  f.dilation = n;
  f.offset = -half_width;
  f.family = Family::shannon;
  for (int k = -half_width; k <= half_width; ++k) {
    if (k == 0) {
      f.taps.push_back(1.0 / root);
    } else if (k % n == 0) {
      f.taps.push_back(0.0);
    } else {
      const double x = std::numbers::pi * k;
      f.taps.push_back(root * std::sin(x / n) / x);
    }
  }
  return f;
}

Filter bspline_filter(int degree, int n, int max_degree) {
  require_dilation(n);
  if (degree < 0) throw std::invalid_argument("bspline_filter: negative degree");
  if (degree > max_degree)
    throw std::invalid_argument("bspline_filter: degree " + std::to_string(degree) + " exceeds the maximum " +
                                std::to_string(max_degree));
  const int order = degree + 1;
  const int shift = degree % 2 == 1 ? (n - 1) * order / 2 : (n - 1) * degree / 2;
  const int length = (n - 1) * order + 1;

  std::vector<BigInt> factorial(static_cast<std::size_t>(order) + 1, BigInt(1));
  for (int i = 1; i <= order; ++i) factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i) - 1] * i;

  std::vector<BigInt> counts(static_cast<std::size_t>(length), BigInt(0));
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  for_each_composition(order, n, alpha, 0, [&](const std::vector<int>& a) {
    BigInt multinomial = factorial[static_cast<std::size_t>(order)];
    int index = 0;
    for (int j = 0; j < n; ++j) {
      multinomial /= factorial[static_cast<std::size_t>(a[static_cast<std::size_t>(j)])];
      index += j * a[static_cast<std::size_t>(j)];
    }
    counts[static_cast<std::size_t>(index)] += multinomial;
  });

  BigInt scale = 1;
  for (int i = 0; i < degree; ++i) scale *= n;
  std::vector<Rational> r;
  r.reserve(counts.size());
  for (const auto& c : counts) r.emplace_back(c, scale);
  return make_exact_filter(n, -shift, std::move(r), Family::bspline);
}

Filter bspline_general_rule(int n) {
  require_dilation(n);
  std::vector<Rational> r;
  for (int k = -(n - 1); k <= n - 1; ++k) r.emplace_back(BigInt(n - std::abs(k)), BigInt(n));
  return make_exact_filter(n, -(n - 1), std::move(r), Family::bspline);
}

FrequencyFunction frequency_function(const Filter& f) {
  if (f.taps.empty()) throw std::invalid_argument("frequency_function: empty filter");
  FrequencyFunction out;
  out.dilation = f.dilation;
  if (!f.taps_exact) {
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(f.dilation));
    for (int i = 0; i < f.size(); ++i) out.approx.add_to(f.offset + i, f.taps[static_cast<std::size_t>(i)] * inv_sqrt);
  } else {
    RationalPoly h;
    const Rational inv_n(BigInt(1), BigInt(f.dilation));
    for (std::size_t i = 0; i < f.taps_exact->size(); ++i)
      h.add_to(f.offset + static_cast<int>(i), (*f.taps_exact)[i] * inv_n);
    out.approx = to_double(h);
    out.exact = std::move(h);
  }
  return out;
}

}  // namespace mband
