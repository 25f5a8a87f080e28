#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mband/cascade.hpp"

using namespace mband;

namespace {

double hat(double x) { return std::max(0.0, 1.0 - std::abs(x)); }

double quadratic(double x) {
  if (x <= -1 || x >= 2) return 0.0;
  if (x <= 0) return (x + 1) * (x + 1) / 2;
  if (x <= 1) return 0.75 - (x - 0.5) * (x - 0.5);
  return (x - 2) * (x - 2) / 2;
}

double max_error(const RenderedFunction& f, double (*exact)(double)) {
  double worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f.values[i] - exact(f.x(i))));
  return worst;
}

}  // namespace

TEST_CASE("linear and quadratic splines from the cascade") {
  const RenderedFunction p1 = cascade_render(bspline_filter(1, 3), 6);
  CHECK(p1.step() == doctest::Approx(1.0 / 729));
  CHECK(p1.support_begin == Rational(-1));
  CHECK(p1.support_end == Rational(1));
  CHECK(max_error(p1, hat) < 1e-6);

  const RenderedFunction p2 = cascade_render(bspline_filter(2, 3), 6);
  CHECK(p2.support_begin == Rational(-1));
  CHECK(p2.support_end == Rational(2));
  CHECK(max_error(p2, quadratic) < 1e-6);
  CHECK(p2(0.5) == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("haar start converges more slowly") {
  const RenderedFunction p = cascade_render(bspline_filter(2, 3), 6, CascadeStart::haar_indicator);
  const double err = max_error(p, quadratic);
  CHECK(err > 1e-6);
  CHECK(err < 1e-2);
}

TEST_CASE("haar scaling function is the unit indicator") {
  for (int n = 2; n <= 4; ++n)
    for (auto start : {CascadeStart::integer_samples, CascadeStart::haar_indicator}) {
      const RenderedFunction p = cascade_render(haar_filter(n), 3, start);
      CHECK(p.first_index == 0);
      CHECK(static_cast<long>(p.size()) == n * n * n);
      for (double v : p.values) CHECK(v == 1.0);
    }
  CHECK_THROWS_AS(cascade_render(haar_filter(2), 0), std::invalid_argument);
}

TEST_CASE("refinement residual") {
  const RenderedFunction hat_samples = sample_function(hat, 3, 5, Rational(-1), Rational(1));
  CHECK(refinement_residual(bspline_filter(1, 3), hat_samples) < 1e-12);
  const RenderedFunction q_samples = sample_function(quadratic, 3, 5, Rational(-1), Rational(2));
  CHECK(refinement_residual(bspline_filter(2, 3), q_samples) < 1e-12);
  for (int n = 2; n <= 4; ++n) {
    const RenderedFunction h2 = sample_function(hat, n, 4, Rational(-1), Rational(1));
    CHECK(refinement_residual(bspline_general_rule(n), h2) < 1e-12);
  }

  Filter bogus = make_exact_filter(3, -1, {Rational(1), Rational(1), Rational(1)}, Family::custom);
  CHECK(refinement_residual(bogus, hat_samples) > 0.01);
  CHECK_THROWS_AS(refinement_residual(bspline_filter(1, 2), hat_samples), std::invalid_argument);
}

TEST_CASE("cascade residual shrinks with depth from the haar start") {
  for (int degree = 1; degree <= 3; ++degree)
    for (int n = 2; n <= 4; ++n) {
      const Filter f = bspline_filter(degree, n);
      double prev = 1e9;
      for (int depth = 2; depth <= 5; ++depth) {
        const double r = refinement_residual(f, cascade_render(f, depth, CascadeStart::haar_indicator));
        CHECK(r <= prev * 1.0001 + 1e-15);
        prev = r;
      }
      // the integer-sample start is already a fixed point
      CHECK(refinement_residual(f, cascade_render(f, 4)) < 1e-12);
    }
}

TEST_CASE("partition of unity and support") {
  for (int degree = 0; degree <= 3; ++degree)
    for (int n = 2; n <= 4; ++n) {
      const Filter f = bspline_filter(degree, n);
      const RenderedFunction p = cascade_render(f, 4);
      const long per_unit = static_cast<long>(std::lround(1.0 / p.step()));
      for (long m = 0; m < per_unit; ++m) {
        double s = 0;
        for (long k = -10; k <= 10; ++k) s += p.at_index(m + k * per_unit);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
      }
      const double length = (p.last_index() - p.first_index) * p.step();
      CHECK(length <= (f.size() - 1.0) / (n - 1) + p.step());
    }
}

TEST_CASE("haar wavelets") {
  const RenderedFunction w = wavelet_render(haar_bank(3), 1, 4);
  const double a = std::sqrt(1.5);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = w.x(i);
    const double expected = x < 1.0 / 3 ? a : x < 2.0 / 3 ? -a : 0.0;
    CHECK(w.values[i] == doctest::Approx(expected).epsilon(1e-14));
  }
  const RenderedFunction h = wavelet_render(haar_bank(2), 1, 5);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = h.x(i);
    CHECK(h.values[i] == doctest::Approx(x < 0.5 ? 1.0 : x < 1.0 ? -1.0 : 0.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(wavelet_render(haar_bank(3), 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_render(haar_bank(3), 0, 4), std::invalid_argument);
}

TEST_CASE("shannon functions from the closed form") {
  const RenderedFunction phi = cascade_render(shannon_filter(2, 32), 3);
  CHECK(phi(0.0) == 1.0);
  CHECK(std::abs(phi(1.0)) < 1e-15);
  CHECK(phi(0.5) == doctest::Approx(2 / std::numbers::pi));

  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k < n; ++k) {
      const RenderedFunction psi = wavelet_render(shannon_bank(n, 128), k, 3);
      double worst = 0;
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = psi.x(i);
        if (std::abs(x) > 8) continue;
        const double exact =
            x == 0 ? 1.0 : (std::sin((k + 1) * std::numbers::pi * x) - std::sin(k * std::numbers::pi * x)) / (std::numbers::pi * x);
        worst = std::max(worst, std::abs(psi.values[i] - exact));
      }
      CHECK(worst < 1e-2);
    }
}

TEST_CASE("biorthogonal wavelets are finite and compactly supported") {
  const FilterBank b = bspline_bank(1, 3);
  for (int k = 1; k <= 2; ++k) {
    const RenderedFunction w = wavelet_render(b, k, 5);
    for (double v : w.values) CHECK(std::isfinite(v));
    CHECK(w.support_end - w.support_begin <= Rational(3));
  }
}
