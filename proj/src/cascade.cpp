#include "mband/cascade.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

#include "mband/laurent.hpp"

namespace mband {

namespace {

long ipow(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

long floor_div(const Rational& r) {
  BigInt q = r.numerator() / r.denominator();
  if (r.sign() < 0 && q * r.denominator() != r.numerator()) q -= 1;
  return q.convert_to<long>();
}

long ceil_div(const Rational& r) { return -floor_div(-r); }

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x); }

std::vector<double> scaled_taps(const Filter& f) {
  std::vector<double> r;
  if (f.taps_exact) {
    for (const auto& t : *f.taps_exact) r.push_back(t.to_double());
  } else {
    const double root = std::sqrt(static_cast<double>(f.dilation));
    for (double t : f.taps) r.push_back(t * root);
  }
  return r;
}

Rational support_begin(const Filter& f) { return Rational(BigInt(f.first_index()), BigInt(f.dilation - 1)); }
Rational support_end(const Filter& f) { return Rational(BigInt(f.last_index()), BigInt(f.dilation - 1)); }

// Values at the interior integers lo..hi solving v = T v, T[k][l] = r_{N k - l}.
std::optional<std::vector<double>> integer_values(const Filter& f, long lo, long hi) {
  const int m = static_cast<int>(hi - lo + 1);
  const int n = f.dilation;
  auto tap_index = [&](long k, long l) { return n * (lo + k) - (lo + l) - f.offset; };

  if (f.taps_exact) {
    // Rows of T - I, then replace rows by sum(v) = 1 until the system is solvable.
    RationalMatrix t = RationalMatrix::Constant(m, m, Rational(0));
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        const long idx = tap_index(k, l);
        if (idx >= 0 && idx < f.size()) t(k, l) = (*f.taps_exact)[static_cast<std::size_t>(idx)];
        if (k == l) t(k, l) -= Rational(1);
      }
    if (rank(t) != static_cast<std::size_t>(m - 1)) return std::nullopt;
    for (int drop = 0; drop < m; ++drop) {
      RationalMatrix sys = t;
      for (int l = 0; l < m; ++l) sys(drop, l) = Rational(1);
      RationalMatrix inv;
      try {
        inv = inverse(sys);
      } catch (const SingularMatrixError&) {
        continue;
      }
      std::vector<double> v;
      for (int k = 0; k < m; ++k) v.push_back(inv(k, drop).to_double());
      return v;
    }
    return std::nullopt;
  }

  const auto r = scaled_taps(f);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const long idx = tap_index(k, l);
      if (idx >= 0 && idx < f.size()) t(k, l) = r[static_cast<std::size_t>(idx)];
    }
  t -= Eigen::MatrixXd::Identity(m, m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  lu.setThreshold(1e-10);
  if (lu.dimensionOfKernel() != 1) return std::nullopt;
  Eigen::VectorXd v = lu.kernel().col(0);
  const double total = v.sum();
  if (std::abs(total) < 1e-12) return std::nullopt;
  v /= total;
  return std::vector<double>(v.data(), v.data() + v.size());
}

// phi on the N^{-depth} grid, depth >= 0.
RenderedFunction cascade_samples(const Filter& f, int depth, CascadeStart start) {
  const int n = f.dilation;
  RenderedFunction out;
  out.dilation = n;
  out.depth = depth;
  out.support_begin = support_begin(f);
  out.support_end = support_end(f);

  out.first_index = 0;
  out.values = {1.0};
  if (start == CascadeStart::integer_samples) {
    const long lo = floor_div(out.support_begin) + 1;
    const long hi = ceil_div(out.support_end) - 1;
    if (lo <= hi) {
      if (auto v = integer_values(f, lo, hi)) {
        out.first_index = lo;
        out.values = std::move(*v);
      }
    }
  }

  const auto r = scaled_taps(f);
  for (int k = 0; k < depth; ++k) {
    const long stride = ipow(n, k);
    const long lo = out.first_index + f.first_index() * stride;
    const long hi = out.last_index() + f.last_index() * stride;
    std::vector<double> next(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (long m = lo; m <= hi; ++m) {
      double acc = 0.0;
      for (int i = 0; i < f.size(); ++i) acc += r[static_cast<std::size_t>(i)] * out.at_index(m - (f.offset + i) * stride);
      next[static_cast<std::size_t>(m - lo)] = acc;
    }
    out.first_index = lo;
    out.values = std::move(next);
  }
  out.depth = depth;
  return out;
}

}  // namespace

double RenderedFunction::step() const { return 1.0 / static_cast<double>(ipow(dilation, depth)); }

double RenderedFunction::x(std::size_t i) const {
  return static_cast<double>(first_index + static_cast<long>(i)) * step();
}

double RenderedFunction::at_index(long m) const {
  if (m < first_index || m > last_index()) return 0.0;
  return values[static_cast<std::size_t>(m - first_index)];
}

double RenderedFunction::operator()(double xv) const {
  const double pos = xv / step();
  const long below = static_cast<long>(std::floor(pos));
  const double frac = pos - static_cast<double>(below);
  return (1.0 - frac) * at_index(below) + frac * at_index(below + 1);
}

RenderedFunction sample_function(const std::function<double(double)>& fn, int dilation, int depth,
                                 const Rational& begin, const Rational& end) {
  RenderedFunction out;
  out.dilation = dilation;
  out.depth = depth;
  out.support_begin = begin;
  out.support_end = end;
  const long scale = ipow(dilation, depth);
  out.first_index = ceil_div(begin * Rational(scale));
  const long last = floor_div(end * Rational(scale));
  for (long m = out.first_index; m <= last; ++m) out.values.push_back(fn(static_cast<double>(m) / static_cast<double>(scale)));
  return out;
}

RenderedFunction cascade_render(const Filter& f, int depth, CascadeStart start) {
  if (depth < 1) throw std::invalid_argument("cascade_render: depth must be at least 1");
  if (f.taps.empty()) throw std::invalid_argument("cascade_render: empty filter");
  if (f.family == Family::shannon) return sample_function(sinc, f.dilation, depth, support_begin(f), support_end(f));
  return cascade_samples(f, depth, start);
}

RenderedFunction wavelet_render(const FilterBank& bank, int channel, int depth, CascadeStart start) {
  const int n = bank.dilation;
  if (channel < 1 || channel >= n)
    throw std::invalid_argument("wavelet_render: channel must be in 1.." + std::to_string(n - 1));
  if (depth < 1) throw std::invalid_argument("wavelet_render: depth must be at least 1");
  const Filter& g = bank.analysis[static_cast<std::size_t>(channel)];
  const Filter& h = bank.analysis[0];
  const auto r = scaled_taps(g);
  const long stride = ipow(n, depth - 1);

  // psi(m / N^J) = sum_n r_n phi((m - n N^{J-1}) / N^{J-1})
  std::function<double(long)> phi;
  RenderedFunction coarse;
  if (h.family == Family::shannon) {
    phi = [stride](long idx) { return sinc(static_cast<double>(idx) / static_cast<double>(stride)); };
  } else {
    coarse = cascade_samples(h, depth - 1, start);
    phi = [&coarse](long idx) { return coarse.at_index(idx); };
  }

  RenderedFunction out;
  out.dilation = n;
  out.depth = depth;
  // psi lives on (support(phi) + [first(g), last(g)]) / N
  out.support_begin = (support_begin(h) + Rational(g.first_index())) / Rational(n);
  out.support_end = (support_end(h) + Rational(g.last_index())) / Rational(n);
  const long scale = stride * n;
  out.first_index = ceil_div(out.support_begin * Rational(scale));
  const long last = floor_div(out.support_end * Rational(scale));
  for (long m = out.first_index; m <= last; ++m) {
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i) acc += r[static_cast<std::size_t>(i)] * phi(m - (g.offset + i) * stride);
    out.values.push_back(acc);
  }
  return out;
}

double refinement_residual(const Filter& f, const RenderedFunction& phi) {
  if (phi.dilation != f.dilation) throw std::invalid_argument("refinement_residual: dilation mismatch");
  if (phi.depth < 1) throw std::invalid_argument("refinement_residual: grid is not refinable by N");
  const auto r = scaled_taps(f);
  const long full = ipow(f.dilation, phi.depth);
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const long m = phi.first_index + static_cast<long>(i);
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) acc += r[static_cast<std::size_t>(j)] * phi.at_index(f.dilation * m - (f.offset + j) * full);
    worst = std::max(worst, std::abs(phi.values[i] - acc));
  }
  return worst;
}

}  // namespace mband
