#include "mband/transform.hpp"

#include <stdexcept>
#include <string>

namespace mband {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

long wrap(long i, long len) {
  i %= len;
  return i < 0 ? i + len : i;
}

}  // namespace

const char* boundary_name(Boundary b) { return b == Boundary::periodic ? "periodic" : "zero"; }

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "zero") return Boundary::zero;
  throw std::invalid_argument("unknown boundary mode '" + name + "'");
}

std::size_t TransformPyramid::coefficient_count() const {
  if (levels.empty()) return 0;
  std::size_t count = static_cast<std::size_t>(levels.back().approximation.size());
  for (const auto& level : levels)
    for (const auto& d : level.details) count += static_cast<std::size_t>(d.size());
  return count;
}

Signal analysis_step(const Signal& x, const Filter& h, Boundary boundary) {
  const int n = h.dilation;
  const long len = static_cast<long>(x.size());
  const long out_len = static_cast<long>(ceil_div(static_cast<std::size_t>(len), static_cast<std::size_t>(n)));
  Signal a = Signal::Zero(out_len);
  for (long k = 0; k < out_len; ++k) {
    double acc = 0.0;
    for (int i = 0; i < h.size(); ++i) {
      long idx = h.offset + i + n * k;
      if (boundary == Boundary::periodic)
        idx = wrap(idx, len);
      else if (idx < 0 || idx >= len)
        continue;
      acc += h.taps[static_cast<std::size_t>(i)] * x[idx];
    }
    a[k] = acc;
  }
  return a;
}

void synthesis_step(const Signal& c, const Filter& s, Boundary boundary, Signal& y) {
  const int n = s.dilation;
  const long len = static_cast<long>(y.size());
  for (long k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    for (int i = 0; i < s.size(); ++i) {
      long idx = s.offset + i + n * k;
      if (boundary == Boundary::periodic)
        idx = wrap(idx, len);
      else if (idx < 0 || idx >= len)
        continue;
      y[idx] += s.taps[static_cast<std::size_t>(i)] * c[k];
    }
  }
}

TransformPyramid analyze(const Signal& x, const FilterBank& bank, int levels, Boundary boundary, bool pad) {
  const int n = bank.dilation;
  if (levels < 1) throw std::invalid_argument("analyze: levels must be at least 1");
  if (bank.channels() != n) throw std::invalid_argument("analyze: bank must have N analysis filters");
  if (x.size() == 0) throw std::invalid_argument("analyze: empty signal");

  std::size_t block = 1;
  for (int l = 0; l < levels; ++l) block *= static_cast<std::size_t>(n);
  const auto len = static_cast<std::size_t>(x.size());

  Signal current = x;
  if (boundary == Boundary::periodic && len % block != 0) {
    if (!pad)
      throw std::invalid_argument("analyze: periodic length " + std::to_string(len) + " is not divisible by N^levels = " +
                                  std::to_string(block) + " (use padding)");
    current = Signal::Zero(static_cast<Eigen::Index>(ceil_div(len, block) * block));
    current.head(x.size()) = x;
  }
  if (block > static_cast<std::size_t>(current.size()))
    throw std::invalid_argument("analyze: " + std::to_string(levels) + " levels is too deep for length " +
                                std::to_string(len));

  TransformPyramid p;
  p.dilation = n;
  p.boundary = boundary;
  p.signal_length = len;
  p.bank = bank;
  for (int l = 0; l < levels; ++l) {
    TransformLevel level;
    level.input_length = static_cast<std::size_t>(current.size());
    level.approximation = analysis_step(current, bank.analysis[0], boundary);
    for (int i = 1; i < n; ++i)
      level.details.push_back(analysis_step(current, bank.analysis[static_cast<std::size_t>(i)], boundary));
    current = level.approximation;
    p.levels.push_back(std::move(level));
  }
  return p;
}

Signal synthesize(const TransformPyramid& p) {
  const int n = p.dilation;
  if (p.levels.empty()) throw std::invalid_argument("synthesize: empty pyramid");
  if (p.bank.dilation != n || static_cast<int>(p.bank.synthesis.size()) != n)
    throw std::invalid_argument("synthesize: pyramid and bank disagree on N");

  Signal current = p.levels.back().approximation;
  for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
    const std::size_t expected = ceil_div(it->input_length, static_cast<std::size_t>(n));
    if (static_cast<std::size_t>(current.size()) != expected || static_cast<int>(it->details.size()) != n - 1)
      throw std::invalid_argument("synthesize: inconsistent pyramid shapes");
    Signal y = Signal::Zero(static_cast<Eigen::Index>(it->input_length));
    synthesis_step(current, p.bank.synthesis[0], p.boundary, y);
    for (int i = 1; i < n; ++i) {
      const Signal& d = it->details[static_cast<std::size_t>(i - 1)];
      if (static_cast<std::size_t>(d.size()) != expected) throw std::invalid_argument("synthesize: inconsistent detail length");
      synthesis_step(d, p.bank.synthesis[static_cast<std::size_t>(i)], p.boundary, y);
    }
    current = std::move(y);
  }
  if (static_cast<std::size_t>(current.size()) < p.signal_length)
    throw std::invalid_argument("synthesize: pyramid shorter than the recorded signal length");
  return current.head(static_cast<Eigen::Index>(p.signal_length));
}

Signal upsample(const Signal& y, int n) {
  if (n < 1) throw std::invalid_argument("upsample: factor must be positive");
  Signal out = Signal::Zero(y.size() * n);
  for (Eigen::Index i = 0; i < y.size(); ++i) out[i * n] = y[i];
  return out;
}

Signal downsample(const Signal& y, int n) {
  if (n < 1) throw std::invalid_argument("downsample: factor must be positive");
  Signal out((y.size() + n - 1) / n);
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = y[i * n];
  return out;
}

}  // namespace mband
