#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "mband/bank.hpp"

namespace mband {

enum class Boundary { periodic, zero };

const char* boundary_name(Boundary b);
Boundary parse_boundary(const std::string& name);

using Signal = Eigen::VectorXd;

struct TransformLevel {
  std::size_t input_length = 0;  // length of the approximation this level split
  Signal approximation;
  std::vector<Signal> details;  // channels 1..N-1
};

/// levels[0] is the finest split.
struct TransformPyramid {
  int dilation = 2;
  Boundary boundary = Boundary::periodic;
  std::size_t signal_length = 0;  // before padding
  std::vector<TransformLevel> levels;
  FilterBank bank;

  int depth() const { return static_cast<int>(levels.size()); }
  /// Final approximation plus every detail channel.
  std::size_t coefficient_count() const;
};

/// Multi-level analysis. In periodic mode the length must be divisible by
/// N^levels unless `pad` is set, in which case zeros are appended.
TransformPyramid analyze(const Signal& x, const FilterBank& bank, int levels, Boundary boundary = Boundary::periodic,
                         bool pad = false);

/// Inverse of analyze, using the final approximation and all details.
Signal synthesize(const TransformPyramid& p);

/// One analysis step with a single filter: a_k = sum_n h_n x[n + N k].
Signal analysis_step(const Signal& x, const Filter& h, Boundary boundary);
/// Adds sum_k s_{n - N k} c_k into y.
void synthesis_step(const Signal& c, const Filter& s, Boundary boundary, Signal& y);

Signal upsample(const Signal& y, int n);
Signal downsample(const Signal& y, int n);

}  // namespace mband
