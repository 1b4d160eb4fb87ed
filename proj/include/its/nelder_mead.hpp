#pragma once

#include <functional>
#include <span>
#include <vector>

namespace its {

struct NelderMeadOptions {
  int max_iterations = 500;
  double f_tolerance = 1e-8;   // spread of objective values across the simplex
  double x_tolerance = 1e-7;   // max vertex distance from the best vertex
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Derivative-free minimization with the standard reflection / expansion /
// contraction / shrink coefficients (1, 2, 1/2, 1/2). Non-finite objective
// values are treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace its
