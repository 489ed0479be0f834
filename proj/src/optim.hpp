#pragma once

#include <functional>
#include <vector>

namespace vqb {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double diameter_tol = 1e-10;
  int max_iter = 400;
  double initial_step = 0.25;
};

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt = {});

// Deterministic coordinate pattern search: probes +-step along each axis,
// halving the step when no move improves. Robust at the kinks of piecewise
// smooth objectives where the simplex tends to stall.
OptimResult pattern_polish(const ObjectiveFn& f, const std::vector<double>& x0,
                           double step0 = 1e-3, double step_min = 1e-11);

}  // namespace vqb
