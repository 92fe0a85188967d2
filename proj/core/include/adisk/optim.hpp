#ifndef ADISK_OPTIM_HPP
#define ADISK_OPTIM_HPP

#include <functional>
#include <vector>

namespace adisk {

struct NelderMeadOptions {
  int max_evals = 4000;
  double init_step = 0.3;
  double xtol = 1e-9;
  double ftol = 1e-11;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
};

/// Downhill simplex minimization; deterministic for a fixed start point.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace adisk

#endif  // ADISK_OPTIM_HPP
