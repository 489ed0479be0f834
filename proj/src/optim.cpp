#include "optim.hpp"

#include <algorithm>
#include <cmath>

namespace vqb {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        const double diff = pts[i][k] - pts[j][k];
        s += diff * diff;
      }
      d = std::max(d, std::sqrt(s));
    }
  return d;
}

// (value, then lexicographic point) ordering keeps ties deterministic
bool better(double fa, const std::vector<double>& a, double fb,
            const std::vector<double>& b) {
  if (fa != fb) return fa < fb;
  return a < b;
}

}  // namespace

OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  auto order = [&]() {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return better(vals[a], pts[a], vals[b], pts[b]);
    });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  OptimResult res;
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    order();
    if (simplex_diameter(pts) < opt.diameter_tol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;

    auto along = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + coef * (centroid[k] - pts[n][k]);
      return x;
    };

    const std::vector<double> xr = along(opt.reflection);
    const double fr = f(xr);
    if (better(fr, xr, vals[0], pts[0])) {
      const std::vector<double> xe = along(opt.expansion);
      const double fe = f(xe);
      if (better(fe, xe, fr, xr)) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (better(fr, xr, vals[n - 1], pts[n - 1])) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }
    const bool outside = better(fr, xr, vals[n], pts[n]);
    const std::vector<double> xc = along(outside ? opt.contraction : -opt.contraction);
    const double fc = f(xc);
    if (better(fc, xc, outside ? fr : vals[n], outside ? xr : pts[n])) {
      pts[n] = xc;
      vals[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {  // shrink toward the best vertex
      for (std::size_t k = 0; k < n; ++k)
        pts[i][k] = pts[0][k] + opt.shrink * (pts[i][k] - pts[0][k]);
      vals[i] = f(pts[i]);
    }
  }
  order();
  res.x = pts[0];
  res.value = vals[0];
  res.iterations = iter;
  return res;
}

OptimResult pattern_polish(const ObjectiveFn& f, const std::vector<double>& x0,
                           double step0, double step_min) {
  OptimResult res;
  res.x = x0;
  res.value = f(x0);
  double step = step0;
  int iter = 0;
  while (step >= step_min) {
    bool improved = false;
    for (std::size_t k = 0; k < res.x.size(); ++k) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> x = res.x;
        x[k] += dir * step;
        const double v = f(x);
        ++iter;
        if (better(v, x, res.value, res.x)) {
          res.x = x;
          res.value = v;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  res.iterations = iter;
  res.converged = true;
  return res;
}

}  // namespace vqb
