#ifndef APLAB_QUADRATURE_HPP
#define APLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "aplab/core.hpp"

// Adaptive Gauss-Kronrod (G7/K15) integration over intervals and over
// window/domain intersections, with optional breakpoint and oscillation
// hints so that piecewise fields and trigonometric integrands refine where
// it matters.

namespace aplab {

struct QuadOptions {
  double rel_tol = 1e-6;
  double abs_tol = 1e-14;
  int max_depth = 40;
  long max_panels = 4'000'000;
  double osc_freq = 0.0;       // bound on |d phase / dt| (inner axis)
  double osc_freq_y = -1.0;    // outer-axis bound for iterated 2-D; < 0: use osc_freq
  double feature_scale = 0.0;  // smallest smooth feature width
  std::vector<double> breakpoints;    // pre-split locations (inner axis)
  std::vector<double> breakpoints_y;  // outer-axis splits for iterated 2-D
};

complexd integrate(const std::function<complexd(double)>& f, double a, double b,
                   const QuadOptions& opts = {});
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const QuadOptions& opts = {});

// Adaptive panel refinement that records the final nodes and weights, so the
// same sample set can be re-weighted repeatedly (Luxemburg bisection).
struct QuadSamples {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadSamples sample_interval(const std::function<double(double)>& refine_against, double a,
                            double b, const QuadOptions& opts = {});

// Integration of a scalar function of t over a window (n <= 2 for balls,
// n <= 3 for cubes on interval-product domains). Singular points raise
// nothing here; the evaluator is trusted to be finite a.e. and quadrature
// nodes avoid interval endpoints by construction (open Kronrod rules).
complexd integrate_window(const std::function<complexd(const Pt&)>& f, const Window& w,
                          const QuadOptions& opts = {});
double integrate_window_real(const std::function<double(const Pt&)>& f, const Window& w,
                             const QuadOptions& opts = {});

// Per-axis integration ranges of a window on an interval-product domain.
std::vector<AxisInterval> window_axis_bounds(const Window& w);

// Populates opts.breakpoints / osc_freq / feature_scale from a field's hints
// for integration along `axis` with the other coordinates fixed.
QuadOptions quad_options_for(const Field& f, double a, double b, int axis,
                             const QuadOptions& base = {});

// Same, but for a full window integral (fills both axes for n = 2).
QuadOptions window_quad_options(const Field& f, const Window& w, QuadOptions base = {});

}  // namespace aplab

#endif  // APLAB_QUADRATURE_HPP
