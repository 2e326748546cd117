#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "isospec/metrics.hpp"

namespace isospec {

// Numerical probe of the first nontrivial heat invariant: the total scalar
// curvature. Isospectral metrics must agree on it, so the Monte Carlo
// estimates for the two family members have to match within noise.

struct CurvatureSample {
    RVector x;        // chart coordinates the curvature was evaluated at
    double scal = 0.0;
    double det_g = 0.0; // det of the chart Gram at x
    int pivot = 0;      // which homogeneous coordinate the chart divides by
};

struct MCEstimate {
    double value = 0.0;     // estimate of integral of scal over (CP^n, g)
    double std_error = 0.0;
    int n_samples = 0;
    std::uint64_t seed = 0;
    int resamples = 0;      // draws retried after a failed curvature solve
};

using MetricField = std::function<RMatrix(const RVector&)>;

// Gram of the deformed metric in the affine chart through homogeneous
// coordinate `pivot` (chart point w -> [..., 1 at pivot, ...]). Coordinates
// are interleaved (Re w_0, Im w_0, ...). Chart directions are lifted to
// Hopf-horizontal sphere vectors along the unit section.
RMatrix chart_metric(const MetricSpec& spec, const RVector& x, int pivot = 0);

// Scalar curvature of the metric field at x by central finite differences
// (curvature from g, dg, ddg via Christoffel symbols). Throws NumericalError
// when the Gram is ill-conditioned.
double scalar_curvature_fd(const MetricField& g, const RVector& x, double h = 1e-3);
double scalar_curvature_fd(const MetricSpec& spec, const RVector& x, double h = 1e-3);

// Monte Carlo integral of scalar curvature over (CP^n, g_eta). Sampling is
// uniform on S^{2n+1} (which pushes to the Fubini-Study volume; the deformed
// volume element equals the FS one), scaled by vol(CP^n) = pi^n / n!.
// Samples whose representative is close to the chart boundary (|p_pivot| <
// 0.05) are evaluated in the chart of their largest coordinate instead.
// Per-sample RNG streams plus a pairwise reduction make the result
// independent of the worker count.
MCEstimate total_scalar_curvature_mc(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                                     std::vector<CurvatureSample>* dump = nullptr);

} // namespace isospec
