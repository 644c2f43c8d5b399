// Deterministic numerical engine on the unit square: composite midpoint
// integration with dyadic refinement gaps, supremum search with one local
// refinement pass, Aitken-extrapolated one-sided diagonal limits, and
// finite-difference partial-derivative fields.
//
// This engine is the independent oracle against which every closed form in
// the library is checked, so error reporting is favored over speed: every
// integral carries its own convergence gap.

#pragma once

#include <functional>
#include <vector>

#include "copula/copula.hpp"

namespace copula {

struct QuadratureConfig {
    int n = 512;            // base resolution per axis
    int refine_levels = 2;  // extra dyadic refinements for the gap sequence
    double tolerance = 1e-4;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;  // midpoint estimate at the base resolution n
    double gap = 0.0;    // |I_n - I_{2n}|
    bool converged = true;
    // I at n, 2n, ..., n*2^refine_levels.
    std::vector<double> estimates;
};

/// Composite midpoint rule at resolution n with refine_levels dyadic
/// refinements. Summation is row-major pairwise, so the result is bitwise
/// independent of any internal partitioning. Throws if f is non-finite at
/// a node, naming the node.
IntegralResult integrate(const std::function<double(double, double)>& f,
                         const QuadratureConfig& cfg);

/// Max of |f| over the midpoint grid, tightened by one fine-grid pass on a
/// 3/n neighborhood of the argmax. Copula differences are 1-Lipschitz per
/// argument, so the returned value is a lower bound on the true sup within
/// 2/n_refined.
double sup_abs(const std::function<double(double, double)>& f,
               const QuadratureConfig& cfg);

enum class LimitSide { ZeroPlus, OneMinus };

struct LimitResult {
    double value = 0.0;
    double gap = 0.0;  // |g(t_last) - extrapolated value|
    bool converged = true;
};

/// One-sided limit of g at 0+ or 1-, via Aitken delta-squared on the dyadic
/// sequence t_k = 2^{-k} (resp. 1 - 2^{-k}), k = 6..20. Flags
/// non-convergence when successive extrapolants oscillate by more than 1e-3.
LimitResult diagonal_limit(const std::function<double(double)>& g, LimitSide side);

/// Scalar field tabulated at midpoints ((i+1/2)/n, (j+1/2)/n), row-major.
struct GridField {
    int n = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

enum class Axis { First, Second };

/// Central finite differences of C along one axis at grid midpoints,
/// stencil width 1/n, clamped to [0,1] (copula partials lie in [0,1]).
GridField partial_derivative_field(const Copula& c, Axis axis, int n);

}  // namespace copula
