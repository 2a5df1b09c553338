#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hawkes/grid.hpp"

namespace hawkes {

// ---------------------------------------------------------------------------
// Baseline intensity families: lambda0_i(t), exogenous ignition rate.
// ---------------------------------------------------------------------------

struct ConstantBaseline {
    double level = 0.0; // >= 0
};

/// lambda0(t) = a + b * sin(c * t); requires a > 0 and a > |b| so the rate
/// stays strictly positive.
struct SinusoidalBaseline {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;
};

/// Piecewise-linear interpolation of samples on a uniform grid over
/// [0, t_end]; 0 beyond the last node.
struct TabulatedBaseline {
    double t_end = 1.0;
    std::vector<double> values; // >= 2 samples, all >= 0
};

struct ZeroBaseline {};

using BaselineSpec =
    std::variant<ConstantBaseline, SinusoidalBaseline, TabulatedBaseline, ZeroBaseline>;

// ---------------------------------------------------------------------------
// Excitation kernel families: phi(t), the intensity kicked off by one event.
// ---------------------------------------------------------------------------

/// phi(t) = alpha * exp(-beta t), total mass alpha / beta.
struct ExponentialKernel {
    double alpha = 0.0; // >= 0
    double beta = 1.0;  // > 0
};

/// phi(t) = w * t^{kappa-1} e^{-t/theta} / (Gamma(kappa) theta^kappa),
/// total mass w.
struct GammaKernel {
    double w = 0.0;     // >= 0
    double kappa = 1.0; // > 0
    double theta = 1.0; // > 0
};

/// phi(t) = w for all t >= 0 (infinite total mass when w > 0).
struct ConstantStepKernel {
    double w = 0.0; // >= 0
};

/// phi(t) = alpha * t^beta * (gamma - t)^rho for t <= gamma, 0 beyond.
/// beta >= 0 and rho > -1 keep the kernel finite at 0 and integrable at gamma.
struct BetaLikeKernel {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    double rho = 0.0;
};

struct TabulatedKernel {
    double t_end = 1.0;
    std::vector<double> values;
};

struct ZeroKernel {};

using KernelSpec = std::variant<ExponentialKernel, GammaKernel, ConstantStepKernel,
                                BetaLikeKernel, TabulatedKernel, ZeroKernel>;

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

/// A d-dimensional Hawkes model (lambda0, phi). excitation is row-major d x d;
/// entry (i, j) is the kernel felt by component i after an event in
/// component j.
struct ModelSpec {
    int d = 1;
    std::vector<BaselineSpec> baseline;  // size d
    std::vector<KernelSpec> excitation;  // size d*d, row-major

    const KernelSpec& kernel(int i, int j) const { return excitation[static_cast<std::size_t>(i) * d + j]; }
    KernelSpec& kernel(int i, int j) { return excitation[static_cast<std::size_t>(i) * d + j]; }
};

/// Throws std::invalid_argument when a parameter constraint is violated.
void validate(const BaselineSpec& spec);
void validate(const KernelSpec& spec);
void validate(const ModelSpec& model);

// Pointwise evaluation. t must be >= 0.
double eval_baseline(const BaselineSpec& spec, double t);
double eval_kernel(const KernelSpec& spec, double t);

/// Primitive Lambda0(t) = int_0^t lambda0(s) ds (analytic per family,
/// trapezoidal for tabulated).
double baseline_primitive(const BaselineSpec& spec, double t);

/// Primitive Phi(t) = int_0^t phi(s) ds. Analytic for exponential, gamma and
/// constant-step; numeric quadrature for beta-like and tabulated.
double kernel_primitive(const KernelSpec& spec, double t);

/// Total mass of the kernel, int_0^inf phi; +inf for non-integrable families.
double kernel_mass(const KernelSpec& spec);

/// Supremum of phi over lags in [lo, hi] (certified upper bound, used by the
/// thinning simulator). Requires 0 <= lo <= hi.
double kernel_sup(const KernelSpec& spec, double lo, double hi);

/// Lag beyond which phi stays below eps (may be +inf, e.g. constant step).
double kernel_support_cutoff(const KernelSpec& spec, double eps = 1e-12);

/// Supremum of the baseline over [0, inf).
double baseline_sup(const BaselineSpec& spec);

struct StabilityReport {
    double alpha_max = 0.0;       // max over entries of the kernel L1 mass
    double d_alpha = 0.0;         // d * alpha_max
    bool stable = false;          // d_alpha < 1 (sufficient condition)
    double spectral_radius = 0.0; // of the mass matrix, informational
};

/// Sufficient finite-moment condition d * max ||phi||_L1 < 1, plus the
/// spectral radius of the mass matrix as a sharper informational figure.
/// Advisory only; nothing downstream refuses unstable models.
StabilityReport stability_margin(const ModelSpec& model);

// Grid sampling -------------------------------------------------------------

/// values(m, i, j) = phi_ij(m tau). Node 0 entries that are not finite (gamma
/// kernels with kappa < 1 diverge at 0) are stored as 0; the quadrature rules
/// never read node 0 of a kernel sample.
GridFn sample_kernel_matrix(const ModelSpec& model, const Grid& grid);

/// values(m, i, j) = Phi_ij(m tau), accumulated per interval so tabulated and
/// beta-like kernels cost one panel per step.
GridFn sample_kernel_primitive(const ModelSpec& model, const Grid& grid);

GridFn sample_baseline(const ModelSpec& model, const Grid& grid);     // d x 1
GridFn sample_baseline_primitive(const ModelSpec& model, const Grid& grid);

} // namespace hawkes
