#pragma once

#include <vector>

#include "hawkes/model.hpp"

namespace hawkes {

struct LaplaceOptions {
    /// Exponent sign in the recursion terms exp(sign * a_j). The transform
    /// requires -1; +1 exists only as a negative-control hook for the
    /// validation suite (it drives values above 1, which the bound check must
    /// catch).
    double exponent_sign = -1.0;
};

/// Single-time transforms on the grid. base[j][m] approximates the transform
/// of the process ignited by one type-(j+1) event; full[m] is the process
/// driven by the baseline. a may have small negative entries (used by
/// finite-difference moment checks); the (0, 1] bounds hold for a >= 0.
struct Laplace1Result {
    Grid grid;
    std::vector<double> a;
    std::vector<std::vector<double>> base; // [d][M+1]
    std::vector<double> full;              // [M+1]
};

Laplace1Result laplace1(const ModelSpec& model, const std::vector<double>& a,
                        const Grid& grid, const LaplaceOptions& opts = {});

/// Two-time transforms along the band m2 - m1 = gap, evaluated with the
/// secondary-diagonal recursion. base[j][r] / full[r] hold the value at the
/// node pair (r, r + gap); storage stays O(M) per query.
struct Laplace2Band {
    Grid grid;
    int gap = 0;
    std::vector<double> a1, a2;
    std::vector<std::vector<double>> base; // [d][M-gap+1]
    std::vector<double> full;
};

Laplace2Band laplace2_band(const ModelSpec& model, const std::vector<double>& a1,
                           const std::vector<double>& a2, const Grid& grid, int gap,
                           const LaplaceOptions& opts = {});

/// Convenience point query (m1 <= m2): values for j' = 0..d, index 0 = full.
std::vector<double> laplace2_point(const ModelSpec& model, const std::vector<double>& a1,
                                   const std::vector<double>& a2, const Grid& grid, int m1,
                                   int m2, const LaplaceOptions& opts = {});

/// Piecewise-constant cost: value step(p) on (breakpoints[p-1], breakpoints[p]]
/// (breakpoints[-1] = 0), zero beyond the last breakpoint. Breakpoints must be
/// increasing and are snapped to grid nodes on evaluation.
struct StepCost {
    std::vector<double> breakpoints;      // size P, 0 < c_1 < ... < c_P <= T
    std::vector<std::vector<double>> steps; // P entries of d non-negative values
};

struct FunctionalLaplaceOptions {
    int max_segments = 16;
};

/// Functional transform S(psi, t) of a piecewise-constant cost on the grid,
/// the P-segment generalization of the two-time recursion; reduces exactly to
/// laplace1 for one segment spanning [0, T] and to laplace2 for two segments.
struct FunctionalLaplaceResult {
    Grid grid;
    std::vector<std::vector<double>> base; // [d][M+1]
    std::vector<double> full;
};

FunctionalLaplaceResult laplace_functional(const ModelSpec& model, const StepCost& cost,
                                           const Grid& grid,
                                           const FunctionalLaplaceOptions& opts = {});

/// Re-applies the single-time integral map to the given base arrays (Jacobi
/// sweeps) until the sup-norm change drops below tol, the iteration cap is
/// hit, or the change grows for three consecutive sweeps (reported as
/// divergence).
struct RefineResult {
    std::vector<std::vector<double>> base;
    std::vector<double> changes; // sup-norm change per iteration
    bool converged = false;
    bool diverged = false;
};

RefineResult fixed_point_refine(const std::vector<std::vector<double>>& initial_base,
                                const ModelSpec& model, const std::vector<double>& a,
                                const Grid& grid, int max_iterations, double tol = 1e-10,
                                const LaplaceOptions& opts = {});

} // namespace hawkes
