#pragma once

#include <vector>

#include "hawkes/moments.hpp"

namespace hawkes {

/// Precomputed ingredients for the two-time covariance solution:
///   C^{j'}_{k,l}(t1, t2) = tau * sum_{r=1..m1} sum_j w^{j'}_j[r]
///                          * E(m1-r, k, j) * E(m2-r, l, j)
/// where E(m, k, j) = delta_{kj} + M_base(m, k, j) and the igniter weight
/// w^{j'}_j is column j' of psi for base processes (j' = 1..d) or the full
/// intensity m_full for j' = 0.
struct CovContext {
    Grid grid;
    int d = 0;
    GridFn psi; // d x d
    GridFn h;   // d x 1 full intensity lambda0 + psi * lambda0
    GridFn E;   // d x d identity-plus-base-mean
};

CovContext make_cov_context(const ModelSpec& model, const FundamentalSeries& series,
                            const MomentTable& moments);

/// R~^j_{k,l}(u, v) = (delta_{jk} + M_base(u, k, j)) (delta_{jl} + M_base(v, l, j)).
double rhs_R(const CovContext& ctx, int j, int k, int l, int mu, int mv);

/// Covariance along the band m2 - m1 = gap; out[m1] = C^{igniter}_{k,l}(m1, m1+gap).
/// igniter 0 is the full process, 1..d the base processes. Components k, l are
/// 0-based.
std::vector<double> cov_band(const CovContext& ctx, int igniter, int k, int l, int gap);

/// Single point; m1 > m2 is resolved through C_{k,l}(t1,t2) = C_{l,k}(t2,t1).
double cov_point(const CovContext& ctx, int igniter, int k, int l, int m1, int m2);

/// Lower-triangular (m1 <= m2) two-time block for one igniter and pair.
struct TwoTimeTable {
    Grid grid;
    int igniter = 0, k = 0, l = 0;
    std::vector<double> tri; // index m2*(m2+1)/2 + m1

    double at(int m1, int m2) const {
        return tri[static_cast<std::size_t>(m2) * (m2 + 1) / 2 + m1];
    }
};

TwoTimeTable cov_table(const CovContext& ctx, int igniter, int k, int l);

/// Single-time covariance matrices C^{igniter}(t) on the grid, computed by the
/// one-time convolution route (independent of the band evaluation).
GridFn single_time_cov(const CovContext& ctx, int igniter,
                       ConvRule rule = ConvRule::rectangle);

/// Lebesgue decomposition of the covariance measure for one igniter and pair:
/// density s of the diagonal singular part and density a of the absolutely
/// continuous part on the grid square.
struct DecompositionTable {
    Grid grid;
    int igniter = 0, k = 0, l = 0;
    std::vector<double> singular; // s(m tau), size M+1
    std::vector<double> ac;       // a(u, v) row-major, (M+1)^2

    double ac_at(int mu, int mv) const {
        return ac[static_cast<std::size_t>(mu) * (grid.M + 1) + mv];
    }
};

DecompositionTable decompose(const CovContext& ctx, int igniter, int k, int l);

/// Correlation surface rho_{k,l}(t1, t2) on the full grid square; nodes where
/// either variance vanishes are NaN.
struct CorrelationSurface {
    Grid grid;
    int igniter = 0, k = 0, l = 0;
    std::vector<double> rho; // row-major (M+1)^2

    double at(int m1, int m2) const {
        return rho[static_cast<std::size_t>(m1) * (grid.M + 1) + m2];
    }
};

CorrelationSurface correlation_surface(const CovContext& ctx, int igniter, int k, int l);

} // namespace hawkes
