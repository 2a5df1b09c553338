#pragma once

#include "hawkes/convolve.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

/// First-order moments on a grid. Base columns: entry (k, j') of m_base /
/// M_base is the intensity / mean of component k of the process ignited by a
/// single type-j' event. m_full / M_full are the d-vectors for the process
/// driven by the baseline.
struct MomentTable {
    Grid grid;
    GridFn m_base; // d x d, equals the fundamental series psi
    GridFn M_base; // d x d, Phi + psi * Phi
    GridFn m_full; // d x 1, lambda0 + psi * lambda0
    GridFn M_full; // d x 1, Lambda0 + psi * Lambda0
};

struct BaseMoments {
    GridFn m_base;
    GridFn M_base;
};

struct FullMoments {
    GridFn m_full;
    GridFn M_full;
};

BaseMoments base_moments(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule = ConvRule::rectangle);
FullMoments full_moments(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule = ConvRule::rectangle);

/// Convenience: both of the above in one table.
MomentTable moment_table(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule = ConvRule::rectangle);

/// Column-normalized base intensities, ratio(m, j, j') =
/// m_base(m, j, j') / sum_i m_base(m, i, j'). Nodes with zero column sum are
/// NaN (null marker).
GridFn intensity_ratios(const GridFn& m_base);

} // namespace hawkes
