#pragma once

#include <functional>

#include "hawkes/grid.hpp"

namespace hawkes {

/// Quadrature rule for grid convolutions. Rectangle is the production rule,
///   (f*g)[m] = tau * sum_{r=1..m} f[r] g[m+1-r],
/// which never reads node 0 of either operand. Trapezoid is the accuracy-study
/// variant, tau * sum_{r=0..m} w_r f[r] g[m-r] with half weights at the ends.
enum class ConvRule { rectangle, trapezoid };

/// Discrete convolution of matrix-valued grid functions (matrix product
/// inside the sum). Requires f.cols == g.rows and identical grids.
/// result[0] = 0.
GridFn conv(const GridFn& f, const GridFn& g, ConvRule rule = ConvRule::rectangle);

struct FundamentalSeriesOptions {
    int K = 0;                // exact number of terms; 0 means tolerance mode
    double tolerance = 1e-10; // stop when a term's sup norm drops below this
    int max_terms = 10000;
    ConvRule rule = ConvRule::rectangle;
};

/// Truncated series sum_{r=1..K} phi^{(*r)} sampled on the grid. The r = 0
/// identity-times-Dirac term is never discretized; callers expand
/// (sum_{r>=0} phi^{(*r)}) * g as g + psi * g.
struct FundamentalSeries {
    GridFn psi;
    int K = 0;
    bool converged = true;       // false when max_terms hit before tolerance
    double last_term_norm = 0.0; // sup norm of term K over the grid
    std::vector<double> last_term_entry_norm; // row-major, per-entry sup of term K
    std::vector<double> tail_estimate;        // row-major geometric tail bound
};

FundamentalSeries fundamental_series(const GridFn& phi,
                                     const FundamentalSeriesOptions& opts = {});

/// Convolution against the diagonal-lifted measure psi(u) delta_u(dv) du at a
/// single grid square point (m1 <= m2):
///   tau * sum_{r=1..m1} psi[r] * f2(m1 - r, m2 - r),
/// where f2 yields g.rows x c values and the matrix product is taken inside.
/// f2 is any callable (int, int) -> std::vector<double> of size psi.cols * c.
std::vector<double> diag_conv_point(const GridFn& psi,
                                    const std::function<std::vector<double>(int, int)>& f2,
                                    int f2_cols, int m1, int m2);

} // namespace hawkes
