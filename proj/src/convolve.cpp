#include "hawkes/convolve.hpp"

#include <cmath>
#include <stdexcept>

#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

// C[m] += w * A[ma] * B[mb] with A: p x q, B: q x s.
inline void axpy_matmul(std::vector<double>& out, std::size_t om, const GridFn& A, int ma,
                        const GridFn& B, int mb, double w) {
    const int p = A.rows, q = A.cols, s = B.cols;
    const double* a = &A.v[static_cast<std::size_t>(ma) * p * q];
    const double* b = &B.v[static_cast<std::size_t>(mb) * q * s];
    double* c = &out[om * p * s];
    for (int i = 0; i < p; ++i)
        for (int k = 0; k < q; ++k) {
            const double aw = a[i * q + k] * w;
            if (aw == 0.0) continue;
            for (int j = 0; j < s; ++j) c[i * s + j] += aw * b[k * s + j];
        }
}

} // namespace

GridFn conv(const GridFn& f, const GridFn& g, ConvRule rule) {
    if (f.grid != g.grid) throw std::invalid_argument("conv: grid mismatch");
    if (f.cols != g.rows) throw std::invalid_argument("conv: shape mismatch");
    const int M = f.grid.M;
    const double tau = f.grid.tau();
    GridFn out(f.grid, f.rows, g.cols);
    parallel_for(1, M + 1, [&](int lo, int hi) {
        for (int m = lo; m < hi; ++m) {
            if (rule == ConvRule::rectangle) {
                for (int r = 1; r <= m; ++r)
                    axpy_matmul(out.v, m, f, r, g, m + 1 - r, tau);
            } else {
                for (int r = 0; r <= m; ++r) {
                    const double w = (r == 0 || r == m) ? 0.5 * tau : tau;
                    axpy_matmul(out.v, m, f, r, g, m - r, w);
                }
            }
        }
    });
    return out;
}

FundamentalSeries fundamental_series(const GridFn& phi, const FundamentalSeriesOptions& opts) {
    if (opts.K < 0) throw std::invalid_argument("fundamental_series: K must be >= 0");
    if (opts.K == 0 && !(opts.tolerance > 0.0))
        throw std::invalid_argument("fundamental_series: need K >= 1 or tolerance > 0");

    FundamentalSeries out;
    out.psi = GridFn(phi.grid, phi.rows, phi.cols);
    out.last_term_entry_norm.assign(static_cast<std::size_t>(phi.rows) * phi.cols, 0.0);
    out.tail_estimate.assign(static_cast<std::size_t>(phi.rows) * phi.cols, 0.0);

    GridFn term = phi;
    double prev_norm = 0.0;
    double norm = max_abs_entry(term);
    const int limit = opts.K > 0 ? opts.K : opts.max_terms;
    int k = 0;
    while (true) {
        ++k;
        for (std::size_t i = 0; i < out.psi.v.size(); ++i) out.psi.v[i] += term.v[i];
        if (opts.K > 0 && k >= opts.K) break;
        if (opts.K == 0 && norm < opts.tolerance) break;
        if (k >= limit) {
            out.converged = false;
            break;
        }
        term = conv(term, phi, opts.rule);
        prev_norm = norm;
        norm = max_abs_entry(term);
    }
    out.K = k;
    out.last_term_norm = norm;

    // Per-entry sup of the final term, with a geometric extrapolation of what
    // was dropped (ratio of the last two term norms).
    for (int i = 0; i < phi.rows; ++i)
        for (int j = 0; j < phi.cols; ++j) {
            double mx = 0.0;
            for (int m = 0; m <= phi.grid.M; ++m) mx = std::max(mx, std::fabs(term.at(m, i, j)));
            out.last_term_entry_norm[static_cast<std::size_t>(i) * phi.cols + j] = mx;
            double tail = std::numeric_limits<double>::infinity();
            if (prev_norm > 0.0 && norm < prev_norm) {
                const double q = norm / prev_norm;
                tail = mx * q / (1.0 - q);
            } else if (norm == 0.0) {
                tail = 0.0;
            }
            out.tail_estimate[static_cast<std::size_t>(i) * phi.cols + j] = tail;
        }
    return out;
}

std::vector<double> diag_conv_point(const GridFn& psi,
                                    const std::function<std::vector<double>(int, int)>& f2,
                                    int f2_cols, int m1, int m2) {
    if (m1 > m2) throw std::invalid_argument("diag_conv_point: need m1 <= m2");
    if (m1 < 0 || m2 > psi.grid.M) throw std::invalid_argument("diag_conv_point: out of grid");
    const double tau = psi.grid.tau();
    const int p = psi.rows, q = psi.cols;
    std::vector<double> acc(static_cast<std::size_t>(p) * f2_cols, 0.0);
    for (int r = 1; r <= m1; ++r) {
        const std::vector<double> blk = f2(m1 - r, m2 - r);
        if (static_cast<int>(blk.size()) != q * f2_cols)
            throw std::invalid_argument("diag_conv_point: f2 block has wrong shape");
        const double* a = &psi.v[static_cast<std::size_t>(r) * p * q];
        for (int i = 0; i < p; ++i)
            for (int kq = 0; kq < q; ++kq) {
                const double w = a[i * q + kq] * tau;
                if (w == 0.0) continue;
                for (int j = 0; j < f2_cols; ++j) acc[i * f2_cols + j] += w * blk[kq * f2_cols + j];
            }
    }
    return acc;
}

} // namespace hawkes
