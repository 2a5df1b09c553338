#include "hawkes/covariance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

void check_indices(const CovContext& ctx, int igniter, int k, int l) {
    if (igniter < 0 || igniter > ctx.d)
        throw std::invalid_argument("covariance: igniter must be in 0..d");
    if (k < 0 || k >= ctx.d || l < 0 || l >= ctx.d)
        throw std::invalid_argument("covariance: component out of range");
}

// w_j[r] for the requested igniter: psi column (igniter-1) or the full
// intensity vector.
inline double weight(const CovContext& ctx, int igniter, int j, int r) {
    return igniter == 0 ? ctx.h.at(r, j, 0) : ctx.psi.at(r, j, igniter - 1);
}

} // namespace

CovContext make_cov_context(const ModelSpec& model, const FundamentalSeries& series,
                            const MomentTable& moments) {
    CovContext ctx;
    ctx.grid = series.psi.grid;
    ctx.d = model.d;
    ctx.psi = series.psi;
    ctx.h = moments.m_full;
    ctx.E = moments.M_base;
    for (int m = 0; m <= ctx.grid.M; ++m)
        for (int k = 0; k < ctx.d; ++k) ctx.E.at(m, k, k) += 1.0;
    return ctx;
}

double rhs_R(const CovContext& ctx, int j, int k, int l, int mu, int mv) {
    return ctx.E.at(mu, k, j) * ctx.E.at(mv, l, j);
}

std::vector<double> cov_band(const CovContext& ctx, int igniter, int k, int l, int gap) {
    check_indices(ctx, igniter, k, l);
    const int M = ctx.grid.M;
    if (gap < 0 || gap > M) throw std::invalid_argument("cov_band: gap out of range");
    const double tau = ctx.grid.tau();
    const int n = M - gap + 1;
    std::vector<double> out(n, 0.0);
    // out[m1] = tau * sum_j sum_{u=0..m1-1} w_j[m1-u] E(u,k,j) E(u+gap,l,j)
    // Serial on purpose: callers parallelize across bands.
    std::vector<double> x(static_cast<std::size_t>(ctx.d) * n);
    for (int j = 0; j < ctx.d; ++j)
        for (int u = 0; u < n; ++u)
            x[static_cast<std::size_t>(j) * n + u] = ctx.E.at(u, k, j) * ctx.E.at(u + gap, l, j);
    for (int m1 = 1; m1 < n; ++m1) {
        double acc = 0.0;
        for (int j = 0; j < ctx.d; ++j) {
            const double* xj = &x[static_cast<std::size_t>(j) * n];
            double s = 0.0;
            for (int u = 0; u < m1; ++u) s += weight(ctx, igniter, j, m1 - u) * xj[u];
            acc += s;
        }
        out[m1] = tau * acc;
    }
    return out;
}

double cov_point(const CovContext& ctx, int igniter, int k, int l, int m1, int m2) {
    check_indices(ctx, igniter, k, l);
    if (m1 > m2) return cov_point(ctx, igniter, l, k, m2, m1);
    const double tau = ctx.grid.tau();
    double acc = 0.0;
    for (int j = 0; j < ctx.d; ++j)
        for (int r = 1; r <= m1; ++r)
            acc += weight(ctx, igniter, j, r) * ctx.E.at(m1 - r, k, j) * ctx.E.at(m2 - r, l, j);
    return tau * acc;
}

TwoTimeTable cov_table(const CovContext& ctx, int igniter, int k, int l) {
    check_indices(ctx, igniter, k, l);
    const int M = ctx.grid.M;
    TwoTimeTable t;
    t.grid = ctx.grid;
    t.igniter = igniter;
    t.k = k;
    t.l = l;
    t.tri.assign(static_cast<std::size_t>(M + 1) * (M + 2) / 2, 0.0);
    parallel_for(0, M + 1, [&](int lo, int hi) {
        for (int gap = lo; gap < hi; ++gap) {
            const auto band = cov_band(ctx, igniter, k, l, gap);
            for (int m1 = 0; m1 + gap <= M; ++m1) {
                const int m2 = m1 + gap;
                t.tri[static_cast<std::size_t>(m2) * (m2 + 1) / 2 + m1] = band[m1];
            }
        }
    });
    return t;
}

GridFn single_time_cov(const CovContext& ctx, int igniter, ConvRule rule) {
    check_indices(ctx, igniter, 0, 0);
    const int d = ctx.d;
    GridFn out(ctx.grid, d, d);
    // One pair (k, l) at a time: C_{k,l} = (transposed weights) * R~ with the
    // one-time rectangle rule; the weight row is psi column j' or h.
    GridFn w(ctx.grid, 1, d);
    for (int m = 0; m <= ctx.grid.M; ++m)
        for (int j = 0; j < d; ++j) w.at(m, 0, j) = weight(ctx, igniter, j, m);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            GridFn R(ctx.grid, d, 1);
            for (int m = 0; m <= ctx.grid.M; ++m)
                for (int j = 0; j < d; ++j) R.at(m, j, 0) = rhs_R(ctx, j, k, l, m, m);
            const GridFn c = conv(w, R, rule);
            for (int m = 0; m <= ctx.grid.M; ++m) out.at(m, k, l) = c.at(m, 0, 0);
        }
    return out;
}

DecompositionTable decompose(const CovContext& ctx, int igniter, int k, int l) {
    check_indices(ctx, igniter, k, l);
    const int M = ctx.grid.M;
    const double tau = ctx.grid.tau();
    DecompositionTable t;
    t.grid = ctx.grid;
    t.igniter = igniter;
    t.k = k;
    t.l = l;

    // Singular density on the diagonal:
    //   s(u) = 1_{k=l} w_k(u) + (w_l * psi_{k,l})(u).
    t.singular.assign(M + 1, 0.0);
    for (int m = 0; m <= M; ++m) {
        double s = k == l ? weight(ctx, igniter, k, m) : 0.0;
        double c = 0.0;
        for (int r = 1; r <= m; ++r)
            c += weight(ctx, igniter, l, r) * ctx.psi.at(m + 1 - r, k, l);
        t.singular[m] = s + tau * c;
    }

    // Absolutely continuous density:
    //   a(u, v) = w_k(u) psi_{l,k}(v-u) 1_{v>=u}
    //           + sum_j int_0^{u^v} w_j(s) psi_{k,j}(u-s) psi_{l,j}(v-s) ds.
    t.ac.assign(static_cast<std::size_t>(M + 1) * (M + 1), 0.0);
    parallel_for(0, M + 1, [&](int lo, int hi) {
        for (int mu = lo; mu < hi; ++mu)
            for (int mv = 0; mv <= M; ++mv) {
                double a = 0.0;
                if (mv >= mu) a += weight(ctx, igniter, k, mu) * ctx.psi.at(mv - mu, l, k);
                const int top = std::min(mu, mv);
                double trip = 0.0;
                for (int j = 0; j < ctx.d; ++j)
                    for (int r = 1; r <= top; ++r)
                        trip += weight(ctx, igniter, j, r) * ctx.psi.at(mu - r, k, j) *
                                ctx.psi.at(mv - r, l, j);
                t.ac[static_cast<std::size_t>(mu) * (M + 1) + mv] = a + tau * trip;
            }
    });
    return t;
}

CorrelationSurface correlation_surface(const CovContext& ctx, int igniter, int k, int l) {
    check_indices(ctx, igniter, k, l);
    const int M = ctx.grid.M;
    CorrelationSurface s;
    s.grid = ctx.grid;
    s.igniter = igniter;
    s.k = k;
    s.l = l;
    s.rho.assign(static_cast<std::size_t>(M + 1) * (M + 1),
                 std::numeric_limits<double>::quiet_NaN());
    const auto var_k = cov_band(ctx, igniter, k, k, 0);
    const auto var_l = k == l ? var_k : cov_band(ctx, igniter, l, l, 0);
    // Lower triangle (m1 <= m2) from the (k,l) block, upper from (l,k).
    parallel_for(0, M + 1, [&](int lo, int hi) {
        for (int gap = lo; gap < hi; ++gap) {
            const auto band_kl = cov_band(ctx, igniter, k, l, gap);
            const auto band_lk = (gap == 0 || k == l) ? band_kl : cov_band(ctx, igniter, l, k, gap);
            for (int m1 = 0; m1 + gap <= M; ++m1) {
                const int m2 = m1 + gap;
                const double den_low = var_k[m1] * var_l[m2];
                if (den_low > 0.0)
                    s.rho[static_cast<std::size_t>(m1) * (M + 1) + m2] =
                        band_kl[m1] / std::sqrt(den_low);
                const double den_up = var_k[m2] * var_l[m1];
                if (den_up > 0.0)
                    s.rho[static_cast<std::size_t>(m2) * (M + 1) + m1] =
                        band_lk[m1] / std::sqrt(den_up);
            }
        }
    });
    return s;
}

} // namespace hawkes
