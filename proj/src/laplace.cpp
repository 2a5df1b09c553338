#include "hawkes/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

void check_vector(const std::vector<double>& a, int d, const char* what) {
    if (static_cast<int>(a.size()) != d)
        throw std::invalid_argument(std::string(what) + ": expected a d-vector");
}

// Kernel samples arranged for the recursions: K[j][jp][m] = phi_{j,jp}(m tau)
// for jp = 1..d shifted down by one, and K0[j][m] = lambda0_j(m tau).
struct SampledModel {
    int d;
    Grid grid;
    GridFn phi; // d x d
    GridFn lam; // d x 1

    double kernel(int j, int jp, int m) const {
        return jp == 0 ? lam.at(m, j, 0) : phi.at(m, j, jp - 1);
    }
};

SampledModel sample_for_laplace(const ModelSpec& model, const Grid& grid) {
    validate(model);
    return SampledModel{model.d, grid, sample_kernel_matrix(model, grid),
                        sample_baseline(model, grid)};
}

} // namespace

Laplace1Result laplace1(const ModelSpec& model, const std::vector<double>& a,
                        const Grid& grid, const LaplaceOptions& opts) {
    const auto sm = sample_for_laplace(model, grid);
    const int d = sm.d;
    check_vector(a, d, "laplace1");
    const int M = grid.M;
    const double tau = grid.tau();

    Laplace1Result out;
    out.grid = grid;
    out.a = a;
    out.base.assign(d, std::vector<double>(M + 1, 1.0));
    out.full.assign(M + 1, 1.0);

    std::vector<double> ea(d);
    for (int j = 0; j < d; ++j) ea[j] = std::exp(opts.exponent_sign * a[j]);

    // Base system first: L[j'](m) depends on L[j](r) for r < m only.
    for (int m = 1; m <= M; ++m) {
        for (int jp = 1; jp <= d; ++jp) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                const auto& Lj = out.base[j];
                double sj = 0.0;
                for (int r = 0; r < m; ++r) sj += (ea[j] * Lj[r] - 1.0) * sm.kernel(j, jp, m - r);
                s += sj;
            }
            out.base[jp - 1][m] = std::exp(tau * s);
        }
    }
    for (int m = 1; m <= M; ++m) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            const auto& Lj = out.base[j];
            double sj = 0.0;
            for (int r = 0; r < m; ++r) sj += (ea[j] * Lj[r] - 1.0) * sm.kernel(j, 0, m - r);
            s += sj;
        }
        out.full[m] = std::exp(tau * s);
    }
    return out;
}

Laplace2Band laplace2_band(const ModelSpec& model, const std::vector<double>& a1,
                           const std::vector<double>& a2, const Grid& grid, int gap,
                           const LaplaceOptions& opts) {
    const auto sm = sample_for_laplace(model, grid);
    const int d = sm.d;
    check_vector(a1, d, "laplace2");
    check_vector(a2, d, "laplace2");
    const int M = grid.M;
    if (gap < 0 || gap > M) throw std::invalid_argument("laplace2: gap out of range");
    const double tau = grid.tau();

    const Laplace1Result one = laplace1(model, a2, grid, opts);

    Laplace2Band out;
    out.grid = grid;
    out.gap = gap;
    out.a1 = a1;
    out.a2 = a2;
    const int n = M - gap + 1;
    out.base.assign(d, std::vector<double>(n, 1.0));
    out.full.assign(n, 1.0);

    std::vector<double> e12(d), e2(d);
    for (int j = 0; j < d; ++j) {
        e12[j] = std::exp(opts.exponent_sign * (a1[j] + a2[j]));
        e2[j] = std::exp(opts.exponent_sign * a2[j]);
    }
    // One-time contribution terms, reused by every diagonal step.
    std::vector<std::vector<double>> B(d, std::vector<double>(M + 1));
    for (int j = 0; j < d; ++j)
        for (int r = 0; r <= M; ++r) B[j][r] = e2[j] * one.base[j][r] - 1.0;

    // Boundary (0, gap), then walk the diagonal.
    for (int j = 0; j < d; ++j) out.base[j][0] = one.base[j][gap];
    out.full[0] = one.full[gap];

    for (int r = 1; r < n; ++r) {
        for (int jp = 0; jp <= d; ++jp) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                const auto& Lj = out.base[j];
                double sj = 0.0;
                for (int rp = 0; rp < r; ++rp)
                    sj += (e12[j] * Lj[rp] - 1.0) * sm.kernel(j, jp, r - rp);
                const auto& Bj = B[j];
                for (int rp = 0; rp < gap; ++rp) sj += Bj[rp] * sm.kernel(j, jp, gap + r - rp);
                s += sj;
            }
            const double val = std::exp(tau * s);
            if (jp == 0)
                out.full[r] = val;
            else
                out.base[jp - 1][r] = val;
        }
    }
    return out;
}

std::vector<double> laplace2_point(const ModelSpec& model, const std::vector<double>& a1,
                                   const std::vector<double>& a2, const Grid& grid, int m1,
                                   int m2, const LaplaceOptions& opts) {
    if (m1 > m2) throw std::invalid_argument("laplace2: need m1 <= m2");
    const auto band = laplace2_band(model, a1, a2, grid, m2 - m1, opts);
    std::vector<double> out(model.d + 1);
    out[0] = band.full[m1];
    for (int j = 0; j < model.d; ++j) out[j + 1] = band.base[j][m1];
    return out;
}

FunctionalLaplaceResult laplace_functional(const ModelSpec& model, const StepCost& cost,
                                           const Grid& grid,
                                           const FunctionalLaplaceOptions& opts) {
    const auto sm = sample_for_laplace(model, grid);
    const int d = sm.d;
    const int M = grid.M;
    const double tau = grid.tau();
    const int P = static_cast<int>(cost.breakpoints.size());
    if (P > opts.max_segments)
        throw std::invalid_argument("laplace_functional: too many cost segments");
    if (static_cast<int>(cost.steps.size()) != P)
        throw std::invalid_argument("laplace_functional: breakpoints/steps size mismatch");

    // Snap breakpoints to grid indices and tabulate exp(-psi_j(m tau)) per node.
    std::vector<int> qp(P);
    int prev = 0;
    for (int p = 0; p < P; ++p) {
        check_vector(cost.steps[p], d, "laplace_functional step");
        for (double v : cost.steps[p])
            if (v < 0.0) throw std::invalid_argument("laplace_functional: steps must be >= 0");
        qp[p] = static_cast<int>(std::lround(cost.breakpoints[p] / tau));
        if (qp[p] <= prev || qp[p] > M)
            throw std::invalid_argument("laplace_functional: breakpoints must be increasing "
                                        "grid nodes within (0, T]");
        prev = qp[p];
    }
    const int q_last = P == 0 ? 0 : qp[P - 1];
    std::vector<std::vector<double>> ecost(d, std::vector<double>(M + 1, 1.0));
    {
        int p = 0;
        for (int m = 1; m <= M; ++m) {
            while (p < P && m > qp[p]) ++p;
            if (p < P)
                for (int j = 0; j < d; ++j) ecost[j][m] = std::exp(-cost.steps[p][j]);
        }
    }

    FunctionalLaplaceResult out;
    out.grid = grid;
    out.base.assign(d, std::vector<double>(M + 1, 1.0));
    out.full.assign(M + 1, 1.0);

    // F[j](q, r) = transform of the cost translated by q tau, evaluated at
    // r tau. Values along a diagonal q + r = s depend only on the same
    // diagonal at larger q, and F = 1 once the translated cost vanishes
    // (q >= q_last), so each diagonal is an independent backward sweep.
    parallel_for(1, M + 1, [&](int lo, int hi) {
        std::vector<std::vector<double>> F(d);
        for (int s = lo; s < hi; ++s) {
            for (int j = 0; j < d; ++j) F[j].assign(s + 1, 1.0);
            // Writes at q never feed the sums (they read indices > q), so the
            // sweep updates in place. The j' = 0 value is only needed at q = 0.
            const int q_top = std::min(s - 1, q_last - 1);
            for (int q = q_top; q >= 0; --q) {
                const int r = s - q;
                for (int jp = (q == 0 ? 0 : 1); jp <= d; ++jp) {
                    double acc = 0.0;
                    for (int j = 0; j < d; ++j) {
                        const auto& Fj = F[j];
                        const auto& ej = ecost[j];
                        double sj = 0.0;
                        for (int u = 1; u <= r; ++u)
                            sj += (ej[q + u] * Fj[q + u] - 1.0) * sm.kernel(j, jp, u);
                        acc += sj;
                    }
                    const double val = std::exp(tau * acc);
                    if (jp == 0)
                        out.full[s] = val;
                    else
                        F[jp - 1][q] = val;
                }
            }
            for (int j = 0; j < d; ++j) out.base[j][s] = F[j][0];
        }
    });
    return out;
}

RefineResult fixed_point_refine(const std::vector<std::vector<double>>& initial_base,
                                const ModelSpec& model, const std::vector<double>& a,
                                const Grid& grid, int max_iterations, double tol,
                                const LaplaceOptions& opts) {
    const auto sm = sample_for_laplace(model, grid);
    const int d = sm.d;
    check_vector(a, d, "fixed_point_refine");
    if (static_cast<int>(initial_base.size()) != d)
        throw std::invalid_argument("fixed_point_refine: expected d base arrays");
    const int M = grid.M;
    const double tau = grid.tau();
    for (const auto& arr : initial_base) {
        if (static_cast<int>(arr.size()) != M + 1)
            throw std::invalid_argument("fixed_point_refine: array length mismatch");
        for (double v : arr)
            if (!(v > 0.0 && v <= 1.0))
                throw std::invalid_argument("fixed_point_refine: initial values must be in (0,1]");
    }

    std::vector<double> ea(d);
    for (int j = 0; j < d; ++j) ea[j] = std::exp(opts.exponent_sign * a[j]);

    RefineResult out;
    out.base = initial_base;
    int growing = 0;
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<std::vector<double>> next(d, std::vector<double>(M + 1, 1.0));
        parallel_for(1, M + 1, [&](int lo, int hi) {
            for (int m = lo; m < hi; ++m)
                for (int jp = 1; jp <= d; ++jp) {
                    double s = 0.0;
                    for (int j = 0; j < d; ++j) {
                        const auto& Lj = out.base[j];
                        double sj = 0.0;
                        for (int r = 0; r < m; ++r)
                            sj += (ea[j] * Lj[r] - 1.0) * sm.kernel(j, jp, m - r);
                        s += sj;
                    }
                    next[jp - 1][m] = std::exp(tau * s);
                }
        });
        double change = 0.0;
        for (int j = 0; j < d; ++j)
            for (int m = 0; m <= M; ++m)
                change = std::max(change, std::fabs(next[j][m] - out.base[j][m]));
        out.base = std::move(next);
        out.changes.push_back(change);
        if (change < tol) {
            out.converged = true;
            break;
        }
        const std::size_t n = out.changes.size();
        growing = (n >= 2 && out.changes[n - 1] > out.changes[n - 2]) ? growing + 1 : 0;
        if (growing >= 3) {
            out.diverged = true;
            break;
        }
    }
    return out;
}

} // namespace hawkes
