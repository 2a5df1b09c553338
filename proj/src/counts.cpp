#include "hawkes/counts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

void enumerate_points(int d, int L_max, std::vector<int>& cur, int pos, int used,
                      std::vector<std::vector<int>>& out) {
    if (pos == d) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v + used <= L_max; ++v) {
        cur[pos] = v;
        enumerate_points(d, L_max, cur, pos + 1, used + v, out);
    }
}

} // namespace

Lattice::Lattice(int dim, int cutoff) : d(dim), L_max(cutoff) {
    if (d < 1) throw std::invalid_argument("Lattice: d must be >= 1");
    if (L_max < 1) throw std::invalid_argument("Lattice: L_max must be >= 1");
    std::vector<int> cur(d, 0);
    enumerate_points(d, L_max, cur, 0, 0, points);
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        int la = 0, lb = 0;
        for (int x : a) la += x;
        for (int x : b) lb += x;
        if (la != lb) return la < lb;
        return a < b;
    });

    int radix = 1;
    for (int i = 0; i < d; ++i) radix *= L_max + 1;
    code_to_id_.assign(radix, -1);
    level.resize(points.size());
    for (int id = 0; id < size(); ++id) {
        int lv = 0;
        for (int x : points[id]) lv += x;
        level[id] = lv;
        code_to_id_[code(points[id])] = id;
    }

    minus_e.assign(points.size(), std::vector<int>(d, -1));
    for (int id = 0; id < size(); ++id)
        for (int j = 0; j < d; ++j)
            if (points[id][j] > 0) {
                std::vector<int> q = points[id];
                --q[j];
                minus_e[id][j] = index_of(q);
            }

    splits_.resize(points.size());
    for (int id = 0; id < size(); ++id) {
        const auto& l = points[id];
        std::vector<int> q(d, 0);
        // Enumerate all 0 <= q <= l componentwise, skipping q = 0.
        while (true) {
            int pos = 0;
            while (pos < d && q[pos] == l[pos]) q[pos++] = 0;
            if (pos == d) break;
            ++q[pos];
            std::vector<int> rest(d);
            for (int i = 0; i < d; ++i) rest[i] = l[i] - q[i];
            splits_[id].emplace_back(index_of(q), index_of(rest));
        }
    }
}

int Lattice::code(const std::vector<int>& l) const {
    int c = 0;
    for (int i = 0; i < d; ++i) c = c * (L_max + 1) + l[i];
    return c;
}

int Lattice::index_of(const std::vector<int>& l) const {
    int total = 0;
    for (int x : l) {
        if (x < 0 || x > L_max) return -1;
        total += x;
    }
    if (total > L_max) return -1;
    return code_to_id_[code(l)];
}

namespace {

// Shared composition-power recursion: out_l = sum_{r=1..|l|} c(r) P_r(l) with
// P_1 = in (origin excluded) and P_r(l) = sum_{q != 0, q <= l} in_q P_{r-1}(l - q).
template <typename CoefFn>
std::vector<double> composition_transform(const Lattice& lat, const std::vector<double>& in,
                                          CoefFn coef) {
    const int n = lat.size();
    if (static_cast<int>(in.size()) != n)
        throw std::invalid_argument("coefficient transform: size mismatch with lattice");
    std::vector<std::vector<double>> P(lat.L_max + 1, std::vector<double>(n, 0.0));
    for (int id = 0; id < n; ++id)
        if (lat.level[id] >= 1) P[1][id] = in[id];
    for (int r = 2; r <= lat.L_max; ++r)
        for (int id = 0; id < n; ++id) {
            if (lat.level[id] < r) continue;
            double acc = 0.0;
            for (const auto& [q, rest] : lat.splits(id)) acc += in[q] * P[r - 1][rest];
            P[r][id] = acc;
        }
    std::vector<double> out(n, 0.0);
    for (int id = 0; id < n; ++id) {
        if (lat.level[id] < 1) continue;
        double acc = 0.0;
        for (int r = 1; r <= lat.level[id]; ++r) acc += coef(r) * P[r][id];
        out[id] = acc;
    }
    return out;
}

} // namespace

std::vector<double> exp_coeffs(const Lattice& lattice, const std::vector<double>& alpha) {
    std::vector<double> fact(lattice.L_max + 1, 1.0);
    for (int r = 2; r <= lattice.L_max; ++r) fact[r] = fact[r - 1] * r;
    return composition_transform(lattice, alpha, [&](int r) { return 1.0 / fact[r]; });
}

std::vector<double> log_coeffs(const Lattice& lattice, const std::vector<double>& beta) {
    return composition_transform(lattice, beta,
                                 [](int r) { return (r % 2 ? 1.0 : -1.0) / r; });
}

ZeroOneProbs zero_one_probs(const ModelSpec& model, const Grid& grid) {
    validate(model);
    const int d = model.d;
    const double tau = grid.tau();
    ZeroOneProbs out;
    out.grid = grid;
    out.p0.assign(d + 1, std::vector<double>(grid.M + 1, 1.0));
    out.pe.assign(d + 1, std::vector<std::vector<double>>(d, std::vector<double>(grid.M + 1, 0.0)));
    const GridFn Phi = sample_kernel_primitive(model, grid);
    const GridFn Lam = sample_baseline_primitive(model, grid);
    const GridFn phi = sample_kernel_matrix(model, grid);
    const GridFn lam = sample_baseline(model, grid);
    for (int jp = 0; jp <= d; ++jp)
        for (int m = 0; m <= grid.M; ++m) {
            double total = 0.0;
            for (int j = 0; j < d; ++j)
                total += jp == 0 ? Lam.at(m, j, 0) : Phi.at(m, j, jp - 1);
            out.p0[jp][m] = std::exp(-total);
        }
    // One event of type i: a single first-generation point arriving at s with
    // no offspring of its own by t, hence the extinct-cluster factor
    // p0^i(t - s) inside the integral.
    std::vector<std::vector<double>> extinct(d, std::vector<double>(grid.M + 1));
    for (int i = 0; i < d; ++i)
        for (int m = 0; m <= grid.M; ++m) {
            double total = 0.0;
            for (int j = 0; j < d; ++j) total += Phi.at(m, j, i);
            extinct[i][m] = std::exp(-total);
        }
    for (int jp = 0; jp <= d; ++jp)
        for (int i = 0; i < d; ++i)
            for (int m = 1; m <= grid.M; ++m) {
                double acc = 0.0;
                for (int r = 1; r <= m; ++r) {
                    const double k = jp == 0 ? lam.at(m + 1 - r, i, 0)
                                             : phi.at(m + 1 - r, i, jp - 1);
                    acc += extinct[i][r] * k;
                }
                out.pe[jp][i][m] = out.p0[jp][m] * tau * acc;
            }
    return out;
}

LatticePmf count_pmf(const ModelSpec& model, const Grid& grid, int L_max) {
    validate(model);
    if (L_max < 1) throw std::invalid_argument("count_pmf: L_max must be >= 1");
    const int d = model.d;
    const int M = grid.M;
    const double tau = grid.tau();
    const Lattice lat(d, L_max);
    const int n = lat.size();
    const std::size_t nodes = static_cast<std::size_t>(M + 1);

    const GridFn phi = sample_kernel_matrix(model, grid);
    const GridFn lam = sample_baseline(model, grid);
    const auto zo = zero_one_probs(model, grid);
    for (int jp = 0; jp <= d; ++jp)
        for (int m = 0; m <= M; ++m)
            if (zo.p0[jp][m] < 1e-300)
                throw std::runtime_error("count_pmf: p0 underflow; horizon too large for "
                                         "the probability recursion");

    LatticePmf out;
    out.grid = grid;
    out.L_max = L_max;
    out.points = lat.points;
    out.p.assign(d + 1, std::vector<double>(static_cast<std::size_t>(n) * nodes, 0.0));
    out.levy.assign(d + 1, std::vector<double>(static_cast<std::size_t>(n) * nodes, 0.0));
    out.residual.assign(d + 1, std::vector<double>(nodes, 0.0));

    // Origin: p = p0, levy coefficient = log p0.
    for (int jp = 0; jp <= d; ++jp)
        for (std::size_t m = 0; m < nodes; ++m) {
            out.p[jp][m] = zo.p0[jp][m];
            out.levy[jp][m] = std::log(zo.p0[jp][m]);
        }

    // Composition powers P[jp][r][point * nodes + m], filled level by level.
    std::vector<std::vector<std::vector<double>>> P(
        d + 1, std::vector<std::vector<double>>(
                   L_max + 1, std::vector<double>(static_cast<std::size_t>(n) * nodes, 0.0)));

    std::vector<int> level_start(L_max + 2, n);
    for (int id = n - 1; id >= 0; --id) level_start[lat.level[id]] = id;

    for (int lv = 1; lv <= L_max; ++lv) {
        const int id_lo = level_start[lv];
        const int id_hi = level_start[lv + 1];
        parallel_for(id_lo, id_hi, [&](int lo, int hi) {
            for (int id = lo; id < hi; ++id) {
                for (int jp = 0; jp <= d; ++jp) {
                    double* alpha = &out.levy[jp][static_cast<std::size_t>(id) * nodes];
                    // alpha_l(m) by the rectangle rule over base pmfs one level
                    // down (igniter row j+1 holds the base process of type j).
                    for (int j = 0; j < d; ++j) {
                        const int sub = lat.minus_e[id][j];
                        if (sub < 0) continue;
                        const double* psub = &out.p[j + 1][static_cast<std::size_t>(sub) * nodes];
                        for (int m = 1; m <= M; ++m) {
                            double acc = 0.0;
                            for (int r = 1; r <= m; ++r) {
                                const double k =
                                    jp == 0 ? lam.at(m + 1 - r, j, 0) : phi.at(m + 1 - r, j, jp - 1);
                                acc += psub[r] * k;
                            }
                            alpha[m] += tau * acc;
                        }
                    }
                    // Composition powers at this point, then the pmf.
                    double* p1 = &P[jp][1][static_cast<std::size_t>(id) * nodes];
                    for (std::size_t m = 0; m < nodes; ++m) p1[m] = alpha[m];
                    for (int r = 2; r <= lv; ++r) {
                        double* pr = &P[jp][r][static_cast<std::size_t>(id) * nodes];
                        for (const auto& [q, rest] : lat.splits(id)) {
                            if (lat.level[rest] < r - 1) continue;
                            const double* aq = &out.levy[jp][static_cast<std::size_t>(q) * nodes];
                            const double* prev =
                                &P[jp][r - 1][static_cast<std::size_t>(rest) * nodes];
                            for (std::size_t m = 0; m < nodes; ++m) pr[m] += aq[m] * prev[m];
                        }
                    }
                    double* pd = &out.p[jp][static_cast<std::size_t>(id) * nodes];
                    double fact = 1.0;
                    for (int r = 1; r <= lv; ++r) {
                        fact *= r;
                        const double* pr = &P[jp][r][static_cast<std::size_t>(id) * nodes];
                        for (std::size_t m = 0; m < nodes; ++m) pd[m] += pr[m] / fact;
                    }
                    for (std::size_t m = 0; m < nodes; ++m) pd[m] *= zo.p0[jp][m];
                }
            }
        });
    }

    for (int jp = 0; jp <= d; ++jp)
        for (std::size_t m = 0; m < nodes; ++m) {
            double total = 0.0;
            for (int id = 0; id < n; ++id) total += out.p[jp][static_cast<std::size_t>(id) * nodes + m];
            out.residual[jp][m] = 1.0 - total;
        }
    return out;
}

} // namespace hawkes
