#pragma once

#include <vector>

#include "hawkes/model.hpp"

namespace hawkes {

/// Multi-indices l in N^d with |l| = l_1 + ... + l_d <= L_max, graded order
/// (level 0 first). Precomputes l - e_j neighbours and the (q, l - q)
/// composition pairs used by the coefficient recursions.
struct Lattice {
    int d = 1;
    int L_max = 1;
    std::vector<std::vector<int>> points; // points[id] = multi-index
    std::vector<int> level;               // |points[id]|
    std::vector<std::vector<int>> minus_e; // minus_e[id][j] = id of l - e_j, or -1

    Lattice(int dim, int cutoff);
    int index_of(const std::vector<int>& l) const; // -1 when outside
    int size() const { return static_cast<int>(points.size()); }

    /// Ordered pairs (q, rest) with q != 0, rest = l - q >= 0 componentwise
    /// (rest may be the origin).
    const std::vector<std::pair<int, int>>& splits(int id) const { return splits_[id]; }

  private:
    std::vector<int> code_to_id_;
    std::vector<std::vector<std::pair<int, int>>> splits_;
    int code(const std::vector<int>& l) const;
};

/// Coefficients of g = e^f: given f(z) = sum alpha_l z^l (alpha at the origin
/// ignored), returns beta with g(z) = e^{alpha_0} (1 + sum_{k != 0} beta_k z^k).
/// beta_k = sum_{r=1..|k|} (1/r!) sum_{nonzero compositions of k} prod alpha.
std::vector<double> exp_coeffs(const Lattice& lattice, const std::vector<double>& alpha);

/// Inverse transform: alpha_l = sum_{r=1..|l|} ((-1)^{r-1}/r) sum prod beta.
std::vector<double> log_coeffs(const Lattice& lattice, const std::vector<double>& beta);

/// Closed forms p_0^{j'}(t) = exp(-sum_j Phi^{j'}_j(t)) and
/// p_{e_i}^{j'}(t) = Phi^{j'}_i(t) p_0^{j'}(t); igniter 0 uses Lambda0.
struct ZeroOneProbs {
    Grid grid;
    std::vector<std::vector<double>> p0;              // [igniter 0..d][node]
    std::vector<std::vector<std::vector<double>>> pe; // [igniter][component][node]
};

ZeroOneProbs zero_one_probs(const ModelSpec& model, const Grid& grid);

/// Count probabilities on the lattice, per igniter and grid node, built level
/// by level from the Levy-coefficient recursion
///   alpha^{j'}_l(t) = sum_j int_0^t p^j_{l-e_j}(t-s) phi^{j'}_j(s) ds
/// with the same rectangle rule as conv, then p_l = p_0 * exp_coeffs(alpha).
struct LatticePmf {
    Grid grid;
    int L_max = 1;
    std::vector<std::vector<int>> points;       // lattice points, |l| <= L_max
    std::vector<std::vector<double>> p;         // [igniter][point * (M+1) + node]
    std::vector<std::vector<double>> levy;      // alpha, same layout (origin = log p0)
    std::vector<std::vector<double>> residual;  // [igniter][node], 1 - sum p

    double prob(int igniter, int point, int node) const {
        return p[igniter][static_cast<std::size_t>(point) * (grid.M + 1) + node];
    }
    double levy_coeff(int igniter, int point, int node) const {
        return levy[igniter][static_cast<std::size_t>(point) * (grid.M + 1) + node];
    }
};

LatticePmf count_pmf(const ModelSpec& model, const Grid& grid, int L_max);

} // namespace hawkes
