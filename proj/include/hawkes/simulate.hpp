#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/grid.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

struct Event {
    double t = 0.0;
    int component = 0;  // 0-based
    int generation = 0; // -1 for thinning runs, immigrant = 0 for branching
};

struct Trajectory {
    std::vector<Event> events; // strictly increasing times in (0, T]
    double horizon = 0.0;
    std::uint64_t seed = 0;
    long candidates = 0; // thinning proposals (0 for branching)
    long accepted = 0;

    double acceptance_ratio() const {
        return candidates > 0 ? static_cast<double>(accepted) / candidates : 1.0;
    }
};

struct ThinningOptions {
    /// Look-ahead window for the intensity bound; 0 picks horizon / 100.
    double lookahead = 0.0;
    /// Past events whose kernel envelope fell below this are dropped from the
    /// active set.
    double envelope_eps = 1e-12;
};

/// Ogata thinning on the conditional intensity. The per-window bound is
/// certified (baseline sup plus per-event kernel envelopes) and checked
/// against the true intensity at every candidate.
Trajectory simulate_thinning(const ModelSpec& model, double T, std::uint64_t seed,
                             const ThinningOptions& opts = {});

struct BranchingOptions {
    std::size_t max_events = 1000000; // explosion guard
};

/// Immigrant-and-offspring construction: generation 0 from the baseline, each
/// event of type j spawning Poisson(Phi^j_i(T - s)) children in component i
/// with offsets drawn from phi^j_i restricted to [0, T - s].
Trajectory simulate_branching(const ModelSpec& model, double T, std::uint64_t seed,
                              const BranchingOptions& opts = {});

/// Right-continuous per-component counts at the grid nodes, row-major
/// (node, component).
std::vector<double> count_curve(const Trajectory& traj, const Grid& grid, int d);

/// Conditional intensity at the grid nodes reconstructed from the events.
std::vector<double> intensity_curve(const ModelSpec& model, const Trajectory& traj,
                                    const Grid& grid);

// --- Monte Carlo estimators --------------------------------------------------

enum class SimMethod { thinning, branching };

struct McEstimate {
    std::string statistic;
    std::vector<double> value;
    std::vector<double> stderr_; // sample std / sqrt(R)
    long R = 0;
    std::uint64_t seed = 0;
};

/// Mean counts E N_i(t) at the given times; value index = time * d + component.
McEstimate mc_mean(const ModelSpec& model, double T, const std::vector<double>& times,
                   long R, std::uint64_t seed, SimMethod method = SimMethod::thinning);

/// Covariance of (N_k(t1), N_l(t2)); single value.
McEstimate mc_covariance(const ModelSpec& model, double T, int k, int l, double t1,
                         double t2, long R, std::uint64_t seed,
                         SimMethod method = SimMethod::thinning);

/// Empirical count frequencies at time t over the |l| <= L_max lattice; one
/// value per lattice point of Lattice(d, L_max) plus a trailing entry for the
/// overflow mass.
McEstimate mc_pmf(const ModelSpec& model, double T, double t, int L_max, long R,
                  std::uint64_t seed, SimMethod method = SimMethod::thinning);

/// Empirical Laplace transform E exp(-a . N(t)); single value.
McEstimate mc_laplace(const ModelSpec& model, double T, const std::vector<double>& a,
                      double t, long R, std::uint64_t seed,
                      SimMethod method = SimMethod::thinning);

/// Component counts at the horizon for R independent runs; row-major
/// (run, component). Used by the cross-simulator tests.
std::vector<long> mc_counts_at_horizon(const ModelSpec& model, double T, long R,
                                       std::uint64_t seed, SimMethod method);

} // namespace hawkes
