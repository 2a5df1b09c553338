#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "hawkes/counts.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

namespace {

double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Offset sampler for one kernel restricted to [0, limit]; exact per family,
// numeric inversion on the primitive as the fallback.
double sample_offset(const KernelSpec& spec, double limit, std::mt19937_64& rng) {
    if (const auto* e = std::get_if<ExponentialKernel>(&spec)) {
        const double u = uniform01(rng);
        return -std::log1p(u * std::expm1(-e->beta * limit)) / e->beta;
    }
    if (std::holds_alternative<ConstantStepKernel>(spec)) return uniform01(rng) * limit;
    if (const auto* g = std::get_if<GammaKernel>(&spec)) {
        std::gamma_distribution<double> dist(g->kappa, g->theta);
        for (int tries = 0; tries < 10000; ++tries) {
            const double x = dist(rng);
            if (x <= limit) return x;
        }
        // Tail too thin for rejection; fall through to inversion.
    }
    if (const auto* b = std::get_if<BetaLikeKernel>(&spec)) {
        const double hi = std::min(limit, b->gamma);
        const double sup = kernel_sup(spec, 0.0, hi);
        if (std::isfinite(sup) && sup > 0.0) {
            while (true) {
                const double x = uniform01(rng) * hi;
                if (uniform01(rng) * sup <= eval_kernel(spec, x)) return x;
            }
        }
    }
    const double mass = kernel_primitive(spec, limit);
    const double target = uniform01(rng) * mass;
    double lo = 0.0, hi = limit;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (kernel_primitive(spec, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct ActiveEvent {
    double t;
    int component;
};

Trajectory thinning_impl(const ModelSpec& model, double T, std::mt19937_64& rng,
                         const ThinningOptions& opts) {
    const int d = model.d;
    const double window = opts.lookahead > 0.0 ? opts.lookahead : T / 100.0;

    // Per igniting component: lag beyond which every kernel in its column is
    // below envelope_eps.
    std::vector<double> cutoff(d, 0.0);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            cutoff[j] = std::max(cutoff[j],
                                 kernel_support_cutoff(model.kernel(i, j), opts.envelope_eps));

    double base_sup = 0.0;
    for (const auto& b : model.baseline) base_sup += baseline_sup(b);

    Trajectory traj;
    traj.horizon = T;

    std::deque<ActiveEvent> active;
    std::vector<double> lam(d);
    auto prune = [&](double now) {
        while (!active.empty() && now - active.front().t > cutoff[active.front().component])
            active.pop_front();
    };
    double t = 0.0;
    while (t < T) {
        const double w_end = std::min(t + window, T);
        // Certified bound on the total intensity over (t, w_end].
        double bound = base_sup;
        for (const auto& ev : active) {
            const double lo = t - ev.t;
            const double hi = w_end - ev.t;
            for (int i = 0; i < d; ++i)
                bound += kernel_sup(model.kernel(i, ev.component), lo, hi);
        }
        if (!std::isfinite(bound))
            throw std::runtime_error("simulate_thinning: intensity bound is unbounded "
                                     "(kernel diverges at lag 0); use simulate_branching");
        if (bound <= 0.0) {
            t = w_end;
            prune(t);
            continue;
        }
        const double step = std::exponential_distribution<double>(bound)(rng);
        if (t + step > w_end) {
            t = w_end;
            prune(t);
            continue;
        }
        t += step;
        ++traj.candidates;
        for (int i = 0; i < d; ++i) lam[i] = eval_baseline(model.baseline[i], t);
        for (const auto& ev : active)
            for (int i = 0; i < d; ++i)
                lam[i] += eval_kernel(model.kernel(i, ev.component), t - ev.t);
        double total = 0.0;
        for (int i = 0; i < d; ++i) total += lam[i];
        if (total > bound * (1.0 + 1e-9))
            throw std::logic_error("simulate_thinning: intensity exceeded its certified bound");
        if (uniform01(rng) * bound <= total) {
            ++traj.accepted;
            double u = uniform01(rng) * total;
            int mark = d - 1;
            for (int i = 0; i < d; ++i) {
                u -= lam[i];
                if (u <= 0.0) {
                    mark = i;
                    break;
                }
            }
            traj.events.push_back(Event{t, mark, -1});
            active.push_back(ActiveEvent{t, mark});
        }
        prune(t);
    }
    return traj;
}

Trajectory branching_impl(const ModelSpec& model, double T, std::mt19937_64& rng,
                          const BranchingOptions& opts) {
    const int d = model.d;
    Trajectory traj;
    traj.horizon = T;

    // Generation 0: independent inhomogeneous Poisson per component, thinned
    // against the baseline sup.
    std::vector<Event> frontier;
    for (int i = 0; i < d; ++i) {
        const double sup = baseline_sup(model.baseline[i]);
        if (sup <= 0.0) continue;
        double t = 0.0;
        while (true) {
            t += std::exponential_distribution<double>(sup)(rng);
            if (t > T) break;
            if (uniform01(rng) * sup <= eval_baseline(model.baseline[i], t))
                frontier.push_back(Event{t, i, 0});
        }
    }

    traj.events = frontier;
    std::size_t head = 0;
    while (head < frontier.size()) {
        const Event parent = frontier[head++];
        const double remaining = T - parent.t;
        if (remaining <= 0.0) continue;
        for (int i = 0; i < d; ++i) {
            const auto& spec = model.kernel(i, parent.component);
            const double mean = kernel_primitive(spec, remaining);
            if (mean <= 0.0) continue;
            const int n = std::poisson_distribution<int>(mean)(rng);
            for (int c = 0; c < n; ++c) {
                const double offset = sample_offset(spec, remaining, rng);
                const Event child{parent.t + offset, i, parent.generation + 1};
                frontier.push_back(child);
                traj.events.push_back(child);
                if (traj.events.size() > opts.max_events)
                    throw std::runtime_error("simulate_branching: explosion guard tripped (" +
                                             std::to_string(opts.max_events) + " events)");
            }
        }
    }
    std::sort(traj.events.begin(), traj.events.end(), [](const Event& a, const Event& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.component != b.component) return a.component < b.component;
        return a.generation < b.generation;
    });
    return traj;
}

Trajectory run_stream(const ModelSpec& model, double T, std::uint64_t seed,
                      std::uint64_t run, SimMethod method) {
    auto rng = make_stream(seed, run);
    if (method == SimMethod::thinning) {
        Trajectory t = thinning_impl(model, T, rng, ThinningOptions{});
        t.seed = seed;
        return t;
    }
    Trajectory t = branching_impl(model, T, rng, BranchingOptions{});
    t.seed = seed;
    return t;
}

} // namespace

Trajectory simulate_thinning(const ModelSpec& model, double T, std::uint64_t seed,
                             const ThinningOptions& opts) {
    validate(model);
    if (!(T > 0.0)) throw std::invalid_argument("simulate_thinning: T must be > 0");
    auto rng = make_stream(seed, 0);
    Trajectory t = thinning_impl(model, T, rng, opts);
    t.seed = seed;
    return t;
}

Trajectory simulate_branching(const ModelSpec& model, double T, std::uint64_t seed,
                              const BranchingOptions& opts) {
    validate(model);
    if (!(T > 0.0)) throw std::invalid_argument("simulate_branching: T must be > 0");
    for (int i = 0; i < model.d; ++i)
        for (int j = 0; j < model.d; ++j)
            if (!std::isfinite(kernel_primitive(model.kernel(i, j), T)))
                throw std::invalid_argument("simulate_branching: kernel not integrable on [0, T]");
    auto rng = make_stream(seed, 0);
    Trajectory t = branching_impl(model, T, rng, opts);
    t.seed = seed;
    return t;
}

std::vector<double> count_curve(const Trajectory& traj, const Grid& grid, int d) {
    std::vector<double> out(static_cast<std::size_t>(grid.nodes()) * d, 0.0);
    std::vector<double> counts(d, 0.0);
    std::size_t e = 0;
    for (int m = 0; m <= grid.M; ++m) {
        const double t = grid.node(m);
        while (e < traj.events.size() && traj.events[e].t <= t) {
            counts[traj.events[e].component] += 1.0;
            ++e;
        }
        for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(m) * d + i] = counts[i];
    }
    return out;
}

std::vector<double> intensity_curve(const ModelSpec& model, const Trajectory& traj,
                                    const Grid& grid) {
    const int d = model.d;
    std::vector<double> out(static_cast<std::size_t>(grid.nodes()) * d, 0.0);
    std::size_t first = 0;
    for (int m = 0; m <= grid.M; ++m) {
        const double t = grid.node(m);
        for (int i = 0; i < d; ++i)
            out[static_cast<std::size_t>(m) * d + i] = eval_baseline(model.baseline[i], t);
        for (std::size_t e = first; e < traj.events.size(); ++e) {
            const auto& ev = traj.events[e];
            if (ev.t >= t) break;
            for (int i = 0; i < d; ++i)
                out[static_cast<std::size_t>(m) * d + i] +=
                    eval_kernel(model.kernel(i, ev.component), t - ev.t);
        }
    }
    return out;
}

// --- Monte Carlo -------------------------------------------------------------

namespace {

// Runs R trajectories on per-run streams and collects one row of width
// statistics per run.
template <typename RowFn>
std::vector<double> mc_rows(const ModelSpec& model, double T, long R, std::uint64_t seed,
                            SimMethod method, int width, RowFn row_fn) {
    if (R < 2) throw std::invalid_argument("mc: need R >= 2 runs");
    validate(model);
    std::vector<double> rows(static_cast<std::size_t>(R) * width, 0.0);
    parallel_for(0, static_cast<int>(R), [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            const Trajectory traj =
                run_stream(model, T, seed, static_cast<std::uint64_t>(r), method);
            row_fn(traj, &rows[static_cast<std::size_t>(r) * width]);
        }
    });
    return rows;
}

void mean_and_se(const std::vector<double>& rows, long R, int width, McEstimate& out) {
    out.value.assign(width, 0.0);
    out.stderr_.assign(width, 0.0);
    for (long r = 0; r < R; ++r)
        for (int c = 0; c < width; ++c) out.value[c] += rows[static_cast<std::size_t>(r) * width + c];
    for (int c = 0; c < width; ++c) out.value[c] /= static_cast<double>(R);
    for (long r = 0; r < R; ++r)
        for (int c = 0; c < width; ++c) {
            const double dev = rows[static_cast<std::size_t>(r) * width + c] - out.value[c];
            out.stderr_[c] += dev * dev;
        }
    for (int c = 0; c < width; ++c)
        out.stderr_[c] = std::sqrt(out.stderr_[c] / (static_cast<double>(R) - 1.0) /
                                   static_cast<double>(R));
}

std::vector<double> counts_at(const Trajectory& traj, int d, double t) {
    std::vector<double> n(d, 0.0);
    for (const auto& ev : traj.events) {
        if (ev.t > t) break;
        n[ev.component] += 1.0;
    }
    return n;
}

} // namespace

McEstimate mc_mean(const ModelSpec& model, double T, const std::vector<double>& times,
                   long R, std::uint64_t seed, SimMethod method) {
    const int d = model.d;
    const int width = static_cast<int>(times.size()) * d;
    const auto rows = mc_rows(model, T, R, seed, method, width,
                              [&](const Trajectory& traj, double* row) {
                                  for (std::size_t s = 0; s < times.size(); ++s) {
                                      const auto n = counts_at(traj, d, times[s]);
                                      for (int i = 0; i < d; ++i) row[s * d + i] = n[i];
                                  }
                              });
    McEstimate out;
    out.statistic = "mean";
    out.R = R;
    out.seed = seed;
    mean_and_se(rows, R, width, out);
    return out;
}

McEstimate mc_covariance(const ModelSpec& model, double T, int k, int l, double t1,
                         double t2, long R, std::uint64_t seed, SimMethod method) {
    const auto rows = mc_rows(model, T, R, seed, method, 2,
                              [&](const Trajectory& traj, double* row) {
                                  row[0] = counts_at(traj, model.d, t1)[k];
                                  row[1] = counts_at(traj, model.d, t2)[l];
                              });
    double mx = 0.0, my = 0.0;
    for (long r = 0; r < R; ++r) {
        mx += rows[2 * r];
        my += rows[2 * r + 1];
    }
    mx /= static_cast<double>(R);
    my /= static_cast<double>(R);
    double cov = 0.0;
    for (long r = 0; r < R; ++r) cov += (rows[2 * r] - mx) * (rows[2 * r + 1] - my);
    cov /= static_cast<double>(R) - 1.0;
    // Moment estimator of Var(sample covariance).
    double var_c = 0.0;
    for (long r = 0; r < R; ++r) {
        const double z = (rows[2 * r] - mx) * (rows[2 * r + 1] - my) - cov;
        var_c += z * z;
    }
    var_c /= (static_cast<double>(R) - 1.0);
    McEstimate out;
    out.statistic = "covariance";
    out.R = R;
    out.seed = seed;
    out.value = {cov};
    out.stderr_ = {std::sqrt(var_c / static_cast<double>(R))};
    return out;
}

McEstimate mc_pmf(const ModelSpec& model, double T, double t, int L_max, long R,
                  std::uint64_t seed, SimMethod method) {
    const Lattice lat(model.d, L_max);
    const int width = lat.size() + 1; // trailing overflow bucket
    const auto rows = mc_rows(model, T, R, seed, method, width,
                              [&](const Trajectory& traj, double* row) {
                                  const auto n = counts_at(traj, model.d, t);
                                  std::vector<int> l(model.d);
                                  for (int i = 0; i < model.d; ++i) l[i] = static_cast<int>(n[i]);
                                  const int id = lat.index_of(l);
                                  if (id >= 0)
                                      row[id] = 1.0;
                                  else
                                      row[width - 1] = 1.0;
                              });
    McEstimate out;
    out.statistic = "pmf";
    out.R = R;
    out.seed = seed;
    mean_and_se(rows, R, width, out);
    return out;
}

McEstimate mc_laplace(const ModelSpec& model, double T, const std::vector<double>& a,
                      double t, long R, std::uint64_t seed, SimMethod method) {
    if (static_cast<int>(a.size()) != model.d)
        throw std::invalid_argument("mc_laplace: a must be a d-vector");
    const auto rows = mc_rows(model, T, R, seed, method, 1,
                              [&](const Trajectory& traj, double* row) {
                                  const auto n = counts_at(traj, model.d, t);
                                  double s = 0.0;
                                  for (int i = 0; i < model.d; ++i) s += a[i] * n[i];
                                  row[0] = std::exp(-s);
                              });
    McEstimate out;
    out.statistic = "laplace";
    out.R = R;
    out.seed = seed;
    mean_and_se(rows, R, 1, out);
    return out;
}

std::vector<long> mc_counts_at_horizon(const ModelSpec& model, double T, long R,
                                       std::uint64_t seed, SimMethod method) {
    const int d = model.d;
    const auto rows = mc_rows(model, T, R, seed, method, d,
                              [&](const Trajectory& traj, double* row) {
                                  const auto n = counts_at(traj, d, T);
                                  for (int i = 0; i < d; ++i) row[i] = n[i];
                              });
    std::vector<long> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = static_cast<long>(rows[i]);
    return out;
}

} // namespace hawkes
