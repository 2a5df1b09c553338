#include "hawkes/model.hpp"

#include <algorithm>
#include <cmath>

#include "hawkes/math_util.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double tabulated_value(const std::vector<double>& values, double t_end, double t) {
    if (values.empty() || t >= t_end) return 0.0;
    if (values.size() == 1) return values[0];
    const double step = t_end / static_cast<double>(values.size() - 1);
    const double x = t / step;
    const auto idx = static_cast<std::size_t>(x);
    if (idx + 1 >= values.size()) return values.back();
    const double frac = x - static_cast<double>(idx);
    return values[idx] * (1.0 - frac) + values[idx + 1] * frac;
}

double tabulated_primitive(const std::vector<double>& values, double t_end, double t) {
    if (values.size() < 2) return values.empty() ? 0.0 : values[0] * std::min(t, t_end);
    const double step = t_end / static_cast<double>(values.size() - 1);
    const double tc = std::min(t, t_end);
    double acc = 0.0;
    const auto full = static_cast<std::size_t>(tc / step);
    for (std::size_t k = 0; k + 1 < values.size() && k < full; ++k)
        acc += 0.5 * (values[k] + values[k + 1]) * step;
    const double rem = tc - static_cast<double>(std::min(full, values.size() - 1)) * step;
    if (rem > 0.0 && full + 1 < values.size()) {
        const double a = values[full];
        const double b = tabulated_value(values, t_end, tc);
        acc += 0.5 * (a + b) * rem;
    }
    return acc;
}

double tabulated_max(const std::vector<double>& values) {
    double mx = 0.0;
    for (double x : values) mx = std::max(mx, x);
    return mx;
}

void check_time(double t) {
    if (t < 0.0) throw std::invalid_argument("evaluation time must be >= 0");
}

} // namespace

// --- validation -------------------------------------------------------------

void validate(const BaselineSpec& spec) {
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantBaseline>) {
                require(std::isfinite(s.level) && s.level >= 0.0,
                        "constant baseline: level must be >= 0");
            } else if constexpr (std::is_same_v<S, SinusoidalBaseline>) {
                require(s.a > 0.0, "sinusoidal baseline: a must be > 0");
                require(s.a > std::fabs(s.b), "sinusoidal baseline: need a > |b|");
            } else if constexpr (std::is_same_v<S, TabulatedBaseline>) {
                require(s.t_end > 0.0, "tabulated baseline: t_end must be > 0");
                for (double v : s.values)
                    require(std::isfinite(v) && v >= 0.0,
                            "tabulated baseline: values must be >= 0");
            }
        },
        spec);
}

void validate(const KernelSpec& spec) {
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>) {
                require(s.alpha >= 0.0, "exponential kernel: alpha must be >= 0");
                require(s.beta > 0.0, "exponential kernel: beta must be > 0");
            } else if constexpr (std::is_same_v<S, GammaKernel>) {
                require(s.w >= 0.0, "gamma kernel: w must be >= 0");
                require(s.kappa > 0.0, "gamma kernel: kappa must be > 0");
                require(s.theta > 0.0, "gamma kernel: theta must be > 0");
            } else if constexpr (std::is_same_v<S, ConstantStepKernel>) {
                require(s.w >= 0.0, "constant step kernel: w must be >= 0");
            } else if constexpr (std::is_same_v<S, BetaLikeKernel>) {
                require(s.alpha >= 0.0, "beta-like kernel: alpha must be >= 0");
                require(s.beta >= 0.0, "beta-like kernel: beta must be >= 0");
                require(s.gamma > 0.0, "beta-like kernel: gamma must be > 0");
                require(s.rho > -1.0, "beta-like kernel: rho must be > -1");
            } else if constexpr (std::is_same_v<S, TabulatedKernel>) {
                require(s.t_end > 0.0, "tabulated kernel: t_end must be > 0");
                for (double v : s.values)
                    require(std::isfinite(v) && v >= 0.0,
                            "tabulated kernel: values must be >= 0");
            }
        },
        spec);
}

void validate(const ModelSpec& model) {
    require(model.d >= 1, "model: dimension must be >= 1");
    require(static_cast<int>(model.baseline.size()) == model.d,
            "model: baseline must have d entries");
    require(static_cast<int>(model.excitation.size()) == model.d * model.d,
            "model: excitation must be d x d");
    for (const auto& b : model.baseline) validate(b);
    for (const auto& k : model.excitation) validate(k);
}

// --- pointwise evaluation ---------------------------------------------------

double eval_baseline(const BaselineSpec& spec, double t) {
    check_time(t);
    return std::visit(
        [t](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantBaseline>) return s.level;
            if constexpr (std::is_same_v<S, SinusoidalBaseline>)
                return s.a + s.b * std::sin(s.c * t);
            if constexpr (std::is_same_v<S, TabulatedBaseline>)
                return tabulated_value(s.values, s.t_end, t);
            return 0.0;
        },
        spec);
}

double eval_kernel(const KernelSpec& spec, double t) {
    check_time(t);
    return std::visit(
        [t](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>)
                return s.alpha * std::exp(-s.beta * t);
            if constexpr (std::is_same_v<S, GammaKernel>) {
                if (s.w == 0.0) return 0.0;
                if (t == 0.0) {
                    if (s.kappa > 1.0) return 0.0;
                    if (s.kappa == 1.0) return s.w / s.theta;
                    return kInf;
                }
                const double log_f = (s.kappa - 1.0) * std::log(t) - t / s.theta -
                                     std::lgamma(s.kappa) - s.kappa * std::log(s.theta);
                return s.w * std::exp(log_f);
            }
            if constexpr (std::is_same_v<S, ConstantStepKernel>) return s.w;
            if constexpr (std::is_same_v<S, BetaLikeKernel>) {
                if (t > s.gamma) return 0.0;
                return s.alpha * std::pow(t, s.beta) * std::pow(s.gamma - t, s.rho);
            }
            if constexpr (std::is_same_v<S, TabulatedKernel>)
                return tabulated_value(s.values, s.t_end, t);
            return 0.0;
        },
        spec);
}

double baseline_primitive(const BaselineSpec& spec, double t) {
    check_time(t);
    return std::visit(
        [t](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantBaseline>) return s.level * t;
            if constexpr (std::is_same_v<S, SinusoidalBaseline>) {
                if (s.c == 0.0) return s.a * t;
                return s.a * t + (s.b / s.c) * (1.0 - std::cos(s.c * t));
            }
            if constexpr (std::is_same_v<S, TabulatedBaseline>)
                return tabulated_primitive(s.values, s.t_end, t);
            return 0.0;
        },
        spec);
}

double kernel_primitive(const KernelSpec& spec, double t) {
    check_time(t);
    return std::visit(
        [t](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>)
                return s.alpha / s.beta * -std::expm1(-s.beta * t);
            if constexpr (std::is_same_v<S, GammaKernel>)
                return t == 0.0 ? 0.0 : s.w * gamma_p(s.kappa, t / s.theta);
            if constexpr (std::is_same_v<S, ConstantStepKernel>) return s.w * t;
            if constexpr (std::is_same_v<S, BetaLikeKernel>) {
                const double hi = std::min(t, s.gamma);
                if (hi <= 0.0 || s.alpha == 0.0) return 0.0;
                // Substitution u^2 = gamma - x regularizes the (gamma-x)^rho
                // endpoint for rho in (-1, 0).
                const double a = std::sqrt(s.gamma - hi);
                const double b = std::sqrt(s.gamma);
                auto f = [&s](double u) {
                    const double x = s.gamma - u * u;
                    return 2.0 * u * s.alpha * std::pow(x, s.beta) *
                           std::pow(u * u, s.rho);
                };
                return gauss_legendre(f, a, b, 128);
            }
            if constexpr (std::is_same_v<S, TabulatedKernel>)
                return tabulated_primitive(s.values, s.t_end, t);
            return 0.0;
        },
        spec);
}

double kernel_mass(const KernelSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>) return s.alpha / s.beta;
            if constexpr (std::is_same_v<S, GammaKernel>) return s.w;
            if constexpr (std::is_same_v<S, ConstantStepKernel>)
                return s.w > 0.0 ? kInf : 0.0;
            if constexpr (std::is_same_v<S, BetaLikeKernel>)
                return s.alpha * beta_fn(s.beta + 1.0, s.rho + 1.0) *
                       std::pow(s.gamma, s.beta + s.rho + 1.0);
            if constexpr (std::is_same_v<S, TabulatedKernel>)
                return tabulated_primitive(s.values, s.t_end, s.t_end);
            return 0.0;
        },
        spec);
}

double kernel_sup(const KernelSpec& spec, double lo, double hi) {
    if (!(0.0 <= lo && lo <= hi)) throw std::invalid_argument("kernel_sup: need 0 <= lo <= hi");
    return std::visit(
        [lo, hi](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>)
                return s.alpha * std::exp(-s.beta * lo); // decreasing
            if constexpr (std::is_same_v<S, GammaKernel>) {
                if (s.w == 0.0) return 0.0;
                const double mode = s.kappa >= 1.0 ? (s.kappa - 1.0) * s.theta : 0.0;
                if (s.kappa < 1.0) {
                    // Decreasing but unbounded at 0; certify with the value at lo
                    // when lo > 0, otherwise report +inf.
                    return lo > 0.0 ? eval_kernel(KernelSpec(s), lo) : kInf;
                }
                if (lo >= mode) return eval_kernel(KernelSpec(s), lo);
                if (hi <= mode) return eval_kernel(KernelSpec(s), hi);
                return eval_kernel(KernelSpec(s), mode);
            }
            if constexpr (std::is_same_v<S, ConstantStepKernel>) return s.w;
            if constexpr (std::is_same_v<S, BetaLikeKernel>) {
                if (lo > s.gamma) return 0.0;
                const double h = std::min(hi, s.gamma);
                // Unimodal: maximum at an endpoint or at the interior mode
                // beta*gamma / (beta + rho).
                double best = std::max(eval_kernel(KernelSpec(s), lo),
                                       eval_kernel(KernelSpec(s), h));
                if (s.beta + s.rho > 0.0) {
                    const double mode = s.beta * s.gamma / (s.beta + s.rho);
                    if (mode > lo && mode < h)
                        best = std::max(best, eval_kernel(KernelSpec(s), mode));
                }
                if (s.rho < 0.0 && h >= s.gamma) return kInf; // endpoint blow-up
                return best;
            }
            if constexpr (std::is_same_v<S, TabulatedKernel>) return tabulated_max(s.values);
            return 0.0;
        },
        spec);
}

double kernel_support_cutoff(const KernelSpec& spec, double eps) {
    return std::visit(
        [eps](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>) {
                if (s.alpha <= eps) return 0.0;
                return std::log(s.alpha / eps) / s.beta;
            }
            if constexpr (std::is_same_v<S, GammaKernel>) {
                if (s.w == 0.0) return 0.0;
                // Walk outward from the mode until the density stays below eps.
                double t = std::max((s.kappa) * s.theta, s.theta);
                while (eval_kernel(KernelSpec(s), t) > eps) t *= 1.5;
                return t;
            }
            if constexpr (std::is_same_v<S, ConstantStepKernel>)
                return s.w > eps ? kInf : 0.0;
            if constexpr (std::is_same_v<S, BetaLikeKernel>) return s.gamma;
            if constexpr (std::is_same_v<S, TabulatedKernel>) return s.t_end;
            return 0.0;
        },
        spec);
}

double baseline_sup(const BaselineSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantBaseline>) return s.level;
            if constexpr (std::is_same_v<S, SinusoidalBaseline>) return s.a + std::fabs(s.b);
            if constexpr (std::is_same_v<S, TabulatedBaseline>) return tabulated_max(s.values);
            return 0.0;
        },
        spec);
}

// --- stability ---------------------------------------------------------------

StabilityReport stability_margin(const ModelSpec& model) {
    validate(model);
    const int d = model.d;
    StabilityReport rep;
    std::vector<double> mass(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double m = kernel_mass(model.kernel(i, j));
            mass[static_cast<std::size_t>(i) * d + j] = m;
            rep.alpha_max = std::max(rep.alpha_max, m);
        }
    rep.d_alpha = d * rep.alpha_max;
    rep.stable = rep.d_alpha < 1.0;
    if (!std::isfinite(rep.alpha_max)) {
        rep.spectral_radius = kInf;
        return rep;
    }
    // Power iteration on the non-negative mass matrix.
    std::vector<double> x(d, 1.0);
    double lam = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> y(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) y[i] += mass[static_cast<std::size_t>(i) * d + j] * x[j];
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, std::fabs(v));
        if (norm == 0.0) {
            lam = 0.0;
            break;
        }
        for (double& v : y) v /= norm;
        if (std::fabs(norm - lam) < 1e-13 * std::max(1.0, norm)) {
            lam = norm;
            break;
        }
        lam = norm;
        x = std::move(y);
    }
    rep.spectral_radius = lam;
    return rep;
}

// --- grid sampling ------------------------------------------------------------

GridFn sample_kernel_matrix(const ModelSpec& model, const Grid& grid) {
    GridFn f(grid, model.d, model.d);
    for (int i = 0; i < model.d; ++i)
        for (int j = 0; j < model.d; ++j) {
            const auto& k = model.kernel(i, j);
            for (int m = 0; m <= grid.M; ++m) {
                double v = eval_kernel(k, grid.node(m));
                if (m == 0 && !std::isfinite(v)) v = 0.0;
                f.at(m, i, j) = v;
            }
        }
    return f;
}

GridFn sample_kernel_primitive(const ModelSpec& model, const Grid& grid) {
    GridFn f(grid, model.d, model.d);
    for (int i = 0; i < model.d; ++i)
        for (int j = 0; j < model.d; ++j) {
            const auto& k = model.kernel(i, j);
            for (int m = 1; m <= grid.M; ++m) f.at(m, i, j) = kernel_primitive(k, grid.node(m));
        }
    return f;
}

GridFn sample_baseline(const ModelSpec& model, const Grid& grid) {
    GridFn f(grid, model.d, 1);
    for (int i = 0; i < model.d; ++i)
        for (int m = 0; m <= grid.M; ++m) f.at(m, i, 0) = eval_baseline(model.baseline[i], grid.node(m));
    return f;
}

GridFn sample_baseline_primitive(const ModelSpec& model, const Grid& grid) {
    GridFn f(grid, model.d, 1);
    for (int i = 0; i < model.d; ++i)
        for (int m = 1; m <= grid.M; ++m)
            f.at(m, i, 0) = baseline_primitive(model.baseline[i], grid.node(m));
    return f;
}

} // namespace hawkes
