#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hawkes/convolve.hpp"
#include "hawkes/model.hpp"
#include "hawkes/presets.hpp"
#include "oracles.hpp"

using namespace hawkes;

namespace {

GridFn constant_fn(const Grid& g, int rows, int cols, double value) {
    GridFn f(g, rows, cols);
    for (auto& v : f.v) v = value;
    return f;
}

} // namespace

TEST_CASE("scalar convolution quadrature") {
    const Grid g(4.0, 4); // tau = 1
    const GridFn ones = constant_fn(g, 1, 1, 1.0);
    const GridFn c = conv(ones, ones);
    CHECK(c.at(0, 0, 0) == 0.0);
    CHECK(c.at(3, 0, 0) == doctest::Approx(3.0));

    const GridFn zero = constant_fn(g, 1, 1, 0.0);
    const GridFn cz = conv(ones, zero);
    for (double v : cz.v) CHECK(v == 0.0);

    Grid g2(4.0, 8);
    CHECK_THROWS_AS(conv(ones, constant_fn(g2, 1, 1, 1.0)), std::invalid_argument);
}

TEST_CASE("matrix convolution against brute-force entry oracle") {
    const Grid g(1.0, 50);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GridFn f(g, 2, 2), h(g, 2, 2);
    for (auto& v : f.v) v = u(rng);
    for (auto& v : h.v) v = u(rng);
    const GridFn c = conv(f, h);
    // entry (0,1) must equal sum_l f_{0l} * h_{l1} with scalar convolutions
    for (int m : {1, 10, 37, 50}) {
        double want = 0.0;
        for (int l = 0; l < 2; ++l) {
            std::vector<double> fl(g.M + 1), hl(g.M + 1);
            for (int r = 0; r <= g.M; ++r) {
                fl[r] = f.at(r, 0, l);
                hl[r] = h.at(r, l, 1);
            }
            want += oracles::conv_scalar(fl, hl, g.tau())[m];
        }
        CHECK(c.at(m, 0, 1) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("grid commutativity within quadrature slack") {
    const Grid g(2.0, 200);
    const ModelSpec m = seasonal2d_model();
    const GridFn phi = sample_kernel_matrix(m, g);
    const GridFn Phi = sample_kernel_primitive(m, g);
    const GridFn a = conv(phi, Phi);
    const GridFn b = conv(Phi, phi);
    double sup_phi = max_abs_entry(phi), sup_Phi = max_abs_entry(Phi);
    const double slack = 2.0 * g.tau() * 2 * sup_phi * sup_Phi * (1.0 + g.T * sup_phi) * 10.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) CHECK(std::fabs(a.v[i] - b.v[i]) <= slack);
}

TEST_CASE("fundamental series closed forms") {
    SUBCASE("zero kernel") {
        const Grid g(1.0, 10);
        const GridFn zero(g, 2, 2);
        const auto s = fundamental_series(zero, {.K = 5});
        CHECK(s.K == 5);
        for (double v : s.psi.v) CHECK(v == 0.0);
    }

    SUBCASE("constant step, psi(t) = w e^{tw}") {
        const Grid g(2.0, 2000);
        ModelSpec m = poisson_model(1, 0.0);
        m.excitation = {ConstantStepKernel{0.5}};
        const auto s = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-12});
        CHECK(s.converged);
        const int m1 = 1000; // t = 1
        CHECK(s.psi.at(m1, 0, 0) ==
              doctest::Approx(0.5 * std::exp(0.5)).epsilon(5 * g.tau()));
    }

    SUBCASE("gamma kappa=1, psi(t) = w e^{-(1-w)t} (renewal-equation solution)") {
        const Grid g(3.0, 3000);
        ModelSpec m = poisson_model(1, 0.0);
        m.excitation = {GammaKernel{0.5, 1.0, 1.0}};
        const auto s = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-12});
        const int m2 = 2000; // t = 2
        // Laplace-domain check: phi_hat = w/(1+s), psi_hat = phi_hat/(1-phi_hat)
        // = w/(1+s-w), so psi(t) = w e^{-(1-w)t}; at w=1/2, t=2 this is 1/(2e).
        const double expect = 0.5 * std::exp(-1.0);
        CHECK(expect == doctest::Approx(0.18394).epsilon(1e-4)); // frozen spot value
        CHECK(s.psi.at(m2, 0, 0) == doctest::Approx(expect).epsilon(5 * g.tau()));
    }
}

TEST_CASE("fundamental series monotone in K and tail estimate") {
    const Grid g(2.0, 200);
    const GridFn phi = sample_kernel_matrix(seasonal2d_model(), g);
    const auto s3 = fundamental_series(phi, {.K = 3});
    const auto s4 = fundamental_series(phi, {.K = 4});
    for (std::size_t i = 0; i < s3.psi.v.size(); ++i) CHECK(s4.psi.v[i] >= s3.psi.v[i] - 1e-15);

    const auto st = fundamental_series(phi, {.tolerance = 1e-10});
    CHECK(st.converged);
    CHECK(st.last_term_norm < 1e-10);
    for (double t : st.tail_estimate) CHECK(t < 1e-9);

    // hard cap reports non-convergence
    const auto scap = fundamental_series(phi, {.tolerance = 1e-30, .max_terms = 3});
    CHECK_FALSE(scap.converged);
}

TEST_CASE("halving tau roughly halves the constant-step error") {
    ModelSpec m = poisson_model(1, 0.0);
    m.excitation = {ConstantStepKernel{0.5}};
    auto err = [&](int M) {
        const Grid g(1.0, M);
        const auto s = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-13});
        double worst = 0.0;
        for (int node = 1; node <= g.M; ++node) {
            const double t = g.node(node);
            worst = std::max(worst, std::fabs(s.psi.at(node, 0, 0) - 0.5 * std::exp(0.5 * t)));
        }
        return worst;
    };
    const double e1 = err(200), e2 = err(400);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 0.8);
}

TEST_CASE("trapezoid rule is second order on smooth data") {
    // (e^u * cos)(t) = (e^t - cos t + sin t) / 2
    auto err = [](int M, ConvRule rule) {
        const Grid g(1.0, M);
        GridFn f(g, 1, 1), h(g, 1, 1);
        for (int m = 0; m <= g.M; ++m) {
            f.at(m, 0, 0) = std::exp(g.node(m));
            h.at(m, 0, 0) = std::cos(g.node(m));
        }
        const GridFn c = conv(f, h, rule);
        double worst = 0.0;
        for (int m = 0; m <= g.M; ++m) {
            const double t = g.node(m);
            const double want = 0.5 * (std::exp(t) - std::cos(t) + std::sin(t));
            worst = std::max(worst, std::fabs(c.at(m, 0, 0) - want));
        }
        return worst;
    };
    const double r1 = err(100, ConvRule::rectangle), r2 = err(200, ConvRule::rectangle);
    const double t1 = err(100, ConvRule::trapezoid), t2 = err(200, ConvRule::trapezoid);
    CHECK(std::log2(r1 / r2) > 0.8);  // first order
    CHECK(std::log2(t1 / t2) > 1.8);  // second order
    CHECK(t1 < r1);
}

TEST_CASE("diag_conv point evaluation") {
    const Grid g(6.0, 6); // tau = 1
    SUBCASE("unit psi against constant surface") {
        const GridFn psi = [&] {
            GridFn p(g, 1, 1);
            for (auto& v : p.v) v = 1.0;
            return p;
        }();
        auto ones2 = [](int, int) { return std::vector<double>{1.0}; };
        const auto v = diag_conv_point(psi, ones2, 1, 2, 5);
        CHECK(v[0] == doctest::Approx(2.0));
        CHECK_THROWS_AS(diag_conv_point(psi, ones2, 1, 5, 2), std::invalid_argument);
    }
    SUBCASE("zero psi annihilates") {
        const GridFn psi(g, 1, 1);
        auto f2 = [](int a, int b) { return std::vector<double>{1.0 * a * b}; };
        const auto v = diag_conv_point(psi, f2, 1, 3, 4);
        CHECK(v[0] == 0.0);
    }
    SUBCASE("product surface against 1-d quadrature oracle") {
        const Grid fine(2.0, 400);
        GridFn psi(fine, 1, 1);
        for (int m = 0; m <= fine.M; ++m) psi.at(m, 0, 0) = 0.7 * std::exp(-1.3 * fine.node(m));
        const double t1 = 1.5, t2 = 2.0;
        const int m1 = 300, m2 = 400;
        auto f2 = [&](int a, int b) {
            return std::vector<double>{fine.node(a) * fine.node(b)};
        };
        const auto got = diag_conv_point(psi, f2, 1, m1, m2);
        const double want = oracles::simpson(
            [&](double w) { return 0.7 * std::exp(-1.3 * w) * (t1 - w) * (t2 - w); }, 0.0, t1);
        CHECK(got[0] == doctest::Approx(want).epsilon(0.02));
    }
}
