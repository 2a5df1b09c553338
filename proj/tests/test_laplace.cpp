#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hawkes/covariance.hpp"
#include "hawkes/counts.hpp"
#include "hawkes/laplace.hpp"
#include "hawkes/presets.hpp"
#include "oracles.hpp"

using namespace hawkes;

TEST_CASE("laplace1 basics") {
    SUBCASE("a = 0 gives all ones") {
        const Grid g(5.0, 500);
        const auto r = laplace1(seasonal2d_model(), {0.0, 0.0}, g);
        for (int m = 0; m <= g.M; ++m) {
            CHECK(r.full[m] == doctest::Approx(1.0));
            CHECK(r.base[0][m] == doctest::Approx(1.0));
            CHECK(r.base[1][m] == doctest::Approx(1.0));
        }
    }
    SUBCASE("poisson closed form is exact on the grid") {
        const Grid g(2.0, 200);
        const auto r = laplace1(poisson_model(1, 1.0), {1.0}, g);
        for (int m = 0; m <= g.M; ++m)
            CHECK(r.full[m] ==
                  doctest::Approx(std::exp(g.node(m) * (std::exp(-1.0) - 1.0))).epsilon(1e-14));
        CHECK(r.full[100] == doctest::Approx(0.53146).epsilon(1e-4));
    }
    SUBCASE("bounds and monotonicity in a") {
        const Grid g(5.0, 250);
        const ModelSpec m = seasonal2d_model();
        const auto r1 = laplace1(m, {0.5, 0.7}, g);
        const auto r2 = laplace1(m, {0.9, 0.8}, g);
        for (int node = 0; node <= g.M; ++node) {
            CHECK(r1.full[node] > 0.0);
            CHECK(r1.full[node] <= 1.0);
            CHECK(r2.full[node] <= r1.full[node] + 1e-15);
            for (int j = 0; j < 2; ++j) {
                CHECK(r1.base[j][node] > 0.0);
                CHECK(r1.base[j][node] <= 1.0);
                CHECK(r2.base[j][node] <= r1.base[j][node] + 1e-15);
            }
        }
    }
    SUBCASE("a -> infinity converges to the zero-count probability") {
        const Grid g(4.0, 400);
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const auto zo = zero_one_probs(m, g);
        const auto r = laplace1(m, {40.0}, g);
        for (int node = 0; node <= g.M; node += 40) {
            CHECK(r.full[node] >= zo.p0[0][node] * (1.0 - 1e-9));
            CHECK(r.full[node] <= zo.p0[0][node] * (1.0 + 20.0 * g.tau()));
            CHECK(r.base[0][node] >= zo.p0[1][node] * (1.0 - 1e-9));
            CHECK(r.base[0][node] <= zo.p0[1][node] * (1.0 + 20.0 * g.tau()));
        }
    }
    SUBCASE("mis-signed hook escapes the unit bound (negative control)") {
        const Grid g(2.0, 100);
        LaplaceOptions bad;
        bad.exponent_sign = +1.0;
        const auto r = laplace1(exp1d_model(1.0, 0.5, 1.0), {1.0}, g, bad);
        double mx = 0.0;
        for (double v : r.full) mx = std::max(mx, v);
        CHECK(mx > 1.0);
    }
}

TEST_CASE("laplace1 derivative reproduces the mean") {
    const Grid g(5.0, 1000);
    const ModelSpec m = seasonal2d_model();
    const auto series = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-12});
    const auto mom = moment_table(m, series);
    const double h = 1e-4;
    for (int j = 0; j < 2; ++j) {
        std::vector<double> ap(2, 0.0), am(2, 0.0);
        ap[j] = h;
        am[j] = -h;
        const auto Lp = laplace1(m, ap, g);
        const auto Lm = laplace1(m, am, g);
        for (int node : {200, 500, 1000}) {
            const double deriv = -(std::log(Lp.full[node]) - std::log(Lm.full[node])) / (2 * h);
            CHECK(deriv == doctest::Approx(mom.M_full.at(node, j, 0)).epsilon(1e-3));
        }
    }
}

TEST_CASE("laplace2 basics") {
    const ModelSpec m = seasonal2d_model();
    const Grid g(4.0, 200);
    SUBCASE("a = 0 gives ones") {
        const auto band = laplace2_band(m, {0.0, 0.0}, {0.0, 0.0}, g, 50);
        for (double v : band.full) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("boundary equals the one-time transform") {
        const std::vector<double> a1{0.4, 0.2}, a2{0.3, 0.6};
        const auto band = laplace2_band(m, a1, a2, g, 60);
        const auto one = laplace1(m, a2, g);
        CHECK(band.full[0] == doctest::Approx(one.full[60]).epsilon(1e-15));
        for (int j = 0; j < 2; ++j)
            CHECK(band.base[j][0] == doctest::Approx(one.base[j][60]).epsilon(1e-15));
    }
    SUBCASE("marginalization: a1 = 0 reduces to laplace1 at t2") {
        const std::vector<double> a2{0.3, 0.6};
        const auto one = laplace1(m, a2, g);
        for (int gap : {0, 30, 120}) {
            const auto band = laplace2_band(m, {0.0, 0.0}, a2, g, gap);
            for (int r = 0; r + gap <= g.M; r += 20) {
                CHECK(band.full[r] == doctest::Approx(one.full[r + gap]).epsilon(1e-13));
                for (int j = 0; j < 2; ++j)
                    CHECK(band.base[j][r] ==
                          doctest::Approx(one.base[j][r + gap]).epsilon(1e-13));
            }
        }
    }
    SUBCASE("point query matches the band") {
        const std::vector<double> a1{0.4, 0.2}, a2{0.3, 0.6};
        const auto band = laplace2_band(m, a1, a2, g, 80);
        const auto pt = laplace2_point(m, a1, a2, g, 40, 120);
        CHECK(pt[0] == doctest::Approx(band.full[40]));
        CHECK(pt[1] == doctest::Approx(band.base[0][40]));
        CHECK(pt[2] == doctest::Approx(band.base[1][40]));
    }
    SUBCASE("two-time poisson closed form") {
        // independent increments: L(a1, a2; t1, t2) =
        //   exp(t1 (e^{-(a1+a2)} - 1) + (t2 - t1)(e^{-a2} - 1))
        const Grid gp(2.0, 200);
        const auto band = laplace2_band(poisson_model(1, 1.0), {0.7}, {0.4}, gp, 50);
        for (int r : {0, 40, 150}) {
            const double t1 = gp.node(r), t2 = gp.node(r + 50);
            const double want =
                std::exp(t1 * (std::exp(-1.1) - 1.0) + (t2 - t1) * (std::exp(-0.4) - 1.0));
            CHECK(band.full[r] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("laplace2 mixed derivative reproduces the two-time second moment") {
    const Grid g(5.0, 500);
    const ModelSpec m = seasonal2d_model();
    const auto series = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-12});
    const auto mom = moment_table(m, series);
    const auto ctx = make_cov_context(m, series, mom);
    const double h = 1e-4;
    const int m1 = 250, m2 = 500;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            auto eval = [&](double s1, double s2) {
                std::vector<double> a1(2, 0.0), a2(2, 0.0);
                a1[k] = s1;
                a2[l] = s2;
                return laplace2_point(m, a1, a2, g, m1, m2)[0];
            };
            const double mixed =
                (eval(h, h) - eval(h, -h) - eval(-h, h) + eval(-h, -h)) / (4.0 * h * h);
            const double want = cov_point(ctx, 0, k, l, m1, m2) +
                                mom.M_full.at(m1, k, 0) * mom.M_full.at(m2, l, 0);
            CHECK(mixed == doctest::Approx(want).epsilon(1e-2));
        }
}

TEST_CASE("functional laplace transform") {
    const ModelSpec m = seasonal2d_model();
    const Grid g(4.0, 160);
    SUBCASE("zero cost gives ones") {
        const auto r = laplace_functional(m, StepCost{}, g);
        for (double v : r.full) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("single full-span step equals laplace1 exactly") {
        const std::vector<double> a{0.6, 0.3};
        StepCost cost;
        cost.breakpoints = {g.T};
        cost.steps = {a};
        const auto r = laplace_functional(m, cost, g);
        const auto one = laplace1(m, a, g);
        for (int node = 0; node <= g.M; ++node) {
            CHECK(r.full[node] == doctest::Approx(one.full[node]).epsilon(1e-14));
            for (int j = 0; j < 2; ++j)
                CHECK(r.base[j][node] == doctest::Approx(one.base[j][node]).epsilon(1e-14));
        }
    }
    SUBCASE("two steps reproduce laplace2 on matching breakpoints") {
        // cost v1 on (0, c1], v2 on (c1, c2] corresponds to a1 = v1 - v2,
        // a2 = v2 evaluated at (c1, c2)
        const std::vector<double> v1{0.9, 0.5}, v2{0.4, 0.2};
        const int m1 = 60, m2 = 160;
        StepCost cost;
        cost.breakpoints = {g.node(m1), g.node(m2)};
        cost.steps = {v1, v2};
        const auto r = laplace_functional(m, cost, g);
        std::vector<double> a1(2), a2(v2);
        for (int j = 0; j < 2; ++j) a1[j] = v1[j] - v2[j];
        const auto pt = laplace2_point(m, a1, a2, g, m1, m2);
        CHECK(r.full[m2] == doctest::Approx(pt[0]).epsilon(1e-13));
        for (int j = 0; j < 2; ++j)
            CHECK(r.base[j][m2] == doctest::Approx(pt[j + 1]).epsilon(1e-13));
    }
    SUBCASE("censored cost keeps the transform inside (0, 1]") {
        StepCost cost;
        cost.breakpoints = {1.0};
        cost.steps = {{0.5, 0.5}};
        const auto r = laplace_functional(m, cost, g);
        for (int node = 1; node <= g.M; ++node) {
            CHECK(r.full[node] > 0.0);
            CHECK(r.full[node] <= 1.0);
        }
        CHECK(r.full[g.M] < 1.0);
    }
    SUBCASE("segment cap is enforced") {
        StepCost cost;
        for (int p = 1; p <= 17; ++p) {
            cost.breakpoints.push_back(g.node(p));
            cost.steps.push_back({0.1, 0.1});
        }
        CHECK_THROWS_AS(laplace_functional(m, cost, g), std::invalid_argument);
    }
}

TEST_CASE("fixed point refinement") {
    const Grid g(3.0, 150);
    SUBCASE("poisson: the exact arrays are a fixed point") {
        const ModelSpec m = poisson_model(1, 1.0);
        const auto exact = laplace1(m, {1.0}, g);
        const auto r = fixed_point_refine(exact.base, m, {1.0}, g, 5);
        CHECK(r.converged);
        CHECK(r.changes[0] <= 1e-12);
    }
    SUBCASE("two initializations reach the same limit (the causal solution)") {
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const auto direct = laplace1(m, {0.8}, g);
        std::vector<std::vector<double>> ones(1, std::vector<double>(g.M + 1, 1.0));
        // poisson-style start: exp(t(e^{-a} - 1))
        std::vector<std::vector<double>> pois(1, std::vector<double>(g.M + 1));
        for (int node = 0; node <= g.M; ++node)
            pois[0][node] = std::exp(g.node(node) * (std::exp(-0.8) - 1.0));
        const auto ra = fixed_point_refine(ones, m, {0.8}, g, 2000, 1e-12);
        const auto rb = fixed_point_refine(pois, m, {0.8}, g, 2000, 1e-12);
        CHECK(ra.converged);
        CHECK(rb.converged);
        for (int node = 0; node <= g.M; node += 15) {
            CHECK(ra.base[0][node] == doctest::Approx(rb.base[0][node]).epsilon(1e-9));
            CHECK(ra.base[0][node] == doctest::Approx(direct.base[0][node]).epsilon(1e-9));
        }
        // change sequence decreases after burn-in
        for (std::size_t i = 3; i < ra.changes.size(); ++i)
            CHECK(ra.changes[i] <= ra.changes[i - 1] * (1.0 + 1e-12));
    }
    SUBCASE("growing sweeps are reported as divergence") {
        // the mis-signed map amplifies values above 1, so sweeps move apart
        const ModelSpec m = exp1d_model(1.0, 0.8, 1.0);
        LaplaceOptions bad;
        bad.exponent_sign = +1.0;
        std::vector<std::vector<double>> ones(1, std::vector<double>(g.M + 1, 1.0));
        const auto r = fixed_point_refine(ones, m, {2.0}, g, 200, 1e-12, bad);
        CHECK(r.diverged);
        CHECK_FALSE(r.converged);
    }
    SUBCASE("input validation") {
        const ModelSpec m = exp1d_model();
        std::vector<std::vector<double>> bad(1, std::vector<double>(g.M + 1, 1.5));
        CHECK_THROWS_AS(fixed_point_refine(bad, m, {0.5}, g, 10), std::invalid_argument);
    }
}
