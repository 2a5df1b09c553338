#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hawkes/counts.hpp"
#include "hawkes/laplace.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/presets.hpp"
#include "oracles.hpp"

using namespace hawkes;

TEST_CASE("lattice enumeration") {
    const Lattice lat(2, 3);
    CHECK(lat.size() == 10); // (3+1)(3+2)/2 points with |l| <= 3
    CHECK(lat.level[0] == 0);
    CHECK(lat.index_of({0, 0}) == 0);
    CHECK(lat.index_of({2, 1}) >= 0);
    CHECK(lat.index_of({4, 0}) == -1);
    const int id21 = lat.index_of({2, 1});
    CHECK(lat.minus_e[id21][0] == lat.index_of({1, 1}));
    CHECK(lat.minus_e[id21][1] == lat.index_of({2, 0}));
    // splits of (1,1): (0,1)+(1,0), (1,0)+(0,1), (1,1)+(0,0) -> 3 ordered pairs
    CHECK(lat.splits(lat.index_of({1, 1})).size() == 3);
}

TEST_CASE("exp_coeffs closed forms") {
    SUBCASE("d=1 single alpha: beta_k = alpha^k / k!") {
        const Lattice lat(1, 6);
        std::vector<double> alpha(lat.size(), 0.0);
        alpha[lat.index_of({1})] = 0.7;
        const auto beta = exp_coeffs(lat, alpha);
        double fact = 1.0;
        for (int k = 1; k <= 6; ++k) {
            fact *= k;
            CHECK(beta[lat.index_of({k})] ==
                  doctest::Approx(std::pow(0.7, k) / fact).epsilon(1e-14));
        }
    }
    SUBCASE("all-zero alpha") {
        const Lattice lat(2, 4);
        const auto beta = exp_coeffs(lat, std::vector<double>(lat.size(), 0.0));
        for (double v : beta) CHECK(v == 0.0);
    }
}

TEST_CASE("log_coeffs closed forms") {
    SUBCASE("exponential series inverts to a single coefficient") {
        const Lattice lat(1, 6);
        std::vector<double> beta(lat.size(), 0.0);
        double fact = 1.0;
        for (int k = 1; k <= 6; ++k) {
            fact *= k;
            beta[lat.index_of({k})] = std::pow(0.45, k) / fact;
        }
        const auto alpha = log_coeffs(lat, beta);
        CHECK(alpha[lat.index_of({1})] == doctest::Approx(0.45).epsilon(1e-13));
        for (int k = 2; k <= 6; ++k)
            CHECK(alpha[lat.index_of({k})] == doctest::Approx(0.0).epsilon(1e-13));
    }
    SUBCASE("poisson pmf recovers its mean as the only coefficient") {
        const double mu = 1.3;
        const Lattice lat(1, 8);
        std::vector<double> beta(lat.size(), 0.0);
        // beta_k = p_k / p_0 = mu^k / k!
        double fact = 1.0;
        for (int k = 1; k <= 8; ++k) {
            fact *= k;
            beta[lat.index_of({k})] = std::pow(mu, k) / fact;
        }
        const auto alpha = log_coeffs(lat, beta);
        CHECK(alpha[lat.index_of({1})] == doctest::Approx(mu).epsilon(1e-12));
        for (int k = 2; k <= 8; ++k)
            CHECK(alpha[lat.index_of({k})] == doctest::Approx(0.0).epsilon(1e-11));
    }
}

TEST_CASE("coefficient transforms are inverse to each other") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    const Lattice lat(2, 6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> alpha(lat.size(), 0.0);
        for (int id = 0; id < lat.size(); ++id)
            if (lat.level[id] >= 1) alpha[id] = u(rng);
        const auto beta = exp_coeffs(lat, alpha);
        const auto back = log_coeffs(lat, beta);
        for (int id = 0; id < lat.size(); ++id)
            CHECK(back[id] == doctest::Approx(alpha[id]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("zero and one event probabilities") {
    SUBCASE("t = 0") {
        const Grid g(2.0, 10);
        const auto zo = zero_one_probs(seasonal2d_model(), g);
        for (int jp = 0; jp <= 2; ++jp) {
            CHECK(zo.p0[jp][0] == 1.0);
            for (int i = 0; i < 2; ++i) CHECK(zo.pe[jp][i][0] == 0.0);
        }
    }
    SUBCASE("poisson closed form") {
        const Grid g(4.0, 100);
        const auto zo = zero_one_probs(poisson_model(1, 1.0), g);
        const int node = 50; // t = 2
        CHECK(zo.p0[0][node] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
        CHECK(std::exp(-2.0) == doctest::Approx(0.13534).epsilon(1e-4));
        CHECK(zo.pe[0][0][node] == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
        // base process of a model with zero kernels never counts anything
        CHECK(zo.p0[1][node] == 1.0);
    }
    SUBCASE("one-event probability carries the extinct-cluster factor") {
        // p_{e}(t) = p_0(t) int_0^t p_0^base(t-s) k(s) ds; with a hot kernel it
        // sits well below the first-generation-only value Phi(t) p_0(t).
        const Grid g(3.0, 1200);
        const ModelSpec m = exp1d_model(1.0, 0.8, 1.0);
        const auto zo = zero_one_probs(m, g);
        const auto& ker = m.excitation[0];
        for (int node : {400, 1200}) {
            const double t = g.node(node);
            const double want =
                std::exp(-t) * oracles::simpson(
                                   [&](double s) {
                                       return std::exp(-kernel_primitive(ker, t - s));
                                   },
                                   0.0, t, 1e-12);
            CHECK(zo.pe[0][0][node] == doctest::Approx(want).epsilon(10 * g.tau()));
            CHECK(zo.pe[0][0][node] < t * std::exp(-t)); // strictly below the naive value
        }
    }
    SUBCASE("seasonal model at t = 1 via analytic primitives") {
        const Grid g(1.0, 64);
        const auto zo = zero_one_probs(seasonal2d_model(), g);
        const ModelSpec m = seasonal2d_model();
        const double L1 = baseline_primitive(m.baseline[0], 1.0);
        const double L2 = baseline_primitive(m.baseline[1], 1.0);
        CHECK(zo.p0[0][64] == doctest::Approx(std::exp(-(L1 + L2))).epsilon(1e-12));
        // base igniter j' = 1 uses column 1 of the kernel primitives
        const double P11 = kernel_primitive(m.kernel(0, 0), 1.0);
        const double P21 = kernel_primitive(m.kernel(1, 0), 1.0);
        CHECK(zo.p0[1][64] == doctest::Approx(std::exp(-(P11 + P21))).epsilon(1e-10));
        const double want =
            std::exp(-(P11 + P21)) *
            oracles::simpson(
                [&](double s) {
                    const double ext = kernel_primitive(m.kernel(0, 0), 1.0 - s) +
                                       kernel_primitive(m.kernel(1, 0), 1.0 - s);
                    return std::exp(-ext) * eval_kernel(m.kernel(0, 0), s);
                },
                0.0, 1.0, 1e-10);
        CHECK(zo.pe[1][0][64] == doctest::Approx(want).epsilon(20 * g.tau()));
    }
}

TEST_CASE("count pmf") {
    SUBCASE("poisson reduction is the exact product-poisson pmf") {
        const Grid g(4.0, 400);
        const auto pmf = count_pmf(poisson_model(2, 1.0), g, 4);
        const Lattice lat(2, 4);
        for (int node : {0, 100, 400}) {
            const double t = g.node(node);
            for (int id = 0; id < lat.size(); ++id) {
                const int l1 = pmf.points[id][0], l2 = pmf.points[id][1];
                const double want = std::exp(-2.0 * t) * std::pow(t, l1 + l2) /
                                    (std::tgamma(l1 + 1.0) * std::tgamma(l2 + 1.0));
                CHECK(pmf.prob(0, id, node) == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
    SUBCASE("level one reproduces zero_one_probs") {
        const Grid g(3.0, 600);
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const auto pmf = count_pmf(m, g, 3);
        const auto zo = zero_one_probs(m, g);
        const Lattice lat(1, 3);
        const int one = lat.index_of({1});
        for (int node : {100, 300, 600}) {
            CHECK(pmf.prob(0, 0, node) == doctest::Approx(zo.p0[0][node]).epsilon(1e-12));
            CHECK(pmf.prob(0, one, node) ==
                  doctest::Approx(zo.pe[0][0][node]).epsilon(1e-12));
            CHECK(pmf.prob(1, one, node) ==
                  doctest::Approx(zo.pe[1][0][node]).epsilon(1e-12));
        }
    }
    SUBCASE("d=1 level-two identity against independent nested quadrature") {
        // p2(t) = p0(t) (alpha1(t)^2/2 + alpha2(t)) with
        //   alpha1(t) = int p0_base(t-u) lam0(u) du
        //   alpha2(t) = int p1_base(t-u) lam0(u) du
        //   p1_base(v) = p0_base(v) int_0^v p0_base(v-s) phi(s) ds
        const Grid g(3.0, 1500);
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const auto pmf = count_pmf(m, g, 2);
        const Lattice lat(1, 2);
        const int two = lat.index_of({2});
        const auto& lam0 = m.baseline[0];
        const auto& ker = m.excitation[0];
        auto p0_base = [&](double v) { return std::exp(-kernel_primitive(ker, v)); };
        auto p1_base = [&](double v) {
            return p0_base(v) * oracles::simpson(
                                    [&](double s) {
                                        return p0_base(v - s) * eval_kernel(ker, s);
                                    },
                                    0.0, v, 1e-10);
        };
        for (int node : {500, 1000, 1500}) {
            const double t = g.node(node);
            const double Lam = baseline_primitive(lam0, t);
            const double a1 = oracles::simpson(
                [&](double u) { return p0_base(t - u) * eval_baseline(lam0, u); }, 0.0, t,
                1e-10);
            const double a2 = oracles::simpson(
                [&](double u) { return p1_base(t - u) * eval_baseline(lam0, u); }, 0.0, t,
                1e-8);
            const double want = (0.5 * a1 * a1 + a2) * std::exp(-Lam);
            CHECK(pmf.prob(0, two, node) == doctest::Approx(want).epsilon(30 * g.tau()));
        }
    }
    SUBCASE("partial sums, residual and the levy mass bound") {
        // The rectangle-rule alphas carry an O(tau) bias, so the exact-
        // arithmetic inequalities hold up to a tau-proportional slack.
        const Grid g(5.0, 500);
        const double slack = 0.1 * g.tau();
        const auto pmf = count_pmf(seasonal2d_model(), g, 5);
        for (int jp = 0; jp <= 2; ++jp)
            for (int node = 0; node <= g.M; node += 50) {
                double total = 0.0;
                for (int id = 0; id < static_cast<int>(pmf.points.size()); ++id) {
                    const double p = pmf.prob(jp, id, node);
                    CHECK(p >= -1e-12);
                    CHECK(p <= 1.0 + slack);
                    total += p;
                }
                CHECK(total <= 1.0 + slack);
                CHECK(pmf.residual[jp][node] == doctest::Approx(1.0 - total).epsilon(1e-9));
                // sum of levy coefficients bounded by -log p0
                double levy_sum = 0.0;
                for (int id = 1; id < static_cast<int>(pmf.points.size()); ++id)
                    levy_sum += pmf.levy_coeff(jp, id, node);
                CHECK(levy_sum <= -std::log(pmf.prob(jp, 0, node)) + slack);
            }
    }
    SUBCASE("truncated mean matches the moments module when residual is tiny") {
        // the residual here is dominated by the O(tau) quadrature bias, not by
        // genuine tail mass; it halves with the mesh
        const Grid g(2.0, 2000);
        const ModelSpec m = exp1d_model(0.4, 0.2, 1.0);
        const auto pmf = count_pmf(m, g, 16);
        const auto series = fundamental_series(sample_kernel_matrix(m, g), {.tolerance = 1e-12});
        const auto mom = moment_table(m, series);
        const int node = 2000;
        REQUIRE(pmf.residual[0][node] < 1e-4);
        double mean = 0.0;
        for (int id = 0; id < static_cast<int>(pmf.points.size()); ++id)
            mean += pmf.points[id][0] * pmf.prob(0, id, node);
        CHECK(mean == doctest::Approx(mom.M_full.at(node, 0, 0)).epsilon(1e-3));
    }
    SUBCASE("laplace consistency bracket") {
        const Grid g(2.0, 400);
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const int L = 10;
        const auto pmf = count_pmf(m, g, L);
        const auto lap = laplace1(m, {1.0}, g);
        for (int node : {200, 400}) {
            double partial = 0.0;
            for (int id = 0; id < static_cast<int>(pmf.points.size()); ++id)
                partial += std::exp(-1.0 * pmf.points[id][0]) * pmf.prob(0, id, node);
            const double upper = partial + pmf.residual[0][node] * std::exp(-(L + 1.0));
            CHECK(lap.full[node] >= partial - 30 * g.tau());
            CHECK(lap.full[node] <= upper + 30 * g.tau());
        }
    }
    SUBCASE("direct composition and rearranged recursion agree at l <= 3") {
        // alternative assembly: p_l = p0 [alpha_l - sum_{r=2}^{|l|} ((-1)^r / r)
        //   sum_{nonzero compositions k(1)+...+k(r)=l} prod p_{k(i)}/p0 ]
        const Grid g(2.0, 400);
        const ModelSpec m = exp1d_model(1.0, 0.5, 1.0);
        const auto pmf = count_pmf(m, g, 3);
        const Lattice lat(1, 3);
        for (int node : {100, 250, 400}) {
            const double p0 = pmf.prob(0, 0, node);
            std::vector<double> beta(4, 0.0);
            for (int l = 1; l <= 3; ++l)
                beta[l] = pmf.prob(0, lat.index_of({l}), node) / p0;
            // l = 2: compositions 1+1; l = 3: 1+2, 2+1 and 1+1+1
            const double p2 = p0 * (pmf.levy_coeff(0, lat.index_of({2}), node) +
                                    0.5 * beta[1] * beta[1]);
            const double p3 = p0 * (pmf.levy_coeff(0, lat.index_of({3}), node) +
                                    beta[1] * beta[2] -
                                    beta[1] * beta[1] * beta[1] / 3.0);
            CHECK(pmf.prob(0, lat.index_of({2}), node) ==
                  doctest::Approx(p2).epsilon(1e-12));
            CHECK(pmf.prob(0, lat.index_of({3}), node) ==
                  doctest::Approx(p3).epsilon(1e-12));
        }
    }
    SUBCASE("p0 underflow is reported") {
        CHECK_THROWS_AS(count_pmf(poisson_model(1, 100.0), Grid(10.0, 10), 2),
                        std::runtime_error);
    }
}
