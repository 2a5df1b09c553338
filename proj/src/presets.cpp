#include "hawkes/presets.hpp"

#include <stdexcept>

namespace hawkes {

ModelSpec seasonal2d_model() {
    ModelSpec m;
    m.d = 2;
    m.baseline = {SinusoidalBaseline{1.057, 0.031, 0.845},
                  SinusoidalBaseline{1.061, 0.093, 0.817}};
    // Row = receiving component, column = igniting component.
    m.excitation = {
        BetaLikeKernel{0.073, 0.060, 1.576, 0.598}, BetaLikeKernel{0.046, 1.254, 1.831, 0.897},
        BetaLikeKernel{0.050, 1.897, 0.369, 0.789}, BetaLikeKernel{0.096, 1.923, 0.182, 0.713}};
    return m;
}

ModelSpec poisson_model(int d, double rate) {
    ModelSpec m;
    m.d = d;
    for (int i = 0; i < d; ++i) m.baseline.push_back(ConstantBaseline{rate});
    m.excitation.assign(static_cast<std::size_t>(d) * d, ZeroKernel{});
    return m;
}

ModelSpec exp1d_model(double mu, double alpha, double beta) {
    ModelSpec m;
    m.d = 1;
    m.baseline = {ConstantBaseline{mu}};
    m.excitation = {ExponentialKernel{alpha, beta}};
    return m;
}

ModelSpec case_model(int which) {
    ModelSpec m;
    m.d = 3;
    m.baseline = {ConstantBaseline{0.4}, ConstantBaseline{0.3}, ConstantBaseline{0.5}};
    m.excitation.clear();
    switch (which) {
        case 1: // exponential excitation, jumps decay between events
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m.excitation.push_back(ExponentialKernel{0.25 + 0.05 * i, 1.5});
            break;
        case 2: // gamma excitation, delayed humps
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m.excitation.push_back(GammaKernel{0.20 + 0.03 * i, 2.0, 0.4});
            break;
        case 3: // constant excitation, non-decaying contributions
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.excitation.push_back(ConstantStepKernel{0.05});
            break;
        case 4: // beta-like excitation with compact support
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m.excitation.push_back(BetaLikeKernel{0.30, 1.2, 1.5, 1.1});
            break;
        default:
            throw std::invalid_argument("case_model: preset must be 1..4");
    }
    return m;
}

ModelSpec interaction_model(int which, double a, double b, double c, double C, double decay) {
    std::vector<std::vector<double>> W;
    std::vector<double> mu;
    switch (which) {
        case 1:
            W = {{a, a, 0, 0}, {a, a, 0, 0}, {0, 0, b, 0}, {0, 0, 0, b}};
            mu = {c, c, c, c};
            break;
        case 2:
            W = {{a, a, a, a}, {0, b, 0, 0}, {0, 0, b, 0}, {0, 0, 0, b}};
            mu = {c, C, C, C};
            break;
        case 3:
            W = {{a, a, a, a}, {0, b, 0, 0}, {0, 0, b, 0}, {0, 0, b, b}};
            mu = {c, C, C, C};
            break;
        case 4:
            W = {{a, a, a, a}, {0, b, b, 0}, {0, b, b, 0}, {0, 0, 0, b}};
            mu = {c, c, c, c};
            break;
        default:
            throw std::invalid_argument("interaction_model: preset must be 1..4");
    }
    ModelSpec m;
    m.d = 4;
    for (double v : mu) m.baseline.push_back(ConstantBaseline{v});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (W[i][j] > 0.0)
                // Unit-mass shape scaled by the pattern weight.
                m.excitation.push_back(ExponentialKernel{W[i][j] * decay, decay});
            else
                m.excitation.push_back(ZeroKernel{});
        }
    return m;
}

std::vector<Trajectory> interaction_suite(double T, std::uint64_t seed) {
    std::vector<Trajectory> out;
    for (int p = 1; p <= 4; ++p)
        out.push_back(simulate_thinning(interaction_model(p), T, seed));
    return out;
}

ModelSpec preset_model(const std::string& name) {
    if (name == "seasonal2d") return seasonal2d_model();
    if (name == "poisson1") return poisson_model(1, 1.0);
    if (name == "poisson2") return poisson_model(2, 1.0);
    if (name == "exp1d") return exp1d_model();
    for (int k = 1; k <= 4; ++k) {
        if (name == "case" + std::to_string(k)) return case_model(k);
        if (name == "interaction" + std::to_string(k)) return interaction_model(k);
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"seasonal2d",   "poisson1",     "poisson2",     "exp1d",
            "case1",        "case2",        "case3",        "case4",
            "interaction1", "interaction2", "interaction3", "interaction4"};
}

} // namespace hawkes
