#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

/// Built-in 2D seasonal-epidemic example: sinusoidal ignition intensities and
/// a 2x2 matrix of beta-like excitation kernels with compact support. This is
/// the reference model for every analytic demo and the hardest-working test
/// fixture.
ModelSpec seasonal2d_model();

/// Homogeneous Poisson reduction: zero excitation, constant baseline.
ModelSpec poisson_model(int d, double rate);

/// d = 1 Markov benchmark: exponential kernel, constant baseline.
ModelSpec exp1d_model(double mu = 1.0, double alpha = 0.5, double beta = 1.0);

/// Trajectory demo scenarios (case1..case4): exponential, gamma, constant and
/// beta excitation with constant baselines, d = 3.
ModelSpec case_model(int which);

/// 4-component interaction presets (interaction1..interaction4): exponential
/// kernels scaled by a pattern matrix W (row = receiver), constant baselines.
///   1: two independent blocks          {1,2} mutual, {3}, {4} self
///   2: first-row broadcast             1 receives from everyone
///   3: broadcast plus a 4<-3 link
///   4: overlapping middle block
ModelSpec interaction_model(int which, double a = 0.1, double b = 0.05, double c = 0.5,
                            double C = 1.0, double decay = 1.0);

/// One trajectory per interaction preset, sharing the master seed so curves
/// are visually comparable.
std::vector<Trajectory> interaction_suite(double T, std::uint64_t seed);

/// Lookup by name: "seasonal2d", "poisson1", "poisson2", "exp1d",
/// "case1".."case4", "interaction1".."interaction4".
ModelSpec preset_model(const std::string& name);
std::vector<std::string> preset_names();

} // namespace hawkes
