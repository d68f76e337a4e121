#pragma once

#include "clustersync/matrix.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace clustersync {

// FitzHugh-Nagumo oscillator parameters. State is (y, z): membrane
// potential and recovery variable.
//   dy/dt = y - y^3/3 - a - z + I
//   dz/dt = epsilon * (y - b z)
struct FNParams {
    double a = 0.0;        // cubic nullcline offset
    double b = 1.0;        // recovery gain, must be > 0
    double epsilon = 0.1;  // timescale separation, must be > 0 (intended << 1)
    double I = 0.0;        // external input current
};

// Throws std::invalid_argument when a hard constraint is violated.
void validate(const FNParams& params);

// Soft issues (e.g. epsilon large enough that the slow-fast assumption is
// dubious). Empty when the parameters look ordinary.
std::vector<std::string> parameter_warnings(const FNParams& params);

void fn_vector_field(const FNParams& params, std::span<const double> state, double t,
                     std::span<double> out);

// [[1 - y^2, -1], [epsilon, -b*epsilon]]
Matrix fn_jacobian(const FNParams& params, std::span<const double> state);

// A node model bundles a vector field with its Jacobian so certificates
// and simulations can run against arbitrary intrinsic dynamics.
struct NodeModel {
    std::size_t dim = 0;
    bool time_invariant = true;
    std::function<void(std::span<const double>, double, std::span<double>)> f;
    std::function<Matrix(std::span<const double>, double)> jacobian;
};

NodeModel fn_node_model(const FNParams& params);

// Max relative disagreement between the model Jacobian and a central
// finite-difference Jacobian at one state. Used to validate hand-written
// Jacobians.
double jacobian_consistency_error(const NodeModel& model, std::span<const double> state,
                                  double t, double h = 1e-6);

}  // namespace clustersync
