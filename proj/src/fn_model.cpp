#include "clustersync/fn_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clustersync {

void validate(const FNParams& params) {
    if (!(params.b > 0.0)) throw std::invalid_argument("FNParams: b must be > 0");
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("FNParams: epsilon must be > 0");
    if (!std::isfinite(params.a) || !std::isfinite(params.b) || !std::isfinite(params.epsilon) ||
        !std::isfinite(params.I))
        throw std::invalid_argument("FNParams: parameters must be finite");
}

std::vector<std::string> parameter_warnings(const FNParams& params) {
    std::vector<std::string> warnings;
    if (params.epsilon >= 0.5)
        warnings.push_back("epsilon >= 0.5: the slow-fast separation the model assumes is weak");
    return warnings;
}

void fn_vector_field(const FNParams& params, std::span<const double> state, double /*t*/,
                     std::span<double> out) {
    const double y = state[0];
    const double z = state[1];
    out[0] = y - y * y * y / 3.0 - params.a - z + params.I;
    out[1] = params.epsilon * (y - params.b * z);
}

Matrix fn_jacobian(const FNParams& params, std::span<const double> state) {
    const double y = state[0];
    Matrix j(2, 2);
    j(0, 0) = 1.0 - y * y;
    j(0, 1) = -1.0;
    j(1, 0) = params.epsilon;
    j(1, 1) = -params.b * params.epsilon;
    return j;
}

NodeModel fn_node_model(const FNParams& params) {
    validate(params);
    NodeModel m;
    m.dim = 2;
    m.time_invariant = true;
    m.f = [params](std::span<const double> state, double t, std::span<double> out) {
        fn_vector_field(params, state, t, out);
    };
    m.jacobian = [params](std::span<const double> state, double /*t*/) {
        return fn_jacobian(params, state);
    };
    return m;
}

double jacobian_consistency_error(const NodeModel& model, std::span<const double> state,
                                  double t, double h) {
    const std::size_t n = model.dim;
    if (state.size() != n) throw std::invalid_argument("jacobian_consistency_error: state size mismatch");
    const Matrix j = model.jacobian(state, t);
    Matrix j_fd(n, n);
    std::vector<double> xp(state.begin(), state.end());
    std::vector<double> xm(state.begin(), state.end());
    std::vector<double> fp(n), fm(n);
    for (std::size_t c = 0; c < n; ++c) {
        xp[c] += h;
        xm[c] -= h;
        model.f(xp, t, fp);
        model.f(xm, t, fm);
        for (std::size_t r = 0; r < n; ++r) j_fd(r, c) = (fp[r] - fm[r]) / (2.0 * h);
        xp[c] = state[c];
        xm[c] = state[c];
    }
    const double scale = std::max(1.0, max_abs(j));
    return max_abs(j - j_fd) / scale;
}

}  // namespace clustersync
