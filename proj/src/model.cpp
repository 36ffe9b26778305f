#include "owg/model.hpp"

#include <cmath>

namespace owg {

TimeGrid make_grid(double horizon, int n_steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw invalid_parameter("T", "horizon must be positive and finite");
    if (n_steps < 2)
        throw invalid_parameter("n_steps", "need at least 2 grid steps");
    return TimeGrid{n_steps, horizon};
}

ValidatedInputs validate(const ModelParams& params, const CostSpec& spec) {
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda))
        throw invalid_parameter("lambda", "push parameter must be positive and finite");
    if (!(params.beta > 0.0) || !std::isfinite(params.beta))
        throw invalid_parameter("beta", "resilience rate must be positive and finite");
    if (!(params.horizon > 0.0) || !std::isfinite(params.horizon))
        throw invalid_parameter("T", "horizon must be positive and finite");
    if (params.n_traders < 2)
        throw invalid_parameter("n_traders", "the game needs at least 2 traders");
    if (static_cast<int>(params.inventories.size()) != params.n_traders)
        throw invalid_parameter("x", "inventory vector must have exactly N entries");
    for (double xi : params.inventories)
        if (!std::isfinite(xi))
            throw invalid_parameter("x", "inventories must be finite");

    switch (spec.variant) {
    case CostSpec::Variant::A:
        if (!(spec.eps > 0.0) || !std::isfinite(spec.eps))
            throw invalid_parameter("eps", "instantaneous cost weight must be positive");
        if (!(spec.phi > 0.0) || !std::isfinite(spec.phi))
            throw invalid_parameter("phi", "terminal penalty must be positive");
        break;
    case CostSpec::Variant::APrime:
        if (!(spec.eps > 0.0) || !std::isfinite(spec.eps))
            throw invalid_parameter("eps", "instantaneous cost weight must be positive");
        break;
    case CostSpec::Variant::B:
        if (!(spec.theta0 >= 0.0) || !std::isfinite(spec.theta0))
            throw invalid_parameter("theta0", "initial block cost must be nonnegative");
        if (!(spec.thetaT >= 0.0) || !std::isfinite(spec.thetaT))
            throw invalid_parameter("thetaT", "terminal block cost must be nonnegative");
        break;
    }
    return ValidatedInputs{params, spec};
}

double mean_inventory(const ModelParams& params) {
    double sum = 0.0;
    for (double xi : params.inventories) sum += xi;
    return sum / params.n_traders;
}

std::vector<double> deviations(const ModelParams& params) {
    const double xbar = mean_inventory(params);
    std::vector<double> dev(params.inventories.size());
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = params.inventories[i] - xbar;
    return dev;
}

} // namespace owg
