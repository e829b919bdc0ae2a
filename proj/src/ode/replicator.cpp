#include "protolife/ode/replicator.hpp"

#include <cmath>

#include "protolife/errors.hpp"

namespace protolife::ode {

FrequencyVector::FrequencyVector(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw InvalidDistribution("frequency vector must have n >= 1");
    double sum = 0.0;
    for (double v : x_) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidDistribution("frequencies must be finite and non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidDistribution("frequencies sum to " + std::to_string(sum) +
                                  ", expected 1");
}

namespace {

void check_spec(std::size_t n, const FitnessSpec& spec) {
    if (spec.W.size() != n)
        throw DimensionMismatch("fitness matrix has " + std::to_string(spec.W.size()) +
                                " rows for n = " + std::to_string(n));
    for (const auto& row : spec.W) {
        if (row.size() != n)
            throw DimensionMismatch("fitness matrix row has wrong length");
        for (double w : row)
            if (!std::isfinite(w)) throw DimensionMismatch("fitness matrix entry not finite");
    }
}

// Raw right-hand side on a plain state vector (integrator stages leave the
// simplex slightly, so no FrequencyVector validation here).
std::vector<double> rhs_raw(const std::vector<double>& x, const FitnessSpec& spec) {
    const std::size_t n = x.size();
    std::vector<double> fitness(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fitness[i] += spec.W[i][j] * x[j];
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += x[j] * fitness[j];
    std::vector<double> dx(n);
    for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] * (fitness[i] - mean);
    return dx;
}

}  // namespace

std::vector<double> replicator_rhs(const FrequencyVector& x, const FitnessSpec& spec) {
    check_spec(x.size(), spec);
    return rhs_raw(x.values(), spec);
}

Trajectory integrate(const FrequencyVector& x0, const FitnessSpec& spec,
                     double t_end, double dt) {
    if (dt <= 0.0) throw ConfigError("integrate: dt must be positive");
    if (t_end < 0.0) throw ConfigError("integrate: t_end must be non-negative");
    check_spec(x0.size(), spec);

    const std::size_t n = x0.size();
    Trajectory trajectory;
    trajectory.emplace_back(0.0, x0);

    std::vector<double> x = x0.values();
    auto rk4_step = [&](double h) {
        const auto k1 = rhs_raw(x, spec);
        std::vector<double> stage(n);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k1[i];
        const auto k2 = rhs_raw(stage, spec);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k2[i];
        const auto k3 = rhs_raw(stage, spec);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + h * k3[i];
        const auto k4 = rhs_raw(stage, spec);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        double sum = 0.0;
        for (double& v : x) {
            if (!std::isfinite(v)) throw NonFiniteState("state left the finite range");
            if (v < 0.0) v = 0.0;
            sum += v;
        }
        if (sum <= 0.0) throw NonFiniteState("state collapsed to the zero vector");
        for (double& v : x) v /= sum;
    };

    const auto n_full = static_cast<std::size_t>(t_end / dt + 1e-12);
    for (std::size_t k = 1; k <= n_full; ++k) {
        rk4_step(dt);
        trajectory.emplace_back(static_cast<double>(k) * dt, FrequencyVector(x));
    }
    const double remainder = t_end - static_cast<double>(n_full) * dt;
    if (remainder > 1e-12 * std::max(1.0, t_end)) {
        rk4_step(remainder);
        trajectory.emplace_back(t_end, FrequencyVector(x));
    } else {
        trajectory.back().first = t_end;  // snap accumulated rounding
    }
    return trajectory;
}

}  // namespace protolife::ode
