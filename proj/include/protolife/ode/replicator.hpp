#pragma once

#include <utility>
#include <vector>

namespace protolife::ode {

// Point on the probability simplex: non-negative, sums to 1 within 1e-9.
class FrequencyVector {
  public:
    explicit FrequencyVector(std::vector<double> x);
    const std::vector<double>& values() const { return x_; }
    std::size_t size() const { return x_.size(); }

  private:
    std::vector<double> x_;
};

// Linear fitness f_i(x) = (W x)_i.
struct FitnessSpec {
    std::vector<std::vector<double>> W;  // n x n, finite entries
};

// dx_i = x_i (f_i(x) - mean fitness); the components sum to zero.
std::vector<double> replicator_rhs(const FrequencyVector& x, const FitnessSpec& spec);

using Trajectory = std::vector<std::pair<double, FrequencyVector>>;

// Classical fixed-step 4th-order integration; after every step negative
// components are clipped to 0 and the vector renormalized onto the simplex.
// The trajectory contains t = 0 and t = t_end. Throws NonFiniteState when a
// component leaves the finite range.
Trajectory integrate(const FrequencyVector& x0, const FitnessSpec& spec,
                     double t_end, double dt);

}  // namespace protolife::ode
