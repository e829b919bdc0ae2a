#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace protolife::info {

// Probabilities over outcome labels; must sum to 1 within 1e-9 with no
// negative entries (checked on construction).
class DiscreteDistribution {
  public:
    explicit DiscreteDistribution(std::map<std::string, double> probabilities);
    const std::map<std::string, double>& probabilities() const { return p_; }

  private:
    std::map<std::string, double> p_;
};

// Joint probabilities over label tuples of one fixed arity.
class JointDistribution {
  public:
    explicit JointDistribution(std::map<std::vector<std::string>, double> probabilities);
    const std::map<std::vector<std::string>, double>& probabilities() const { return p_; }
    std::size_t arity() const { return arity_; }

    // Distribution of coordinate `axis`.
    DiscreteDistribution marginal(std::size_t axis) const;

  private:
    std::map<std::vector<std::string>, double> p_;
    std::size_t arity_ = 0;
};

// Shannon entropy in bits; 0·log0 counts as 0.
double entropy(const DiscreteDistribution& d);

double joint_entropy(const JointDistribution& j);

// I = H(X) + H(Y) - H(X,Y) for a bivariate joint; floating-point noise below
// zero is clamped to 0. Throws ArityError unless arity == 2.
double mutual_information(const JointDistribution& j);

// Entropy of the empirical species distribution counts/total.
// Throws EmptyPopulation when the total is zero.
double population_entropy(const std::map<std::string, std::int64_t>& counts);

// Reads a reactor time-series CSV (header t,species_key,count) and writes the
// per-sample population entropy as CSV with header t,H_bits.
void entropy_series_csv(std::istream& in, std::ostream& out);

}  // namespace protolife::info
