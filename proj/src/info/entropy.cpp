#include "protolife/info/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>

#include "protolife/errors.hpp"

namespace protolife::info {

namespace {

void check_normalized(double sum) {
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidDistribution("probabilities sum to " + std::to_string(sum) +
                                  ", expected 1");
}

double plogp_sum(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::map<std::string, double> probabilities)
    : p_(std::move(probabilities)) {
    double sum = 0.0;
    for (const auto& [label, p] : p_) {
        if (p < 0.0 || !std::isfinite(p))
            throw InvalidDistribution("negative or non-finite probability for '" +
                                      label + "'");
        sum += p;
    }
    check_normalized(sum);
}

JointDistribution::JointDistribution(
    std::map<std::vector<std::string>, double> probabilities)
    : p_(std::move(probabilities)) {
    if (p_.empty()) throw InvalidDistribution("joint distribution has no outcomes");
    arity_ = p_.begin()->first.size();
    if (arity_ == 0) throw InvalidDistribution("joint outcomes must have arity >= 1");
    double sum = 0.0;
    for (const auto& [tuple, p] : p_) {
        if (tuple.size() != arity_)
            throw InvalidDistribution("joint outcomes have mixed arity");
        if (p < 0.0 || !std::isfinite(p))
            throw InvalidDistribution("negative or non-finite joint probability");
        sum += p;
    }
    check_normalized(sum);
}

DiscreteDistribution JointDistribution::marginal(std::size_t axis) const {
    if (axis >= arity_) throw ArityError("marginal axis out of range");
    std::map<std::string, double> out;
    for (const auto& [tuple, p] : p_) out[tuple[axis]] += p;
    return DiscreteDistribution(std::move(out));
}

double entropy(const DiscreteDistribution& d) {
    double h = 0.0;
    for (const auto& [label, p] : d.probabilities()) h -= plogp_sum(p);
    return h;
}

double joint_entropy(const JointDistribution& j) {
    double h = 0.0;
    for (const auto& [tuple, p] : j.probabilities()) h -= plogp_sum(p);
    return h;
}

double mutual_information(const JointDistribution& j) {
    if (j.arity() != 2)
        throw ArityError("mutual information needs a bivariate joint, got arity " +
                         std::to_string(j.arity()));
    const double mi =
        entropy(j.marginal(0)) + entropy(j.marginal(1)) - joint_entropy(j);
    return mi < 0.0 ? 0.0 : mi;
}

double population_entropy(const std::map<std::string, std::int64_t>& counts) {
    std::int64_t total = 0;
    for (const auto& [key, n] : counts) {
        if (n < 0) throw InvalidDistribution("negative species count for '" + key + "'");
        total += n;
    }
    if (total == 0) throw EmptyPopulation("population entropy of an empty population");
    double h = 0.0;
    for (const auto& [key, n] : counts)
        h -= plogp_sum(static_cast<double>(n) / static_cast<double>(total));
    return h;
}

void entropy_series_csv(std::istream& in, std::ostream& out) {
    std::string line;
    if (!std::getline(in, line) || line != "t,species_key,count")
        throw RuntimeFailure("time series lacks the t,species_key,count header");
    out << "t,H_bits\n";

    std::optional<std::int64_t> current_t;
    std::map<std::string, std::int64_t> counts;
    char buf[64];
    auto flush = [&]() {
        if (!current_t.has_value()) return;
        std::snprintf(buf, sizeof(buf), "%lld,%.17g\n",
                      static_cast<long long>(*current_t), population_entropy(counts));
        out << buf;
        counts.clear();
    };

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        // keys never contain commas, but split defensively on first and last
        const auto first = line.find(',');
        const auto last = line.rfind(',');
        if (first == std::string::npos || last == first)
            throw RuntimeFailure("bad time-series row at line " +
                                 std::to_string(line_no));
        const std::int64_t t = std::stoll(line.substr(0, first));
        const std::string key = line.substr(first + 1, last - first - 1);
        const std::int64_t count = std::stoll(line.substr(last + 1));
        if (current_t.has_value() && t != *current_t) flush();
        current_t = t;
        counts[key] += count;
    }
    flush();
}

}  // namespace protolife::info
