#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace protolife::reactor {

// Multiset of molecule instances with an interned species table. Instance
// order is part of the engine's deterministic state: removals swap-pop.
template <class Molecule>
class Population {
  public:
    struct Instance {
        std::int32_t species;
        std::int64_t id;  // unique when instance tracking is on, else 0
    };

    std::int32_t intern(const std::string& key, const Molecule& exemplar) {
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        const auto species = static_cast<std::int32_t>(keys_.size());
        index_.emplace(key, species);
        keys_.push_back(key);
        exemplars_.push_back(exemplar);
        counts_.push_back(0);
        return species;
    }

    void add(std::int32_t species, std::int64_t id) {
        instances_.push_back(Instance{species, id});
        ++counts_[static_cast<std::size_t>(species)];
    }

    void remove_at(std::size_t index) {
        --counts_[static_cast<std::size_t>(instances_[index].species)];
        instances_[index] = instances_.back();
        instances_.pop_back();
    }

    std::size_t total() const { return instances_.size(); }
    const Instance& at(std::size_t index) const { return instances_[index]; }
    const std::string& key_of(std::size_t index) const {
        return keys_[static_cast<std::size_t>(instances_[index].species)];
    }
    const Molecule& molecule_of(std::size_t index) const {
        return exemplars_[static_cast<std::size_t>(instances_[index].species)];
    }

    const std::vector<std::string>& species_keys() const { return keys_; }

    // Species currently present, sorted by key.
    std::map<std::string, std::int64_t> counts_map() const {
        std::map<std::string, std::int64_t> out;
        for (std::size_t s = 0; s < keys_.size(); ++s)
            if (counts_[s] > 0) out.emplace(keys_[s], counts_[s]);
        return out;
    }

  private:
    std::map<std::string, std::int32_t> index_;
    std::vector<std::string> keys_;
    std::vector<Molecule> exemplars_;
    std::vector<std::int64_t> counts_;
    std::vector<Instance> instances_;
};

}  // namespace protolife::reactor
