#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "protolife/lambda/collision.hpp"
#include "protolife/reactor/event.hpp"
#include "protolife/tile/tile.hpp"

namespace protolife::org {

// Molecule classing used by the replication detector. Class ids are strings:
// two species keys belong together iff class_of maps them to the same id.
struct ExactEquivalence {};

// Tiles sharing a primitive shape (equal after undoing integer block scaling,
// optionally up to rotations/reflections) form one class. This is the
// transitive closure of the pairwise scale check: a 2x- and a 3x-scaled copy
// of the same primitive are classed together even though neither is an
// integer scaling of the other.
struct TileShapeEquivalence {
    tile::SymmetryFlags flags;
};

// Lambda terms with equal bounded reaction signatures: for every probe p the
// normal forms of (term)p and (p)term, with budget exhaustion as its own
// distinguished outcome. `law` rides along for provenance; signatures use
// plain application.
struct FunctionalEquivalence {
    std::vector<lambda::Term> probes;
    lambda::ReductionBudget budget;
    std::optional<lambda::CollisionLaw> law;
};

using EquivalenceSpec =
    std::variant<ExactEquivalence, TileShapeEquivalence, FunctionalEquivalence>;

// Class id of a species key. Throws ConfigError when the key does not parse
// under the equivalence's chemistry (e.g. functional equivalence on tile keys).
std::string class_of(const std::string& species_key, const EquivalenceSpec& eq);

// Signature equality over the probe set. Throws ConfigError on empty probes.
bool functional_equiv(const lambda::Term& a, const lambda::Term& b,
                      const FunctionalEquivalence& spec);

struct ReplicatorReport {
    std::string class_id;
    // every species key observed in this class, sorted
    std::vector<std::string> members;
    int period = 0;
    // indices into EventLog::records, length == period: the first event
    // consumes an instance of the class, each next event consumes a new
    // product of the previous one, the last newly produces a class member
    std::vector<std::size_t> witness_events;
    std::string equivalence;  // "exact" | "tileshape" | "functional"
};

// Breadth-first search over the instance-lineage DAG, depth capped at
// max_period; reports each class at its minimal period with one witness
// chain. Requires instance ids on every event (MissingInstanceIds otherwise).
std::vector<ReplicatorReport> detect_replicators(const reactor::EventLog& log,
                                                 const EquivalenceSpec& eq,
                                                 int max_period);

// Re-checks a witness chain against the log; used to keep reports
// sound-by-construction.
bool verify_witness(const reactor::EventLog& log, const ReplicatorReport& report,
                    const EquivalenceSpec& eq);

}  // namespace protolife::org
