#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace segal {

using json = nlohmann::json;

// Three-valued result of a decision procedure.  `witness` carries structured
// evidence: for Yes, the witnessing object (when one is specified); for No, a
// counterexample; for Unknown, what made the question undecidable here.
enum class Outcome { Yes, No, Unknown };

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::string reason;
    json witness;

    static Verdict yes(std::string reason = "", json witness = nullptr) {
        return Verdict{Outcome::Yes, std::move(reason), std::move(witness)};
    }
    static Verdict no(std::string reason = "", json witness = nullptr) {
        return Verdict{Outcome::No, std::move(reason), std::move(witness)};
    }
    static Verdict unknown(std::string reason = "", json witness = nullptr) {
        return Verdict{Outcome::Unknown, std::move(reason), std::move(witness)};
    }

    bool is_yes() const { return outcome == Outcome::Yes; }
    bool is_no() const { return outcome == Outcome::No; }
    bool is_unknown() const { return outcome == Outcome::Unknown; }

    json to_json() const;
};

std::string to_string(Outcome o);

// Ceilings for every enumerating operation.  Enumerations that would exceed
// a ceiling stop and report Unknown (or throw BoundError where the operation
// has no Unknown channel) instead of running unbounded.
struct Bounds {
    std::size_t max_functors = 10000;
    std::size_t max_nat_trans = 200000;
    std::size_t max_compose_pairs = 4000000;
    std::size_t max_cells = 2000000;   // per level / bidegree
    std::size_t max_maps = 300000;     // solutions of a map enumeration
    std::size_t max_nodes = 30000000;  // search-tree nodes per enumeration
};

struct SegalError : std::runtime_error {
    explicit SegalError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : SegalError {
    explicit ParseError(const std::string& what) : SegalError(what) {}
};

struct InvariantError : SegalError {
    explicit InvariantError(const std::string& what) : SegalError(what) {}
};

struct BoundError : SegalError {
    std::size_t reached;
    BoundError(const std::string& what, std::size_t reached)
        : SegalError(what), reached(reached) {}
};

}  // namespace segal
