// Incidence structures on at most 64 points: symmetric 2-design
// verification, complementation, construction from group actions and base
// blocks, flag-transitivity and isomorphism testing.
//
// Blocks are stored as 64-bit point masks; the external file format uses
// sorted 1-based point lists.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flagsieve/arith.hpp"
#include "flagsieve/permgroup.hpp"

namespace flagsieve {

struct DesignParams {
    Integer v, k, lambda;

    bool operator==(const DesignParams& o) const {
        return v == o.v && k == o.k && lambda == o.lambda;
    }
    bool operator<(const DesignParams& o) const {
        if (v != o.v) return v < o.v;
        if (k != o.k) return k < o.k;
        return lambda < o.lambda;
    }
};

// First symmetric-design axiom violated, with a witness.
struct DesignFailure {
    std::string axiom;     // "block-count", "block-size", "replication",
                           // "pair-coverage", "block-intersection"
    std::string witness;   // offending block/point/pair, 1-based
};

class IncidenceStructure {
  public:
    IncidenceStructure() = default;
    IncidenceStructure(int v, std::vector<std::uint64_t> blocks);

    int v() const { return v_; }
    const std::vector<std::uint64_t>& blocks() const { return blocks_; }
    std::vector<std::vector<int>> block_lists() const;  // sorted, 0-based

    // Checks all symmetric-design axioms (v blocks, constant block size k,
    // constant replication k, constant pair coverage lambda, constant
    // pairwise block intersection lambda).
    std::variant<DesignParams, DesignFailure> verify_symmetric() const;

    IncidenceStructure complement() const;

    // Canonical form: blocks sorted as masks.
    void canonicalize();
    bool same_blocks(const IncidenceStructure& other) const;

  private:
    int v_ = 0;
    std::vector<std::uint64_t> blocks_;
};

// Blocks = orbit of `block` under the (transitive) action; fails when the
// orbit length differs from the degree.
struct BaseBlockError {
    std::string message;
    std::size_t orbit_length;
};
std::variant<IncidenceStructure, BaseBlockError> from_base_block(
    const PermGroup& action, std::uint64_t block);

// All unions of helper-orbits of total size k whose orbit under `action`
// yields a verified symmetric design; deduplicated by block-set equality.
std::vector<IncidenceStructure> find_base_blocks(const PermGroup& action,
                                                 const PermGroup& helper,
                                                 int k);

// True iff g (which must map blocks to blocks; otherwise throws with the
// offending generator) is transitive on the v*k flags.
bool flag_transitive(const IncidenceStructure& d, const PermGroup& g);

// Sorted multiset of |Bi & Bj & Bl| over all block triples; an isomorphism
// invariant (pairwise intersections are constant in a symmetric design, so
// triples are the first informative level).
std::vector<int> triple_intersection_fingerprint(const IncidenceStructure& d);

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> witness;  // point bijection d1 -> d2 when isomorphic
    bool exhausted = false;    // search space fully explored
    std::uint64_t nodes = 0;
};

// Backtracking point-bijection search with block-compatibility pruning.
// Throws std::length_error when the node budget is exceeded.
IsoResult isomorphic(const IncidenceStructure& d1, const IncidenceStructure& d2,
                     std::uint64_t node_budget = 50'000'000);

// File format: line 1 "v k lambda"; then v lines of k sorted 1-based
// point indices.
IncidenceStructure read_design(std::istream& in);
IncidenceStructure read_design_file(const std::string& path);
void write_design(std::ostream& out, const IncidenceStructure& d);
void write_design_file(const std::string& path, const IncidenceStructure& d);

std::uint64_t mask_of(const std::vector<int>& points);
std::vector<int> points_of(std::uint64_t mask);

}  // namespace flagsieve
