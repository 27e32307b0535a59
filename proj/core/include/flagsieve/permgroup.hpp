// Permutation-group engine for groups of order up to ~10^6: stabilizer
// chains (Schreier-Sims), orbits, point stabilizers, primitivity testing,
// coset actions and randomized subgroup discovery.
//
// Points are 0-based internally; the text file format is 1-based.
// Composition is left-to-right: (p * q) applies p first, then q.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flagsieve/arith.hpp"

namespace flagsieve {

class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(int degree);                // identity
    explicit Permutation(std::vector<int> images);   // must be a bijection

    int degree() const { return static_cast<int>(img_.size()); }
    int operator[](int point) const { return img_[point]; }
    bool is_identity() const;

    Permutation operator*(const Permutation& rhs) const;  // this first, then rhs
    Permutation inverse() const;
    Permutation conjugate(const Permutation& by) const;   // by^-1 * this * by

    // Order of the permutation (lcm of cycle lengths).
    Integer order() const;
    // First point moved, or -1 for the identity.
    int first_moved() const;

    std::uint64_t hash() const;
    auto operator<=>(const Permutation&) const = default;

    const std::vector<int>& images() const { return img_; }

  private:
    std::vector<int> img_;
};

// Base and strong generating set, built with the deterministic
// Schreier-Sims closure (every Schreier generator verified to sift to the
// identity, so orders and membership answers are proven, not probabilistic).
class StabilizerChain {
  public:
    StabilizerChain(int degree, const std::vector<Permutation>& gens,
                    const std::vector<int>& base_hint = {},
                    Integer order_guard = 20'000'000);

    Integer order() const;
    bool contains(const Permutation& g) const;
    // Sift g through the chain; returns the residue and the level reached.
    std::pair<Permutation, int> strip(Permutation g, int from_level = 0) const;

    int levels() const { return static_cast<int>(base_.size()); }
    int base_point(int level) const { return base_[level]; }
    const std::vector<Permutation>& level_generators(int level) const {
        return gens_[level];
    }

  private:
    void recompute_orbit(int level);
    Permutation transversal_to(int level, int point) const;
    void append_level(int point);

    int degree_;
    std::vector<int> base_;
    std::vector<std::vector<Permutation>> gens_;   // gens_[i] fixes base_[0..i-1]
    std::vector<std::vector<int>> orbit_;
    std::vector<std::vector<int>> orbit_pos_;      // point -> index in orbit_, or -1
    std::vector<std::vector<Permutation>> trans_;  // trans_[i][j] maps base_[i] -> orbit_[i][j]
};

class PermGroup {
  public:
    explicit PermGroup(int degree);  // trivial group
    PermGroup(int degree, std::vector<Permutation> generators,
              const std::vector<int>& base_hint = {});

    int degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const StabilizerChain& chain() const { return *chain_; }

    Integer order() const { return chain_->order(); }
    bool contains(const Permutation& g) const;
    bool is_subgroup_of(const PermGroup& g) const;

    std::vector<int> orbit(int point) const;
    std::vector<std::vector<int>> orbits() const;
    bool is_transitive() const;

    // Subgroup fixing `point`, with the orbit-stabilizer identity
    // |G| = |orbit| * |stabilizer| guaranteed by the chain construction.
    PermGroup stabilizer(int point) const;

    // True iff the (transitive) action preserves no nontrivial partition.
    // Throws std::invalid_argument on non-transitive input.
    bool is_primitive() const;

    // Orbits of the stabilizer of `point`, as (representative, size) pairs
    // in increasing representative order; sizes sum to the degree.
    std::vector<std::pair<int, int>> suborbits(int point) const;

    // Full element enumeration (guarded); independent cross-check path.
    std::vector<Permutation> elements(std::size_t limit = 1'000'000) const;

    // Set of element orders (enumerates the group; guarded as elements()).
    std::set<Integer> element_order_spectrum(std::size_t limit = 1'000'000) const;

  private:
    int degree_;
    std::vector<Permutation> gens_;
    std::shared_ptr<const StabilizerChain> chain_;
};

// Transitive action of g on the right cosets of its subgroup h.
// Verifies h <= g; index must not exceed 10^4.
struct ActionHomomorphism {
    int source_degree = 0;
    int target_degree = 0;
    std::vector<Permutation> source_gens;
    std::vector<Permutation> generator_images;
    std::vector<Permutation> coset_reps;  // reps[0] = identity
    PermGroup subgroup{1};

    // Image of an arbitrary element of the source group.
    Permutation image_of(const Permutation& x) const;
    PermGroup image_group() const;
};

ActionHomomorphism coset_action(const PermGroup& g, const PermGroup& h);

// Randomized search for a subgroup of the given order, optionally matching
// an element-order spectrum.  Deterministic under a fixed seed.  Returns
// nullopt after the attempt budget (not a proof of absence).
std::optional<PermGroup> find_subgroup(
    const PermGroup& g, const Integer& target_order,
    const std::optional<std::set<Integer>>& spectrum, std::uint64_t seed,
    int attempt_budget = 4000);

// Text format: line 1 "degree n"; each following non-comment line is one
// generator as n space-separated 1-based images.  '#' starts a comment.
PermGroup read_generators(std::istream& in);
PermGroup read_generators_file(const std::string& path);
void write_generators(std::ostream& out, const PermGroup& g);
void write_generators_file(const std::string& path, const PermGroup& g);

}  // namespace flagsieve
