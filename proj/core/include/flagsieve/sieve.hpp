// The generic flag-transitive parameter sieve: given (v, k-bound, subdegree
// data, characteristic data), enumerate all (v, k, lambda) surviving the
// arithmetic constraints on symmetric designs with a flag-transitive
// automorphism group.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagsieve/arith.hpp"
#include "flagsieve/design.hpp"

namespace flagsieve {

struct SieveReport {
    std::string context;
    std::vector<DesignParams> survivors;
    std::vector<std::string> checks_applied;
};

// k(k-1)/(v-1) when integral, nullopt otherwise (the pair is impossible).
std::optional<Integer> lambda_from(const Integer& v, const Integer& k);

// Identity k(k-1) = lambda(v-1), the square condition on 4*lambda*(v-1)+1,
// and lambda*v < k^2.
bool basic_check(const DesignParams& p);

// All k | k_bound with 2 < k < v-1, integral lambda and basic_check true.
std::vector<DesignParams> k_candidates(const Integer& v,
                                       const Integer& k_bound);
std::vector<DesignParams> k_candidates(const Integer& v,
                                       const Factorization& k_bound);

// Keeps parameters with k | lambda*d.
std::vector<DesignParams> subdegree_filter(std::vector<DesignParams> cands,
                                           const Integer& d);

// Keeps parameters with k | lambda * p^{v_p(v-1)} (unique p-power
// subdegree in the parabolic case).
std::vector<DesignParams> parabolic_power_filter(std::vector<DesignParams> cands,
                                                 const Integer& p,
                                                 const Integer& v);

// For a non-parabolic stabilizer in odd characteristic p: drops everything
// when p | v-1; otherwise the identity filter.
std::vector<DesignParams> tits_filter(std::vector<DesignParams> cands,
                                      const Integer& p, const Integer& v,
                                      bool is_parabolic, bool p_odd);

// Keeps parameters where at least one listed index divides k.
std::vector<DesignParams> index_divisibility_filter(
    std::vector<DesignParams> cands, const std::vector<Integer>& indices);

}  // namespace flagsieve
