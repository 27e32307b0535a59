// Exact order formulas for PSU_n(q) (n = 3, 4, 5), outer automorphism
// orders, the eleven maximal-subgroup families of almost simple groups with
// socle PSU_5(q) together with their validity conditions, and concrete
// generator data for the two small groups the construction pipeline needs.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flagsieve/arith.hpp"

namespace flagsieve {

// q^{n(n-1)/2} * prod_{i=2..n} (q^i - (-1)^i), the order of SU_n(q).
Integer su_numerator(int n, const Integer& q);

// |PSU_n(q)| = su_numerator(n,q) / gcd(n, q+1).  n must be 3, 4 or 5.
Integer psu_order(int n, const Integer& q);

// |Out(PSU_5(q))| = 2a * gcd(5, q+1) for q = p^a.
Integer out_order(const Integer& q);

// One cell of the family table: a (family line, q) pair with everything the
// sieve needs.  k_bound is the divisibility bound 2a * gcd(5,q+1) * |H0|,
// computed as 2a * su_numerator(5,q) / v so |H0| itself never appears.
struct FamilyContext {
    int family_line = 0;  // 1..11
    Integer q, p;
    unsigned a = 0;
    Integer socle_order;  // |PSU_5(q)|
    Integer out_order;    // 2a * gcd(5, q+1)
    Integer v;            // 0 when invalid
    Integer k_bound;      // 0 when invalid
    std::vector<Integer> subdegree_divisors;
    bool is_parabolic = false;
    bool valid = false;
    std::string condition;  // the validity condition, empty if none
    Integer q0, r;          // subfield line only (q = q0^r, r an odd prime)
};

// One context per family line at this q; lines whose condition fails are
// returned with valid = false and v = 0.
std::vector<FamilyContext> families(const Integer& q);

// Point-stabilizer / searched-subgroup data for one catalog group.
struct StabilizerInfo {
    std::string name;
    Integer order;
    Integer expected_v;
    std::set<Integer> spectrum;  // element-order spectrum hint (may be empty)
    std::uint64_t seed = 0;      // known-good seed for the randomized search
};

struct CatalogEntry {
    std::string group_name;
    int degree = 0;
    std::string generator_file;
    Integer expected_order;
    Integer out_factor;  // |Out(X)| for the catalog socle groups
    std::vector<StabilizerInfo> stabilizers;
};

std::vector<CatalogEntry> builtin_catalog();

// Catalog file: one record per line,
//   name degree order file stab_order expected_v
// whitespace-separated, '#' comments.
std::string render_catalog(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> parse_catalog(const std::string& text);

}  // namespace flagsieve
