// One procedure per family-elimination lemma, each replaying the case
// analysis numerically for a concrete q and emitting a machine-checkable
// trace, plus a brute-force oracle (the generic sieve with no symbolic
// shortcuts) that must agree cell by cell.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flagsieve/catalog.hpp"
#include "flagsieve/sieve.hpp"

namespace flagsieve {

struct InvalidFamilyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class FailureReason {
    none,
    non_integral_lambda,
    divisibility_failure,
    inequality_violation,
    no_valid_k,
    empty_table_row,
};
std::string to_string(FailureReason r);

// Record of one "holds for all q" inequality: the finite check at this q
// plus the degree comparison that covers the tail.
struct DegreeCheck {
    std::string inequality;
    long lhs_degree = 0;
    long rhs_degree = 0;  // the coefficient may carry a factor a = log_p q
    bool eliminates_here = false;  // the side needed for elimination holds at q
    bool degree_dominated = false;
};

struct EliminationTrace {
    int lemma_id = 0;  // 1..9
    int family_line = 0;
    Integer q;
    Integer q0, r;  // subfield case only
    Integer v;
    Integer k_bound;          // Eq-(4.2) divisibility bound actually sieved
    Integer printed_k_bound;  // bound as printed in the source table, if any
    Integer printed_v;        // v as printed in the source table, if any
    std::pair<Integer, Integer> m_range{0, 0};
    std::vector<std::pair<std::string, Integer>> forced_values;
    std::vector<std::pair<std::string, Integer>> polynomial_values;
    FailureReason failure_reason = FailureReason::none;
    std::vector<DesignParams> survivors;
    std::vector<std::string> notes;
    std::vector<DegreeCheck> degree_checks;
};

EliminationTrace eliminate_parabolic_1(const Integer& q);
EliminationTrace eliminate_parabolic_2(const Integer& q);
EliminationTrace eliminate_gu4(const Integer& q);
EliminationTrace eliminate_su3_su2(const Integer& q);
EliminationTrace eliminate_imprimitive(const Integer& q);
EliminationTrace eliminate_torus(const Integer& q);  // rejects q = 2
EliminationTrace eliminate_subfield(const Integer& q0, const Integer& r);
EliminationTrace eliminate_so5(const Integer& q);  // rejects even q

// The three stabilizer families given by concrete groups: runs every valid
// q <= qmax through the order test, and full divisor enumeration on the
// rows that pass it (exactly the three known rows for qmax >= 9).
std::vector<EliminationTrace> eliminate_sporadic(const Integer& qmax = 64);

// Generic-sieve cross-check: k_candidates on the Eq-(4.2) bound, subdegree
// filters where the family has them, the p-power filter on the parabolic
// lines.  Refuses when the divisor count of the k-bound exceeds 10^7.
SieveReport oracle_eliminate(const FamilyContext& ctx);

// One (family line, q) cell: the lemma-procedure trace and the oracle,
// which must agree that there are no survivors.
struct CellResult {
    int family_line = 0;
    Integer q;
    EliminationTrace trace;
    SieveReport oracle;
    bool agree = false;
};

// All valid cells with q <= qmax (or one family line); cells fan out over
// `jobs` workers and come back sorted by (family line, q).
std::vector<CellResult> run_elimination(const Integer& qmax,
                                        std::optional<int> family_line,
                                        int jobs = 0);

// Lemma procedure for one valid family context.
EliminationTrace eliminate_family(const FamilyContext& ctx);

std::vector<Integer> prime_powers_upto(const Integer& qmax);

}  // namespace flagsieve
