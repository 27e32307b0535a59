// Exact unbounded-integer number theory: gcd, factorization, divisor
// enumeration, square testing, p-adic valuations.  Everything downstream
// (order formulas, divisibility sieves, elimination procedures) routes its
// integer arithmetic through here.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flagsieve {

using Integer = boost::multiprecision::cpp_int;

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// base^e by repeated squaring, e >= 0.
Integer ipow(const Integer& base, unsigned e);

// floor(sqrt(n)), n >= 0.
Integer isqrt(const Integer& n);

bool is_perfect_square(const Integer& n);

// Largest e with p^e | n.  Requires p >= 2 and n >= 1.
unsigned p_valuation(const Integer& p, Integer n);

// Deterministic Miller-Rabin (fixed base set, valid far beyond the ~10^40
// inputs this project produces).
bool is_prime(const Integer& n);

// Canonical prime-power factorization, primes strictly increasing.
struct Factorization {
    std::vector<std::pair<Integer, unsigned>> prime_powers;

    Integer value() const;
    // Number of divisors, prod (e_i + 1).
    Integer divisor_count() const;
    // Merge another factorization into this one (multiplies the values).
    Factorization& operator*=(const Factorization& other);
};

// Trial division up to 10^6, then Brent-rho with Miller-Rabin splitting.
// The rho walk is seeded deterministically from n (and `seed`), and the
// result is canonical regardless of the walk taken.
Factorization factorize(const Integer& n, std::uint64_t seed = 0);

// All divisors in increasing order.  Throws std::length_error if the
// divisor count exceeds `limit` (resource guard).
std::vector<Integer> divisors(const Factorization& f,
                              std::size_t limit = 10'000'000);
std::vector<Integer> divisors(const Integer& n,
                              std::size_t limit = 10'000'000);

// True iff n = p^a for a prime p; fills p and a when so.
bool is_prime_power(const Integer& n, Integer& p, unsigned& a);

}  // namespace flagsieve
