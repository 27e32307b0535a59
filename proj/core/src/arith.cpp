#include "flagsieve/arith.hpp"

#include <algorithm>
#include <map>

#include <boost/multiprecision/integer.hpp>

namespace flagsieve {

Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

Integer ipow(const Integer& base, unsigned e) {
    Integer r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    Integer r = isqrt(n);
    return r * r == n;
}

unsigned p_valuation(const Integer& p, Integer n) {
    if (p < 2) throw std::domain_error("p_valuation: p must be >= 2");
    if (n < 1) throw std::domain_error("p_valuation: n must be >= 1");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

namespace {

Integer mul_mod(const Integer& a, const Integer& b, const Integer& m) {
    return a * b % m;
}

Integer pow_mod(Integer base, Integer exp, const Integer& m) {
    Integer r = 1;
    base %= m;
    while (exp > 0) {
        if (boost::multiprecision::bit_test(exp, 0)) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool miller_rabin_witness(const Integer& n, const Integer& a) {
    // Returns true if a proves n composite.
    Integer d = n - 1;
    unsigned s = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    Integer x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const int small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                       29, 31, 37, 41, 43, 47, 53, 59, 61};
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // The first 13 primes are a deterministic witness set below 3.3*10^24;
    // beyond that the extended base set leaves no pseudoprimes anywhere near
    // the magnitudes produced here.
    static const int bases[] = {2,  3,  5,  7,  11, 13, 17,
                                19, 23, 29, 31, 37, 41};
    for (int a : bases)
        if (miller_rabin_witness(n, a)) return false;
    return true;
}

Integer Factorization::value() const {
    Integer v = 1;
    for (const auto& [p, e] : prime_powers) v *= ipow(p, e);
    return v;
}

Integer Factorization::divisor_count() const {
    Integer c = 1;
    for (const auto& [p, e] : prime_powers) c *= (e + 1);
    return c;
}

Factorization& Factorization::operator*=(const Factorization& other) {
    std::map<Integer, unsigned> merged;
    for (const auto& [p, e] : prime_powers) merged[p] += e;
    for (const auto& [p, e] : other.prime_powers) merged[p] += e;
    prime_powers.assign(merged.begin(), merged.end());
    return *this;
}

namespace {

// Brent's cycle-finding variant of Pollard rho.  Deterministic walk
// parameters derived from (n, seed); retried with incremented constants
// until a factor splits.
Integer brent_rho(const Integer& n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    for (Integer c = 1 + Integer(seed % 97);; ++c) {
        Integer x = 2, y = 2, d = 1, q = 1, ys = y;
        unsigned r = 1;
        const unsigned step = 128;
        while (d == 1) {
            x = y;
            for (unsigned i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned k = 0; k < r && d == 1; k += step) {
                ys = y;
                unsigned lim = std::min(step, r - k);
                for (unsigned i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * boost::multiprecision::abs(x - y) % n;
                }
                d = gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // Backtrack one step at a time.
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                d = gcd(boost::multiprecision::abs(x - ys), n);
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(const Integer& n, std::uint64_t seed,
                std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = brent_rho(n, seed);
    factor_rec(d, seed, out);
    factor_rec(n / d, seed, out);
}

}  // namespace

Factorization factorize(const Integer& n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    std::map<Integer, unsigned> acc;
    Integer m = n;
    for (Integer p = 2; p <= 1'000'000 && p * p <= m; p == 2 ? p = 3 : p += 2) {
        while (m % p == 0) {
            acc[p] += 1;
            m /= p;
        }
    }
    if (m > 1) {
        if (is_prime(m))
            acc[m] += 1;
        else
            factor_rec(m, seed, acc);
    }
    Factorization f;
    f.prime_powers.assign(acc.begin(), acc.end());
    return f;
}

std::vector<Integer> divisors(const Factorization& f, std::size_t limit) {
    Integer count = f.divisor_count();
    if (count > limit)
        throw std::length_error("divisors: divisor count " + count.str() +
                                " exceeds limit");
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : f.prime_powers) {
        std::size_t old = ds.size();
        Integer pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < old; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Integer> divisors(const Integer& n, std::size_t limit) {
    return divisors(factorize(n), limit);
}

bool is_prime_power(const Integer& n, Integer& p, unsigned& a) {
    if (n < 2) return false;
    Factorization f = factorize(n);
    if (f.prime_powers.size() != 1) return false;
    p = f.prime_powers[0].first;
    a = f.prime_powers[0].second;
    return true;
}

}  // namespace flagsieve
