#include <doctest.h>

#include <algorithm>
#include <random>

#include "flagsieve/arith.hpp"

using namespace flagsieve;

namespace {

// Independent oracle: factor by unbounded trial division.
std::vector<std::pair<Integer, unsigned>> trial_factor(Integer n) {
    std::vector<std::pair<Integer, unsigned>> out;
    for (Integer p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<Integer> divisors_by_loop(long n) {
    std::vector<Integer> ds;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) ds.emplace_back(d);
    return ds;
}

}  // namespace

TEST_CASE("gcd basics") {
    CHECK(gcd(5, 3) == 1);
    CHECK(gcd(5, 5) == 5);
    CHECK(gcd(5, 4 + 1) == 5);  // gcd(5, q+1) at q = 4
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(0, 7) == 7);
}

TEST_CASE("factorize on known orders") {
    auto f = factorize(12);
    CHECK(f.prime_powers ==
          std::vector<std::pair<Integer, unsigned>>{{2, 2}, {3, 1}});
    CHECK(factorize(6048).prime_powers == trial_factor(6048));
    CHECK(factorize(6048).prime_powers ==
          std::vector<std::pair<Integer, unsigned>>{{2, 5}, {3, 3}, {7, 1}});
    CHECK(factorize(25920).prime_powers ==
          std::vector<std::pair<Integer, unsigned>>{{2, 6}, {3, 4}, {5, 1}});
    CHECK(factorize(1).prime_powers.empty());
}

TEST_CASE("factorize recomposes and lists primes") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        Integer n = rng() % 1'000'000 + 1;
        auto f = factorize(n);
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.prime_powers) CHECK(is_prime(p));
    }
    // A value needing the rho fallback: product of two 10-digit primes.
    Integer a("1000000007"), b("1000000009");
    auto f = factorize(a * b);
    CHECK(f.value() == a * b);
    REQUIRE(f.prime_powers.size() == 2);
    CHECK(f.prime_powers[0].first == a);
    CHECK(f.prime_powers[1].first == b);
}

TEST_CASE("divisors") {
    CHECK(divisors(Integer(12)) ==
          std::vector<Integer>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(Integer(1)) == std::vector<Integer>{1});
    auto d336 = divisors(Integer(336));  // the k-bound 2*168
    CHECK(d336.size() == 20);
    CHECK(std::find(d336.begin(), d336.end(), 21) != d336.end());
    CHECK(std::is_sorted(d336.begin(), d336.end()));
}

TEST_CASE("divisors equal the brute-force filter") {
    for (long n = 1; n <= 2000; ++n)
        CHECK(divisors(Integer(n)) == divisors_by_loop(n));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        long n = static_cast<long>(rng() % 1'000'000 + 1);
        CHECK(divisors(Integer(n)) == divisors_by_loop(n));
    }
}

TEST_CASE("perfect squares") {
    CHECK(is_perfect_square(1681));  // 4*12*35 + 1 for (36,21,12)
    CHECK_FALSE(is_perfect_square(1680));
    CHECK(is_perfect_square(0));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Integer n = rng() % 100'000'000;
        Integer r = isqrt(n);
        CHECK(is_perfect_square(n) == (r * r == n));
    }
}

TEST_CASE("p-adic valuation") {
    CHECK(p_valuation(2, 164) == 2);  // v-1 at q=2 on the parabolic line
    CHECK(p_valuation(3, 35) == 0);
    CHECK(p_valuation(2, 1) == 0);
    CHECK(p_valuation(3, 81) == 4);
}

TEST_CASE("prime powers") {
    Integer p;
    unsigned a;
    CHECK(is_prime_power(64, p, a));
    CHECK(p == 2);
    CHECK(a == 6);
    CHECK_FALSE(is_prime_power(6, p, a));
    CHECK_FALSE(is_prime_power(1, p, a));
    CHECK(is_prime_power(49, p, a));
    CHECK(p == 7);
}

TEST_CASE("ipow and isqrt") {
    CHECK(ipow(2, 10) == 1024);
    CHECK(ipow(5, 0) == 1);
    CHECK(isqrt(Integer(152399025)) == 12345);
    Integer big = ipow(10, 30);
    CHECK(isqrt(big * big) == big);
}
