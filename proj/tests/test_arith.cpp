#include "doctest.h"

#include <vector>

#include "dpf/arith.hpp"

using namespace dpf;

namespace {

int legendre_bruteforce(i64 a, i64 p)
{
    i64 r = mod(a, p);
    if (r == 0)
        return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == r)
            return 1;
    return -1;
}

}  // namespace

TEST_CASE("factor examples")
{
    auto f = factor((i128)756);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::make_pair((i128)2, 2));
    CHECK(f.factors[1] == std::make_pair((i128)3, 3));
    CHECK(f.factors[2] == std::make_pair((i128)7, 1));

    auto g = factor((i128)-20);
    CHECK(g.sign() == -1);
    CHECK(g.factors.size() == 2);
    CHECK(g.recompose() == -20);

    auto h = factor((i128)146853);
    REQUIRE(h.factors.size() == 3);
    CHECK(h.factors[0] == std::make_pair((i128)3, 4));
    CHECK(h.factors[1] == std::make_pair((i128)7, 2));
    CHECK(h.factors[2] == std::make_pair((i128)37, 1));
}

TEST_CASE("factor recomposes and primes are prime")
{
    std::vector<i128> samples = {1, 2, 97, 1000003, (i128)1000003 * 999983, (i128)4294967291ull * 4294967279ull,
                                 ((i128)1 << 100) + 277, (i128)18446744073709551557ull * 1000000007};
    for (i128 n : samples) {
        auto f = factor(n);
        CHECK(f.recompose() == n);
        for (size_t i = 0; i < f.factors.size(); ++i) {
            CHECK(is_prime(to_mpz(f.factors[i].first)));
            if (i)
                CHECK(f.factors[i - 1].first < f.factors[i].first);
        }
    }
}

TEST_CASE("factor rejects oversized input")
{
    mpz_class big = mpz_class(1) << 130;
    CHECK_THROWS_AS(factor(big), std::range_error);
}

TEST_CASE("primality agrees with trial division")
{
    for (u64 n = 0; n < 20000; ++n) {
        bool naive = n >= 2;
        for (u64 p = 2; p * p <= n; ++p)
            if (n % p == 0)
                naive = false;
        CHECK(is_prime(n) == naive);
    }
}

TEST_CASE("kronecker examples")
{
    CHECK(kronecker(37, 2) == -1);
    CHECK(kronecker(5, 5) == 0);
    CHECK(kronecker(229, 7) == -1);
    CHECK(kronecker(229, 7) == legendre_bruteforce(229, 7));
    CHECK(kronecker(17, 2) == 1);
    CHECK(kronecker(12, 2) == 0);
}

TEST_CASE("kronecker matches brute-force Legendre and is multiplicative")
{
    std::vector<i64> odd_primes;
    for (i64 p = 3; p < 200; ++p)
        if (is_prime((u64)p))
            odd_primes.push_back(p);
    for (i64 d = -199; d < 200; ++d)
        for (i64 p : odd_primes)
            CHECK(kronecker(d, p) == legendre_bruteforce(d, p));
    for (i64 d = -60; d < 60; ++d)
        for (i64 m = 1; m < 40; ++m)
            for (i64 n = 1; n < 40; ++n)
                CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
}

TEST_CASE("fundamental discriminant examples")
{
    CHECK(is_fundamental_discriminant(229));
    CHECK_FALSE(is_fundamental_discriminant(20));
    CHECK(is_fundamental_discriminant(8));
    CHECK_FALSE(is_fundamental_discriminant(1));
    CHECK(is_fundamental_discriminant(-4));
}

TEST_CASE("fundamental discriminants agree with the squarefree-kernel definition up to 10^6")
{
    const i64 N = 1000000;
    // squarefree kernel via sieve: core[n] = n with square factors removed
    std::vector<i64> core(N + 1);
    for (i64 i = 0; i <= N; ++i)
        core[i] = i;
    for (i64 p = 2; p * p <= N; ++p)
        for (i64 m = p * p; m <= N; m += p * p)
            while (core[m] % (p * p) == 0)
                core[m] /= p * p;
    i64 mismatches = 0;
    for (i64 n = 2; n <= N; ++n) {
        i64 m = core[n];
        i64 disc = (m % 4 == 1) ? m : 4 * m;
        bool naive = disc == n && m != 1;
        if (naive != is_fundamental_discriminant(n))
            ++mismatches;
    }
    CHECK(mismatches == 0);
}
