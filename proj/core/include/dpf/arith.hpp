#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dpf {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct FactoredInt {
    i128 value = 1;
    std::vector<std::pair<i128, int>> factors;   // increasing primes

    i128 recompose() const;
    int sign() const { return value < 0 ? -1 : 1; }
};

// canonical factorization; |n| must fit in 127 bits
FactoredInt factor(i128 n);
FactoredInt factor(const mpz_class& n);

bool is_prime(u64 n);
bool is_prime(const mpz_class& n);

int kronecker(i64 d, i64 n);
bool is_fundamental_discriminant(i64 d);

// small helpers shared by the other modules
i64 isqrt(i64 n);
bool is_square(i64 n, i64* root = nullptr);
bool is_squarefree(i64 n);
i64 gcd64(i64 a, i64 b);
i64 mod(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
i64 invmod(i64 a, i64 m);
int v_p(i64 n, i64 p);
std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<int> primes_up_to(int n);

mpz_class to_mpz(i128 v);
i128 to_i128(const mpz_class& v);   // throws std::range_error
std::string to_string(i128 v);

}  // namespace dpf
