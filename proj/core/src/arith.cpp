#include "dpf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dpf {

namespace {

const mpz_class kMax127 = (mpz_class(1) << 127) - 1;

bool miller_rabin_64(u64 n, u64 a)
{
    if (a % n == 0)
        return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

u64 pollard_brent_64(u64 n, u64 c)
{
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i)
            y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

mpz_class pollard_rho_mpz(const mpz_class& n, unsigned long c)
{
    mpz_class x = 2, y = 2, g = 1, q = 1;
    auto f = [&](mpz_class& v) {
        v = v * v + c;
        v %= n;
    };
    while (g == 1) {
        for (int i = 0; i < 64 && g == 1; ++i) {
            f(x);
            f(y);
            f(y);
            mpz_class diff = abs(x - y);
            q = (q * diff) % n;
            if (q == 0) {
                g = n;
                break;
            }
        }
        g = gcd(q, n);
    }
    return g;
}

void factor_rec_mpz(const mpz_class& n, std::map<mpz_class, int>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    if (n.fits_ulong_p() && n.get_ui() < (1ull << 63)) {
        u64 m = n.get_ui();
        for (u64 c = 1;; ++c) {
            u64 g = pollard_brent_64(m, c);
            if (g != m) {
                factor_rec_mpz(mpz_class(std::to_string(g)), out);
                factor_rec_mpz(mpz_class(std::to_string(m / g)), out);
                return;
            }
        }
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class g = pollard_rho_mpz(n, c);
        if (g != n && g != 1) {
            factor_rec_mpz(g, out);
            factor_rec_mpz(n / g, out);
            return;
        }
    }
}

}  // namespace

i128 FactoredInt::recompose() const
{
    i128 r = 1;
    for (auto& [p, e] : factors)
        for (int i = 0; i < e; ++i)
            r *= p;
    return value < 0 ? -r : r;
}

mpz_class to_mpz(i128 v)
{
    bool neg = v < 0;
    u128 u = neg ? (u128)(-(v + 1)) + 1 : (u128)v;
    mpz_class hi = (unsigned long)(u >> 64);
    mpz_class r = (hi << 64) + mpz_class((unsigned long)(u & ~0ull));
    return neg ? mpz_class(-r) : r;
}

i128 to_i128(const mpz_class& v)
{
    if (abs(v) > kMax127)
        throw std::range_error("integer exceeds 127-bit magnitude");
    mpz_class a = abs(v);
    mpz_class hi = a >> 64;
    mpz_class lo = a - (hi << 64);
    u128 u = ((u128)hi.get_ui() << 64) | (u128)lo.get_ui();
    return v < 0 ? -(i128)u : (i128)u;
}

std::string to_string(i128 v)
{
    return to_mpz(v).get_str();
}

u64 mulmod(u64 a, u64 b, u64 m)
{
    return (u64)((u128)a * b % m);
}

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0)
            return n == p;
    }
    // this base set is proven for all n < 3.3e24
    for (u64 a : small)
        if (!miller_rabin_64(n, a))
            return false;
    return true;
}

bool is_prime(const mpz_class& n)
{
    if (n < 2)
        return false;
    if (n.fits_ulong_p())
        return is_prime((u64)n.get_ui());
    // fixed-base Miller-Rabin, deterministic across runs
    static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned long p : bases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    mpz_class nm1 = n - 1;
    for (unsigned long a : bases) {
        mpz_class x;
        mpz_class base = a;
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1)
            continue;
        bool ok = false;
        for (unsigned long r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == nm1) {
                ok = true;
                break;
            }
        }
        if (!ok)
            return false;
    }
    return true;
}

FactoredInt factor(const mpz_class& n)
{
    if (n == 0)
        throw std::invalid_argument("factor: zero");
    if (abs(n) > kMax127)
        throw std::range_error("factor: magnitude exceeds 127 bits");
    FactoredInt r;
    r.value = to_i128(n);
    mpz_class m = abs(n);
    std::map<mpz_class, int> acc;
    for (unsigned long p = 2; p < 1000; ++p) {
        if (!is_prime((u64)p))
            continue;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[p]++;
            m /= p;
        }
    }
    factor_rec_mpz(m, acc);
    for (auto& [p, e] : acc)
        r.factors.emplace_back(to_i128(p), e);
    return r;
}

FactoredInt factor(i128 n)
{
    return factor(to_mpz(n));
}

int kronecker(i64 a, i64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos) {
        if ((a & 1) == 0)
            return 0;
        i64 r8 = mod(a, 8);
        if ((twos & 1) && (r8 == 3 || r8 == 5))
            result = -result;
    }
    // Jacobi symbol (a/n) with n odd positive
    a = mod(a, n);
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_fundamental_discriminant(i64 d)
{
    if (d == 1 || d == 0)
        return false;
    i64 r = mod(d, 4);
    if (r == 1)
        return is_squarefree(d < 0 ? -d : d);
    if (r == 0) {
        i64 m = d / 4;
        i64 rm = mod(m, 4);
        return (rm == 2 || rm == 3) && is_squarefree(m < 0 ? -m : m);
    }
    return false;
}

i64 isqrt(i64 n)
{
    if (n < 0)
        throw std::domain_error("isqrt of negative");
    i64 r = (i64)std::sqrt((long double)n);
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(i64 n, i64* root)
{
    if (n < 0)
        return false;
    i64 r = isqrt(n);
    if (root)
        *root = r;
    return r * r == n;
}

bool is_squarefree(i64 n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        return false;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return false;
        }
    }
    return true;
}

i64 gcd64(i64 a, i64 b)
{
    return std::gcd(a, b);
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 invmod(i64 a, i64 m)
{
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1)
        throw std::domain_error("invmod: not invertible");
    return mod(x, m);
}

int v_p(i64 n, i64 p)
{
    if (n == 0)
        return 1 << 20;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<i64> prime_divisors(i64 n)
{
    std::vector<i64> r;
    if (n < 0)
        n = -n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        r.push_back(n);
    return r;
}

std::vector<i64> divisors(i64 n)
{
    std::vector<i64> r{1};
    if (n < 0)
        n = -n;
    for (i64 p : prime_divisors(n)) {
        int e = v_p(n, p);
        size_t sz = r.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i)
                r.push_back(r[i] * pk);
        }
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<int> primes_up_to(int n)
{
    std::vector<int> r;
    if (n < 2)
        return r;
    std::vector<char> sieve(n + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (int i = 2; (i64)i * i <= n; ++i)
        if (sieve[i])
            for (int j = i * i; j <= n; j += i)
                sieve[j] = 0;
    for (int i = 2; i <= n; ++i)
        if (sieve[i])
            r.push_back(i);
    return r;
}

}  // namespace dpf
