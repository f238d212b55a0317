#include "dpf/cubicinv.hpp"

#include "dpf/ringspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace dpf {

namespace {

constexpr double kLog2 = 0.6931471805599453;

size_t bitsize(const mpz_class& z)
{
    return z == 0 ? 1 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

// nullspace of an m x n matrix over F_p (rows are equations)
std::vector<std::vector<i64>> nullspace_mod(std::vector<std::vector<i64>> A, int n, i64 p)
{
    std::vector<int> pivcol;
    size_t row = 0;
    for (int col = 0; col < n && row < A.size(); ++col) {
        size_t piv = row;
        while (piv < A.size() && mod(A[piv][col], p) == 0)
            ++piv;
        if (piv == A.size())
            continue;
        std::swap(A[piv], A[row]);
        i64 inv = invmod(mod(A[row][col], p), p);
        for (auto& x : A[row])
            x = mulmod(mod(x, p), inv, p);
        for (size_t r = 0; r < A.size(); ++r) {
            if (r == row)
                continue;
            i64 fct = mod(A[r][col], p);
            if (fct == 0)
                continue;
            for (int c = 0; c < n; ++c)
                A[r][c] = mod(A[r][c] - (i64)mulmod(fct, mod(A[row][c], p), p), p);
        }
        pivcol.push_back(col);
        ++row;
    }
    std::vector<std::vector<i64>> basis;
    for (int free = 0; free < n; ++free) {
        if (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end())
            continue;
        std::vector<i64> v(n, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivcol.size(); ++r)
            v[pivcol[r]] = mod(-A[r][free], p);
        basis.push_back(v);
    }
    return basis;
}

// coordinates of y in the row basis H (upper triangular HNF, full rank), or nothing
std::optional<std::array<mpz_class, 3>> solve_triangular(const ZMat& H, const LElt& y)
{
    std::array<mpz_class, 3> c;
    std::array<mpz_class, 3> r = y.c;
    for (int k = 0; k < 3; ++k) {
        if (H[k][k] == 0)
            return std::nullopt;
        if (r[k] % H[k][k] != 0)
            return std::nullopt;
        c[k] = r[k] / H[k][k];
        for (int j = k; j < 3; ++j)
            r[j] -= c[k] * H[k][j];
    }
    return c;
}

// continued-fraction rational approximation with bounded denominator
bool rational_approx(double x, long qmax, double tol, long& num, long& den)
{
    double y = x;
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        long ai = (long)a;
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > qmax)
            return false;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::fabs(x - (double)h1 / (double)k1) < tol) {
            num = h1;
            den = k1;
            return true;
        }
        double frac = y - a;
        if (frac < 1e-300)
            return false;
        y = 1.0 / frac;
    }
    return false;
}

struct PolyModP {
    u64 p;
    std::array<u64, 3> f;   // monic x^3 + f2 x^2 + f1 x + f0 stored as f0, f1, f2

    std::array<u64, 3> mul(const std::array<u64, 3>& x, const std::array<u64, 3>& y) const
    {
        u64 t[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                t[i + j] = (t[i + j] + mulmod(x[i], y[j], p)) % p;
        for (int k = 4; k >= 3; --k) {
            u64 c = t[k];
            if (!c)
                continue;
            t[k] = 0;
            for (int j = 0; j < 3; ++j)
                t[k - 3 + j] = (t[k - 3 + j] + p - mulmod(c, f[j], p)) % p;
        }
        return {t[0], t[1], t[2]};
    }
};

int poly_degree(const std::vector<u64>& a)
{
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i])
            return i;
    return -1;
}

// degree of gcd over F_p
int gcd_degree(std::vector<u64> a, std::vector<u64> b, u64 p)
{
    while (poly_degree(b) >= 0) {
        int db = poly_degree(b);
        u64 inv = invmod((i64)b[db], (i64)p);
        while (poly_degree(a) >= db) {
            int da = poly_degree(a);
            u64 c = mulmod(a[da], inv, p);
            for (int i = 0; i <= db; ++i)
                a[da - db + i] = (a[da - db + i] + p - mulmod(c, b[i], p)) % p;
        }
        std::swap(a, b);
    }
    return poly_degree(a);
}

}  // namespace

mpz_class PrimeIdeal::norm() const
{
    mpz_class n = 1;
    for (int i = 0; i < f; ++i)
        n *= p;
    return n;
}

CubicField::CubicField(const CubicForm& F) : F_(F)
{
    i128 D = F.disc();
    if (D <= 0)
        throw std::invalid_argument("cubic form must have positive discriminant");
    D_ = (i64)D;
    mpz_class a = F.a, b = F.b, c = F.c, d = F.d;
    for (int i = 0; i < 3; ++i) {
        table_[0][i] = LElt{};
        table_[0][i].c[i] = 1;
        table_[i][0] = table_[0][i];
    }
    table_[1][1] = LElt{{-a * c, -b, a}};
    table_[1][2] = LElt{{-a * d, 0, 0}};
    table_[2][1] = table_[1][2];
    table_[2][2] = LElt{{-b * d, -d, c}};
}

template <class T>
CubicElt<T> CubicField::mul(const CubicElt<T>& x, const CubicElt<T>& y) const
{
    CubicElt<T> z;
    z.c = {T(0), T(0), T(0)};
    for (int i = 0; i < 3; ++i) {
        if (x.c[i] == 0)
            continue;
        for (int j = 0; j < 3; ++j) {
            if (y.c[j] == 0)
                continue;
            T xy = x.c[i] * y.c[j];
            const LElt& t = table_[i][j];
            for (int k = 0; k < 3; ++k)
                if (t.c[k] != 0)
                    z.c[k] += xy * T(t.c[k]);
        }
    }
    return z;
}

template LElt CubicField::mul(const LElt&, const LElt&) const;
template LRat CubicField::mul(const LRat&, const LRat&) const;

LElt CubicField::pow(LElt x, long e) const
{
    LElt r = one();
    while (e > 0) {
        if (e & 1)
            r = mul(r, x);
        e >>= 1;
        if (e)
            x = mul(x, x);
    }
    return r;
}

ZMat CubicField::mult_matrix(const LElt& x) const
{
    ZMat M(3, std::vector<mpz_class>(3));
    for (int j = 0; j < 3; ++j) {
        LElt e;
        e.c[j] = 1;
        LElt y = mul(x, e);
        for (int k = 0; k < 3; ++k)
            M[j][k] = y.c[k];
    }
    return M;
}

mpz_class CubicField::norm(const LElt& x) const
{
    ZMat M = mult_matrix(x);
    mpz_class r = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    return r;
}

mpz_class CubicField::trace(const LElt& x) const
{
    ZMat M = mult_matrix(x);
    return M[0][0] + M[1][1] + M[2][2];
}

LRat CubicField::inverse(const LRat& x) const
{
    // solve y with x * y = 1: sum_j y_j (x * e_j) = e_0
    std::array<std::array<mpq_class, 4>, 3> A;
    for (int j = 0; j < 3; ++j) {
        LRat e;
        e.c = {0, 0, 0};
        e.c[j] = 1;
        LRat col = mul(x, e);
        for (int k = 0; k < 3; ++k)
            A[k][j] = col.c[k];
    }
    A[0][3] = 1;
    A[1][3] = 0;
    A[2][3] = 0;
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        while (piv < 3 && A[piv][col] == 0)
            ++piv;
        if (piv == 3)
            throw std::domain_error("zero divisor");
        std::swap(A[piv], A[col]);
        mpq_class inv = 1 / A[col][col];
        for (auto& v : A[col])
            v *= inv;
        for (int r = 0; r < 3; ++r) {
            if (r == col || A[r][col] == 0)
                continue;
            mpq_class f = A[r][col];
            for (int c = 0; c < 4; ++c)
                A[r][c] -= f * A[col][c];
        }
    }
    LRat y;
    for (int k = 0; k < 3; ++k)
        y.c[k] = A[k][3];
    return y;
}

LElt CubicField::unit_inverse(const LElt& u) const
{
    LRat r;
    for (int k = 0; k < 3; ++k)
        r.c[k] = u.c[k];
    LRat inv = inverse(r);
    LElt out;
    for (int k = 0; k < 3; ++k) {
        if (inv.c[k].get_den() != 1)
            throw std::domain_error("not a unit");
        out.c[k] = inv.c[k].get_num();
    }
    return out;
}

std::optional<LElt> CubicField::exact_div(const LElt& x, const LElt& y) const
{
    LRat xr, yr;
    for (int k = 0; k < 3; ++k) {
        xr.c[k] = x.c[k];
        yr.c[k] = y.c[k];
    }
    LRat z = mul(xr, inverse(yr));
    LElt out;
    for (int k = 0; k < 3; ++k) {
        z.c[k].canonicalize();
        if (z.c[k].get_den() != 1)
            return std::nullopt;
        out.c[k] = z.c[k].get_num();
    }
    return out;
}

ZMat CubicField::ideal_hnf(const LElt& x) const
{
    return hnf(mult_matrix(x));
}

const std::vector<Real>& CubicField::roots(mpfr_prec_t bits) const
{
    auto it = roots_.find(bits);
    if (it != roots_.end())
        return it->second;
    PrecisionGuard guard(bits);
    // isolate the three real roots with long doubles, then polish with Newton
    long double A = F_.a, B = F_.b, C = F_.c, Dd = F_.d;
    auto f = [&](long double x) { return ((A * x + B) * x + C) * x + Dd; };
    long double bound = 1 + std::max({std::fabs(B / A), std::fabs(C / A), std::fabs(Dd / A)});
    long double s = std::sqrt(std::max<long double>(B * B - 3 * A * C, 0));
    long double x1 = (-B - s) / (3 * A), x2 = (-B + s) / (3 * A);
    if (x1 > x2)
        std::swap(x1, x2);
    long double cuts[4] = {-bound, x1, x2, bound};
    std::vector<Real> out;
    Real a(F_.a), b(F_.b), c(F_.c), d(F_.d);
    for (int i = 0; i < 3; ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        long double flo = f(lo);
        for (int it2 = 0; it2 < 200; ++it2) {
            long double mid = (lo + hi) / 2;
            if ((f(mid) < 0) == (flo < 0))
                lo = mid;
            else
                hi = mid;
        }
        Real x((double)((lo + hi) / 2));
        // refine the low bits from the long double value
        x += Real((double)((lo + hi) / 2 - (long double)(double)((lo + hi) / 2)));
        for (int it2 = 0; it2 < 64; ++it2) {
            Real fx = ((a * x + b) * x + c) * x + d;
            Real dfx = (Real(3) * a * x + Real(2) * b) * x + c;
            Real step = fx / dfx;
            x -= step;
            if (step.sign() == 0 || step.exponent() < x.exponent() - (long)bits + 4)
                break;
        }
        out.push_back(x);
    }
    return roots_.emplace(bits, std::move(out)).first->second;
}

std::vector<Real> CubicField::embed(const LElt& x, mpfr_prec_t bits) const
{
    const auto& xi = roots(bits);
    PrecisionGuard guard(bits);
    Real a(F_.a), b(F_.b), c(F_.c);
    Real x0(x.c[0]), x1(x.c[1]), x2(x.c[2]);
    std::vector<Real> out;
    for (const Real& r : xi) {
        Real om = a * r;
        Real th = (a * r + b) * r + c;
        out.push_back(x0 + x1 * om + x2 * th);
    }
    return out;
}

std::vector<Real> CubicField::embed(const LRat& x, mpfr_prec_t bits) const
{
    const auto& xi = roots(bits);
    PrecisionGuard guard(bits);
    Real a(F_.a), b(F_.b), c(F_.c);
    Real x0(x.c[0]), x1(x.c[1]), x2(x.c[2]);
    std::vector<Real> out;
    for (const Real& r : xi) {
        Real om = a * r;
        Real th = (a * r + b) * r + c;
        out.push_back(x0 + x1 * om + x2 * th);
    }
    return out;
}

mpfr_prec_t CubicField::bits_for(const LElt& x) const
{
    size_t m = 1;
    for (auto& v : x.c)
        m = std::max(m, bitsize(v));
    mpfr_prec_t b = 128 + 3 * (mpfr_prec_t)m;   // conjugates down to 2^-2m
    return (b + 63) / 64 * 64;
}

std::vector<double> CubicField::log_embed(const LElt& x) const
{
    auto e = embed(x, bits_for(x));
    std::vector<double> out;
    for (auto& v : e) {
        PrecisionGuard guard(v.bits());
        out.push_back(log(abs(v)).to_double());
    }
    return out;
}

std::vector<Real> CubicField::coordinates(const std::vector<Real>& values, mpfr_prec_t bits) const
{
    const auto& xi = roots(bits);
    PrecisionGuard guard(bits);
    Real a(F_.a), b(F_.b), c(F_.c);
    // rows (1, omega_i, theta_i)
    Real M[3][3];
    for (int i = 0; i < 3; ++i) {
        M[i][0] = Real(1);
        M[i][1] = a * xi[i];
        M[i][2] = (a * xi[i] + b) * xi[i] + c;
    }
    auto det3 = [](Real m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Real det = det3(M);
    std::vector<Real> out;
    for (int k = 0; k < 3; ++k) {
        Real N[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                N[i][j] = j == k ? values[i] : M[i][j];
        out.push_back(det3(N) / det);
    }
    return out;
}

std::optional<LElt> CubicField::root(const LElt& x, int n) const
{
    if (n == 1)
        return x;
    mpfr_prec_t bits = bits_for(x) + 64;
    for (int attempt = 0; attempt < 3; ++attempt, bits *= 2) {
        auto vals = embed(x, bits);
        PrecisionGuard guard(bits);
        std::vector<Real> r;
        for (auto& v : vals) {
            if (v.sign() == 0)
                return std::nullopt;
            if (n % 2 == 0 && v.sign() < 0)
                return std::nullopt;
            Real w = abs(v);
            Real y;
            mpfr_rootn_ui(y.get(), w.get(), (unsigned long)n, MPFR_RNDN);
            if (v.sign() < 0)
                y = -y;
            r.push_back(y);
        }
        auto co = coordinates(r, bits);
        LElt y;
        double worst = 0;
        for (int k = 0; k < 3; ++k) {
            y.c[k] = co[k].round();
            Real diff = co[k] - Real(y.c[k]);
            worst = std::max(worst, std::fabs(diff.to_double()));
        }
        if (worst > 0.25)
            return std::nullopt;
        if (pow(y, n) == x)
            return y;
        if (worst < 1e-6)
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<std::pair<i64, i64>> CubicField::homs(i64 p) const
{
    i64 a = mod(F_.a, p), b = mod(F_.b, p), c = mod(F_.c, p), d = mod(F_.d, p);
    auto ok = [&](i64 u, i64 v) {
        return mod(u * u + a * c + b * u - a * v, p) == 0 && mod(u * v + a * d, p) == 0 &&
               mod(v * v + b * d + d * u - c * v, p) == 0;
    };
    std::set<std::pair<i64, i64>> out;
    if (p <= 200) {
        for (i64 u = 0; u < p; ++u)
            for (i64 v = 0; v < p; ++v)
                if (ok(u, v))
                    out.insert({u, v});
    } else {
        for (i64 r = 0; r < p; ++r) {
            i64 fr = (i64)((mulmod(mulmod(mod(a * r + b, p), r, p) + c, r, p) + d) % p);
            if (fr != 0)
                continue;
            i64 u = mulmod(a, r, p);
            i64 v = (i64)((mulmod(mod(a * r + b, p), r, p) + c) % p);
            if (ok(u, v))
                out.insert({u, v});
        }
        if (a == 0 && ok(mod(-b, p), 0))
            out.insert({mod(-b, p), 0});
    }
    return {out.begin(), out.end()};
}

i64 CubicField::reduce(const LElt& x, i64 u, i64 v, i64 p) const
{
    i64 x0 = mpz_fdiv_ui(x.c[0].get_mpz_t(), p);
    i64 x1 = mpz_fdiv_ui(x.c[1].get_mpz_t(), p);
    i64 x2 = mpz_fdiv_ui(x.c[2].get_mpz_t(), p);
    return (i64)((x0 + mulmod(x1, u, p) + mulmod(x2, v, p)) % p);
}

int CubicField::root_count(i64 p) const
{
    i64 a = mod(F_.a, p);
    if (p < 1000 || a == 0) {
        int cnt = 0;
        i64 b = mod(F_.b, p), c = mod(F_.c, p), d = mod(F_.d, p);
        if (a == 0)
            ++cnt;
        for (i64 r = 0; r < p; ++r)
            if ((((a * r + b) % p * r + c) % p * r + d) % p == 0)
                ++cnt;
        return cnt;
    }
    u64 inv = invmod(a, p);
    PolyModP P{(u64)p, {mulmod(mod(F_.d, p), inv, p), mulmod(mod(F_.c, p), inv, p), mulmod(mod(F_.b, p), inv, p)}};
    std::array<u64, 3> base{0, 1, 0}, acc{1, 0, 0};
    u64 e = p;
    while (e) {
        if (e & 1)
            acc = P.mul(acc, base);
        base = P.mul(base, base);
        e >>= 1;
    }
    std::vector<u64> g{acc[0], (acc[1] + p - 1) % (u64)p, acc[2]};
    std::vector<u64> f{P.f[0], P.f[1], P.f[2], 1};
    int deg = gcd_degree(f, g, p);
    return std::max(deg, 0);
}

std::vector<PrimeIdeal> CubicField::primes_above(i64 p) const
{
    std::vector<PrimeIdeal> out;
    auto hs = homs(p);
    auto make_beta = [&](PrimeIdeal& P) {
        // nonzero beta mod p with beta * g = 0 mod p for every generator g of P
        std::vector<std::vector<i64>> eqs;
        for (auto& g : P.basis) {
            LElt ge{{g[0], g[1], g[2]}};
            for (int k = 0; k < 3; ++k) {
                std::vector<i64> row(3);
                for (int j = 0; j < 3; ++j) {
                    LElt ej;
                    ej.c[j] = 1;
                    LElt prod = mul(ge, ej);
                    row[j] = mpz_fdiv_ui(prod.c[k].get_mpz_t(), p);
                }
                eqs.push_back(row);
            }
        }
        auto ns = nullspace_mod(eqs, 3, p);
        if (ns.empty())
            throw std::logic_error("annihilator is trivial");
        for (int k = 0; k < 3; ++k)
            P.beta.c[k] = ns[0][k];
    };
    if (hs.empty()) {
        PrimeIdeal P;
        P.p = p;
        P.e = 1;
        P.f = 3;
        P.basis = ZMat{{p, 0, 0}, {0, p, 0}, {0, 0, p}};
        out.push_back(P);
        return out;
    }
    for (auto [u, v] : hs) {
        PrimeIdeal P;
        P.p = p;
        P.f = 1;
        P.u = u;
        P.v = v;
        P.basis = hnf(ZMat{{p, 0, 0}, {-u, 1, 0}, {-v, 0, 1}});
        make_beta(P);
        P.e = valuation(from_int(p), P);
        out.push_back(P);
    }
    int sum = 0;
    for (auto& P : out)
        sum += P.e;
    if (sum == 1) {
        // remaining prime of degree 2: annihilator of the degree one prime mod p
        const PrimeIdeal& P1 = out[0];
        std::vector<std::vector<i64>> eqs;
        for (auto& g : P1.basis) {
            LElt ge{{g[0], g[1], g[2]}};
            for (int k = 0; k < 3; ++k) {
                std::vector<i64> row(3);
                for (int j = 0; j < 3; ++j) {
                    LElt ej;
                    ej.c[j] = 1;
                    row[j] = mpz_fdiv_ui(mul(ge, ej).c[k].get_mpz_t(), p);
                }
                eqs.push_back(row);
            }
        }
        auto ns = nullspace_mod(eqs, 3, p);
        ZMat gens{{p, 0, 0}, {0, p, 0}, {0, 0, p}};
        for (auto& v : ns)
            gens.push_back({v[0], v[1], v[2]});
        PrimeIdeal P2;
        P2.p = p;
        P2.f = 2;
        P2.e = 1;
        P2.basis = hnf(gens);
        make_beta(P2);
        out.push_back(P2);
    } else if (sum != 3) {
        throw std::logic_error("prime decomposition does not add up");
    }
    return out;
}

int CubicField::valuation(const LElt& x0, const PrimeIdeal& P) const
{
    if (x0.c[0] == 0 && x0.c[1] == 0 && x0.c[2] == 0)
        return 1 << 20;
    if (P.f == 3) {
        int v = 1 << 20;
        for (auto& c : x0.c) {
            if (c == 0)
                continue;
            mpz_class t = c;
            int k = 0;
            while (t % P.p == 0) {
                t /= P.p;
                ++k;
            }
            v = std::min(v, k);
        }
        return v;
    }
    LElt x = x0;
    int v = 0;
    for (;;) {
        LElt y = mul(x, P.beta);
        bool div = true;
        for (auto& c : y.c)
            if (mpz_fdiv_ui(c.get_mpz_t(), P.p) != 0)
                div = false;
        if (!div)
            return v;
        for (auto& c : y.c)
            c /= P.p;
        x = y;
        ++v;
    }
}

// ---------------------------------------------------------------------------
// units

std::vector<double> UnitLattice::logv(const LElt& u) const
{
    return L_->log_embed(u);
}

LElt UnitLattice::combine(const std::vector<LElt>& g, const std::vector<mpz_class>& e) const
{
    LElt r = L_->one();
    for (size_t i = 0; i < g.size(); ++i) {
        if (e[i] == 0)
            continue;
        LElt base = e[i] > 0 ? g[i] : L_->unit_inverse(g[i]);
        mpz_class k = abs(e[i]);
        r = L_->mul(r, L_->pow(base, k.get_si()));
    }
    return r;
}

double UnitLattice::regulator() const
{
    if (basis_.size() < 2)
        return 0;
    auto l1 = logv(basis_[0]), l2 = logv(basis_[1]);
    return std::fabs(l1[0] * l2[1] - l1[1] * l2[0]);
}

void UnitLattice::reduce_basis()
{
    if (basis_.size() < 2)
        return;
    for (int it = 0; it < 200; ++it) {
        auto l1 = logv(basis_[0]), l2 = logv(basis_[1]);
        double n1 = 0, n2 = 0, dp = 0;
        for (int i = 0; i < 3; ++i) {
            n1 += l1[i] * l1[i];
            n2 += l2[i] * l2[i];
            dp += l1[i] * l2[i];
        }
        if (n2 < n1) {
            std::swap(basis_[0], basis_[1]);
            continue;
        }
        long m = std::lround(dp / n1);
        if (m == 0)
            return;
        basis_[1] = combine({basis_[1], basis_[0]}, {1, -m});
    }
}

bool UnitLattice::insert(const LElt& u)
{
    auto l = logv(u);
    double nl = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
    if (nl < 1e-7)
        return false;
    if (basis_.empty()) {
        basis_.push_back(u);
        return true;
    }
    auto l1 = logv(basis_[0]);
    if (basis_.size() == 1) {
        double n1 = l1[0] * l1[0] + l1[1] * l1[1] + l1[2] * l1[2];
        double dp = l[0] * l1[0] + l[1] * l1[1] + l[2] * l1[2];
        double x = dp / n1;
        double res = 0;
        for (int i = 0; i < 3; ++i)
            res = std::max(res, std::fabs(l[i] - x * l1[i]));
        if (res > 1e-6) {
            basis_.push_back(u);
            reduce_basis();
            return true;
        }
        long num, den;
        if (!rational_approx(x, 100000, 1e-8, num, den))
            return false;
        if (den == 1)
            return false;
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), mpz_class(den).get_mpz_t(), mpz_class(num).get_mpz_t());
        basis_[0] = combine({basis_[0], u}, {s, t});
        return true;
    }
    auto l2 = logv(basis_[1]);
    // solve l = x l1 + y l2 on the first two coordinates
    double det = l1[0] * l2[1] - l1[1] * l2[0];
    double x = (l[0] * l2[1] - l[1] * l2[0]) / det;
    double y = (l1[0] * l[1] - l1[1] * l[0]) / det;
    if (std::fabs(x - std::round(x)) < 1e-7 && std::fabs(y - std::round(y)) < 1e-7)
        return false;
    long nx, dx, ny, dy;
    if (!rational_approx(x, 100000, 1e-8, nx, dx) || !rational_approx(y, 100000, 1e-8, ny, dy))
        return false;
    long q = std::lcm(dx, dy);
    long px = std::lround(x * q), py = std::lround(y * q);
    ZMat A{{q, 0}, {0, q}, {px, py}};
    ZMat U;
    ZMat H = hnf(A, &U);
    std::vector<LElt> gens{basis_[0], basis_[1], u};
    std::vector<LElt> nb;
    for (size_t r = 0; r < H.size(); ++r)
        nb.push_back(combine(gens, U[r]));
    basis_ = nb;
    reduce_basis();
    return true;
}

bool UnitLattice::saturate(int p)
{
    if (basis_.size() < 2)
        return false;
    std::vector<int> signs = p == 2 ? std::vector<int>{1, -1} : std::vector<int>{1};
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            if (i == 0 && j == 0)
                continue;
            LElt x = combine(basis_, {i, j});
            for (int s : signs) {
                LElt xs = x;
                if (s < 0)
                    for (auto& c : xs.c)
                        c = -c;
                auto r = L_->root(xs, p);
                if (r && insert(*r))
                    return true;
            }
        }
    return false;
}

const UnitGroup& CubicField::units() const
{
    if (units_)
        return *units_;
    UnitLattice lat(*this);
    std::map<ZMat, LElt> seen;
    std::mt19937_64 rng((u64)D_ * 1000003u + (u64)(F_.a * 31 + F_.b * 17 + F_.c * 7 + F_.d));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double n1[3] = {1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0};
    const double n2[3] = {1 / std::sqrt(6.0), 1 / std::sqrt(6.0), -2 / std::sqrt(6.0)};
    double T = 1.0;
    int idle = 0;
    std::array<LElt, 3> basis;
    for (int j = 0; j < 3; ++j)
        basis[j].c[j] = 1;
    for (int sample = 0; sample < 20000; ++sample) {
        double w[3];
        if (lat.rank() == 0) {
            double ang = 2 * M_PI * unif(rng), rad = T * std::sqrt(unif(rng));
            for (int i = 0; i < 3; ++i)
                w[i] = rad * (std::cos(ang) * n1[i] + std::sin(ang) * n2[i]);
            T += 0.05;
        } else if (lat.rank() == 1) {
            auto l1 = lat.logv(lat.basis()[0]);
            double nl = std::sqrt(l1[0] * l1[0] + l1[1] * l1[1] + l1[2] * l1[2]);
            // unit normal to l1 inside the trace-zero plane
            double nv[3] = {l1[1] * 1 - l1[2] * 1, l1[2] * 1 - l1[0] * 1, l1[0] * 1 - l1[1] * 1};
            double nn = std::sqrt(nv[0] * nv[0] + nv[1] * nv[1] + nv[2] * nv[2]);
            double s = unif(rng), t = (2 * unif(rng) - 1) * T;
            for (int i = 0; i < 3; ++i)
                w[i] = s * l1[i] + t * nv[i] / nn;
            (void)nl;
            T += 0.05;
        } else {
            auto l1 = lat.logv(lat.basis()[0]), l2 = lat.logv(lat.basis()[1]);
            double s = unif(rng), t = unif(rng);
            for (int i = 0; i < 3; ++i)
                w[i] = s * l1[i] + t * l2[i];
        }
        double wmax = std::max({std::fabs(w[0]), std::fabs(w[1]), std::fabs(w[2])});
        mpfr_prec_t bits = 128 + (mpfr_prec_t)(3 * wmax / kLog2);
        bits = (bits + 63) / 64 * 64;
        RMat B(3);
        {
            PrecisionGuard guard(bits);
            for (int j = 0; j < 3; ++j) {
                auto e = embed(basis[j], bits);
                for (int i = 0; i < 3; ++i)
                    B[j].push_back(e[i] * exp(Real(-w[i])));
            }
            ZMat Tm = lll(B);
            bool grew = false;
            for (int k = 0; k < 3; ++k) {
                LElt x;
                for (int j = 0; j < 3; ++j)
                    for (int c = 0; c < 3; ++c)
                        x.c[c] += Tm[k][j] * basis[j].c[c];
                mpz_class n = norm(x);
                if (n == 0)
                    continue;
                if (n == 1 || n == -1) {
                    grew |= lat.insert(x);
                    continue;
                }
                ZMat key = ideal_hnf(x);
                auto it = seen.find(key);
                if (it == seen.end()) {
                    seen.emplace(key, x);
                    continue;
                }
                auto q = exact_div(x, it->second);
                if (q)
                    grew |= lat.insert(*q);
            }
            idle = grew ? 0 : idle + 1;
        }
        if (lat.rank() == 2 && idle > 80)
            break;
    }
    UnitGroup ug;
    if (lat.rank() == 2) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int p : {2, 3, 5})
                while (lat.saturate(p))
                    grew = true;
        }
        ug.units = lat.basis();
        ug.regulator = lat.regulator();
        ug.status = Status::verified;
    }
    units_ = ug;
    return *units_;
}

double CubicField::analytic_hR(i64 prime_bound) const
{
    double logk = 0;
    for (int p : primes_up_to((int)prime_bound)) {
        double q = p;
        double local;
        if (D_ % p == 0) {
            auto P = primes_above(p);
            double den = 1;
            for (auto& pr : P)
                den *= 1 - std::pow(q, -pr.f);
            local = (1 - 1 / q) / den;
        } else {
            int r = root_count(p);
            if (r == 3)
                local = 1 / ((1 - 1 / q) * (1 - 1 / q));
            else if (r == 1)
                local = 1 / (1 - 1 / (q * q));
            else
                local = (1 - 1 / q) / (1 - 1 / (q * q * q));
        }
        logk += std::log(local);
    }
    return std::exp(logk) * std::sqrt((double)D_) / 4;
}

const ClassGroupL& CubicField::class_group() const
{
    if (cl_)
        return *cl_;
    ClassGroupL out;
    const UnitGroup& ug = units();
    double mink = (2.0 / 9.0) * std::sqrt((double)D_);
    std::vector<PrimeIdeal> fb;
    for (int p : primes_up_to(std::max(2, (int)std::floor(mink))))
        for (auto& P : primes_above(p))
            if (P.norm() <= mink)
                fb.push_back(P);
    double analytic = analytic_hR();
    if (fb.empty()) {
        out.h = 1;
        out.analytic_ratio = ug.regulator / analytic;
        out.status = ug.status == Status::verified && out.analytic_ratio < 1.5 ? Status::verified : Status::unverified;
        cl_ = out;
        return *cl_;
    }
    size_t k = fb.size();
    std::vector<i64> fbp;
    for (auto& P : fb)
        if (std::find(fbp.begin(), fbp.end(), P.p) == fbp.end())
            fbp.push_back(P.p);
    ZMat rel;
    // (p) for primes whose every factor lies in the base
    for (i64 p : fbp) {
        auto all = primes_above(p);
        bool inside = true;
        for (auto& P : all)
            if (P.norm() > mink)
                inside = false;
        if (!inside)
            continue;
        std::vector<mpz_class> row(k, 0);
        for (size_t i = 0; i < k; ++i)
            if (fb[i].p == p)
                row[i] = fb[i].e;
        rel.push_back(row);
    }
    auto try_relation = [&](const LElt& x) {
        mpz_class n = abs(norm(x));
        if (n == 0)
            return;
        std::vector<mpz_class> row(k, 0);
        mpz_class rest = n;
        for (size_t i = 0; i < k; ++i) {
            if (rest % fb[i].p != 0)
                continue;
            int v = valuation(x, fb[i]);
            row[i] = v;
            for (int j = 0; j < v; ++j)
                rest /= fb[i].norm();
        }
        if (rest == 1)
            rel.push_back(row);
    };
    std::mt19937_64 rng((u64)D_ * 7919u + 17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> l1{0, 0, 0}, l2{0, 0, 0};
    UnitLattice lat(*this);
    if (ug.units.size() == 2) {
        l1 = lat.logv(ug.units[0]);
        l2 = lat.logv(ug.units[1]);
    }
    mpz_class h = 0;
    for (int round = 0; round < 40; ++round) {
        for (size_t i = 0; i <= k; ++i) {
            ZMat base = i < k ? fb[i].basis : ZMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
            for (int rep = 0; rep < 2; ++rep) {
                double s = unif(rng), t = unif(rng);
                double w[3];
                for (int c = 0; c < 3; ++c)
                    w[c] = s * l1[c] + t * l2[c];
                double wmax = std::max({std::fabs(w[0]), std::fabs(w[1]), std::fabs(w[2])});
                mpfr_prec_t bits = ((192 + (mpfr_prec_t)(3 * wmax / kLog2)) + 63) / 64 * 64;
                PrecisionGuard guard(bits);
                RMat B(3);
                std::array<LElt, 3> gens;
                for (int j = 0; j < 3; ++j) {
                    for (int c = 0; c < 3; ++c)
                        gens[j].c[c] = base[j][c];
                    auto e = embed(gens[j], bits);
                    for (int c = 0; c < 3; ++c)
                        B[j].push_back(e[c] * exp(Real(-w[c])));
                }
                ZMat Tm = lll(B);
                for (int r = 0; r < 3; ++r) {
                    LElt x;
                    for (int j = 0; j < 3; ++j)
                        for (int c = 0; c < 3; ++c)
                            x.c[c] += Tm[r][j] * gens[j].c[c];
                    try_relation(x);
                    // products of two short vectors give more mixing
                    for (int r2 = r + 1; r2 < 3; ++r2) {
                        LElt y;
                        for (int j = 0; j < 3; ++j)
                            for (int c = 0; c < 3; ++c)
                                y.c[c] += (Tm[r][j] + Tm[r2][j]) * gens[j].c[c];
                        try_relation(y);
                    }
                }
            }
        }
        ZMat H = hnf(rel);
        rel = H;
        if (H.size() == k) {
            mpz_class hh = 1;
            for (size_t i = 0; i < k; ++i)
                hh *= H[i][i];
            h = hh;
            double ratio = h.get_d() * ug.regulator / analytic;
            out.analytic_ratio = ratio;
            if (ratio < 1.5)
                break;
        }
    }
    if (h > 0) {
        out.h = h.get_si();
        auto inv = smith_invariants(rel);
        for (auto& v : inv)
            if (v > 1)
                out.structure.push_back(v.get_si());
        for (auto v : out.structure)
            if (v % 3 == 0)
                ++out.rank3;
        out.status = ug.status == Status::verified && out.analytic_ratio > 0.6 && out.analytic_ratio < 1.5
                         ? Status::verified
                         : Status::unverified;
    }
    cl_ = out;
    return *cl_;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> f3_kernel(const std::vector<std::vector<int>>& rows, int ncols)
{
    std::vector<std::vector<i64>> A;
    for (auto& r : rows) {
        std::vector<i64> v(ncols, 0);
        for (int c = 0; c < ncols && c < (int)r.size(); ++c)
            v[c] = r[c];
        A.push_back(v);
    }
    auto ns = nullspace_mod(A, ncols, 3);
    std::vector<std::vector<int>> out;
    for (auto& v : ns) {
        std::vector<int> w(v.begin(), v.end());
        out.push_back(w);
    }
    return out;
}

namespace {

int cubic_char(i64 x, i64 p, i64 zeta)
{
    i64 y = powmod(mod(x, p), (p - 1) / 3, p);
    if (y == 1)
        return 0;
    if (y == zeta)
        return 1;
    return 2;
}

i64 primitive_cube_root(i64 p)
{
    for (i64 g = 2; g < p; ++g) {
        i64 z = powmod(g, (p - 1) / 3, p);
        if (z != 1)
            return z;
    }
    throw std::logic_error("no cube root of unity");
}

}  // namespace

AbsoluteDpf absolute_dpf(const CubicField& L, const Conductor& f)
{
    AbsoluteDpf out;
    if (f.e > 0)
        out.ramified.push_back(3);
    for (i64 q : f.noncritical)
        out.ramified.push_back(q);
    int k = (int)out.ramified.size();
    if (k == 0)
        return out;
    const UnitGroup& ug = L.units();
    if (ug.units.size() != 2)
        throw std::runtime_error("unit group unavailable");
    std::vector<LElt> gens;
    for (i64 q : out.ramified)
        gens.push_back(L.from_int(q));
    gens.push_back(ug.units[0]);
    gens.push_back(ug.units[1]);
    int n = (int)gens.size();
    std::vector<std::vector<int>> rows;
    i64 p = 7;
    int want = 4 * n;
    const CubicForm& F = L.form();
    for (int round = 0; round < 20; ++round) {
        while ((int)rows.size() < want) {
            p += 6;
            if (!is_prime(p) || F.a % p == 0 || L.disc() % p == 0)
                continue;
            bool bad = false;
            for (i64 q : out.ramified)
                if (q == p)
                    bad = true;
            if (bad)
                continue;
            i64 zeta = primitive_cube_root(p);
            for (auto [u, v] : L.homs(p)) {
                std::vector<int> row;
                for (auto& g : gens)
                    row.push_back(cubic_char(L.reduce(g, u, v, p), p, zeta));
                rows.push_back(row);
            }
        }
        auto ker = f3_kernel(rows, n);
        bool all_ok = true;
        for (auto& vec : ker) {
            LElt x = L.one();
            for (int i = 0; i < n; ++i)
                if (vec[i])
                    x = L.mul(x, L.pow(gens[i], vec[i]));
            if (!L.root(x, 3)) {
                all_ok = false;
                break;
            }
        }
        if (!all_ok) {
            want *= 2;
            continue;
        }
        std::vector<F3Vec> proj;
        for (auto& vec : ker)
            proj.push_back(F3Vec(vec.begin(), vec.begin() + k));
        out.A = f3_rank(proj);
        // echelon basis of the projection
        auto red = f3_kernel(f3_kernel(proj, k), k);
        out.principal_combinations = red;
        if (ker.empty())
            out.principal_combinations.clear();
        return out;
    }
    throw std::runtime_error("cube test did not stabilise");
}

// ---------------------------------------------------------------------------

bool is_p_maximal_radical(const CubicForm& F, i64 p)
{
    CubicField L(F);
    // Frobenius power with p^j >= 3 is linear on O/pO; its kernel is the radical
    int j = p == 2 ? 2 : 1;
    std::vector<std::vector<i64>> frob(3, std::vector<i64>(3));
    for (int c = 0; c < 3; ++c) {
        LElt e;
        e.c[c] = 1;
        LElt y = e;
        for (int r = 0; r < j; ++r) {
            LElt z = L.one();
            for (i64 t = 0; t < p; ++t) {
                z = L.mul(z, y);
                for (auto& v : z.c)
                    v = mpz_fdiv_ui(v.get_mpz_t(), p);
            }
            y = z;
        }
        for (int r = 0; r < 3; ++r)
            frob[r][c] = mpz_fdiv_ui(y.c[r].get_mpz_t(), p);
    }
    auto ker = nullspace_mod(frob, 3, p);
    ZMat gens{{p, 0, 0}, {0, p, 0}, {0, 0, p}};
    for (auto& v : ker)
        gens.push_back({v[0], v[1], v[2]});
    ZMat H = hnf(gens);
    // map x -> (x g_k mod p I_p) over F_p; O is p-maximal iff only x = 0 mod p kills it
    std::vector<std::vector<i64>> eqs(9, std::vector<i64>(3, 0));
    for (int c = 0; c < 3; ++c) {
        LElt e;
        e.c[c] = 1;
        for (int k = 0; k < 3; ++k) {
            LElt g{{H[k][0], H[k][1], H[k][2]}};
            auto co = solve_triangular(H, L.mul(e, g));
            if (!co)
                throw std::logic_error("radical is not an ideal");
            for (int r = 0; r < 3; ++r)
                eqs[3 * k + r][c] = mpz_fdiv_ui((*co)[r].get_mpz_t(), p);
        }
    }
    return nullspace_mod(eqs, 3, p).empty();
}

}  // namespace dpf
