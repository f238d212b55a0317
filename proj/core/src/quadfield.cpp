#include "dpf/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "dpf/real.hpp"

namespace dpf {

namespace {

struct FormHash {
    size_t operator()(const QForm& f) const
    {
        u64 h = (u64)f.a * 0x9E3779B97F4A7C15ull;
        h ^= (u64)f.b + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        return (size_t)h;
    }
};

// smallest prime factor table, grown on demand
std::shared_ptr<const std::vector<int>> spf_table(i64 n)
{
    static std::mutex mu;
    static std::shared_ptr<const std::vector<int>> table;
    std::lock_guard<std::mutex> lock(mu);
    if (table && (i64)table->size() > n)
        return table;
    i64 size = std::max<i64>(n + 1, 1 << 16);
    if (table)
        size = std::max<i64>(size, 2 * (i64)table->size());
    auto t = std::make_shared<std::vector<int>>(size, 0);
    auto& v = *t;
    for (i64 i = 2; i < size; ++i) {
        if (v[i] == 0) {
            for (i64 j = i; j < size; j += i)
                if (v[j] == 0)
                    v[j] = (int)i;
        }
    }
    table = t;
    return table;
}

void divisors_spf(i64 n, const std::vector<int>& spf, std::vector<i64>& out)
{
    out.assign(1, 1);
    while (n > 1) {
        i64 p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i)
                out.push_back(out[i] * pk);
        }
    }
}

i64 floor_sqrt(i64 d)
{
    return isqrt(d);
}

i128 mod128(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

// extended gcd on i128: returns g >= 0 with x*a + y*b = g
i128 xgcd(i128 a, i128 b, i128& x, i128& y)
{
    i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i128 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

struct CycleData {
    std::unordered_map<QForm, int, FormHash> id;
    std::vector<QForm> rep;
    int principal = 0;
    int minus_one = 0;   // narrow class of (-1, b0, .)
};

CycleData cycles(i64 d)
{
    CycleData cd;
    std::vector<QForm> forms = reduced_forms(d);
    cd.id.reserve(forms.size() * 2);
    for (const QForm& f : forms)
        cd.id.emplace(f, -1);
    for (const QForm& f : forms) {
        if (cd.id[f] != -1)
            continue;
        int k = (int)cd.rep.size();
        cd.rep.push_back(f);
        QForm g = f;
        do {
            cd.id[g] = k;
            g = rho_step(g, d);
        } while (!(g == f));
    }
    i64 s = floor_sqrt(d);
    i64 b0 = (s % 2 == d % 2) ? s : s - 1;
    QForm one{1, b0, (b0 * b0 - d) / 4};
    QForm mone{-1, b0, -(b0 * b0 - d) / 4};
    cd.principal = cd.id.at(one);
    cd.minus_one = cd.id.at(mone);
    return cd;
}

int class_of(const CycleData& cd, const QForm& f, i64 d)
{
    return cd.id.at(reduce(f, d));
}

QForm power(const QForm& f, i64 e, i64 d)
{
    i64 s = floor_sqrt(d);
    i64 b0 = (s % 2 == d % 2) ? s : s - 1;
    QForm r{1, b0, (b0 * b0 - d) / 4};
    QForm base = reduce(f, d);
    while (e > 0) {
        if (e & 1)
            r = reduce(compose(r, base, d), d);
        base = reduce(compose(base, base, d), d);
        e >>= 1;
    }
    return r;
}

// (x + y sqrt d) with rational coordinates
struct QRat {
    mpq_class x, y;
};

QRat qr_mul(const QRat& u, const QRat& v, i64 d)
{
    QRat r;
    r.x = u.x * v.x + mpq_class(d) * u.y * v.y;
    r.y = u.x * v.y + u.y * v.x;
    return r;
}

QuadInt to_quadint(const QRat& u)
{
    mpq_class x2 = u.x * 2, y2 = u.y * 2;
    if (x2.get_den() != 1 || y2.get_den() != 1)
        throw std::logic_error("element is not integral");
    return QuadInt{x2.get_num(), y2.get_num()};
}

// compose two forms with big integers, unreduced
void compose_mpz(const mpz_class& a1, const mpz_class& b1, const mpz_class& a2, const mpz_class& b2, i64 d,
                 mpz_class& A, mpz_class& B)
{
    mpz_class s = (b1 + b2) / 2;
    mpz_class g1, u, v;
    mpz_gcdext(g1.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    mpz_class e, x, z;
    mpz_gcdext(e.get_mpz_t(), x.get_mpz_t(), z.get_mpz_t(), g1.get_mpz_t(), s.get_mpz_t());
    mpz_class lam = x * u, mu = x * v, nu = z;
    A = a1 * a2 / (e * e);
    B = (lam * a1 * b2 + mu * a2 * b1 + nu * (b1 * b2 + d) / 2) / e;
    mpz_class m = 2 * abs(A);
    B %= m;
    if (B < 0)
        B += m;
}

}  // namespace

QuadInt qmul(const QuadInt& u, const QuadInt& v, i64 d)
{
    QuadInt r;
    r.x = (u.x * v.x + mpz_class(d) * u.y * v.y) / 2;
    r.y = (u.x * v.y + u.y * v.x) / 2;
    return r;
}

mpz_class qnorm(const QuadInt& u, i64 d)
{
    return (u.x * u.x - mpz_class(d) * u.y * u.y) / 4;
}

bool qin_ideal(const QuadInt& u, const mpz_class& a, const mpz_class& b)
{
    // ideal a Z + ((b + sqrt d)/2) Z
    mpz_class r = u.x - u.y * b;
    return mpz_divisible_p(r.get_mpz_t(), mpz_class(2 * a).get_mpz_t()) != 0;
}

double qlog_abs(const QuadInt& u, i64 d, int sign)
{
    double sd = std::sqrt((double)d);
    double lx = log_abs(u.x), ly = log_abs(u.y) + std::log(sd);
    double big;
    if (u.x == 0)
        big = ly;
    else if (u.y == 0)
        big = lx;
    else
        big = std::max(lx, ly) + std::log1p(std::exp(-std::fabs(lx - ly)));
    big -= std::log(2.0);
    bool plus_big = (sgn(u.x) * sgn(u.y)) >= 0;
    if ((sign > 0) == plus_big)
        return big;
    return log_abs(qnorm(u, d)) - big;
}

bool is_cube_in_K(const QuadInt& u, i64 d)
{
    mpz_class n = qnorm(u, d);
    mpz_class r;
    if (!mpz_root(r.get_mpz_t(), mpz_class(abs(n)).get_mpz_t(), 3))
        return false;
    long bits = (long)(std::max(log_abs(u.x), log_abs(u.y) + 0.5 * std::log((double)d)) / std::log(2.0)) + 128;
    PrecisionGuard g(bits);
    Real sd = sqrt(Real((long)d));
    Real up = (Real(u.x) + Real(u.y) * sd) / Real(2);
    Real um = (Real(u.x) - Real(u.y) * sd) / Real(2);
    Real vp = cbrt(up), vm = cbrt(um);
    QuadInt v{(vp + vm).round(), ((vp - vm) / sd).round()};
    if (mpz_class(v.x - v.y * d) % 2 != 0)
        return false;
    QuadInt c = qmul(qmul(v, v, d), v, d);
    return c.x == u.x && c.y == u.y;
}

bool is_reduced(const QForm& f, i64 d)
{
    i64 s = floor_sqrt(d);
    i64 aa = f.a < 0 ? -f.a : f.a;
    return f.b > 0 && f.b <= s && 2 * aa > s - f.b && 2 * aa <= s + f.b;
}

QForm rho_step(const QForm& f, i64 d)
{
    i64 s = floor_sqrt(d);
    i64 c = f.c, ac = c < 0 ? -c : c;
    i64 m = 2 * ac;
    i64 b;
    if (ac > s) {
        // -|c| < b <= |c|
        b = (i64)mod128(-(i128)f.b + ac - 1, m) - (ac - 1);
    } else {
        // s - 2|c| < b <= s
        b = s - (i64)mod128((i128)s + f.b, m);
    }
    i128 num = (i128)b * b - d;
    return QForm{c, b, (i64)(num / (4 * (i128)c))};
}

QForm reduce(QForm f, i64 d)
{
    for (int it = 0; !is_reduced(f, d); ++it) {
        if (it > 100000)
            throw std::runtime_error("form reduction did not terminate");
        f = rho_step(f, d);
    }
    return f;
}

QForm compose(const QForm& f, const QForm& g, i64 d)
{
    i128 a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b;
    i128 s = (b1 + b2) / 2;
    i128 u, v, x, z;
    i128 g1 = xgcd(a1, a2, u, v);
    i128 e = xgcd(g1, s, x, z);
    i128 lam = x * u, mu = x * v, nu = z;
    i128 A = a1 * a2 / (e * e);
    i128 m = 2 * (A < 0 ? -A : A);
    // reduce coefficients before the products to stay in range
    i128 t = mod128(lam, m) * mod128(a1 * b2, m) % m;
    t = (t + mod128(mu, m) * mod128(a2 * b1, m)) % m;
    i128 w = (b1 * b2 + d) / 2;
    t = (t + mod128(nu, m) * mod128(w, m)) % m;
    // division by e is exact over the integers, so redo it exactly when e > 1
    i128 B;
    if (e == 1) {
        B = t;
    } else {
        mpz_class AA, BB;
        compose_mpz(to_mpz(a1), to_mpz(b1), to_mpz(a2), to_mpz(b2), d, AA, BB);
        B = to_i128(BB);
    }
    i128 C = (B * B - d) / (4 * A);
    return QForm{(i64)A, (i64)B, (i64)C};
}

std::vector<QForm> reduced_forms(i64 d)
{
    std::vector<QForm> out;
    i64 s = floor_sqrt(d);
    auto spf = spf_table(d / 4 + 1);
    std::vector<i64> divs;
    for (i64 b = (d % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        i64 n = (d - b * b) / 4;
        if (n <= 0)
            continue;
        divisors_spf(n, *spf, divs);
        for (i64 a : divs) {
            if (2 * a > s - b && 2 * a <= s + b) {
                out.push_back(QForm{a, b, -n / a});
                out.push_back(QForm{-a, b, n / a});
            }
        }
    }
    return out;
}

QuadUnit fundamental_unit(i64 d)
{
    if (d <= 1 || is_square(d))
        throw std::invalid_argument("fundamental_unit: d must be a positive non-square");
    i64 s = floor_sqrt(d);
    i64 b0 = (s % 2 == d % 2) ? s : s - 1;
    QForm f{1, b0, (b0 * b0 - d) / 4};
    QRat mu{1, 0};
    QForm g = f;
    for (;;) {
        QRat step{mpq_class(g.b, 2 * g.c), mpq_class(1, 2 * g.c)};
        step.x.canonicalize();
        step.y.canonicalize();
        mu = qr_mul(mu, step, d);
        g = rho_step(g, d);
        if (g.a == 1 || g.a == -1)
            break;
    }
    QuadInt u = to_quadint(mu);
    // normalize to the unit > 1
    if (u.x < 0) {
        u.x = -u.x;
        u.y = -u.y;
    }
    if (u.y < 0) {
        // this is the conjugate of an inverse up to sign; take the conjugate
        u.y = -u.y;
    }
    QuadUnit r;
    r.x = u.x;
    r.y = u.y;
    mpz_class n = qnorm(u, d);
    if (n != 1 && n != -1)
        throw std::logic_error("fundamental_unit: norm is not +-1");
    r.norm = (int)n.get_si();
    return r;
}

i64 narrow_class_number(i64 d)
{
    return (i64)cycles(d).rep.size();
}

int rank3(i64 d)
{
    CycleData cd = cycles(d);
    i64 count = 0;
    for (const QForm& r : cd.rep) {
        QForm c = reduce(compose(r, reduce(compose(r, r, d), d), d), d);
        if (cd.id.at(c) == cd.principal)
            ++count;
    }
    int rho = 0;
    while (count > 1) {
        count /= 3;
        ++rho;
    }
    return rho;
}

ClassGroupData class_group(i64 d)
{
    CycleData cd = cycles(d);
    ClassGroupData r;
    r.h_narrow = (i64)cd.rep.size();
    bool same = cd.principal == cd.minus_one;
    r.h = same ? r.h_narrow : r.h_narrow / 2;
    auto is_wide_trivial = [&](int id) { return id == cd.principal || id == cd.minus_one; };
    i64 zsize = same ? 1 : 2;

    std::map<i64, std::vector<i64>> counts;   // p -> #{x : x^(p^k) = 1} for k = 0..
    for (i64 p : prime_divisors(r.h)) {
        int vh = v_p(r.h, p);
        i64 full = 1;
        for (int i = 0; i < vh; ++i)
            full *= p;
        std::vector<i64> cnt{1};
        i64 pk = 1;
        while (cnt.back() < full) {
            pk *= p;
            i64 c = 0;
            for (const QForm& f : cd.rep)
                if (is_wide_trivial(class_of(cd, power(f, pk, d), d)))
                    ++c;
            cnt.push_back(c / zsize);
        }
        counts[p] = cnt;
    }
    // number of cyclic factors of order >= p^k is log_p(cnt[k]/cnt[k-1])
    std::vector<i64> invariants;
    for (auto& [p, cnt] : counts) {
        std::vector<int> ge;
        for (size_t k = 1; k < cnt.size(); ++k) {
            i64 q = cnt[k] / cnt[k - 1];
            int e = 0;
            while (q > 1) {
                q /= p;
                ++e;
            }
            ge.push_back(e);
        }
        // ge[k-1] = number of factors with exponent >= k
        int nfac = ge.empty() ? 0 : ge[0];
        std::vector<i64> orders(nfac, 1);
        for (size_t k = 0; k < ge.size(); ++k)
            for (int i = 0; i < ge[k]; ++i)
                orders[i] *= p;
        if (invariants.size() < orders.size())
            invariants.resize(orders.size(), 1);
        // combine p-parts into invariant factors, largest first
        for (size_t i = 0; i < orders.size(); ++i)
            invariants[i] *= orders[i];
    }
    std::sort(invariants.begin(), invariants.end());
    r.elementary_divisors = invariants;

    // 3-torsion of the narrow group
    std::vector<int> tors;
    for (size_t i = 0; i < cd.rep.size(); ++i) {
        const QForm& f = cd.rep[i];
        if ((int)i == cd.principal)
            continue;
        if (class_of(cd, power(f, 3, d), d) == cd.principal)
            tors.push_back((int)i);
    }
    i64 n3 = (i64)tors.size() + 1;
    while (n3 > 1) {
        n3 /= 3;
        ++r.rho3;
    }
    // greedy basis
    std::vector<int> span{cd.principal};
    for (int t : tors) {
        if (std::find(span.begin(), span.end(), t) != span.end())
            continue;
        r.torsion3.push_back(cd.rep[t]);
        std::vector<int> next;
        for (int s : span)
            for (int k = 0; k < 3; ++k) {
                QForm g = cd.rep[s];
                for (int j = 0; j < k; ++j)
                    g = reduce(compose(g, cd.rep[t], d), d);
                next.push_back(class_of(cd, g, d));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        span = next;
        if ((int)r.torsion3.size() == r.rho3)
            break;
    }
    return r;
}

QuadraticField quadratic_field(i64 d)
{
    if (!is_fundamental_discriminant(d) || d <= 0)
        throw std::invalid_argument("quadratic_field: d must be a positive fundamental discriminant");
    QuadraticField K;
    K.d = d;
    K.eta = fundamental_unit(d);
    K.cl = class_group(d);
    return K;
}

namespace {

// a properly equivalent form whose first coefficient is positive and coprime to m
QForm coprime_representative(const QForm& f, i64 m, i64 d)
{
    for (i64 bound = 1; bound < 1000; ++bound) {
        for (i64 x = -bound; x <= bound; ++x) {
            for (i64 y = -bound; y <= bound; ++y) {
                if (std::max(x < 0 ? -x : x, y < 0 ? -y : y) != bound)
                    continue;
                if (gcd64(x, y) != 1)
                    continue;
                i128 val = (i128)f.a * x * x + (i128)f.b * x * y + (i128)f.c * y * y;
                if (val <= 0 || val > (i128)4e15)
                    continue;
                if (gcd64((i64)val, m) != 1)
                    continue;
                // complete (x, y) to a matrix [[x, r], [y, t]] with x t - r y = 1
                i128 t0, r0;
                xgcd(x, y, t0, r0);   // t0 x + r0 y = 1
                i128 r = -r0, t = t0;
                i128 A = val;
                i128 B = 2 * (i128)f.a * x * r + (i128)f.b * (x * t + r * y) + 2 * (i128)f.c * y * t;
                // translate B into (-A, A]
                i128 m2 = 2 * A;
                B = mod128(B, m2);
                if (B > A)
                    B -= m2;
                i128 C = (B * B - d) / (4 * A);
                return QForm{(i64)A, (i64)B, (i64)C};
            }
        }
    }
    throw std::runtime_error("no representative coprime to modulus");
}

}  // namespace

std::vector<VirtualUnit> virtual_units(const QuadraticField& K, i64 avoid)
{
    i64 d = K.d;
    std::vector<VirtualUnit> out;
    VirtualUnit e;
    e.element = QuadInt{K.eta.x, K.eta.y};
    e.cube_root_ideal = QForm{1, d % 2, (d % 2 - d) / 4};
    e.is_unit = true;
    out.push_back(e);
    double log_eta = qlog_abs(e.element, d, 1);
    i64 m = avoid * d;
    if (m < 0)
        m = -m;
    for (const QForm& t : K.cl.torsion3) {
        QForm j = coprime_representative(t, m, d);
        mpz_class a = j.a, b = j.b, A2, B2, A3, B3;
        compose_mpz(a, b, a, b, d, A2, B2);
        compose_mpz(A2, B2, a, b, d, A3, B3);
        if (A3 != a * a * a)
            throw std::logic_error("cube of ideal is not primitive");
        // walk the ideal [A3, (B3 + sqrt d)/2] to O_K, tracking the generator
        QRat mu{1, 0};
        mpz_class ca = A3, cb = B3;
        i64 s = floor_sqrt(d);
        bool done = false;
        for (long it = 0; it < 10000000; ++it) {
            if (ca == 1) {
                done = true;
                break;
            }
            mpz_class cc = (cb * cb - d) / (4 * ca);
            QRat step{mpq_class(cb, 2 * cc), mpq_class(1, 2 * cc)};
            step.x.canonicalize();
            step.y.canonicalize();
            mu = qr_mul(mu, step, d);
            // next ideal [|c|, (b' + sqrt d)/2] with b' = -b mod 2|c|
            mpz_class ac = abs(cc), m2 = 2 * ac, nb;
            if (ac > s) {
                nb = -cb + ac - 1;
                nb %= m2;
                if (nb < 0)
                    nb += m2;
                nb -= ac - 1;
            } else {
                nb = s + cb;
                nb %= m2;
                if (nb < 0)
                    nb += m2;
                nb = s - nb;
            }
            ca = ac;
            cb = nb;
        }
        if (!done)
            throw std::runtime_error("principal generator search exhausted");
        QuadInt th = to_quadint(mu);
        // balance the two embeddings with powers of eta
        double lp = qlog_abs(th, d, 1), lm = qlog_abs(th, d, -1);
        long k = std::lround((lm - lp) / (2 * log_eta));
        QuadInt epow{2, 0};
        QuadInt base = e.element;
        if (k < 0) {
            base.y = -base.y;   // inverse up to sign
            k = -k;
        }
        for (long i = 0; i < k; ++i)
            epow = qmul(epow, base, d);
        th = qmul(th, epow, d);
        if (!qin_ideal(th, A3, B3) || abs(qnorm(th, d)) != A3)
            throw std::logic_error("generator check failed");
        VirtualUnit vu;
        vu.element = th;
        vu.cube_root_ideal = QForm{j.a, j.b, j.c};
        vu.is_unit = false;
        out.push_back(vu);
    }
    return out;
}

}  // namespace dpf
