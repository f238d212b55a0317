#include "dpf/cubicenum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dpf {

namespace {

i64 floor_div(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i64 ceil_div(i64 a, i64 b)
{
    return -floor_div(-a, b);
}

i128 eval(const CubicForm& F, i128 x, i128 y)
{
    return ((F.a * x + F.b * y) * x + F.c * y * y) * x + F.d * y * y * y;
}

// matrices with entries in {-1, 0, 1} and determinant +-1, up to sign
const std::vector<std::array<int, 4>>& small_matrices()
{
    static const std::vector<std::array<int, 4>> mats = [] {
        std::vector<std::array<int, 4>> out;
        for (int p = -1; p <= 1; ++p)
            for (int q = -1; q <= 1; ++q)
                for (int r = -1; r <= 1; ++r)
                    for (int s = -1; s <= 1; ++s) {
                        int det = p * s - q * r;
                        if (det == 1 || det == -1)
                            out.push_back({p, q, r, s});
                    }
        return out;
    }();
    return mats;
}

}  // namespace

i128 CubicForm::disc() const
{
    i128 A = a, B = b, C = c, D = d;
    return B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D - 27 * A * A * D * D + 18 * A * B * C * D;
}

bool CubicForm::reduced() const
{
    i64 p = P(), q = Q(), r = R();
    return p > 0 && std::abs(q) <= p && p <= r;
}

CubicForm transform(const CubicForm& F, i64 p, i64 q, i64 r, i64 s)
{
    // F(p x + q y, r x + s y) expanded
    i64 a = F.a, b = F.b, c = F.c, d = F.d;
    CubicForm G;
    G.a = a * p * p * p + b * p * p * r + c * p * r * r + d * r * r * r;
    G.b = 3 * a * p * p * q + b * (p * p * s + 2 * p * q * r) + c * (q * r * r + 2 * p * r * s) + 3 * d * r * r * s;
    G.c = 3 * a * p * q * q + b * (q * q * r + 2 * p * q * s) + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s;
    G.d = a * q * q * q + b * q * q * s + c * q * s * s + d * s * s * s;
    return G;
}

bool is_irreducible(const CubicForm& F)
{
    if (F.a == 0 || F.d == 0)
        return false;
    // a rational root x = u/v of F(x, 1) has v | a and u | d; test near the real roots
    long double A = F.a, B = F.b, C = F.c, D = F.d;
    std::vector<long double> roots;
    // locate sign changes of the cubic on a bracketing interval, then bisect
    long double bound = 1 + std::max({std::fabs(B / A), std::fabs(C / A), std::fabs(D / A)});
    auto f = [&](long double x) { return ((A * x + B) * x + C) * x + D; };
    auto fp = [&](long double x) { return (3 * A * x + 2 * B) * x + C; };
    std::vector<long double> cuts{-bound};
    long double disc2 = B * B - 3 * A * C;
    if (disc2 > 0) {
        long double s = std::sqrt(disc2);
        long double x1 = (-B - s) / (3 * A), x2 = (-B + s) / (3 * A);
        if (x1 > x2)
            std::swap(x1, x2);
        cuts.push_back(x1);
        cuts.push_back(x2);
    }
    cuts.push_back(bound);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        long double flo = f(lo), fhi = f(hi);
        if (flo == 0) {
            roots.push_back(lo);
            continue;
        }
        if ((flo < 0) == (fhi < 0))
            continue;
        for (int it = 0; it < 200; ++it) {
            long double mid = (lo + hi) / 2;
            if ((f(mid) < 0) == (flo < 0))
                lo = mid;
            else
                hi = mid;
        }
        roots.push_back((lo + hi) / 2);
    }
    (void)fp;
    for (long double x : roots) {
        for (i64 v : divisors(std::abs(F.a))) {
            long double uu = std::round(x * v);
            for (i64 du = -1; du <= 1; ++du) {
                i64 u = (i64)uu + du;
                if (eval(F, u, v) == 0)
                    return false;
            }
        }
    }
    return true;
}

bool is_locally_maximal(const CubicForm& F, i64 p)
{
    i64 a = mod(F.a, p), b = mod(F.b, p), c = mod(F.c, p), d = mod(F.d, p);
    if (a == 0 && b == 0 && c == 0 && d == 0)
        return false;
    // double root at infinity
    if (a == 0 && b == 0)
        return mod(F.a, p * p) != 0;
    for (i64 r = 0; r < p; ++r) {
        i64 fr = mod(((a * r + b) % p * r + c) % p * r + d, p);
        if (fr != 0)
            continue;
        i64 dr = mod((3 * a * r + 2 * b) % p * r + c, p);
        if (dr != 0)
            continue;
        // shift the double root to 0: G(x, y) = F(x + r y, y), test p^2 | G(0, 1)
        i128 g = eval(F, r, 1);
        i128 pp = (i128)p * p;
        return g % pp != 0;
    }
    return true;
}

bool is_maximal(const CubicForm& F)
{
    i128 D = F.disc();
    if (D < 0)
        D = -D;
    for (auto& [p, e] : factor(D).factors)
        if (e >= 2 && !is_locally_maximal(F, (i64)p))
            return false;
    return true;
}

CubicForm canonical_form(const CubicForm& F)
{
    CubicForm best = F;
    if (best.a < 0)
        best = CubicForm{-F.a, -F.b, -F.c, -F.d};
    for (auto& m : small_matrices()) {
        CubicForm G = transform(F, m[0], m[1], m[2], m[3]);
        if (G.a < 0)
            G = CubicForm{-G.a, -G.b, -G.c, -G.d};
        if (G.a == 0 || !G.reduced())
            continue;
        if (G < best)
            best = G;
    }
    return best;
}

std::vector<EnumeratedField> enumerate_fields(i64 lo, i64 hi)
{
    std::vector<EnumeratedField> out;
    if (hi < 1 || hi < lo)
        return out;
    lo = std::max<i64>(lo, 1);
    // P <= sqrt(D) and 27 a^2 D <= 4 P^3 give a <= 2 D^(1/4) / sqrt(27)
    i64 Pmax = isqrt(hi);
    i64 amax = (i64)std::floor(2.0 * std::pow((double)hi, 0.25) / std::sqrt(27.0)) + 1;
    for (i64 a = 1; a <= amax; ++a) {
        if (27 * a * a > 4 * Pmax * Pmax * Pmax)
            break;
        // 2 b P = g + 3 a Q with |g| <= 2 P^(3/2), |Q| <= P, so |b| <= sqrt(P) + 3a/2
        i64 bmax = (i64)std::floor(std::sqrt((double)Pmax) + 1.5 * a) + 1;
        for (i64 b = -bmax; b <= bmax; ++b) {
            i64 ab = std::abs(b);
            i64 Plo = 1;
            while (27 * a * a > 4 * Plo * Plo * Plo)
                ++Plo;
            if (2 * ab > 3 * a) {
                // need sqrt(P) >= |b| - 3a/2, i.e. 4P >= (2|b| - 3a)^2
                i64 t = 2 * ab - 3 * a;
                Plo = std::max(Plo, ceil_div(t * t, 4));
            }
            if (Plo > Pmax)
                continue;
            i64 cmin = ceil_div(b * b - Pmax, 3 * a);
            i64 cmax = floor_div(b * b - Plo, 3 * a);
            for (i64 c = cmin; c <= cmax; ++c) {
                i64 P = b * b - 3 * a * c;
                i64 dlo = ceil_div(b * c - P, 9 * a);
                i64 dhi = floor_div(b * c + P, 9 * a);
                // R = c^2 - 3 b d >= P
                if (b > 0)
                    dhi = std::min(dhi, floor_div(c * c - P, 3 * b));
                else if (b < 0)
                    dlo = std::max(dlo, ceil_div(c * c - P, 3 * b));
                else if (c * c < P)
                    continue;
                for (i64 d = dlo; d <= dhi; ++d) {
                    if (d == 0)
                        continue;
                    i64 Q = b * c - 9 * a * d;
                    i64 R = c * c - 3 * b * d;
                    i128 D3 = (i128)4 * P * R - (i128)Q * Q;
                    if (D3 < 3 * (i128)lo || D3 > 3 * (i128)hi)
                        continue;
                    CubicForm F{a, b, c, d};
                    i64 D = (i64)(D3 / 3);
                    if (!is_maximal(F))
                        continue;
                    if (!(canonical_form(F) == F))
                        continue;
                    if (!is_irreducible(F))
                        continue;
                    EnumeratedField ef;
                    ef.form = F;
                    ef.dl = D;
                    ef.resolvent = split_cubic_discriminant(D);
                    ef.galois = ef.resolvent.cyclic ? Galois::cyclic : Galois::s3;
                    out.push_back(ef);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const EnumeratedField& x, const EnumeratedField& y) {
        return x.dl != y.dl ? x.dl < y.dl : x.form < y.form;
    });
    return out;
}

std::vector<Multiplet> group_multiplets(const std::vector<EnumeratedField>& fields)
{
    std::map<std::pair<i64, i64>, Multiplet> groups;
    for (const auto& f : fields) {
        Multiplet& m = groups[{f.dl, f.galois == Galois::cyclic ? 1 : 0}];
        m.d = f.resolvent.d;
        m.f = f.resolvent.f.f;
        m.dl = f.dl;
        m.members.push_back(f);
    }
    std::vector<Multiplet> out;
    for (auto& [k, m] : groups)
        out.push_back(std::move(m));
    return out;
}

}  // namespace dpf
