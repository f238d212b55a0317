#include "dpf/sextic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dpf {

namespace {

LRat lrat(const mpq_class& a, const mpq_class& b, const mpq_class& c)
{
    LRat r;
    r.c = {a, b, c};
    return r;
}

LRat add(const LRat& x, const LRat& y)
{
    return lrat(x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2]);
}

LRat sub(const LRat& x, const LRat& y)
{
    return lrat(x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2]);
}

LRat scale(const LRat& x, const mpq_class& s)
{
    return lrat(x.c[0] * s, x.c[1] * s, x.c[2] * s);
}

NElt nadd(const NElt& x, const NElt& y)
{
    return NElt{add(x.alpha, y.alpha), add(x.beta, y.beta)};
}

NElt nscale(const NElt& x, const mpq_class& s)
{
    return NElt{scale(x.alpha, s), scale(x.beta, s)};
}

size_t qbits(const mpq_class& q)
{
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

i64 reduce_q(const mpq_class& q, i64 p)
{
    i64 n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    i64 d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    return mulmod(n, invmod(d, p), p);
}

i64 sqrt_mod(i64 a, i64 p)
{
    a = mod(a, p);
    for (i64 x = 0; x < p; ++x)
        if (mulmod(x, x, p) == (u64)a)
            return x;
    throw std::logic_error("no square root");
}

}  // namespace

SexticClosure::SexticClosure(const CubicField& L, i64 d, i64 f) : L_(&L), d_(d), f_(f)
{
    den_ = 2 * std::abs(d) * f;
    const CubicForm& F = L.form();
    mpq_class a = F.a, b = F.b, c = F.c;
    LRat xi = lrat(0, 1 / a, 0);
    LRat fx = lrat(-2 * c, -b / a, 3);   // F_x(xi, 1)
    LRat inv = L.inverse(scale(fx, a));
    NElt sxi;
    sxi.alpha = scale(sub(scale(xi, -1), lrat(b / a, 0, 0)), mpq_class(1, 2));
    mpq_class half_f(f, 2);
    half_f.canonicalize();
    sxi.beta = scale(inv, half_f);
    sigma_omega_ = nscale(sxi, a);
    NElt t = mul(sxi, sxi);
    sigma_theta_ = nadd(nadd(nscale(t, a), nscale(sxi, b)), NElt{lrat(c, 0, 0), lrat(0, 0, 0)});
}

i64 SexticClosure::disc() const
{
    return f_ * f_ * f_ * f_ * d_ * d_ * d_;
}

NElt SexticClosure::one() const
{
    return NElt{lrat(1, 0, 0), lrat(0, 0, 0)};
}

NElt SexticClosure::from_L(const LElt& x) const
{
    return NElt{lrat(x.c[0], x.c[1], x.c[2]), lrat(0, 0, 0)};
}

NElt SexticClosure::from_K(const QuadInt& x) const
{
    mpq_class a(x.x, 2), b(x.y, 2);
    a.canonicalize();
    b.canonicalize();
    return NElt{lrat(a, 0, 0), lrat(b, 0, 0)};
}

NElt SexticClosure::mul(const NElt& x, const NElt& y) const
{
    LRat aa = L_->mul(x.alpha, y.alpha);
    LRat bb = L_->mul(x.beta, y.beta);
    LRat ab = L_->mul(x.alpha, y.beta);
    LRat ba = L_->mul(x.beta, y.alpha);
    return NElt{add(aa, scale(bb, d_)), add(ab, ba)};
}

NElt SexticClosure::pow(NElt x, long e) const
{
    NElt r = one();
    while (e > 0) {
        if (e & 1)
            r = mul(r, x);
        e >>= 1;
        if (e)
            x = mul(x, x);
    }
    return r;
}

NElt SexticClosure::inverse(const NElt& x) const
{
    LRat n = sub(L_->mul(x.alpha, x.alpha), scale(L_->mul(x.beta, x.beta), d_));
    LRat ni = L_->inverse(n);
    return NElt{L_->mul(x.alpha, ni), scale(L_->mul(x.beta, ni), -1)};
}

NElt SexticClosure::sigma(const NElt& x) const
{
    auto image = [&](const LRat& a) {
        NElt r{lrat(a.c[0], 0, 0), lrat(0, 0, 0)};
        r = nadd(r, nscale(sigma_omega_, a.c[1]));
        r = nadd(r, nscale(sigma_theta_, a.c[2]));
        return r;
    };
    NElt A = image(x.alpha);
    NElt B = image(x.beta);
    NElt sd{lrat(0, 0, 0), lrat(1, 0, 0)};
    return nadd(A, mul(B, sd));
}

NElt SexticClosure::relative_norm(const NElt& x) const
{
    NElt s1 = sigma(x);
    NElt s2 = sigma(s1);
    return mul(mul(x, s1), s2);
}

mpfr_prec_t SexticClosure::bits_for(const NElt& x) const
{
    size_t m = 1;
    for (auto* part : {&x.alpha, &x.beta})
        for (auto& q : part->c)
            m = std::max(m, qbits(q));
    // the smallest conjugate can be as small as 2^-5m, so leave room for that cancellation
    mpfr_prec_t b = 192 + 6 * (mpfr_prec_t)m;
    return (b + 63) / 64 * 64;
}

std::vector<Real> SexticClosure::embed(const NElt& x, mpfr_prec_t bits) const
{
    auto av = L_->embed(x.alpha, bits);
    auto bv = L_->embed(x.beta, bits);
    PrecisionGuard guard(bits);
    Real sd = sqrt(Real((long)d_));
    std::vector<Real> out;
    for (int i = 0; i < 3; ++i)
        out.push_back(av[i] + bv[i] * sd);
    for (int i = 0; i < 3; ++i)
        out.push_back(av[i] - bv[i] * sd);
    return out;
}

std::optional<NElt> SexticClosure::cube_root(const NElt& x, mpfr_prec_t max_bits) const
{
    mpfr_prec_t bits = bits_for(x) + 64;
    for (int attempt = 0; attempt < 3 && bits <= std::max(max_bits, bits_for(x) + 64); ++attempt, bits *= 2) {
        auto vals = embed(x, bits);
        PrecisionGuard guard(bits);
        std::vector<Real> y;
        for (auto& v : vals) {
            if (v.sign() == 0)
                return std::nullopt;
            y.push_back(cbrt(v));
        }
        Real sd = sqrt(Real((long)d_));
        std::vector<Real> A, B;
        for (int i = 0; i < 3; ++i) {
            A.push_back((y[i] + y[i + 3]) / Real(2));
            B.push_back((y[i] - y[i + 3]) / (Real(2) * sd));
        }
        auto ca = L_->coordinates(A, bits);
        auto cb = L_->coordinates(B, bits);
        NElt r;
        double worst = 0;
        Real scale_r((long)den_);
        for (int k = 0; k < 3; ++k) {
            for (int part = 0; part < 2; ++part) {
                Real v = (part == 0 ? ca[k] : cb[k]) * scale_r;
                mpz_class n = v.round();
                worst = std::max(worst, std::fabs((v - Real(n)).to_double()));
                mpq_class q(n, den_);
                q.canonicalize();
                (part == 0 ? r.alpha : r.beta).c[k] = q;
            }
        }
        if (worst > 0.25)
            return std::nullopt;
        if (pow(r, 3) == x)
            return r;
        if (worst < 1e-6)
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<SexticClosure::Hom> SexticClosure::character_homs(int count, i64 start, const std::vector<NElt>& avoid,
                                                              i64* next) const
{
    std::vector<Hom> out;
    i64 p = start;
    if (p % 6 != 1)
        p = p - mod(p, 6) + 1;
    int found = 0;
    const CubicForm& F = L_->form();
    while (found < count) {
        p += 6;
        if (!is_prime(p) || den_ % p == 0 || F.a % p == 0 || L_->disc() % p == 0)
            continue;
        if (kronecker(d_, p) != 1 || L_->root_count(p) != 3)
            continue;
        i64 s = sqrt_mod(d_, p);
        i64 zeta = 0;
        for (i64 g = 2; g < p && !zeta; ++g) {
            i64 z = powmod(g, (p - 1) / 3, p);
            if (z != 1)
                zeta = z;
        }
        std::vector<Hom> hs;
        for (auto [u, v] : L_->homs(p))
            for (i64 sg : {s, mod(-s, p)})
                hs.push_back(Hom{p, u, v, sg, zeta});
        if (hs.size() != 6)
            continue;
        bool bad = false;
        for (auto& h : hs)
            for (auto& x : avoid) {
                i64 a = (reduce_q(x.alpha.c[0], p) + mulmod(reduce_q(x.alpha.c[1], p), h.u, p) +
                         mulmod(reduce_q(x.alpha.c[2], p), h.v, p)) % p;
                i64 b = (reduce_q(x.beta.c[0], p) + mulmod(reduce_q(x.beta.c[1], p), h.u, p) +
                         mulmod(reduce_q(x.beta.c[2], p), h.v, p)) % p;
                if ((a + mulmod(b, h.s, p)) % p == 0)
                    bad = true;
            }
        if (bad)
            continue;
        out.insert(out.end(), hs.begin(), hs.end());
        ++found;
    }
    if (next)
        *next = p;
    return out;
}

int SexticClosure::cubic_character(const NElt& x, const Hom& h) const
{
    i64 p = h.p;
    i64 a = (reduce_q(x.alpha.c[0], p) + mulmod(reduce_q(x.alpha.c[1], p), h.u, p) +
             mulmod(reduce_q(x.alpha.c[2], p), h.v, p)) % p;
    i64 b = (reduce_q(x.beta.c[0], p) + mulmod(reduce_q(x.beta.c[1], p), h.u, p) +
             mulmod(reduce_q(x.beta.c[2], p), h.v, p)) % p;
    i64 val = (a + mulmod(b, h.s, p)) % p;
    i64 y = powmod(val, (p - 1) / 3, p);
    if (y == 1)
        return 0;
    return y == h.zeta ? 1 : 2;
}

// ---------------------------------------------------------------------------

std::string type_name(DpfType t)
{
    switch (t) {
    case DpfType::alpha1: return "alpha1";
    case DpfType::alpha2: return "alpha2";
    case DpfType::alpha3: return "alpha3";
    case DpfType::beta1: return "beta1";
    case DpfType::beta2: return "beta2";
    case DpfType::gamma: return "gamma";
    case DpfType::delta1: return "delta1";
    case DpfType::delta2: return "delta2";
    case DpfType::epsilon: return "epsilon";
    }
    return "?";
}

std::string status_name(ClassStatus s)
{
    switch (s) {
    case ClassStatus::verified: return "verified";
    case ClassStatus::forced: return "forced";
    case ClassStatus::undetermined: return "undetermined";
    }
    return "?";
}

namespace {

struct TypeRow {
    DpfType t;
    int U, A, R, C;
};

const TypeRow kRows[] = {
    {DpfType::alpha1, 1, 0, 0, 2}, {DpfType::alpha2, 1, 0, 1, 1}, {DpfType::alpha3, 1, 0, 2, 0},
    {DpfType::beta1, 1, 1, 0, 1},  {DpfType::beta2, 1, 1, 1, 0},  {DpfType::gamma, 1, 2, 0, 0},
    {DpfType::delta1, 0, 0, 0, 1}, {DpfType::delta2, 0, 0, 1, 0}, {DpfType::epsilon, 0, 1, 0, 0},
};

const TypeRow& row_of(DpfType t)
{
    for (auto& r : kRows)
        if (r.t == t)
            return r;
    throw std::logic_error("unknown type");
}

}  // namespace

std::optional<DpfType> type_from_dims(int U, int A, int R, int C)
{
    for (auto& r : kRows)
        if (r.U == U && r.A == A && r.R == R && r.C == C)
            return r.t;
    return std::nullopt;
}

int type_U(DpfType t)
{
    return row_of(t).U;
}

int type_E(DpfType t)
{
    return row_of(t).A + 1 - row_of(t).U;
}

std::optional<DpfType> forced_type(const Conductor& f, int rho)
{
    if (f.f == 1 && rho == 1)
        return DpfType::delta1;
    int parts = f.t + (f.e > 0 ? 1 : 0);
    if (parts == 1 && f.s == 0 && rho == 0)
        return DpfType::epsilon;
    return std::nullopt;
}

bool scholz_check(int E, i64 hL, i64 hK, std::optional<i64> hN)
{
    i64 a = 1;
    for (int i = 0; i < E; ++i)
        a *= 3;
    i64 num = a * hL * hL * hK;
    if (num % 9 != 0)
        return false;
    if (hN)
        return num / 9 == *hN;
    return true;
}

namespace {

// kernel of the cube map on <gens> modulo cubes, certified by exact cube roots
struct CubeKernel {
    std::vector<std::vector<int>> vectors;
    std::vector<NElt> roots;
};

NElt product(const SexticClosure& N, const std::vector<NElt>& gens, const std::vector<int>& v)
{
    NElt x = N.one();
    for (size_t i = 0; i < gens.size(); ++i)
        if (v[i] % 3)
            x = N.mul(x, N.pow(gens[i], v[i] % 3));
    return x;
}

using Clock = std::chrono::steady_clock;

void check_clock(const Budget& budget, Clock::time_point start)
{
    if (budget.seconds > 0 && std::chrono::duration<double>(Clock::now() - start).count() > budget.seconds)
        throw std::runtime_error("time budget exhausted");
}

CubeKernel cube_kernel(const SexticClosure& N, const std::vector<NElt>& gens, const Budget& budget,
                       Clock::time_point start)
{
    int n = (int)gens.size();
    std::vector<std::vector<int>> rows;
    i64 next = 7;
    int primes = (n + 5) / 3 + 2;
    for (int round = 0; round < budget.rounds; ++round) {
        check_clock(budget, start);
        auto homs = N.character_homs(primes, next, gens, &next);
        for (auto& h : homs) {
            std::vector<int> row;
            for (auto& g : gens)
                row.push_back(N.cubic_character(g, h));
            rows.push_back(row);
        }
        auto ker = f3_kernel(rows, n);
        CubeKernel out;
        bool ok = true;
        for (auto& v : ker) {
            auto r = N.cube_root(product(N, gens, v), budget.max_bits);
            if (!r) {
                ok = false;
                break;
            }
            out.vectors.push_back(v);
            out.roots.push_back(*r);
        }
        if (ok)
            return out;
        primes = std::max(2, primes);
    }
    throw std::runtime_error("cube kernel did not stabilise");
}

}  // namespace

Budget Budget::from_env()
{
    Budget b;
    if (const char* v = std::getenv("DPF_BUDGET_ROUNDS"))
        b.rounds = std::max(1, std::atoi(v));
    if (const char* v = std::getenv("DPF_MAX_BITS"))
        b.max_bits = std::max(256L, std::atol(v));
    if (const char* v = std::getenv("DPF_BUDGET_SECONDS"))
        b.seconds = std::max(0.0, std::atof(v));
    return b;
}

SexticData sextic_invariants(const SexticClosure& N, const QuadraticField& K, const std::vector<VirtualUnit>& vu,
                             const Budget& budget)
{
    auto start = Clock::now();
    const CubicField& L = N.cubic();
    const UnitGroup& ug = L.units();
    if (ug.units.size() != 2)
        throw std::runtime_error("unit group of the cubic field unavailable");
    SexticData out;
    NElt eta = N.from_K(QuadInt{K.eta.x, K.eta.y});
    NElt u1 = N.from_L(ug.units[0]), u2 = N.from_L(ug.units[1]);
    std::vector<NElt> gens{eta, u1, u2, N.sigma(u1), N.sigma(u2)};
    for (int step = 0; step < 6; ++step) {
        CubeKernel ck = cube_kernel(N, gens, budget, start);
        if (ck.vectors.empty())
            break;
        std::vector<int> v = ck.vectors[0];
        NElt r = ck.roots[0];
        size_t j = 0;
        while (v[j] % 3 == 0)
            ++j;
        if (v[j] % 3 == 2) {
            // square the relation so the pivot exponent becomes 1
            NElt r2 = N.mul(r, r);
            for (size_t i = 0; i < v.size(); ++i) {
                int w = 2 * v[i];
                int k = w / 3;
                v[i] = w % 3;
                if (k)
                    r2 = N.mul(r2, N.inverse(N.pow(gens[i], k)));
            }
            r = r2;
        }
        gens[j] = r;
        ++out.E;
    }
    out.units = gens;
    // unit norm index from N_{N/K}(g) = +-eta^k
    mpfr_prec_t bits = 256;
    double log_eta;
    {
        PrecisionGuard guard(bits);
        auto ev = N.embed(eta, N.bits_for(eta));
        log_eta = log(abs(ev[0])).to_double();
    }
    out.U = 1;
    for (auto& g : gens) {
        auto ev = N.embed(g, N.bits_for(g));
        double s = 0;
        for (int i = 0; i < 3; ++i) {
            PrecisionGuard guard(ev[i].bits());
            s += log(abs(ev[i])).to_double();
        }
        double k = s / log_eta;
        long kr = std::lround(k);
        if (std::fabs(k - kr) > 1e-6)
            throw std::runtime_error("relative norm is not a power of the fundamental unit");
        if (mod(kr, 3) != 0)
            out.U = 0;
    }
    // capitulation: classes whose cube generators become cubes up to units of N
    std::vector<NElt> cgens;
    for (auto& g : vu)
        if (!g.is_unit)
            cgens.push_back(N.from_K(g.element));
    int rho = (int)cgens.size();
    if (rho > 0) {
        for (auto& g : gens)
            cgens.push_back(g);
        CubeKernel ck = cube_kernel(N, cgens, budget, start);
        std::vector<F3Vec> proj;
        for (auto& v : ck.vectors)
            proj.push_back(F3Vec(v.begin(), v.begin() + rho));
        out.C = f3_rank(proj);
    }
    return out;
}

DpfClassification classify(const CubicForm& F, SelmerContext& ctx, const Conductor& f, Depth depth,
                           const Budget& budget)
{
    DpfClassification out;
    const QuadraticField& K = ctx.field();
    int rho = K.rho3();
    out.forced = forced_type(f, rho);
    if (depth == Depth::forced && out.forced) {
        const TypeRow& r = row_of(*out.forced);
        out.type = out.forced;
        out.U = r.U;
        out.A = r.A;
        out.R = r.R;
        out.C = r.C;
        out.E = type_E(*out.forced);
        out.status = ClassStatus::forced;
        return out;
    }
    try {
        CubicField L(F);
        out.A = absolute_dpf(L, f).A;
        SexticClosure N(L, K.d, f.f);
        SexticData sd = sextic_invariants(N, K, ctx.generators(1), budget);
        out.U = sd.U;
        out.C = sd.C;
        out.E = sd.E;
        out.R = out.U + 1 - out.A - out.C;
    } catch (const std::exception& e) {
        out.status = ClassStatus::undetermined;
        out.note = e.what();
        return out;
    }
    out.type = type_from_dims(out.U, out.A, out.R, out.C);
    if (!out.type) {
        out.status = ClassStatus::undetermined;
        out.violations.push_back("no type row for (U,A,R,C)");
        return out;
    }
    out.status = ClassStatus::verified;
    int parts = f.t + (f.e > 0 ? 1 : 0);
    int n = parts - f.s;
    if (out.A > std::min(n + f.s, 2))
        out.violations.push_back("A exceeds its bound");
    if (out.R > std::min(f.s, 2))
        out.violations.push_back("R exceeds its bound");
    if (out.C > std::min(rho, 2))
        out.violations.push_back("C exceeds its bound");
    if (f.f == 1 && out.C < 1)
        out.violations.push_back("unramified field without capitulation");
    if (out.E != type_E(*out.type))
        out.violations.push_back("saturation index disagrees with the type");
    if (out.U != type_U(*out.type))
        out.violations.push_back("norm index disagrees with the type");
    if (out.forced && *out.forced != *out.type)
        out.violations.push_back("forced type disagrees with the computed type");
    return out;
}

}  // namespace dpf
