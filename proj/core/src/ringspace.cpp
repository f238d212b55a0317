#include "dpf/ringspace.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace dpf {

namespace {

// O_K / M with basis 1, w where w = (delta + sqrt d)/2, w^2 = delta w + N
struct LocalRing {
    i64 M, delta, N;

    std::pair<i64, i64> mul(std::pair<i64, i64> a, std::pair<i64, i64> b) const
    {
        i64 u = (a.first * b.first + N * mod(a.second * b.second, M)) % M;
        i64 v = (a.first * b.second + a.second * b.first + delta * mod(a.second * b.second, M)) % M;
        return {mod(u, M), mod(v, M)};
    }
    std::pair<i64, i64> pow(std::pair<i64, i64> a, u64 e) const
    {
        std::pair<i64, i64> r{1 % M, 0};
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::pair<i64, i64> reduce(const QuadInt& alpha) const
    {
        mpz_class u = (alpha.x - alpha.y * delta) / 2;
        i64 uu = mpz_fdiv_ui(u.get_mpz_t(), M);
        i64 vv = mpz_fdiv_ui(alpha.y.get_mpz_t(), M);
        return {uu, vv};
    }
};

LocalRing local_ring(i64 d, i64 M)
{
    i64 delta = mod(d, 2);
    return LocalRing{M, delta, mod((d - delta) / 4, M)};
}

struct ThreeTable {
    int dim = 0;
    std::vector<int> code;   // element index u*M+v -> packed F3 coordinates, -1 for nonunits
};

const ThreeTable& three_table(i64 d, int k)
{
    static std::mutex mu;
    static std::map<std::tuple<int, i64, i64>, ThreeTable> cache;
    i64 M = k == 1 ? 3 : 9;
    LocalRing R = local_ring(d, M);
    auto key = std::make_tuple(k, R.delta, R.N);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    auto idx = [&](std::pair<i64, i64> a) { return (int)(a.first * M + a.second); };
    std::vector<std::pair<i64, i64>> units;
    for (i64 u = 0; u < M; ++u)
        for (i64 v = 0; v < M; ++v) {
            i64 nrm = mod(u * u + R.delta * u * v - R.N * v * v, 3);
            if (nrm != 0)
                units.push_back({u, v});
        }
    std::set<int> H;
    for (auto& c : units) {
        auto c3 = R.mul(R.mul(c, c), c);
        for (i64 r = 1; r < M; ++r)
            if (r % 3)
                H.insert(idx(R.mul({r, 0}, c3)));
    }
    std::vector<std::pair<i64, i64>> gens;
    std::set<int> covered = H;
    std::vector<std::pair<i64, i64>> all_cov;
    for (auto& x : units) {
        if (covered.count(idx(x)))
            continue;
        gens.push_back(x);
        std::set<int> next = covered;
        for (int h : covered) {
            std::pair<i64, i64> he{h / M, h % M};
            auto a1 = R.mul(he, x);
            auto a2 = R.mul(a1, x);
            next.insert(idx(a1));
            next.insert(idx(a2));
        }
        covered = next;
    }
    ThreeTable t;
    t.dim = (int)gens.size();
    t.code.assign(M * M, -1);
    int combos = 1;
    for (int i = 0; i < t.dim; ++i)
        combos *= 3;
    for (int c = 0; c < combos; ++c) {
        std::pair<i64, i64> g{1, 0};
        int cc = c;
        for (int i = 0; i < t.dim; ++i) {
            int e = cc % 3;
            cc /= 3;
            for (int j = 0; j < e; ++j)
                g = R.mul(g, gens[i]);
        }
        for (int h : H) {
            std::pair<i64, i64> he{h / M, h % M};
            t.code[idx(R.mul(he, g))] = c;
        }
    }
    return cache.emplace(key, t).first->second;
}

// sqrt-free description of the two residue maps for split q
i64 find_root(const LocalRing& R, i64 q)
{
    for (i64 r = 0; r < q; ++r)
        if (mod(r * r - R.delta * r - R.N, q) == 0)
            return r;
    throw std::logic_error("no root for split prime");
}

int dlog_mu3(std::pair<i64, i64> z, std::pair<i64, i64> zeta, const LocalRing& R)
{
    if (z.first == 1 % R.M && z.second == 0)
        return 0;
    if (z == zeta)
        return 1;
    if (z == R.mul(zeta, zeta))
        return 2;
    throw std::logic_error("value is not a cube root of unity");
}

}  // namespace

int f3_rank(std::vector<F3Vec> rows)
{
    int rank = 0;
    if (rows.empty())
        return 0;
    size_t ncol = 0;
    for (auto& r : rows)
        ncol = std::max(ncol, r.size());
    for (auto& r : rows)
        r.resize(ncol, 0);
    size_t row = 0;
    for (size_t col = 0; col < ncol && row < rows.size(); ++col) {
        size_t piv = row;
        while (piv < rows.size() && rows[piv][col] % 3 == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[row]);
        int inv = rows[row][col] % 3 == 1 ? 1 : 2;
        for (auto& x : rows[row])
            x = (x * inv) % 3;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col] % 3 == 0)
                continue;
            int fct = rows[r][col] % 3;
            for (size_t c = 0; c < ncol; ++c)
                rows[r][c] = ((rows[r][c] - fct * rows[row][c]) % 3 + 3) % 3;
        }
        ++row;
        ++rank;
    }
    return rank;
}

int local_dim(i64 d, i64 q, int k)
{
    if (q == 3)
        return three_table(d, k).dim;
    int kr = kronecker(d, q);
    if (kr == 1)
        return mod(q, 3) == 1 ? 1 : 0;
    if (kr == -1)
        return mod(q, 3) == 2 ? 1 : 0;
    return mod(q, 3) == 0 ? 1 : 0;
}

F3Vec local_image(const QuadInt& alpha, i64 d, i64 q, int k)
{
    if (q == 3) {
        const ThreeTable& t = three_table(d, k);
        i64 M = k == 1 ? 3 : 9;
        LocalRing R = local_ring(d, M);
        auto a = R.reduce(alpha);
        int c = t.code[a.first * M + a.second];
        if (c < 0)
            throw std::logic_error("element not coprime to 3");
        F3Vec v(t.dim);
        for (int i = 0; i < t.dim; ++i) {
            v[i] = c % 3;
            c /= 3;
        }
        return v;
    }
    if (local_dim(d, q, 1) == 0)
        return {};
    LocalRing R = local_ring(d, q);
    auto a = R.reduce(alpha);
    int kr = kronecker(d, q);
    if (kr == 1) {
        i64 r1 = find_root(R, q);
        i64 r2 = mod(R.delta - r1, q);
        i64 x1 = mod(a.first + a.second * r1, q);
        i64 x2 = mod(a.first + a.second * r2, q);
        if (x1 == 0 || x2 == 0)
            throw std::logic_error("element not coprime to conductor");
        i64 z = mulmod(x1, invmod(x2, q), q);
        i64 val = powmod(z, (q - 1) / 3, q);
        i64 zeta = 0;
        for (i64 g = 2; g < q; ++g) {
            i64 t = powmod(g, (q - 1) / 3, q);
            if (t != 1) {
                zeta = t;
                break;
            }
        }
        F3Vec v(1);
        if (val == 1)
            v[0] = 0;
        else if (val == zeta)
            v[0] = 1;
        else
            v[0] = 2;
        return v;
    }
    // inert: O_K/q is the field with q^2 elements
    if (a.first == 0 && a.second == 0)
        throw std::logic_error("element not coprime to conductor");
    u64 e = (u64)(q * q - 1) / 3;
    auto val = R.pow(a, e);
    std::pair<i64, i64> zeta{1, 0};
    for (i64 s = 0; s < q && zeta == std::pair<i64, i64>{1, 0}; ++s)
        for (i64 t = 1; t < q; ++t) {
            auto z = R.pow({s, t}, e);
            if (!(z.first == 1 && z.second == 0)) {
                zeta = z;
                break;
            }
        }
    return F3Vec{dlog_mu3(val, zeta, R)};
}

SelmerContext::SelmerContext(QuadraticField K) : K_(std::move(K))
{
    gens_ = virtual_units(K_, 1);
}

const std::vector<VirtualUnit>& SelmerContext::generators(i64 f)
{
    bool ok = true;
    for (auto& g : gens_)
        if (!g.is_unit && gcd64(g.cube_root_ideal.a, f) != 1)
            ok = false;
    if (ok)
        return gens_;
    auto it = alt_.find(f);
    if (it == alt_.end())
        it = alt_.emplace(f, virtual_units(K_, f)).first;
    return it->second;
}

RingSpace SelmerContext::ring_space(const Conductor& f)
{
    RingSpace rs;
    rs.modulus = f;
    const auto& gens = generators(f.f);
    std::vector<std::pair<i64, int>> parts;
    if (f.e > 0)
        parts.push_back({3, f.e});
    for (i64 q : f.noncritical)
        parts.push_back({q, 1});
    for (auto& [q, k] : parts)
        rs.obstruction_dim += local_dim(K_.d, q, k);
    for (const auto& g : gens) {
        F3Vec row;
        for (auto& [q, k] : parts) {
            F3Vec part = local_image(g.element, K_.d, q, k);
            row.insert(row.end(), part.begin(), part.end());
        }
        rs.basis_image.push_back(row);
    }
    rs.defect = f3_rank(rs.basis_image);
    return rs;
}

MultiplicityRecord SelmerContext::multiplicity(const Conductor& f)
{
    auto it = memo_.find(f.f);
    if (it != memo_.end())
        return it->second;
    RingSpace rs = ring_space(f);
    MultiplicityRecord r;
    r.d = K_.d;
    r.f = f.f;
    r.rho_f = K_.cl.rho3 + rs.obstruction_dim - rs.defect;
    i64 total = 1;
    for (int i = 0; i < r.rho_f; ++i)
        total *= 3;
    total = (total - 1) / 2;
    for (i64 c : divisors(f.f)) {
        if (c == f.f || !is_admissible(c, K_.d))
            continue;
        total -= multiplicity(make_conductor(c, K_.d)).m;
    }
    if (total < 0)
        throw std::logic_error("negative multiplicity");
    r.m = total;
    memo_[f.f] = r;
    return r;
}

std::vector<std::pair<i64, i64>> SelmerContext::hetero_signature(const Conductor& f)
{
    std::vector<std::pair<i64, i64>> out;
    std::vector<i64> divs;
    for (i64 c : divisors(f.f))
        if (is_admissible(c, K_.d))
            divs.push_back(c);
    auto weight = [](i64 c) { return prime_divisors(c).size(); };
    std::stable_sort(divs.begin(), divs.end(), [&](i64 a, i64 b) {
        size_t wa = weight(a), wb = weight(b);
        return wa != wb ? wa < wb : a < b;
    });
    for (i64 c : divs)
        out.push_back({c, multiplicity(make_conductor(c, K_.d)).m});
    return out;
}

RingSpace ring_space(const QuadraticField& K, const Conductor& f)
{
    SelmerContext ctx(K);
    return ctx.ring_space(f);
}

MultiplicityRecord multiplicity(const QuadraticField& K, const Conductor& f)
{
    SelmerContext ctx(K);
    return ctx.multiplicity(f);
}

std::vector<std::pair<i64, i64>> hetero_signature(const QuadraticField& K, const Conductor& f)
{
    SelmerContext ctx(K);
    return ctx.hetero_signature(f);
}

}  // namespace dpf
