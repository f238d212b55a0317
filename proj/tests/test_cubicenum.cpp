#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "dpf/cubicenum.hpp"
#include "dpf/cubicinv.hpp"
#include "dpf/ringspace.hpp"

using namespace dpf;

namespace {

// splitting pattern of F at small primes; isomorphic fields share it
std::vector<int> signature(const CubicForm& F)
{
    std::vector<int> s;
    for (int p : primes_up_to(400)) {
        int r = 0;
        for (i64 x = 0; x < p; ++x)
            if (mod(((F.a * x + F.b) % p * x + F.c) % p * x + F.d, p) == 0)
                ++r;
        if (F.a % p == 0)
            ++r;
        s.push_back(r);
    }
    return s;
}

// discriminant of the maximal order from local maximality tests: divide out
// squares p^2 from disc(F) while the order is not maximal at p
bool maximal_by_radical(const CubicForm& F)
{
    i64 D = (i64)F.disc();
    for (i64 p : prime_divisors(D))
        if (D % (p * p) == 0 && !is_p_maximal_radical(F, p))
            return false;
    return true;
}

}  // namespace

TEST_CASE("field counts below 1500")
{
    auto fields = enumerate(1500);
    CHECK(fields.size() == 44);
    int cyclic = 0;
    for (auto& f : fields)
        cyclic += f.galois == Galois::cyclic;
    CHECK(cyclic == 6);
    std::vector<i64> unramified;
    for (auto& f : fields)
        if (f.galois == Galois::s3 && f.resolvent.f.f == 1)
            unramified.push_back(f.dl);
    std::vector<i64> expected{229, 257, 316, 321, 469, 473, 568, 697, 733, 761, 785, 892, 940,
                              985, 993, 1016, 1101, 1129, 1229, 1257, 1304, 1345, 1373, 1384, 1436, 1489};
    CHECK(unramified == expected);
}

TEST_CASE("every field of a brute-force box search is enumerated once")
{
    const i64 B = 3000;
    auto fields = enumerate(B);
    std::map<i64, std::set<std::vector<int>>> known;
    for (auto& f : fields) {
        auto sig = signature(f.form);
        CHECK_MESSAGE(known[f.dl].insert(sig).second, "duplicate field at ", f.dl);
        CHECK(f.form.reduced());
        CHECK(canonical_form(f.form) == f.form);
        CHECK((i64)f.form.disc() == f.dl);
    }
    std::map<i64, std::set<std::vector<int>>> found;
    for (i64 a = 1; a <= 3; ++a)
        for (i64 b = -6; b <= 6; ++b)
            for (i64 c = -12; c <= 12; ++c)
                for (i64 d = -12; d <= 12; ++d) {
                    CubicForm F{a, b, c, d};
                    i128 D = F.disc();
                    if (D <= 0 || D >= B || !is_irreducible(F) || !maximal_by_radical(F))
                        continue;
                    found[(i64)D].insert(signature(F));
                }
    int total = 0;
    for (auto& [dl, sigs] : found)
        for (auto& s : sigs) {
            CHECK_MESSAGE(known[dl].count(s), "missing field at ", dl);
            ++total;
        }
    CHECK(total == (int)fields.size());
}

TEST_CASE("local maximality agrees with the p-radical test")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    int tested = 0;
    for (int it = 0; it < 4000; ++it) {
        CubicForm F{coef(rng), coef(rng), coef(rng), coef(rng)};
        if (F.a == 0 || F.disc() <= 0 || !is_irreducible(F))
            continue;
        i64 D = (i64)F.disc();
        for (i64 p : prime_divisors(D < 0 ? -D : D)) {
            CHECK(is_locally_maximal(F, p) == is_p_maximal_radical(F, p));
            ++tested;
        }
    }
    CHECK(tested > 1000);
}

TEST_CASE("transforms preserve the discriminant and the canonical form")
{
    auto fields = enumerate_fields(1000, 4000);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(-2, 2);
    int n = 0;
    for (auto& f : fields) {
        i64 p, q, r, s;
        do {
            p = pick(rng), q = pick(rng), r = pick(rng), s = pick(rng);
        } while (std::abs(p * s - q * r) != 1);
        CubicForm G = transform(f.form, p, q, r, s);
        CHECK(G.disc() == f.form.disc());
        CHECK(is_maximal(G));
        CHECK(signature(G) == signature(f.form));
        if (++n > 60)
            break;
    }
}

TEST_CASE("cyclic fields below 10^5")
{
    auto fields = enumerate(100000);
    std::map<i64, int> per_f;
    for (auto& f : fields)
        if (f.galois == Galois::cyclic)
            per_f[f.resolvent.f.f]++;
    int total = 0;
    for (auto& [f, m] : per_f)
        total += m;
    CHECK(total == 51);
    CHECK(per_f.begin()->first == 7);
    CHECK(per_f[9] == 1);
    CHECK(per_f[63] == 2);
    CHECK(per_f[91] == 2);
}

TEST_CASE("multiplicities predicted by ring spaces match enumeration up to 20000")
{
    const i64 B = 20000;
    auto groups = group_multiplets(enumerate(B));
    std::map<i64, int> found;
    for (auto& M : groups)
        if (M.d != 1)
            found[M.dl] = M.m();
    int pairs = 0;
    for (i64 d = 5; d < B; ++d) {
        if (!is_fundamental_discriminant(d))
            continue;
        SelmerContext ctx(quadratic_field(d));
        for (auto& c : admissible_conductors(d, B - 1)) {
            i64 dl = c.f * c.f * d;
            i64 m = found.count(dl) ? found[dl] : 0;
            CHECK_MESSAGE(ctx.multiplicity(c).m == m, "d=", d, " f=", c.f);
            ++pairs;
        }
    }
    CHECK(pairs > 6000);
}
