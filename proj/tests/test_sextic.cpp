#include "doctest.h"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

#include "dpf/sextic.hpp"

using namespace dpf;

namespace {

std::vector<DpfClassification> classify_dl(i64 dl, Depth depth = Depth::full)
{
    std::vector<DpfClassification> out;
    auto fs = enumerate_fields(dl, dl);
    if (fs.empty())
        return out;
    SelmerContext ctx(quadratic_field(fs[0].resolvent.d));
    for (auto& f : fs)
        out.push_back(classify(f.form, ctx, f.resolvent.f, depth));
    return out;
}

std::vector<std::string> type_names(const std::vector<DpfClassification>& cs)
{
    std::vector<std::string> t;
    for (auto& c : cs) {
        REQUIRE(c.type);
        t.push_back(type_name(*c.type));
    }
    std::sort(t.begin(), t.end());
    return t;
}

NElt random_nelt(std::mt19937_64& rng, int range)
{
    std::uniform_int_distribution<int> c(-range, range);
    NElt x;
    x.alpha.c = {c(rng), c(rng), c(rng)};
    x.beta.c = {c(rng), c(rng), c(rng)};
    return x;
}

}  // namespace

TEST_CASE("type table")
{
    std::map<std::tuple<int, int, int, int>, int> seen;
    for (int U = 0; U <= 1; ++U)
        for (int A = 0; A <= 2; ++A)
            for (int R = 0; R <= 2; ++R)
                for (int C = 0; C <= 2; ++C) {
                    auto t = type_from_dims(U, A, R, C);
                    if (!t)
                        continue;
                    CHECK(U + 1 == A + R + C);
                    CHECK(type_U(*t) == U);
                    seen[{U, A, R, C}]++;
                }
    CHECK(seen.size() == 9);
    CHECK(type_E(DpfType::alpha2) == 0);
    CHECK(type_E(DpfType::beta1) == 1);
    CHECK(type_E(DpfType::delta2) == 1);
    CHECK(type_E(DpfType::gamma) == 2);
    CHECK(type_E(DpfType::epsilon) == 2);
}

TEST_CASE("the relative automorphism has order three and is multiplicative")
{
    auto fs = enumerate_fields(756, 756);
    CubicField L(fs[0].form);
    SexticClosure N(L, 21, 6);
    std::mt19937_64 rng(17);
    for (int it = 0; it < 10; ++it) {
        NElt x = random_nelt(rng, 9), y = random_nelt(rng, 9);
        CHECK(N.sigma(N.sigma(N.sigma(x))) == x);
        CHECK(N.sigma(N.mul(x, y)) == N.mul(N.sigma(x), N.sigma(y)));
        CHECK_FALSE(N.sigma(x) == x);
        NElt n = N.relative_norm(x);
        CHECK(n.alpha.c[1] == 0);
        CHECK(n.alpha.c[2] == 0);
        CHECK(n.beta.c[1] == 0);
        CHECK(n.beta.c[2] == 0);
    }
}

TEST_CASE("cube roots in the normal closure")
{
    auto fs = enumerate_fields(229, 229);
    CubicField L(fs[0].form);
    SexticClosure N(L, 229, 1);
    std::mt19937_64 rng(19);
    for (int it = 0; it < 10; ++it) {
        NElt x = random_nelt(rng, 30);
        auto r = N.cube_root(N.pow(x, 3));
        REQUIRE(r);
        CHECK(*r == x);
        NElt two = N.one();
        two.alpha.c[0] = 2;
        CHECK_FALSE(N.cube_root(N.mul(N.pow(x, 3), two)));
    }
}

TEST_CASE("smallest singlets of each type")
{
    struct Case {
        i64 dl;
        DpfType t;
        int E;
    };
    for (auto c : {Case{148, DpfType::epsilon, 2}, Case{229, DpfType::delta1, 1}, Case{756, DpfType::gamma, 2},
                   Case{2597, DpfType::delta2, 1}, Case{5684, DpfType::beta2, 1}, Case{146853, DpfType::alpha3, 0}}) {
        auto cs = classify_dl(c.dl);
        REQUIRE(cs.size() == 1);
        CHECK_MESSAGE(cs[0].status == ClassStatus::verified, "d_L=", c.dl);
        REQUIRE(cs[0].type);
        CHECK_MESSAGE(*cs[0].type == c.t, "d_L=", c.dl);
        CHECK(cs[0].E == c.E);
        CHECK(cs[0].violations.empty());
    }
}

TEST_CASE("unramified quartet with capitulation number 3")
{
    auto cs = classify_dl(32009);
    REQUIRE(cs.size() == 4);
    CHECK(type_names(cs) == std::vector<std::string>{"alpha1", "alpha1", "alpha1", "delta1"});
    int nu = 0;
    for (auto& c : cs) {
        nu += c.C == 2;
        if (c.type == DpfType::alpha1)
            CHECK(c.E == 0);
        CHECK(c.violations.empty());
    }
    CHECK(nu == 3);
}

TEST_CASE("ramified triplet with two alpha2 members")
{
    auto cs = classify_dl(966397);
    REQUIRE(cs.size() == 3);
    CHECK(type_names(cs) == std::vector<std::string>{"alpha2", "alpha2", "delta1"});
}

TEST_CASE("forced and computed types agree below 5000")
{
    int forced = 0;
    std::map<i64, std::unique_ptr<SelmerContext>> ctx;
    for (auto& f : enumerate(5000)) {
        if (f.galois == Galois::cyclic)
            continue;
        auto& K = ctx[f.resolvent.d];
        if (!K)
            K = std::make_unique<SelmerContext>(quadratic_field(f.resolvent.d));
        auto full = classify(f.form, *K, f.resolvent.f, Depth::full);
        CHECK_MESSAGE(full.status == ClassStatus::verified, "d_L=", f.dl);
        CHECK_MESSAGE(full.violations.empty(), "d_L=", f.dl);
        auto fast = classify(f.form, *K, f.resolvent.f, Depth::forced);
        if (fast.status == ClassStatus::forced) {
            ++forced;
            CHECK(fast.type == full.type);
        }
        REQUIRE(full.type);
        CHECK(full.E == type_E(*full.type));
        if (f.resolvent.f.f == 1)
            CHECK(full.C >= 1);
    }
    CHECK(forced > 100);
}

TEST_CASE("classification does not depend on the chosen form")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> pick(-2, 2);
    int n = 0;
    for (auto& f : enumerate_fields(2000, 12000)) {
        if (f.galois == Galois::cyclic || n >= 10)
            continue;
        if (f.resolvent.f.f == 1 && n % 2 == 0)
            continue;
        i64 p, q, r, s;
        do {
            p = pick(rng), q = pick(rng), r = pick(rng), s = pick(rng);
        } while (std::abs(p * s - q * r) != 1);
        CubicForm G = transform(f.form, p, q, r, s);
        if (G.a <= 0)
            G = CubicForm{-G.a, -G.b, -G.c, -G.d};
        if (G.a == 0)
            continue;
        SelmerContext K(quadratic_field(f.resolvent.d));
        auto x = classify(f.form, K, f.resolvent.f, Depth::full);
        auto y = classify(G, K, f.resolvent.f, Depth::full);
        CHECK(x.type == y.type);
        CHECK(x.C == y.C);
        CHECK(x.E == y.E);
        ++n;
    }
    CHECK(n == 10);
}

TEST_CASE("Scholz class number relation")
{
    CHECK(scholz_check(1, 1, 3, 1));    // 229
    CHECK(scholz_check(2, 1, 1, 1));    // 148
    CHECK(scholz_check(1, 1, 9, 3));    // 1129
    CHECK_FALSE(scholz_check(0, 1, 3));
    CHECK_FALSE(scholz_check(2, 1, 1, 3));
    auto cs = classify_dl(229);
    CHECK(scholz_check(cs[0].E, 1, quadratic_field(229).cl.h, 1));
}
