#include "doctest.h"

#include <cmath>
#include <random>

#include "dpf/cubicinv.hpp"

using namespace dpf;

namespace {

CubicForm form_of(i64 dl, int index = 0)
{
    auto fs = enumerate_fields(dl, dl);
    REQUIRE((int)fs.size() > index);
    return fs[index].form;
}

LElt random_elt(std::mt19937_64& rng, int range)
{
    std::uniform_int_distribution<int> c(-range, range);
    return LElt{{c(rng), c(rng), c(rng)}};
}

}  // namespace

TEST_CASE("multiplication table is commutative and associative with inverses")
{
    CubicField L(form_of(148));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        LElt x = random_elt(rng, 20), y = random_elt(rng, 20), z = random_elt(rng, 20);
        CHECK(L.mul(x, y) == L.mul(y, x));
        CHECK(L.mul(L.mul(x, y), z) == L.mul(x, L.mul(y, z)));
        CHECK(L.norm(L.mul(x, y)) == L.norm(x) * L.norm(y));
        if (L.norm(x) == 0)
            continue;
        LRat xr{{mpq_class(x.c[0]), mpq_class(x.c[1]), mpq_class(x.c[2])}};
        LRat one = L.mul(xr, L.inverse(xr));
        CHECK(one.c[0] == 1);
        CHECK(one.c[1] == 0);
        CHECK(one.c[2] == 0);
    }
}

TEST_CASE("prime decompositions multiply out to p^3")
{
    for (i64 dl : {148, 229, 756, 2597, 5684}) {
        CubicField L(form_of(dl));
        for (int p : primes_up_to(60)) {
            mpz_class prod = 1;
            int degree = 0;
            for (auto& P : L.primes_above(p)) {
                degree += P.e * P.f;
                mpz_class n = P.norm();
                for (int i = 0; i < P.e; ++i)
                    prod *= n;
            }
            CHECK(degree == 3);
            CHECK(prod == mpz_class(p) * p * p);
        }
    }
}

TEST_CASE("valuations of rational primes")
{
    CubicField L(form_of(756));
    for (i64 p : {2, 3, 7}) {
        LElt x = L.from_int(p * p);
        for (auto& P : L.primes_above(p))
            CHECK(L.valuation(x, P) == 2 * P.e);
    }
}

TEST_CASE("units are units and agree with the analytic class number formula")
{
    for (auto& f : enumerate(1500)) {
        if (f.galois == Galois::cyclic)
            continue;
        CubicField L(f.form);
        const UnitGroup& U = L.units();
        REQUIRE(U.units.size() == 2);
        for (auto& u : U.units)
            CHECK(abs(L.norm(u)) == 1);
        CHECK(U.regulator > 0.1);
        const ClassGroupL& cl = L.class_group();
        CHECK(cl.h == 1);
        CHECK(cl.status == Status::verified);
        CHECK(cl.analytic_ratio == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("regulator of the field of discriminant 49")
{
    // cyclic field Q(zeta_7)^+ with units 2cos(2 pi k / 7); its regulator is about 0.5255
    CubicField L(form_of(49));
    CHECK(L.units().regulator == doctest::Approx(0.5255).epsilon(0.001));
    CHECK(L.class_group().h == 1);
}

TEST_CASE("absolute principal factors")
{
    struct Case {
        i64 dl, d, f;
        int A;
    };
    for (auto c : {Case{148, 37, 2, 1}, Case{229, 229, 1, 0}, Case{756, 21, 6, 2}, Case{1300, 13, 10, 2},
                   Case{2597, 53, 7, 0}, Case{5684, 29, 14, 1}}) {
        CubicField L(form_of(c.dl));
        CHECK_MESSAGE(absolute_dpf(L, make_conductor(c.f, c.d)).A == c.A, "d_L=", c.dl);
    }
}

TEST_CASE("roots of powers")
{
    CubicField L(form_of(229));
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        LElt x = random_elt(rng, 50);
        if (L.norm(x) == 0)
            continue;
        auto r = L.root(L.pow(x, 3), 3);
        REQUIRE(r);
        CHECK(*r == x);
        LElt y = L.mul(L.pow(x, 3), L.from_int(2));
        CHECK_FALSE(L.root(y, 3));
    }
}

TEST_CASE("cube kernel over F3")
{
    std::vector<std::vector<int>> rows{{1, 2, 0}, {0, 1, 1}};
    auto ker = f3_kernel(rows, 3);
    REQUIRE(ker.size() == 1);
    for (auto& r : rows) {
        int s = 0;
        for (int i = 0; i < 3; ++i)
            s += r[i] * ker[0][i];
        CHECK(s % 3 == 0);
    }
}
