#include "doctest.h"

#include <cmath>

#include "dpf/quadfield.hpp"

using namespace dpf;

namespace {

// h from the finite form of the class number formula for real quadratic fields
double analytic_h(i64 d, double log_eta)
{
    double sum = 0;
    for (i64 n = 1; n < d; ++n) {
        int chi = kronecker(d, n);
        if (chi)
            sum += chi * std::log(std::sin(M_PI * (double)n / (double)d));
    }
    return -sum / (2.0 * log_eta);
}

}  // namespace

TEST_CASE("fundamental unit examples")
{
    auto u5 = fundamental_unit(5);
    CHECK(u5.x == 1);
    CHECK(u5.y == 1);
    CHECK(u5.norm == -1);

    auto u229 = fundamental_unit(229);
    CHECK(u229.x == 15);
    CHECK(u229.y == 1);
    CHECK(u229.norm == -1);

    auto u8 = fundamental_unit(8);   // 1 + sqrt 2 = (2 + 1*sqrt 8)/2
    CHECK(u8.x == 2);
    CHECK(u8.y == 1);
    CHECK(u8.norm == -1);
}

TEST_CASE("fundamental unit has the stated norm and is minimal")
{
    for (i64 d = 5; d < 3000; ++d) {
        if (!is_fundamental_discriminant(d))
            continue;
        auto u = fundamental_unit(d);
        mpz_class n = (u.x * u.x - d * u.y * u.y) / 4;
        CHECK(n == u.norm);
        CHECK(u.x > 0);
        CHECK(u.y > 0);
        // any unit (x + y sqrt d)/2 > 1 has y >= 1; minimality: no smaller y solves x^2 - d y^2 = +-4
        if (u.y < 2000) {
            long ymax = u.y.get_si();
            for (long y = 1; y < ymax; ++y) {
                for (int s : {-4, 4}) {
                    i64 t = d * y * y + s;
                    i64 r;
                    if (t > 0 && is_square(t, &r))
                        FAIL("smaller unit found for d=" << d);
                }
            }
        }
    }
}

TEST_CASE("class group examples")
{
    CHECK(class_group(229).rho3 == 1);
    CHECK(class_group(229).h == 3);
    CHECK(class_group(1129).h == 9);
    CHECK(class_group(32009).rho3 == 2);
    CHECK(class_group(5).h == 1);
    CHECK(class_group(37).rho3 == 0);
}

TEST_CASE("class numbers agree with the analytic formula for d < 10^4")
{
    int checked = 0;
    for (i64 d = 5; d < 10000; ++d) {
        if (!is_fundamental_discriminant(d))
            continue;
        auto u = fundamental_unit(d);
        auto cg = class_group(d);
        double le = qlog_abs(QuadInt{u.x, u.y}, d, 1);
        double h = analytic_h(d, le);
        CHECK(std::fabs(h - (double)cg.h) < 1e-6 * std::max(1.0, h));
        CHECK((cg.h_narrow == cg.h || cg.h_narrow == 2 * cg.h));
        CHECK((cg.h_narrow == cg.h) == (u.norm == -1));
        i64 prod = 1;
        for (i64 e : cg.elementary_divisors)
            prod *= e;
        CHECK(prod == cg.h);
        CHECK(rank3(d) == cg.rho3);
        CHECK((int)cg.torsion3.size() == cg.rho3);
        ++checked;
    }
    CHECK(checked > 3000);
}

TEST_CASE("elementary divisors of a non-cyclic 3-part")
{
    auto cg = class_group(32009);
    int threes = 0;
    for (i64 e : cg.elementary_divisors)
        if (e % 3 == 0)
            ++threes;
    CHECK(threes == 2);
}

TEST_CASE("virtual units")
{
    SUBCASE("rank zero fields carry only eta")
    {
        CHECK(virtual_units(quadratic_field(37)).size() == 1);
        CHECK(virtual_units(quadratic_field(5)).size() == 1);
    }
    SUBCASE("generators are exact cubes of ideals and not cubes of elements")
    {
        for (i64 d : {229, 257, 316, 1129, 32009, 62501}) {
            auto K = quadratic_field(d);
            auto vu = virtual_units(K, 10);
            REQUIRE((int)vu.size() == 1 + K.rho3());
            for (auto& g : vu) {
                CHECK_FALSE(is_cube_in_K(g.element, d));
                if (g.is_unit)
                    continue;
                mpz_class a = g.cube_root_ideal.a;
                CHECK(abs(qnorm(g.element, d)) == a * a * a);
                CHECK(gcd64(g.cube_root_ideal.a, 10) == 1);
            }
        }
    }
}

TEST_CASE("cube test in K")
{
    QuadInt eta{15, 1};
    QuadInt c = qmul(qmul(eta, eta, 229), eta, 229);
    CHECK(is_cube_in_K(c, 229));
    CHECK_FALSE(is_cube_in_K(eta, 229));
}
