#include "doctest.h"

#include <algorithm>

#include "dpf/admissibility.hpp"

using namespace dpf;

TEST_CASE("admissibility examples")
{
    CHECK(is_admissible(2, 37));
    CHECK(is_admissible(2, 5));
    CHECK(is_admissible(63, 37));
    CHECK_FALSE(is_admissible(3, 37));
    CHECK(is_admissible(9, 37));
    CHECK_FALSE(is_admissible(4, 37));
}

TEST_CASE("admissible conductor enumeration")
{
    auto fs = admissible_conductors(37, 100000);
    std::vector<i64> vals;
    for (auto& c : fs)
        vals.push_back(c.f);
    for (i64 f : {1, 2, 5, 9, 10, 45})
        CHECK(std::find(vals.begin(), vals.end(), f) != vals.end());
    for (auto& c : fs)
        if (c.f == 9) {
            CHECK(c.s == 1);
            CHECK(c.w == 1);
        }

    auto f5 = admissible_conductors(5, 500);
    std::vector<i64> v5;
    for (auto& c : f5)
        v5.push_back(c.f);
    // brute force over f <= 9
    std::vector<i64> expect;
    for (i64 f = 1; f * f * 5 <= 500; ++f) {
        bool ok = true;
        i64 m = f;
        int e = 0;
        while (m % 3 == 0) {
            m /= 3;
            ++e;
        }
        if (!(e == 0 || e == 2))
            ok = false;
        for (i64 q = 2; q <= m; ++q) {
            if (m % q)
                continue;
            if (m % (q * q) == 0)
                ok = false;
            bool prime = true;
            for (i64 r = 2; r * r <= q; ++r)
                if (q % r == 0)
                    prime = false;
            if (!prime)
                continue;
            int k = kronecker(5, q);
            if (((k % 3) + 3) % 3 != q % 3)
                ok = false;
        }
        if (ok)
            expect.push_back(f);
    }
    CHECK(v5 == expect);

    auto f229 = admissible_conductors(229, 916);
    REQUIRE(f229.size() == 2);
    CHECK(f229[0].f == 1);
    CHECK(f229[1].f == 2);
}

TEST_CASE("conductor invariants")
{
    for (i64 d : {5, 8, 12, 21, 24, 33, 37, 229, 321, 564, 1129}) {
        auto fs = admissible_conductors(d, 2000000);
        std::vector<i64> vals;
        for (auto& c : fs)
            vals.push_back(c.f);
        for (auto& c : fs) {
            CHECK(is_admissible(c.f, d));
            CHECK(c.s + c.n == c.t + (c.e > 0 ? 1 : 0));
            CHECK(c.w <= 2);
            CHECK(c.w == (c.e == 0 ? 0 : (c.e == 1 ? 1 : (mod(d, 9) == 6 ? 2 : 1))));
            for (i64 q : divisors(c.f))
                if (is_admissible(q, d))
                    CHECK(std::find(vals.begin(), vals.end(), q) != vals.end());
        }
    }
}

TEST_CASE("split cubic discriminants")
{
    auto r = split_cubic_discriminant(148);
    CHECK_FALSE(r.cyclic);
    CHECK(r.d == 37);
    CHECK(r.f.f == 2);

    auto c = split_cubic_discriminant(3969);
    CHECK(c.cyclic);
    CHECK(c.f.f == 63);

    auto s = split_cubic_discriminant(966397);
    CHECK(s.d == 2677);
    CHECK(s.f.f == 19);

    auto t = split_cubic_discriminant(756);
    CHECK(t.d == 21);
    CHECK(t.f.f == 6);

    CHECK_THROWS(split_cubic_discriminant(3));
}
