#include "doctest.h"

#include "dpf/ringspace.hpp"

using namespace dpf;

TEST_CASE("defects")
{
    auto K229 = quadratic_field(229);
    CHECK(ring_space(K229, make_conductor(2, 229)).defect == 1);
    auto K37 = quadratic_field(37);
    CHECK(ring_space(K37, make_conductor(2, 37)).defect == 0);
    auto K733 = quadratic_field(733);
    CHECK(ring_space(K733, make_conductor(10, 733)).defect == 2);
    CHECK(ring_space(K37, make_conductor(1, 37)).defect == 0);
}

TEST_CASE("multiplicities")
{
    auto K37 = quadratic_field(37);
    CHECK(multiplicity(K37, make_conductor(2, 37)).m == 1);
    auto K5 = quadratic_field(5);
    CHECK(multiplicity(K5, make_conductor(2, 5)).m == 0);
    auto K7053 = quadratic_field(7053);
    CHECK(multiplicity(K7053, make_conductor(2, 7053)).m == 3);
    auto K717 = quadratic_field(717);
    CHECK(multiplicity(K717, make_conductor(9, 717)).m == 3);
    CHECK(multiplicity(K717, make_conductor(3, 717)).m == 1);
    auto K229 = quadratic_field(229);
    CHECK(multiplicity(K229, make_conductor(1, 229)).m == 1);
    auto K32009 = quadratic_field(32009);
    CHECK(multiplicity(K32009, make_conductor(1, 32009)).m == 4);
}

TEST_CASE("heterogeneous signatures")
{
    auto K37 = quadratic_field(37);
    auto sig = hetero_signature(K37, make_conductor(70, 37));
    std::vector<std::pair<i64, i64>> expect = {{1, 0}, {2, 1}, {5, 0}, {7, 0}, {10, 0}, {14, 0}, {35, 1}, {70, 2}};
    CHECK(sig == expect);

    auto K733 = quadratic_field(733);
    auto s733 = hetero_signature(K733, make_conductor(10, 733));
    std::vector<std::pair<i64, i64>> e733 = {{1, 1}, {2, 0}, {5, 0}, {10, 0}};
    CHECK(s733 == e733);

    auto K3173 = quadratic_field(3173);
    auto s3173 = hetero_signature(K3173, make_conductor(10, 3173));
    std::vector<std::pair<i64, i64>> e3173 = {{1, 1}, {2, 0}, {5, 0}, {10, 3}};
    CHECK(s3173 == e3173);
}

TEST_CASE("obstruction dimension equals t + w and ring spaces shrink along divisibility")
{
    int checked = 0;
    for (i64 d = 5; d < 3000; ++d) {
        if (!is_fundamental_discriminant(d))
            continue;
        SelmerContext ctx(quadratic_field(d));
        for (auto& c : admissible_conductors(d, 400000)) {
            RingSpace rs = ctx.ring_space(c);
            CHECK(rs.obstruction_dim == c.t + c.w);
            CHECK(rs.defect <= 1 + ctx.field().rho3());
            for (i64 g : divisors(c.f)) {
                if (g == c.f || !is_admissible(g, d))
                    continue;
                CHECK(ctx.ring_space(make_conductor(g, d)).defect <= rs.defect);
            }
            auto m = ctx.multiplicity(c);
            CHECK(m.rho_f == ctx.field().rho3() + c.t + c.w - rs.defect);
            ++checked;
        }
    }
    CHECK(checked > 1000);
}
