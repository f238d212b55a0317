#include "dpf/admissibility.hpp"

#include <stdexcept>

namespace dpf {

std::vector<int> allowed_three_exponents(i64 d)
{
    i64 r3 = mod(d, 3), r9 = mod(d, 9);
    if (r3 != 0)
        return {0, 2};
    if (r9 == 3)
        return {0, 1};
    if (r9 == 6)
        return {0, 1, 2};
    return {0};
}

bool is_admissible(i64 f, i64 d)
{
    if (f < 1)
        return false;
    int e = 0;
    i64 m = f;
    while (m % 3 == 0) {
        m /= 3;
        ++e;
    }
    bool ok_e = false;
    for (int a : allowed_three_exponents(d))
        ok_e |= a == e;
    if (!ok_e)
        return false;
    if (!is_squarefree(m))
        return false;
    for (i64 q : prime_divisors(m)) {
        int k = kronecker(d, q);
        if (k == 0 || mod(k, 3) != mod(q, 3))
            return false;
    }
    return true;
}

Conductor make_conductor(i64 f, i64 d)
{
    if (!is_admissible(f, d))
        throw std::invalid_argument("conductor is not 3-admissible");
    Conductor c;
    c.f = f;
    c.e = v_p(f, 3);
    i64 m = f;
    while (m % 3 == 0)
        m /= 3;
    c.noncritical = prime_divisors(m);
    c.t = (int)c.noncritical.size();
    for (i64 q : c.noncritical)
        if (kronecker(d, q) == 1)
            ++c.s;
    if (c.e > 0 && mod(d, 3) == 1)
        ++c.s;
    c.n = c.t + (c.e > 0 ? 1 : 0) - c.s;
    if (c.e == 0)
        c.w = 0;
    else if (c.e == 1)
        c.w = 1;
    else
        c.w = mod(d, 9) == 6 ? 2 : 1;
    return c;
}

std::vector<Conductor> admissible_conductors(i64 d, i64 bound)
{
    std::vector<Conductor> out;
    for (i64 f = 1; f * f <= bound / d; ++f)
        if (f * f * d <= bound && is_admissible(f, d))
            out.push_back(make_conductor(f, d));
    return out;
}

CubicResolvent split_cubic_discriminant(i64 dl)
{
    if (dl <= 0)
        throw std::invalid_argument("cubic discriminant must be positive");
    CubicResolvent r;
    i64 root;
    if (is_square(dl, &root)) {
        r.cyclic = true;
        r.d = 1;
        r.f.f = root;
        r.f.e = v_p(root, 3);
        return r;
    }
    i64 g = 1, d0 = 1;
    for (i64 p : prime_divisors(dl)) {
        int e = v_p(dl, p);
        for (int i = 0; i < e / 2; ++i)
            g *= p;
        if (e % 2)
            d0 *= p;
    }
    i64 d, f;
    if (mod(d0, 4) == 1) {
        d = d0;
        f = g;
    } else {
        if (g % 2 != 0)
            throw std::invalid_argument("not a cubic discriminant");
        d = 4 * d0;
        f = g / 2;
    }
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("not a cubic discriminant");
    r.d = d;
    if (is_admissible(f, d)) {
        r.f = make_conductor(f, d);
    } else {
        r.f.f = f;
        r.f.e = v_p(f, 3);
    }
    return r;
}

}  // namespace dpf
