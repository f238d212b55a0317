#pragma once

#include <vector>

#include "dpf/arith.hpp"

namespace dpf {

struct Conductor {
    i64 f = 1;
    int e = 0;                    // exponent of 3 in f
    std::vector<i64> noncritical; // primes q != 3 dividing f
    int t = 0;                    // primes q != 3 dividing f
    int s = 0;                    // prime parts split in K
    int n = 0;                    // prime parts inert or ramified in K
                                  // s + n counts prime parts, 3^e included
    int w = 0;
};

struct FormalDiscriminant {
    i64 D = 0;
    i64 d = 0;
    Conductor f;
};

struct CubicResolvent {
    bool cyclic = false;
    i64 d = 1;        // 1 for the cyclic marker
    Conductor f;      // for cyclic fields only f.f is meaningful
};

bool is_admissible(i64 f, i64 d);
Conductor make_conductor(i64 f, i64 d);   // requires is_admissible
std::vector<Conductor> admissible_conductors(i64 d, i64 bound);
CubicResolvent split_cubic_discriminant(i64 dl);

// allowed exponents of 3 for a given d
std::vector<int> allowed_three_exponents(i64 d);

}  // namespace dpf
