#pragma once

#include <array>
#include <vector>

#include "dpf/admissibility.hpp"

namespace dpf {

// F(x, y) = a x^3 + b x^2 y + c x y^2 + d y^3
struct CubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;

    i128 disc() const;
    // Hessian P x^2 + Q x y + R y^2
    i64 P() const { return b * b - 3 * a * c; }
    i64 Q() const { return b * c - 9 * a * d; }
    i64 R() const { return c * c - 3 * b * d; }
    bool reduced() const;
    std::array<i64, 4> coeffs() const { return {a, b, c, d}; }
    auto operator<=>(const CubicForm&) const = default;
};

enum class Galois { cyclic, s3 };

struct EnumeratedField {
    CubicForm form;
    i64 dl = 0;
    CubicResolvent resolvent;
    Galois galois = Galois::s3;
};

struct Multiplet {
    i64 d = 0;     // 1 for cyclic fields
    i64 f = 1;
    i64 dl = 0;
    std::vector<EnumeratedField> members;
    int m() const { return (int)members.size(); }
};

// F o gamma for gamma = [[p, q], [r, s]] acting by (x, y) -> (p x + q y, r x + s y)
CubicForm transform(const CubicForm& F, i64 p, i64 q, i64 r, i64 s);

bool is_irreducible(const CubicForm& F);

// Davenport-Heilbronn local condition: the ring of F is maximal at p
bool is_locally_maximal(const CubicForm& F, i64 p);
bool is_maximal(const CubicForm& F);

// lexicographically least reduced form with a > 0 in the GL2(Z) orbit of a reduced form
CubicForm canonical_form(const CubicForm& F);

// one entry per totally real cubic field with lo <= d_L <= hi, sorted by (d_L, form)
std::vector<EnumeratedField> enumerate_fields(i64 lo, i64 hi);
inline std::vector<EnumeratedField> enumerate(i64 B) { return enumerate_fields(1, B - 1); }

std::vector<Multiplet> group_multiplets(const std::vector<EnumeratedField>& fields);

}  // namespace dpf
