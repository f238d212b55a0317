#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "dpf/arith.hpp"

namespace dpf {

// binary quadratic form a x^2 + b x y + c y^2; for a > 0 it stands for the
// ideal [a, (b + sqrt d)/2]
struct QForm {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const QForm&) const = default;
};

// element (x + y sqrt d)/2 of O_K
struct QuadInt {
    mpz_class x, y;
};

struct QuadUnit {
    mpz_class x, y;   // eta = (x + y sqrt d)/2
    int norm = 1;
};

struct ClassGroupData {
    i64 h = 1;
    i64 h_narrow = 1;
    int rho3 = 0;
    std::vector<i64> elementary_divisors;   // wide group, d_1 | d_2 | ...
    std::vector<QForm> torsion3;             // basis of the 3-torsion
};

struct QuadraticField {
    i64 d = 0;
    QuadUnit eta;
    ClassGroupData cl;

    int rho3() const { return cl.rho3; }
};

struct VirtualUnit {
    QuadInt element;
    QForm cube_root_ideal;   // [a, (b + sqrt d)/2] with element O_K = ideal^3
    bool is_unit = false;
};

QuadUnit fundamental_unit(i64 d);
ClassGroupData class_group(i64 d);
int rank3(i64 d);                       // 3-rank only, cheaper
i64 narrow_class_number(i64 d);
QuadraticField quadratic_field(i64 d);

// eta followed by one theta per 3-torsion basis class; the cube-root ideal of
// each theta has norm coprime to avoid
std::vector<VirtualUnit> virtual_units(const QuadraticField& K, i64 avoid = 1);

// helpers on O_K
QuadInt qmul(const QuadInt& u, const QuadInt& v, i64 d);
mpz_class qnorm(const QuadInt& u, i64 d);
bool qin_ideal(const QuadInt& u, const mpz_class& a, const mpz_class& b);
bool is_cube_in_K(const QuadInt& u, i64 d);
double qlog_abs(const QuadInt& u, i64 d, int sign);   // log |embedding|

// form machinery
bool is_reduced(const QForm& f, i64 d);
QForm rho_step(const QForm& f, i64 d);
QForm reduce(QForm f, i64 d);
QForm compose(const QForm& f, const QForm& g, i64 d);
std::vector<QForm> reduced_forms(i64 d);

}  // namespace dpf
