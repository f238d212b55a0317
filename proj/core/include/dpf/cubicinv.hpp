#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpf/cubicenum.hpp"
#include "dpf/lattice.hpp"
#include "dpf/real.hpp"

namespace dpf {

// element of the ring of F on the basis 1, omega, theta, where for a root xi
// of F(x, 1): omega = a xi, theta = a xi^2 + b xi + c = -d / xi
template <class T>
struct CubicElt {
    std::array<T, 3> c{};
    bool operator==(const CubicElt&) const = default;
};
using LElt = CubicElt<mpz_class>;
using LRat = CubicElt<mpq_class>;

enum class Status { verified, unverified };

struct PrimeIdeal {
    i64 p = 0;
    int e = 1;        // ramification index
    int f = 1;        // residue degree
    ZMat basis;       // HNF rows, coordinates on 1, omega, theta
    LElt beta;        // p P^-1 = O + (beta / p) O, used for valuations
    i64 u = 0, v = 0; // images of omega, theta when f = 1
    mpz_class norm() const;
};

struct UnitGroup {
    std::vector<LElt> units;   // two independent units
    double regulator = 0;
    Status status = Status::unverified;
};

struct ClassGroupL {
    i64 h = 0;
    std::vector<i64> structure;   // invariant factors
    int rank3 = 0;
    Status status = Status::unverified;
    double analytic_ratio = 0;    // h R / (analytic h R)
};

struct AbsoluteDpf {
    int A = 0;
    std::vector<i64> ramified;                     // rational primes of f, 3 included
    std::vector<std::vector<int>> principal_combinations;   // basis over F3
};

class CubicField {
public:
    explicit CubicField(const CubicForm& F);

    const CubicForm& form() const { return F_; }
    i64 disc() const { return D_; }

    template <class T>
    CubicElt<T> mul(const CubicElt<T>& x, const CubicElt<T>& y) const;
    LElt one() const { return LElt{{1, 0, 0}}; }
    LElt from_int(const mpz_class& n) const { return LElt{{n, 0, 0}}; }
    LElt pow(LElt x, long e) const;   // e >= 0
    mpz_class norm(const LElt& x) const;
    mpz_class trace(const LElt& x) const;
    ZMat mult_matrix(const LElt& x) const;   // row j = x * e_j
    LRat inverse(const LRat& x) const;
    LElt unit_inverse(const LElt& u) const;
    std::optional<LElt> exact_div(const LElt& x, const LElt& y) const;
    ZMat ideal_hnf(const LElt& x) const;    // HNF of x O_L

    // real roots of F(x, 1) in increasing order at the requested precision
    const std::vector<Real>& roots(mpfr_prec_t bits) const;
    std::vector<Real> embed(const LElt& x, mpfr_prec_t bits) const;
    std::vector<Real> embed(const LRat& x, mpfr_prec_t bits) const;
    std::vector<double> log_embed(const LElt& x) const;
    // precision adequate for embedding an element of this size
    mpfr_prec_t bits_for(const LElt& x) const;
    // coordinates of the element with the given embedding values
    std::vector<Real> coordinates(const std::vector<Real>& values, mpfr_prec_t bits) const;

    // n-th root inside O_L, if any
    std::optional<LElt> root(const LElt& x, int n) const;

    // prime ideals above p with their (e, f)
    std::vector<PrimeIdeal> primes_above(i64 p) const;
    int valuation(const LElt& x, const PrimeIdeal& P) const;

    // all ring homomorphisms O_L -> F_p, as (image of omega, image of theta)
    std::vector<std::pair<i64, i64>> homs(i64 p) const;
    i64 reduce(const LElt& x, i64 u, i64 v, i64 p) const;

    // number of projective roots of F mod p
    int root_count(i64 p) const;

    const UnitGroup& units() const;
    const ClassGroupL& class_group() const;
    double analytic_hR(i64 prime_bound = 200000) const;

private:
    CubicForm F_;
    i64 D_;
    std::array<std::array<LElt, 3>, 3> table_;
    mutable std::map<mpfr_prec_t, std::vector<Real>> roots_;
    mutable std::optional<UnitGroup> units_;
    mutable std::optional<ClassGroupL> cl_;
};

// maximal-order test at p by the p-radical and its ring of multipliers
bool is_p_maximal_radical(const CubicForm& F, i64 p);

// rank 2 unit lattice helper; keeps a reduced basis and merges new units
class UnitLattice {
public:
    explicit UnitLattice(const CubicField& L) : L_(&L) {}
    // returns true when the lattice grew
    bool insert(const LElt& u);
    int rank() const { return (int)basis_.size(); }
    const std::vector<LElt>& basis() const { return basis_; }
    double regulator() const;
    std::vector<double> logv(const LElt& u) const;
    // try to extract p-th roots of basis combinations; true when the lattice grew
    bool saturate(int p);

private:
    void reduce_basis();
    LElt combine(const std::vector<LElt>& g, const std::vector<mpz_class>& e) const;
    const CubicField* L_;
    std::vector<LElt> basis_;
};

// dimension of principal products of the ramified primes of L modulo cubes
AbsoluteDpf absolute_dpf(const CubicField& L, const Conductor& f);

// F3 kernel helper: rows are characters, columns generators
std::vector<std::vector<int>> f3_kernel(const std::vector<std::vector<int>>& rows, int ncols);

}  // namespace dpf
