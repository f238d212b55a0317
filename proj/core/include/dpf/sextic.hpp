#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpf/cubicinv.hpp"
#include "dpf/quadfield.hpp"
#include "dpf/ringspace.hpp"

namespace dpf {

// alpha + beta sqrt(d) with alpha, beta in L (rational coordinates)
struct NElt {
    LRat alpha, beta;
    bool operator==(const NElt&) const = default;
};

class SexticClosure {
public:
    SexticClosure(const CubicField& L, i64 d, i64 f);

    const CubicField& cubic() const { return *L_; }
    i64 d() const { return d_; }
    i64 f() const { return f_; }
    i64 disc() const;   // f^4 d^3

    NElt one() const;
    NElt from_L(const LElt& x) const;
    NElt from_K(const QuadInt& x) const;   // (x + y sqrt d)/2
    NElt mul(const NElt& x, const NElt& y) const;
    NElt pow(NElt x, long e) const;
    NElt inverse(const NElt& x) const;
    NElt sigma(const NElt& x) const;       // generator of Gal(N/K)
    NElt relative_norm(const NElt& x) const;

    // embeddings ordered (1,+), (2,+), (3,+), (1,-), (2,-), (3,-)
    std::vector<Real> embed(const NElt& x, mpfr_prec_t bits) const;
    mpfr_prec_t bits_for(const NElt& x) const;
    // exact cube root in N; precision doubles from bits_for(x) up to max_bits
    std::optional<NElt> cube_root(const NElt& x, mpfr_prec_t max_bits = 1 << 16) const;

    // all homomorphisms O_N -> F_p for a prime splitting completely, p = 1 mod 3
    struct Hom {
        i64 p, u, v, s, zeta;
    };
    std::vector<Hom> character_homs(int count, i64 start, const std::vector<NElt>& avoid, i64* next) const;
    int cubic_character(const NElt& x, const Hom& h) const;

private:
    const CubicField* L_;
    i64 d_, f_;
    i64 den_;              // coordinates of integers of N lie in (1/den) Z
    NElt sigma_omega_, sigma_theta_;
};

enum class DpfType { alpha1, alpha2, alpha3, beta1, beta2, gamma, delta1, delta2, epsilon };

std::string type_name(DpfType t);
std::optional<DpfType> type_from_dims(int U, int A, int R, int C);
// coarse data of a type: E = A + 1 - U and U
int type_E(DpfType t);
int type_U(DpfType t);

enum class ClassStatus { verified, forced, undetermined };
std::string status_name(ClassStatus s);

struct DpfClassification {
    int U = -1, A = -1, R = -1, C = -1, E = -1;
    std::optional<DpfType> type;
    ClassStatus status = ClassStatus::undetermined;
    std::optional<DpfType> forced;         // theorem-forced type, when a forcing rule applies
    std::vector<std::string> violations;   // property failures; empty when consistent
    std::string note;
};

// limits on the sextic computations; exhaustion yields an undetermined status
struct Budget {
    int rounds = 12;                 // batches of character primes per cube kernel
    mpfr_prec_t max_bits = 1 << 16;  // precision ceiling for cube roots
    double seconds = 0;              // wall clock per field, 0 for none

    // DPF_BUDGET_ROUNDS, DPF_MAX_BITS and DPF_BUDGET_SECONDS override the defaults
    static Budget from_env();
};

struct SexticData {
    int E = 0;
    int U = 1;
    int C = 0;
    std::vector<NElt> units;   // 3-saturated basis of U_N modulo torsion
};

// saturation index, norm index and capitulation dimension
SexticData sextic_invariants(const SexticClosure& N, const QuadraticField& K, const std::vector<VirtualUnit>& vu,
                             const Budget& budget = {});

std::optional<DpfType> forced_type(const Conductor& f, int rho);

enum class Depth { forced, full };

// classify an S3 field with resolvent discriminant d and conductor f
DpfClassification classify(const CubicForm& F, SelmerContext& K, const Conductor& f, Depth depth,
                           const Budget& budget = {});

// 3^E h_L^2 h_K / 9 must be an integer equal to h_N when supplied
bool scholz_check(int E, i64 hL, i64 hK, std::optional<i64> hN = std::nullopt);

}  // namespace dpf
