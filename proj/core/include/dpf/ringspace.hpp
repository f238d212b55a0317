#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dpf/admissibility.hpp"
#include "dpf/quadfield.hpp"

namespace dpf {

using F3Vec = std::vector<int>;

struct RingSpace {
    Conductor modulus;
    // row i: image of Selmer generator i (eta first) in G_f/G_f^3
    std::vector<F3Vec> basis_image;
    int obstruction_dim = 0;   // dim G_f/G_f^3
    int defect = 0;
};

struct MultiplicityRecord {
    i64 d = 0;
    i64 f = 1;
    int rho_f = 0;
    i64 m = 0;
};

// rank over F3 of a list of vectors
int f3_rank(std::vector<F3Vec> rows);

// caches Selmer generators of one quadratic field across conductors
class SelmerContext {
public:
    explicit SelmerContext(QuadraticField K);
    const QuadraticField& field() const { return K_; }
    // generators whose cube-root ideals are coprime to f
    const std::vector<VirtualUnit>& generators(i64 f);

    RingSpace ring_space(const Conductor& f);
    MultiplicityRecord multiplicity(const Conductor& f);
    std::vector<std::pair<i64, i64>> hetero_signature(const Conductor& f);

private:
    QuadraticField K_;
    std::vector<VirtualUnit> gens_;
    std::map<i64, std::vector<VirtualUnit>> alt_;
    std::map<i64, MultiplicityRecord> memo_;
};

RingSpace ring_space(const QuadraticField& K, const Conductor& f);
MultiplicityRecord multiplicity(const QuadraticField& K, const Conductor& f);
std::vector<std::pair<i64, i64>> hetero_signature(const QuadraticField& K, const Conductor& f);

// image of an element of O_K coprime to q^k in the F3 space G/G^3 of the
// prime part q^k (k = 1 for q != 3)
F3Vec local_image(const QuadInt& alpha, i64 d, i64 q, int k);
int local_dim(i64 d, i64 q, int k);

}  // namespace dpf
