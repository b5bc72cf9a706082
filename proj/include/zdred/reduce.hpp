#pragma once

// Simple reduction over Z_d: single-vector reduction, max-order column
// combination, the column-ordering algorithm A and its windowed refinement,
// the diagonalisation D0 with change-of-basis certificates, characteristic
// sequences and the change-of-basis group Sigma_D.

#include <optional>
#include <utility>
#include <vector>

#include "zdred/linalg.hpp"

namespace zdred {

/// L B R = D exactly; det(L) and det(R) are units; D is diagonal.
struct ReductionCertificate {
    ZdMatrix L, R, D;
};

struct VectorReduction {
    ZdMatrix L;       // det 1, L a = k e1
    std::int64_t k;   // gcd of the components up to a unit
};

/// Reduces a column onto a multiple of e1 by a bottom-up cascade of 2x2 gcd
/// blocks, each of determinant 1 over Z.
VectorReduction reduce_vector(const ZdMatrix& a);

struct MaxOrderCombination {
    ZdMatrix combined;  // order lcm(nu(a1), nu(a2))
    int replaced;       // 1 or 2: which original the combination substitutes
    ZdMatrix transform; // 2x2 invertible; (a1|a2)*transform = (combined|kept)
};

/// A linear combination of maximal order that can replace one of the two
/// generators without changing the generated module.  The even-prime factor
/// picks whichever input attains the lcm order there; odd factors use a
/// both-units Bezout pair.
MaxOrderCombination max_order_combination(const ZdMatrix& a1, const ZdMatrix& a2);

struct ColumnOrdering {
    ZdMatrix result;  // B * R
    ZdMatrix R;       // invertible
};

/// Right-multiplication making the first column's order the lcm of all
/// column orders (so every element order in the span divides it).
ColumnOrdering algorithm_a(const ZdMatrix& b);

/// Same as algorithm_a on columns j.. of b, with order decisions taken on
/// rows i.. only; columns before j are untouched.  Indices are 0-based.
ColumnOrdering algorithm_a_ij(const ZdMatrix& b, std::size_t i, std::size_t j);

/// Full diagonalisation L B R = D with the divisibility chain
/// D(i,i) | D(j,j) for i < j on the diagonal support.
ReductionCertificate d0(const ZdMatrix& b);

struct SimpleReduction {
    ReductionCertificate cert;  // certificate for the input basis matrix
    ZdMatrix minimal_basis;     // D with trailing zero columns dropped
};

SimpleReduction simple_reduce(const Submodule& s);

/// The basis-independent sequence (d / nu(D(i,i)))_i = (gcd(D(i,i), d))_i.
std::vector<std::int64_t> characteristic_sequence(const Submodule& s);

/// An automorphism of Z_d^n sending S onto T when their characteristic
/// sequences agree; nullopt otherwise.
std::optional<ZdMatrix> build_isomorphism(const Submodule& s, const Submodule& t);

/// Levels kappa(i) of the diagonal reduction of S (d = p^s required):
/// kappa(i) = v_p of the i-th diagonal entry for i < rank, s beyond.
std::vector<int> kappa_levels(const Submodule& s);

/// Membership in Sigma_D(S): P invertible and v_p(P(j,k)) >= kappa(j)-kappa(k)
/// whenever kappa(j) > kappa(k).  Requires d = p^s.
bool sigma_d_contains(const ZdMatrix& p_mat, const Submodule& s, std::int64_t p);

}  // namespace zdred
