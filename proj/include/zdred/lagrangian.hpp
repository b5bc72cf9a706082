#pragma once

// Symplectic orthogonal, isotropy classification, and the Lagrangian
// canonical form: a unique divisor chain d_1 | ... | d_n | d together with a
// symplectic matrix S such that S * diag(d_1, d/d_1, ..., d_n, d/d_n)
// generates the submodule.

#include <optional>
#include <vector>

#include "zdred/symplectic.hpp"

namespace zdred {

Submodule orthogonal(const Submodule& s, const SymplecticSpace& sp);

struct IsotropyFlags {
    bool isotropic;       // S inside its orthogonal
    bool coisotropic;     // orthogonal inside S
    bool symplectic;      // S meets its orthogonal trivially
    bool lagrangian;      // S equals its orthogonal
};

IsotropyFlags classify(const Submodule& s, const SymplecticSpace& sp);

/// Basis of the intersection of two submodules of the same ambient space.
Submodule intersect(const Submodule& a, const Submodule& b);

struct LagrangianForm {
    std::vector<std::int64_t> signature;  // d_1 | d_2 | ... | d_n
    ZdMatrix S;                           // symplectic over Z_d
};

/// diag(d_1, d/d_1, ..., d_n, d/d_n) reduced mod d.
ZdMatrix lagrangian_diagonal(const std::vector<std::int64_t>& signature,
                             const SymplecticSpace& sp);

/// Canonical form of a Lagrangian submodule; nullopt when the input is not
/// Lagrangian.  Rents of the per-factor staircase are repaired by column
/// insertion, factors are CRT-joined.
std::optional<LagrangianForm> lagrangian_canonical(const Submodule& s,
                                                   const SymplecticSpace& sp);

/// All admissible signatures d_1 | ... | d_n with every d_i dividing
/// prod_i p_i^floor(s_i/2), in lexicographic order.
std::vector<std::vector<std::int64_t>> enumerate_signatures(const SymplecticSpace& sp);

}  // namespace zdred
