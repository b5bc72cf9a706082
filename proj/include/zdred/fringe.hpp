#pragma once

// Gram matrices and their fringes: the K-partition by diagonal valuation
// levels, the scalar/good/nice fringe notions, and the symplectic
// diagonalisation D_omega that detects nearly symplectic submodules.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "zdred/lagrangian.hpp"

namespace zdred {

struct GramData {
    ZdMatrix G;                 // antisymmetric, family_size x family_size
    std::size_t family_size;
    std::int64_t discriminant;  // det(G)
};

/// Gram matrix B^T J_n B of a column family together with its discriminant.
GramData gram(const ZdMatrix& b, const SymplecticSpace& sp);

struct KPartition {
    // half-open index ranges K_0 .. K_s over {0, ..., ambient-1}
    std::vector<std::pair<std::size_t, std::size_t>> intervals;
    std::vector<int> kappa;  // level of each index
};

/// Levels of the diagonal reduction of S plus the trailing K_s block.
/// Requires a prime-power modulus.
KPartition k_partition(const Submodule& s);

struct FringeReport {
    KPartition k;
    std::optional<int> scalar_fringe;             // defined iff G has a unit
    bool good = false;
    bool nice = false;
    std::optional<std::pair<std::size_t, std::size_t>> pivot;  // set iff nice
};

/// Fringe of G with respect to the K-partition of S (restricted to the
/// family size).  An absent scalar fringe is a state, not an error.
FringeReport fringe_report(const GramData& g, const Submodule& s);

/// True when conjugating the (good-fringed) Gram matrix by P keeps the
/// fringe good with the same scalar fringe; P should lie in Sigma_D(S).
bool check_fringe_preservation(const GramData& g, const ZdMatrix& p,
                               const Submodule& s);

struct DOmegaWitness {
    ZdMatrix basis;     // 2n x 2n, symplectic
    ZdMatrix diagonal;  // aligned with the basis columns; basis*diagonal spans S
    std::vector<std::size_t> sigma;  // valuation-sorting permutation
};

struct DOmegaOutcome {
    std::optional<DOmegaWitness> witness;
    std::optional<FringeReport> failure;  // report of the non-nice iteration
    std::vector<std::int64_t> discriminants;  // one per iteration
    bool nearly_symplectic() const { return witness.has_value(); }
};

/// Chooses among the admissible pivot pairs of one iteration; the default
/// takes the first in row-major order.
using PivotChooser = std::function<std::pair<std::size_t, std::size_t>(
    const std::vector<std::pair<std::size_t, std::size_t>>&)>;

/// Partial Gram-Schmidt symplectic diagonalisation.  Requires d = p^s.
DOmegaOutcome d_omega(const Submodule& s, const SymplecticSpace& sp,
                      const PivotChooser& chooser = {});

/// Nearly-symplectic test; composite moduli are the conjunction over the
/// Chinese factors.
bool is_nearly_symplectic(const Submodule& s, const SymplecticSpace& sp);

/// CRT-joined witness for composite d (sigma left empty there); nullopt when
/// some factor fails.
std::optional<DOmegaWitness> nearly_symplectic_witness(const Submodule& s,
                                                       const SymplecticSpace& sp);

/// classify(...).symplectic, with the proposition's equivalence asserted as
/// an internal consistency check in debug builds.  Requires d = p^s.
bool is_symplectic_submodule(const Submodule& s, const SymplecticSpace& sp);

}  // namespace zdred
