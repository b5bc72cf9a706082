#pragma once

// The canonical symplectic form on Z_d^{2n}, symplectic matrices, the four
// elementary substeps, the trigonalisability criterion and the symplectic
// staircase reduction with rent tracking.
//
// A rent is an even row whose trailing entries symplectic moves could not
// clear; every coefficient of the trailing submatrix is a multiple of the
// entry underneath the rent point, and a zero there stops the algorithm.

#include <utility>
#include <vector>

#include "zdred/reduce.hpp"

namespace zdred {

/// Z_d^{2n} with the block-diagonal form J_n made of 2x2 blocks [[0,1],[-1,0]].
class SymplecticSpace {
  public:
    SymplecticSpace(std::size_t n, Modulus m);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return 2 * n_; }
    const Modulus& mod() const noexcept { return mod_; }
    const ZdMatrix& j() const noexcept { return j_; }

    std::int64_t omega(const ZdMatrix& x, const ZdMatrix& y) const;

  private:
    std::size_t n_;
    Modulus mod_;
    ZdMatrix j_;
};

bool is_symplectic_matrix(const ZdMatrix& l, const SymplecticSpace& sp);

struct SubstepResult {
    ZdMatrix s;  // 4x4 symplectic
    ZdMatrix v;  // s * input
};

/// (x,y,z,t) -> (x1, delta, z1, t1) with delta the gcd of the four entries.
SubstepResult substep1(const ZdMatrix& v);
/// (x, y, z, t) -> (x, y, z^t, 0) by a determinant-1 block on the lower pair.
SubstepResult substep2(const ZdMatrix& v);
/// (x, y, z, 0) with z a multiple of y -> (x, y, 0, 0).
SubstepResult substep3(const ZdMatrix& v);
/// (x, y, z, 0) -> (x, y, y^z, 0).
SubstepResult substep4(const ZdMatrix& v);

/// Criterion for the 4x2 staircase pattern (a x / 0 y / 0 z / 0 0):
/// a symplectic upper-trigonalisation exists iff z is a multiple of y.
bool trigonalisable(std::int64_t a, std::int64_t x, std::int64_t y, std::int64_t z,
                    const Modulus& m);

struct RentRecord {
    std::size_t row;          // 0-based; odd, i.e. an even row in 1-based terms
    std::size_t col;
    std::int64_t pivot_below; // entry at (row + 1, col)
};

struct SymplecticCertificate {
    ZdMatrix S;     // symplectic
    ZdMatrix R;     // invertible
    ZdMatrix form;  // S * B * R, staircase shaped
    std::vector<RentRecord> rents;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    bool early_stop = false;  // a rent pivot was 0
};

/// Staircase reduction of a basis matrix by symplectic left- and invertible
/// right-multiplications.  Requires a prime-power modulus; composite moduli
/// must be split into Chinese factors first.
SymplecticCertificate symplectic_reduce(const ZdMatrix& b, const SymplecticSpace& sp);

/// Convenience wrapper for composite d: one certificate per Chinese factor.
std::vector<std::pair<std::int64_t, SymplecticCertificate>>
symplectic_reduce_factors(const ZdMatrix& b);

}  // namespace zdred
