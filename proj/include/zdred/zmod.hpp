#pragma once

// Scalar arithmetic in the residue ring Z_d: canonical residues, units,
// gcd/lcm in the ideal-theoretic sense, element order, p-valuation and the
// Chinese remainder decomposition.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace zdred {

struct Factor {
    std::int64_t prime;
    int exponent;
};

/// Ring parameter d >= 2 with cached prime factorisation (trial division).
/// All residues handled by this library are canonical, i.e. in [0, d).
class Modulus {
  public:
    explicit Modulus(std::int64_t d);

    std::int64_t d() const noexcept { return d_; }
    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_prime_power() const noexcept { return factors_.size() == 1; }

    /// Exponent s of p in d; 0 if p does not divide d.
    int exponent_of(std::int64_t p) const noexcept;
    /// p^s for the factor p of d; throws if p does not divide d.
    std::int64_t prime_power(std::int64_t p) const;

    std::int64_t reduce(std::int64_t x) const noexcept;
    std::int64_t add(std::int64_t a, std::int64_t b) const noexcept;
    std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept;
    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept;
    std::int64_t neg(std::int64_t a) const noexcept;
    std::int64_t pow(std::int64_t a, std::int64_t e) const noexcept;
    bool is_unit(std::int64_t a) const noexcept;

    friend bool operator==(const Modulus& a, const Modulus& b) noexcept {
        return a.d_ == b.d_;
    }

  private:
    std::int64_t d_;
    std::vector<Factor> factors_;
};

struct ExtendedGcd {
    std::int64_t g;  // nonnegative
    std::int64_t x;
    std::int64_t y;  // x*a + y*b == g over Z
};

ExtendedGcd ext_gcd(std::int64_t a, std::int64_t b);

struct CrtComponent {
    std::int64_t prime;
    std::int64_t value;  // residue mod prime^exponent
};

struct CrtVector {
    std::vector<CrtComponent> components;
};

struct BezoutResult {
    std::int64_t u;      // always a unit
    std::int64_t v;
    std::int64_t delta;  // the canonical gcd of {a, b}
    bool both_units;
};

/// Cardinality of the cyclic module a*Z_d, i.e. d / gcd(a, d).
std::int64_t order(std::int64_t a, const Modulus& m);

/// The unique gcd representative dividing d: gcd(a_1, ..., a_k, d) mod d.
/// The empty family yields 0 (the generator of the zero ideal).
std::int64_t canonical_gcd(std::span<const std::int64_t> as, const Modulus& m);

/// Generator of the ideal intersection of the a_i*Z_d, reduced to the
/// canonical representative dividing d.
std::int64_t lcm_zd(std::span<const std::int64_t> as, const Modulus& m);

// Bezout identity u*a + v*b = gcd{a,b} with u a unit.  Both coefficients can
// be chosen invertible exactly when d is odd, or v2(a) != v2(b), or
// v2(a) = v2(b) = v2(d); both_units reports which case occurred.  Built per
// Chinese factor from the candidates (u0, v0), (u0 +- b', v0 -+ a'), joined.
BezoutResult bezout_invertible(std::int64_t a, std::int64_t b, const Modulus& m);

/// Coefficients k_1..k_n with sum k_j*a_j = canonical_gcd(as) and
/// k[unit_index] a unit.  unit_index is 0-based; the family must be nonempty.
std::vector<std::int64_t> multi_bezout(std::span<const std::int64_t> as,
                                       std::size_t unit_index, const Modulus& m);

/// p-valuation of a inside the Chinese factor Z/p^sZ; s for pi_p(a) = 0.
/// Throws if p does not divide d.
int vp(std::int64_t a, std::int64_t p, const Modulus& m);

CrtVector crt_split(std::int64_t a, const Modulus& m);
std::int64_t crt_join(const CrtVector& c, const Modulus& m);

/// Inverse of a unit; throws std::invalid_argument("not a unit") otherwise.
std::int64_t unit_inverse(std::int64_t a, const Modulus& m);

/// A unit lambda with a = lambda*b when order(a) == order(b); nullopt otherwise.
std::optional<std::int64_t> associated_unit(std::int64_t a, std::int64_t b,
                                            const Modulus& m);

/// Some q with q*a = x in Z_d; throws if x is not a multiple of a.
std::int64_t divide_exact(std::int64_t x, std::int64_t a, const Modulus& m);

}  // namespace zdred
