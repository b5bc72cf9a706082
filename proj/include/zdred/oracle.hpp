#pragma once

// Brute-force reference implementations at desk scale, used by tests and the
// acceptance suite: element enumeration, orthogonals, classification,
// symplectic-group enumeration at d = 2 and the order-preimage count.
//
// The enumeration kernels run their coefficient scans OpenMP-parallel when
// available; the *_serial variants are the plain reference loops kept for
// cross-checking.

#include <cstdint>
#include <vector>

#include "zdred/lagrangian.hpp"

namespace zdred::oracle {

/// Sorted set of all elements of a submodule, each packed in mixed radix
/// (component i contributes digit i in base d).
struct ElementSet {
    Modulus mod;
    std::size_t ambient;
    std::vector<std::int64_t> codes;  // sorted, unique

    std::int64_t encode(const ZdMatrix& v) const;
    ZdMatrix decode(std::int64_t code) const;
    bool contains(std::int64_t code) const;
    std::size_t size() const { return codes.size(); }
};

/// Guard: d^cols and d^ambient must stay at or below this many tuples.
inline constexpr std::int64_t kEnumerationGuard = 1'000'000;

ElementSet enumerate(const Submodule& s);
ElementSet enumerate_serial(const Submodule& s);

ElementSet brute_orthogonal(const Submodule& s, const SymplecticSpace& sp);
ElementSet brute_orthogonal_serial(const Submodule& s, const SymplecticSpace& sp);

IsotropyFlags brute_classify(const Submodule& s, const SymplecticSpace& sp);

/// All L with L^T J_n L = J_n; restricted to d = 2, n <= 2.
std::vector<ZdMatrix> enumerate_symplectic_group(const SymplecticSpace& sp);

/// Every distinct submodule of Z_d^ambient (deduplicated by element set).
std::vector<Submodule> all_submodules(const Modulus& m, std::size_t ambient);

/// The multi-sum counting vectors X with D X of order p^{s-i}, where D is
/// diagonal with r_levels[k] entries of valuation k.  i ranges over 0..s-1;
/// the i = s count is the product of p^{k * r_levels[k]}.
unsigned long long count_order_preimages(const std::vector<int>& r_levels,
                                         std::int64_t p, int s, int i);
unsigned long long count_zero_preimages(const std::vector<int>& r_levels,
                                        std::int64_t p, int s);

/// Direct enumeration of the same count, for cross-checking the formula.
unsigned long long brute_count_order_preimages(const std::vector<int>& r_levels,
                                               std::int64_t p, int s, int i);

}  // namespace zdred::oracle
