#pragma once

// Shared generators and validators for the unit and acceptance suites.

#include <algorithm>
#include <numeric>
#include <random>

#include "zdred/fringe.hpp"
#include "zdred/oracle.hpp"

namespace zdred::testing {

using Rng = std::mt19937_64;

inline std::int64_t rand_residue(const Modulus& m, Rng& rng) {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m.d()));
}

inline ZdMatrix random_matrix(std::size_t rows, std::size_t cols, const Modulus& m,
                              Rng& rng) {
    ZdMatrix out(rows, cols, m);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.set(i, j, rand_residue(m, rng));
    return out;
}

inline ZdMatrix random_invertible(std::size_t n, const Modulus& m, Rng& rng) {
    for (;;) {
        ZdMatrix cand = random_matrix(n, n, m, rng);
        if (is_invertible(cand)) return cand;
    }
}

inline Submodule random_submodule(std::size_t ambient, const Modulus& m, Rng& rng,
                                  std::size_t max_cols) {
    std::size_t cols = 1 + rng() % max_cols;
    return Submodule(random_matrix(ambient, cols, m, rng));
}

/// Symplectic transvection x -> x + t * omega(x, v) * v.
inline ZdMatrix transvection(const ZdMatrix& v, std::int64_t t,
                             const SymplecticSpace& sp) {
    const Modulus& m = sp.mod();
    ZdMatrix jv = sp.j() * v;
    ZdMatrix out = ZdMatrix::identity(sp.dim(), m);
    for (std::size_t r = 0; r < sp.dim(); ++r)
        for (std::size_t c = 0; c < sp.dim(); ++c)
            out.set(r, c, m.add(out(r, c), m.mul(t, m.mul(v(r, 0), jv(c, 0)))));
    return out;
}

inline ZdMatrix random_symplectic(const SymplecticSpace& sp, Rng& rng) {
    const Modulus& m = sp.mod();
    ZdMatrix out = ZdMatrix::identity(sp.dim(), m);
    for (int step = 0; step < 8; ++step) {
        ZdMatrix v = random_matrix(sp.dim(), 1, m, rng);
        out = transvection(v, rand_residue(m, rng), sp) * out;
    }
    return out;
}

/// Random module with a diagonal basis against a random symplectic basis;
/// nearly symplectic by construction.
struct NearlySymplecticInstance {
    Submodule module;
    ZdMatrix symplectic_basis;
    std::vector<std::int64_t> diagonal;
};

inline NearlySymplecticInstance make_nearly_symplectic(const SymplecticSpace& sp,
                                                       Rng& rng) {
    ZdMatrix sigma = random_symplectic(sp, rng);
    ZdMatrix diag(sp.dim(), sp.dim(), sp.mod());
    std::vector<std::int64_t> entries(sp.dim());
    for (std::size_t i = 0; i < sp.dim(); ++i) {
        entries[i] = rand_residue(sp.mod(), rng);
        diag.set(i, i, entries[i]);
    }
    return {Submodule(sigma * diag), sigma, entries};
}

/// A convenient free basis for the instance: columns sorted by the valuation
/// of the diagonal entries, so the module's diagonal matrix has the
/// divisibility-chain shape against it.
inline ZdMatrix convenient_basis(const NearlySymplecticInstance& inst,
                                 const SymplecticSpace& sp) {
    const std::int64_t p = sp.mod().factors()[0].prime;
    std::vector<std::size_t> order(sp.dim());
    for (std::size_t i = 0; i < sp.dim(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return vp(inst.diagonal[a], p, sp.mod()) < vp(inst.diagonal[b], p, sp.mod());
    });
    ZdMatrix f(sp.dim(), sp.dim(), sp.mod());
    for (std::size_t i = 0; i < sp.dim(); ++i)
        f.set_col(i, inst.symplectic_basis.col(order[i]));
    return f;
}

/// Random member of Sigma_D(S): entries valuated by the level gaps, kept on
/// retry until invertible.
inline ZdMatrix random_sigma_d(const Submodule& s, Rng& rng) {
    const Modulus& m = s.mod;
    const std::int64_t p = m.factors()[0].prime;
    auto kappa = kappa_levels(s);
    for (;;) {
        ZdMatrix cand(s.ambient, s.ambient, m);
        for (std::size_t r = 0; r < s.ambient; ++r)
            for (std::size_t c = 0; c < s.ambient; ++c) {
                int gap = std::max(0, kappa[r] - kappa[c]);
                cand.set(r, c, m.mul(m.pow(p, gap), rand_residue(m, rng)));
            }
        if (is_invertible(cand)) return cand;
    }
}

inline bool sets_equal(const oracle::ElementSet& a, const oracle::ElementSet& b) {
    return a.codes == b.codes;
}

/// Staircase shape grammar: zeros below every pivot, pivot rows cleared to
/// the right, rent-row trailing entries multiples of the pivot underneath.
inline bool staircase_ok(const SymplecticCertificate& cert, const ZdMatrix& b,
                         const SymplecticSpace& sp) {
    if (!(cert.S * b * cert.R == cert.form)) return false;
    if (!is_symplectic_matrix(cert.S, sp)) return false;
    if (!is_invertible(cert.R)) return false;
    const Modulus& m = sp.mod();
    for (auto [r, c] : cert.pivots) {
        for (std::size_t rr = r + 1; rr < cert.form.rows(); ++rr)
            if (cert.form(rr, c) != 0) return false;
        for (std::size_t cc = c + 1; cc < cert.form.cols(); ++cc)
            if (cert.form(r, cc) != 0) return false;
    }
    for (const auto& rent : cert.rents) {
        if (rent.row + 1 >= cert.form.rows()) return false;
        if (cert.form(rent.row + 1, rent.col) != rent.pivot_below) return false;
        std::int64_t g = std::gcd(rent.pivot_below, m.d());
        for (std::size_t rr = rent.row; rr < cert.form.rows(); ++rr)
            for (std::size_t cc = rent.col; cc < cert.form.cols(); ++cc)
                if (cert.form(rr, cc) % g != 0) return false;
    }
    return true;
}

/// Generating set of the same module, randomly re-mixed and padded.
inline ZdMatrix regenerate(const Submodule& s, Rng& rng) {
    const std::size_t cols = s.basis.cols();
    ZdMatrix mixed = s.basis * random_invertible(cols, s.mod, rng);
    std::size_t extra = rng() % 3;
    for (std::size_t e = 0; e < extra; ++e) {
        ZdMatrix coeff = random_matrix(cols, 1, s.mod, rng);
        mixed = hstack(mixed, s.basis * coeff);
    }
    return mixed;
}

}  // namespace zdred::testing
