#include "zdred/fringe.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace zdred {

GramData gram(const ZdMatrix& b, const SymplecticSpace& sp) {
    if (b.rows() != sp.dim() || b.mod().d() != sp.mod().d())
        throw std::invalid_argument("gram shape mismatch");
    ZdMatrix g = b.transpose() * sp.j() * b;
    return {g, b.cols(), det(g)};
}

KPartition k_partition(const Submodule& s) {
    if (!s.mod.is_prime_power())
        throw std::invalid_argument("k_partition needs a prime-power modulus");
    const int sexp = s.mod.factors()[0].exponent;
    KPartition out;
    out.kappa = kappa_levels(s);
    std::size_t pos = 0;
    for (int level = 0; level <= sexp; ++level) {
        std::size_t begin = pos;
        while (pos < out.kappa.size() && out.kappa[pos] == level) ++pos;
        out.intervals.emplace_back(begin, pos);
    }
    return out;
}

namespace {

// Valuation of one entry with the zero-residue convention v_p(0) = s.
int entry_vp(std::int64_t x, const Modulus& m) {
    return vp(x, m.factors()[0].prime, m);
}

}  // namespace

FringeReport fringe_report(const GramData& g, const Submodule& s) {
    if (!s.mod.is_prime_power())
        throw std::invalid_argument("fringe_report needs a prime-power modulus");
    if (g.family_size > s.ambient)
        throw std::invalid_argument("family larger than the ambient space");
    const Modulus& mod = s.mod;
    const int sexp = mod.factors()[0].exponent;
    const std::size_t c = g.family_size;

    FringeReport rep;
    rep.k = k_partition(s);
    const auto& kappa = rep.k.kappa;

    int fr = 2 * sexp + 1;
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (mod.is_unit(g.G(i, j))) fr = std::min(fr, kappa[i] + kappa[j]);
    if (fr > 2 * sexp) return rep;  // no unit: undefined fringe, not nice
    rep.scalar_fringe = fr;

    // good: every block of the fringe is valuated at least gamma = fr - a - b
    rep.good = true;
    for (int a = 0; a <= sexp && rep.good; ++a)
        for (int b = 0; b <= sexp && rep.good; ++b) {
            int gamma = fr - a - b;
            if (gamma <= 0) continue;
            auto [abeg, aend] = rep.k.intervals[a];
            auto [bbeg, bend] = rep.k.intervals[b];
            for (std::size_t i = abeg; i < std::min(aend, c) && rep.good; ++i)
                for (std::size_t j = bbeg; j < std::min(bend, c); ++j)
                    if (entry_vp(g.G(i, j), mod) < gamma) {
                        rep.good = false;
                        break;
                    }
        }

    // nice: some unit entry on the fringe with dominated row and column
    for (std::size_t i = 0; i < c && !rep.nice; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j || !mod.is_unit(g.G(i, j))) continue;
            if (kappa[i] + kappa[j] != fr) continue;
            bool ok = true;
            for (std::size_t kk = 0; kk <= i && ok; ++kk)
                ok = entry_vp(g.G(kk, j), mod) >= fr - kappa[kk] - kappa[j];
            for (std::size_t ll = 0; ll <= j && ok; ++ll)
                ok = entry_vp(g.G(i, ll), mod) >= fr - kappa[i] - kappa[ll];
            if (ok) {
                rep.nice = true;
                rep.pivot = {i, j};
                break;
            }
        }
    return rep;
}

bool check_fringe_preservation(const GramData& g, const ZdMatrix& p,
                               const Submodule& s) {
    auto before = fringe_report(g, s);
    GramData conj{p.transpose() * g.G * p, g.family_size,
                  det(p.transpose() * g.G * p)};
    auto after = fringe_report(conj, s);
    return after.good && after.scalar_fringe == before.scalar_fringe;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> admissible_pivots(
    const ZdMatrix& g, const std::vector<int>& kappa, int fr, const Modulus& mod) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t c = g.rows();
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j || !mod.is_unit(g(i, j))) continue;
            if (kappa[i] + kappa[j] != fr) continue;
            bool ok = true;
            for (std::size_t kk = 0; kk <= i && ok; ++kk)
                ok = entry_vp(g(kk, j), mod) >= fr - kappa[kk] - kappa[j];
            for (std::size_t ll = 0; ll <= j && ok; ++ll)
                ok = entry_vp(g(i, ll), mod) >= fr - kappa[i] - kappa[ll];
            if (ok) out.emplace_back(i, j);
        }
    return out;
}

// Coordinates of the columns of X in the free family F (solves F C = X).
ZdMatrix free_coords(const ZdMatrix& f, const ZdMatrix& x) {
    auto cert = d0(f);
    const Modulus& mod = f.mod();
    ZdMatrix out(f.cols(), x.cols(), mod);
    for (std::size_t j = 0; j < x.cols(); ++j) {
        ZdMatrix y = cert.L * x.col(j);
        ZdMatrix z(f.cols(), 1, mod);
        for (std::size_t i = 0; i < f.cols(); ++i)
            z.set(i, 0, divide_exact(y(i, 0), cert.D(i, i), mod));
        for (std::size_t i = f.cols(); i < f.rows(); ++i)
            if (y(i, 0) != 0)
                throw std::logic_error("free_coords: element outside the span");
        out.set_col(j, cert.R * z);
    }
    return out;
}

}  // namespace

DOmegaOutcome d_omega(const Submodule& s, const SymplecticSpace& sp,
                      const PivotChooser& chooser) {
    if (!sp.mod().is_prime_power())
        throw std::invalid_argument(
            "composite modulus: split into Chinese factors first");
    if (s.ambient != sp.dim() || s.mod.d() != sp.mod().d())
        throw std::invalid_argument("d_omega shape mismatch");
    const Modulus& mod = sp.mod();
    const std::int64_t p = mod.factors()[0].prime;

    DOmegaOutcome out;
    auto cert = d0(s.basis);
    ZdMatrix f = inverse(cert.L);   // free basis with S diagonal against it
    ZdMatrix w = s.basis;           // generators of the shrinking module
    ZdMatrix collected(sp.dim(), 0, mod);
    std::vector<int> slot_levels;

    while (f.cols() > 0) {
        ZdMatrix coords = free_coords(f, w);
        Submodule coord_module(coords);
        auto kp = k_partition(coord_module);
        ZdMatrix g = f.transpose() * sp.j() * f;
        out.discriminants.push_back(det(g));

        GramData gd{g, f.cols(), out.discriminants.back()};
        auto rep = fringe_report(gd, coord_module);
        if (!rep.nice) {
            out.failure = rep;
            return out;
        }
        auto pivots = admissible_pivots(g, kp.kappa, *rep.scalar_fringe, mod);
        auto [pi, pj] = chooser ? chooser(pivots) : pivots.front();

        std::int64_t ginv = unit_inverse(g(pi, pj), mod);
        collected = hstack(collected, hstack(f.col(pi).scaled(ginv), f.col(pj)));
        slot_levels.push_back(kp.kappa[pi]);
        slot_levels.push_back(kp.kappa[pj]);

        // partial Gram-Schmidt: push every other vector into the omega-
        // orthogonal of the extracted pair
        ZdMatrix fnew(sp.dim(), f.cols() - 2, mod);
        std::size_t outc = 0;
        for (std::size_t kcol = 0; kcol < f.cols(); ++kcol) {
            if (kcol == pi || kcol == pj) continue;
            ZdMatrix v = f.col(kcol) - f.col(pj).scaled(mod.mul(ginv, g(pi, kcol))) +
                         f.col(pi).scaled(mod.mul(ginv, g(pj, kcol)));
            fnew.set_col(outc++, v);
        }

        // restrict the module to the orthogonal of the extracted pair
        ZdMatrix constraints(2, w.cols(), mod);
        ZdMatrix fi = f.col(pi), fj = f.col(pj);
        for (std::size_t c = 0; c < w.cols(); ++c) {
            constraints.set(0, c, sp.omega(fi, w.col(c)));
            constraints.set(1, c, sp.omega(fj, w.col(c)));
        }
        w = w * kernel(constraints);
        f = fnew;
    }

    DOmegaWitness wit{collected, ZdMatrix(sp.dim(), sp.dim(), mod), {}};
    for (std::size_t t = 0; t < sp.dim(); ++t)
        wit.diagonal.set(t, t, mod.pow(p, slot_levels[t]));
    wit.sigma.resize(sp.dim());
    for (std::size_t t = 0; t < sp.dim(); ++t) wit.sigma[t] = t;
    std::stable_sort(wit.sigma.begin(), wit.sigma.end(),
                     [&](std::size_t a, std::size_t b) {
                         return slot_levels[a] < slot_levels[b];
                     });
    if (!is_symplectic_matrix(wit.basis, sp))
        throw std::logic_error("d_omega: collected basis is not symplectic");
    if (!submodule_equal(Submodule(wit.basis * wit.diagonal), s))
        throw std::logic_error("d_omega: witness does not regenerate the module");
    out.witness = std::move(wit);
    return out;
}

bool is_nearly_symplectic(const Submodule& s, const SymplecticSpace& sp) {
    return nearly_symplectic_witness(s, sp).has_value();
}

std::optional<DOmegaWitness> nearly_symplectic_witness(const Submodule& s,
                                                       const SymplecticSpace& sp) {
    if (s.ambient != sp.dim() || s.mod.d() != sp.mod().d())
        throw std::invalid_argument("nearly_symplectic_witness shape mismatch");
    const Modulus& mod = sp.mod();
    if (mod.is_prime_power()) {
        auto outcome = d_omega(s, sp);
        if (!outcome.witness) return std::nullopt;
        return outcome.witness;
    }
    std::vector<CrtVector> basis_entries(sp.dim() * sp.dim());
    std::vector<CrtVector> diag_entries(sp.dim());
    for (const auto& f : mod.factors()) {
        ZdMatrix bp = matrix_pi_p(s.basis, f.prime);
        SymplecticSpace fsp(sp.n(), bp.mod());
        auto outcome = d_omega(Submodule(bp), fsp);
        if (!outcome.witness) return std::nullopt;
        for (std::size_t r = 0; r < sp.dim(); ++r)
            for (std::size_t c = 0; c < sp.dim(); ++c)
                basis_entries[r * sp.dim() + c].components.push_back(
                    {f.prime, outcome.witness->basis(r, c)});
        for (std::size_t t = 0; t < sp.dim(); ++t)
            diag_entries[t].components.push_back(
                {f.prime, outcome.witness->diagonal(t, t)});
    }
    DOmegaWitness wit{ZdMatrix(sp.dim(), sp.dim(), mod),
                      ZdMatrix(sp.dim(), sp.dim(), mod), {}};
    for (std::size_t r = 0; r < sp.dim(); ++r)
        for (std::size_t c = 0; c < sp.dim(); ++c)
            wit.basis.set(r, c, crt_join(basis_entries[r * sp.dim() + c], mod));
    for (std::size_t t = 0; t < sp.dim(); ++t)
        wit.diagonal.set(t, t, crt_join(diag_entries[t], mod));
    if (!is_symplectic_matrix(wit.basis, sp))
        throw std::logic_error("joined witness basis is not symplectic");
    if (!submodule_equal(Submodule(wit.basis * wit.diagonal), s))
        throw std::logic_error("joined witness does not regenerate the module");
    return wit;
}

bool is_symplectic_submodule(const Submodule& s, const SymplecticSpace& sp) {
    if (!sp.mod().is_prime_power())
        throw std::invalid_argument("is_symplectic_submodule needs d = p^s");
    auto flags = classify(s, sp);
#ifndef NDEBUG
    // proposition consistency: symplectic iff nearly symplectic with
    // S + S^omega the full space, and then free of even rank
    Submodule orth = orthogonal(s, sp);
    bool full = submodule_equal(
        Submodule(hstack(s.basis, orth.basis)),
        Submodule(ZdMatrix::identity(sp.dim(), sp.mod())));
    assert(flags.symplectic == (is_nearly_symplectic(s, sp) && full));
    if (flags.symplectic) {
        auto seq = characteristic_sequence(s);
        assert(seq.size() % 2 == 0);
        for (auto e : seq) assert(e == 1);
    }
#endif
    return flags.symplectic;
}

}  // namespace zdred
