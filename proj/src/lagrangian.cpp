#include "zdred/lagrangian.hpp"

#include <algorithm>
#include <numeric>

namespace zdred {

Submodule orthogonal(const Submodule& s, const SymplecticSpace& sp) {
    if (s.ambient != sp.dim() || s.mod.d() != sp.mod().d())
        throw std::invalid_argument("orthogonal shape mismatch");
    return Submodule(kernel(s.basis.transpose() * sp.j()));
}

Submodule intersect(const Submodule& a, const Submodule& b) {
    if (a.ambient != b.ambient || a.mod.d() != b.mod.d())
        throw std::invalid_argument("intersect shape mismatch");
    // solutions of B_a x = B_b y give the common elements
    ZdMatrix k = kernel(hstack(a.basis, b.basis.scaled(-1)));
    ZdMatrix coeffs = k.submatrix(0, 0, a.basis.cols(), k.cols());
    return Submodule(a.basis * coeffs);
}

IsotropyFlags classify(const Submodule& s, const SymplecticSpace& sp) {
    Submodule orth = orthogonal(s, sp);
    bool iso = true;
    for (std::size_t j = 0; j < s.basis.cols() && iso; ++j)
        iso = membership(s.basis.col(j), orth);
    bool coiso = true;
    for (std::size_t j = 0; j < orth.basis.cols() && coiso; ++j)
        coiso = membership(orth.basis.col(j), s);
    bool sympl = intersect(s, orth).basis.is_zero();
    return {iso, coiso, sympl, iso && coiso};
}

ZdMatrix lagrangian_diagonal(const std::vector<std::int64_t>& signature,
                             const SymplecticSpace& sp) {
    if (signature.size() != sp.n())
        throw std::invalid_argument("signature length must be n");
    ZdMatrix d(sp.dim(), sp.dim(), sp.mod());
    for (std::size_t i = 0; i < sp.n(); ++i) {
        if (signature[i] <= 0 || sp.mod().d() % signature[i] != 0)
            throw std::invalid_argument("signature entry must divide d");
        d.set(2 * i, 2 * i, signature[i]);
        d.set(2 * i + 1, 2 * i + 1, sp.mod().d() / signature[i]);
    }
    return d;
}

namespace {

struct FactorForm {
    std::vector<int> exponents;  // s_1 <= s_2 <= ... <= s_n, each <= s/2
    ZdMatrix symplectic_basis;   // over Z_{p^s}
};

// Per-factor canonical form: staircase-reduce, repair each rent by inserting
// the module element p^{s-t} e_row, normalise to pure p-powers, sort pairs.
FactorForm factor_lagrangian(const Submodule& s, std::int64_t p) {
    const Modulus mod = s.mod;
    const int sexp = mod.factors()[0].exponent;
    const std::size_t n = s.ambient / 2;
    SymplecticSpace sp(n, mod);
    auto cert = symplectic_reduce(s.basis, sp);
    ZdMatrix w = cert.form;

    Submodule reduced(cert.S * s.basis);  // the transformed module
    for (const auto& rent : cert.rents) {
        int t = vp(w(rent.row - 1, rent.col - 1), p, mod);
        std::int64_t entry = mod.pow(p, sexp - t);
        ZdMatrix c(s.ambient, 1, mod);
        c.set(rent.row, 0, entry);
        if (!membership(c, reduced))
            throw std::logic_error("rent repair column is outside the module");
        w = hstack(w, c);
        // isotropy makes the rent row a multiple of the inserted entry
        for (std::size_t col = 0; col + 1 < w.cols(); ++col) {
            std::int64_t q = divide_exact(w(rent.row, col), entry, mod);
            if (q != 0) w.add_col_multiple(col, w.cols() - 1, mod.neg(q));
        }
    }

    // read off the diagonal: every nonzero column has a single nonzero entry
    std::vector<std::int64_t> diag(s.ambient, 0);
    for (std::size_t c = 0; c < w.cols(); ++c) {
        std::size_t nz = 0, row = 0;
        for (std::size_t r = 0; r < w.rows(); ++r)
            if (w(r, c) != 0) {
                ++nz;
                row = r;
            }
        if (nz == 0) continue;
        if (nz > 1 || diag[row] != 0)
            throw std::logic_error("repaired form is not diagonal");
        diag[row] = mod.pow(p, vp(w(row, c), p, mod));  // unit-normalised
    }

    std::vector<int> expo(s.ambient, sexp);
    for (std::size_t r = 0; r < s.ambient; ++r)
        if (diag[r] != 0) expo[r] = vp(diag[r], p, mod);

    std::vector<std::size_t> pair_order(n);
    for (std::size_t i = 0; i < n; ++i) pair_order[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        if (expo[2 * i] > sexp - expo[2 * i] || expo[2 * i + 1] != sexp - expo[2 * i])
            throw std::logic_error("diagonal does not match the Lagrangian pattern");
    }
    std::stable_sort(pair_order.begin(), pair_order.end(),
                     [&](std::size_t a, std::size_t b) { return expo[2 * a] < expo[2 * b]; });

    // pair-block permutation; it maps J_n to J_n, hence is symplectic
    ZdMatrix perm(s.ambient, s.ambient, mod);
    for (std::size_t i = 0; i < n; ++i) {
        perm.set(2 * pair_order[i], 2 * i, 1);
        perm.set(2 * pair_order[i] + 1, 2 * i + 1, 1);
    }
    FactorForm out{std::vector<int>(n), inverse(cert.S) * perm};
    for (std::size_t i = 0; i < n; ++i) out.exponents[i] = expo[2 * pair_order[i]];
    return out;
}

}  // namespace

std::optional<LagrangianForm> lagrangian_canonical(const Submodule& s,
                                                   const SymplecticSpace& sp) {
    if (s.ambient != sp.dim() || s.mod.d() != sp.mod().d())
        throw std::invalid_argument("lagrangian_canonical shape mismatch");
    if (!classify(s, sp).lagrangian) return std::nullopt;

    const Modulus& mod = sp.mod();
    std::vector<std::int64_t> signature(sp.n(), 1);
    std::vector<CrtVector> entries(sp.dim() * sp.dim());
    for (const auto& f : mod.factors()) {
        Submodule sp_fac(matrix_pi_p(s.basis, f.prime));
        auto form = factor_lagrangian(sp_fac, f.prime);
        for (std::size_t i = 0; i < sp.n(); ++i)
            for (int e = 0; e < form.exponents[i]; ++e) signature[i] *= f.prime;
        // collect per-factor symplectic matrices entrywise for the CRT join
        for (std::size_t r = 0; r < sp.dim(); ++r)
            for (std::size_t c = 0; c < sp.dim(); ++c)
                entries[r * sp.dim() + c].components.push_back(
                    {f.prime, form.symplectic_basis(r, c)});
    }
    ZdMatrix big_s(sp.dim(), sp.dim(), mod);
    for (std::size_t r = 0; r < sp.dim(); ++r)
        for (std::size_t c = 0; c < sp.dim(); ++c)
            big_s.set(r, c, crt_join(entries[r * sp.dim() + c], mod));

    LagrangianForm out{signature, big_s};
    if (!is_symplectic_matrix(out.S, sp))
        throw std::logic_error("joined canonical matrix is not symplectic");
    if (!submodule_equal(Submodule(out.S * lagrangian_diagonal(signature, sp)), s))
        throw std::logic_error("canonical form does not regenerate the module");
    return out;
}

std::vector<std::vector<std::int64_t>> enumerate_signatures(const SymplecticSpace& sp) {
    std::int64_t dmax = 1;
    for (const auto& f : sp.mod().factors())
        for (int e = 0; e < f.exponent / 2; ++e) dmax *= f.prime;
    std::vector<std::int64_t> divisors;
    for (std::int64_t x = 1; x <= dmax; ++x)
        if (dmax % x == 0) divisors.push_back(x);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> chain;
    auto rec = [&](auto&& self, std::int64_t prev) -> void {
        if (chain.size() == sp.n()) {
            out.push_back(chain);
            return;
        }
        for (std::int64_t x : divisors) {
            if (x % prev != 0) continue;
            chain.push_back(x);
            self(self, x);
            chain.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace zdred
