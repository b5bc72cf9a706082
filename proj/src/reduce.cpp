#include "zdred/reduce.hpp"

#include <algorithm>
#include <numeric>

namespace zdred {

VectorReduction reduce_vector(const ZdMatrix& a) {
    if (a.cols() != 1) throw std::invalid_argument("reduce_vector wants a column");
    const Modulus& mod = a.mod();
    const std::size_t n = a.rows();
    ZdMatrix L = ZdMatrix::identity(n, mod);
    if (n == 0) return {L, 0};
    // work on integer lifts; residue classes are taken at the end
    std::vector<std::int64_t> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a(i, 0);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t hi = n - 1 - step;      // row receiving the gcd
        std::size_t lo = hi + 1;            // row holding the previous gcd
        auto eg = ext_gcd(w[hi], w[lo]);
        if (eg.g == 0) continue;            // both zero, block is the identity
        ZdMatrix e = ZdMatrix::identity(n, mod);
        e.set(hi, hi, eg.x);
        e.set(hi, lo, eg.y);
        e.set(lo, hi, -(w[lo] / eg.g));
        e.set(lo, lo, w[hi] / eg.g);
        L = e * L;
        w[hi] = eg.g;
        w[lo] = 0;
    }
    return {L, mod.reduce(w[0])};
}

namespace {

// Order of the projection of a column into the Chinese factor Z/qZ.
std::int64_t factor_order(const ZdMatrix& a, std::int64_t q) {
    std::int64_t g = q;
    for (std::size_t i = 0; i < a.rows(); ++i) g = std::gcd(g, a(i, 0) % q);
    return q / g;
}

}  // namespace

MaxOrderCombination max_order_combination(const ZdMatrix& a1, const ZdMatrix& a2) {
    if (a1.rows() != a2.rows() || a1.cols() != 1 || a2.cols() != 1 ||
        a1.mod().d() != a2.mod().d())
        throw std::invalid_argument("max_order_combination shape mismatch");
    const Modulus& mod = a1.mod();
    if (a2.is_zero())
        return {a1, 2, ZdMatrix::identity(2, mod)};
    if (a1.is_zero()) {
        ZdMatrix swap(2, 2, mod);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
        return {a2, 1, swap};
    }
    auto rv = reduce_vector(a1);
    ZdMatrix w = rv.L * a2;
    auto bz = bezout_invertible(rv.k, w(0, 0), mod);
    std::int64_t u = bz.u, v = bz.v;
    if (!bz.both_units && mod.d() % 2 == 0) {
        // residual even case: pick the factor-order winner in the 2-factor,
        // keep the Bezout pair in the odd part
        std::int64_t q2 = mod.prime_power(2);
        bool first = factor_order(a1, q2) >= factor_order(a2, q2);
        Modulus two_part(q2);
        std::int64_t m_odd = mod.d() / q2;
        auto join2 = [&](std::int64_t odd_val, std::int64_t two_val) {
            if (m_odd == 1) return mod.reduce(two_val);
            auto eg = ext_gcd(m_odd % q2, q2);
            std::int64_t inv = two_part.reduce(eg.x);
            // x = odd_val + m_odd * inv * (two_val - odd_val) mod d
            std::int64_t diff = two_part.reduce(two_val - odd_val);
            return mod.add(mod.reduce(odd_val), mod.mul(mod.mul(m_odd, inv), diff));
        };
        u = join2(u, first ? 1 : 0);
        v = join2(v, first ? 0 : 1);
    }
    ZdMatrix a = a1.scaled(u) + a2.scaled(v);
    ZdMatrix t(2, 2, mod);
    t.set(0, 0, u);
    t.set(1, 0, v);
    int replaced;
    if (mod.is_unit(u)) {
        t.set(1, 1, 1);  // (a1|a2) -> (a, a2), det u
        replaced = 1;
    } else {
        t.set(0, 1, 1);  // (a1|a2) -> (a, a1), det -v
        replaced = 2;
    }
    return {a, replaced, t};
}

ColumnOrdering algorithm_a(const ZdMatrix& b) {
    const Modulus& mod = b.mod();
    const std::size_t l = b.cols();
    ZdMatrix w = b;
    ZdMatrix r = ZdMatrix::identity(l, mod);
    for (std::size_t j = 1; j < l; ++j) {
        ZdMatrix c = w.col(0), bj = w.col(j);
        std::int64_t nu_c = vector_order(c), nu_j = vector_order(bj);
        if (std::lcm(nu_c, nu_j) == nu_c) continue;  // already dominant
        auto mc = max_order_combination(c, bj);
        ZdMatrix t = ZdMatrix::identity(l, mod);
        t.set(0, 0, mc.transform(0, 0));
        t.set(0, j, mc.transform(0, 1));
        t.set(j, 0, mc.transform(1, 0));
        t.set(j, j, mc.transform(1, 1));
        w = w * t;
        r = r * t;
    }
    return {w, r};
}

ColumnOrdering algorithm_a_ij(const ZdMatrix& b, std::size_t i, std::size_t j) {
    if (i >= b.rows() || j >= b.cols())
        throw std::invalid_argument("algorithm_a_ij index out of range");
    auto sub = algorithm_a(b.submatrix(i, j, b.rows() - i, b.cols() - j));
    ZdMatrix r = ZdMatrix::identity(b.cols(), b.mod());
    r.set_block(j, j, sub.R);
    return {b * r, r};
}

ReductionCertificate d0(const ZdMatrix& b) {
    const Modulus& mod = b.mod();
    const std::size_t k = b.rows(), l = b.cols();
    ZdMatrix L = ZdMatrix::identity(k, mod);
    ZdMatrix R = ZdMatrix::identity(l, mod);
    ZdMatrix w = b;
    if (k == 0 || l == 0) return {L, R, w};
    const std::size_t mu = std::min(k, l);
    for (std::size_t step = 0; step < mu; ++step) {
        // maximise the order of the leading column of the trailing block
        auto ar = algorithm_a(w.submatrix(step, step, k - step, l - step));
        ZdMatrix r1 = ZdMatrix::identity(l, mod);
        r1.set_block(step, step, ar.R);
        w = w * r1;
        R = R * r1;
        // clear the leading column below the pivot
        auto rv = reduce_vector(w.submatrix(step, step, k - step, 1));
        ZdMatrix l1 = ZdMatrix::identity(k, mod);
        l1.set_block(step, step, rv.L);
        w = l1 * w;
        L = l1 * L;
        // clear the leading row; every entry is a multiple of the pivot
        std::int64_t piv = w(step, step);
        for (std::size_t c = step + 1; c < l; ++c) {
            std::int64_t q = divide_exact(w(step, c), piv, mod);
            if (q == 0) continue;
            w.add_col_multiple(c, step, mod.neg(q));
            R.add_col_multiple(c, step, mod.neg(q));
        }
    }
    return {L, R, w};
}

SimpleReduction simple_reduce(const Submodule& s) {
    auto cert = d0(s.basis);
    const std::size_t mu = std::min(cert.D.rows(), cert.D.cols());
    std::size_t rank = 0;
    while (rank < mu && cert.D(rank, rank) != 0) ++rank;
    return {cert, cert.D.first_cols(rank)};
}

std::vector<std::int64_t> characteristic_sequence(const Submodule& s) {
    auto sr = simple_reduce(s);
    std::vector<std::int64_t> seq;
    for (std::size_t i = 0; i < sr.minimal_basis.cols(); ++i)
        seq.push_back(std::gcd(sr.minimal_basis(i, i), s.mod.d()));
    return seq;
}

std::optional<ZdMatrix> build_isomorphism(const Submodule& s, const Submodule& t) {
    if (s.ambient != t.ambient || s.mod.d() != t.mod.d())
        throw std::invalid_argument("build_isomorphism shape mismatch");
    if (characteristic_sequence(s) != characteristic_sequence(t)) return std::nullopt;
    auto cs = d0(s.basis);
    auto ct = d0(t.basis);
    // both diagonal forms agree up to unit column factors, so mapping the
    // completed free basis of S onto that of T carries S onto T
    return inverse(ct.L) * cs.L;
}

std::vector<int> kappa_levels(const Submodule& s) {
    if (!s.mod.is_prime_power())
        throw std::invalid_argument("kappa levels need a prime-power modulus");
    const std::int64_t p = s.mod.factors()[0].prime;
    const int sexp = s.mod.factors()[0].exponent;
    auto sr = simple_reduce(s);
    std::vector<int> kappa;
    kappa.reserve(s.ambient);
    for (std::size_t i = 0; i < sr.minimal_basis.cols(); ++i)
        kappa.push_back(vp(sr.minimal_basis(i, i), p, s.mod));
    while (kappa.size() < s.ambient) kappa.push_back(sexp);
    return kappa;
}

bool sigma_d_contains(const ZdMatrix& p_mat, const Submodule& s, std::int64_t p) {
    if (!s.mod.is_prime_power() || s.mod.factors()[0].prime != p)
        throw std::invalid_argument("modulus is not a power of the given prime");
    if (p_mat.rows() != s.ambient || p_mat.cols() != s.ambient ||
        p_mat.mod().d() != s.mod.d())
        throw std::invalid_argument("sigma_d_contains shape mismatch");
    if (!is_invertible(p_mat)) return false;
    auto kappa = kappa_levels(s);
    for (std::size_t col = 0; col < s.ambient; ++col)
        for (std::size_t row = 0; row < s.ambient; ++row) {
            int gap = kappa[row] - kappa[col];
            if (gap > 0 && vp(p_mat(row, col), p, s.mod) < gap) return false;
        }
    return true;
}

}  // namespace zdred
