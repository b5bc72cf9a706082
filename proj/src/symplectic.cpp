#include "zdred/symplectic.hpp"

#include <numeric>

namespace zdred {

SymplecticSpace::SymplecticSpace(std::size_t n, Modulus m)
    : n_(n), mod_(std::move(m)), j_(2 * n, 2 * n, mod_) {
    if (n == 0) throw std::invalid_argument("symplectic space needs n >= 1");
    for (std::size_t i = 0; i < n_; ++i) {
        j_.set(2 * i, 2 * i + 1, 1);
        j_.set(2 * i + 1, 2 * i, -1);
    }
}

std::int64_t SymplecticSpace::omega(const ZdMatrix& x, const ZdMatrix& y) const {
    if (x.rows() != dim() || y.rows() != dim() || x.cols() != 1 || y.cols() != 1)
        throw std::invalid_argument("omega wants columns of dimension 2n");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        acc = mod_.add(acc, mod_.mul(x(2 * i, 0), y(2 * i + 1, 0)));
        acc = mod_.sub(acc, mod_.mul(x(2 * i + 1, 0), y(2 * i, 0)));
    }
    return acc;
}

bool is_symplectic_matrix(const ZdMatrix& l, const SymplecticSpace& sp) {
    if (l.rows() != sp.dim() || l.cols() != sp.dim()) return false;
    return l.transpose() * sp.j() * l == sp.j();
}

namespace {

void require_window(const ZdMatrix& v) {
    if (v.rows() != 4 || v.cols() != 1)
        throw std::invalid_argument("substep wants a 4-component column");
}

}  // namespace

SubstepResult substep1(const ZdMatrix& v) {
    require_window(v);
    const Modulus& mod = v.mod();
    std::int64_t vals[4] = {v(0, 0), v(1, 0), v(2, 0), v(3, 0)};
    auto coef = multi_bezout(std::span<const std::int64_t>(vals, 4), 1, mod);
    std::int64_t u = unit_inverse(coef[1], mod);
    ZdMatrix s(4, 4, mod);
    s.set(0, 0, u);
    s.set(1, 0, coef[0]);
    s.set(1, 1, coef[1]);
    s.set(1, 2, coef[2]);
    s.set(1, 3, coef[3]);
    s.set(2, 0, mod.neg(mod.mul(coef[3], u)));
    s.set(2, 2, 1);
    s.set(3, 0, mod.mul(coef[2], u));
    s.set(3, 3, 1);
    return {s, s * v};
}

SubstepResult substep2(const ZdMatrix& v) {
    require_window(v);
    const Modulus& mod = v.mod();
    ZdMatrix s = ZdMatrix::identity(4, mod);
    auto eg = ext_gcd(v(2, 0), v(3, 0));
    if (eg.g != 0) {
        s.set(2, 2, eg.x);
        s.set(2, 3, eg.y);
        s.set(3, 2, -(v(3, 0) / eg.g));
        s.set(3, 3, v(2, 0) / eg.g);
    }
    return {s, s * v};
}

SubstepResult substep3(const ZdMatrix& v) {
    require_window(v);
    const Modulus& mod = v.mod();
    if (v(3, 0) != 0)
        throw std::invalid_argument("substep3 wants a zero fourth component");
    std::int64_t k6 = mod.neg(divide_exact(v(2, 0), v(1, 0), mod));
    ZdMatrix s = ZdMatrix::identity(4, mod);
    s.set(0, 3, k6);
    s.set(2, 1, k6);
    return {s, s * v};
}

SubstepResult substep4(const ZdMatrix& v) {
    require_window(v);
    const Modulus& mod = v.mod();
    if (v(3, 0) != 0)
        throw std::invalid_argument("substep4 wants a zero fourth component");
    auto bz = bezout_invertible(v(2, 0), v(1, 0), mod);  // bz.u * z + bz.v * y = y^z
    std::int64_t vc = bz.u, kc = bz.v;
    std::int64_t vinv = unit_inverse(vc, mod);
    ZdMatrix s = ZdMatrix::identity(4, mod);
    s.set(0, 3, mod.mul(kc, vinv));
    s.set(2, 1, kc);
    s.set(2, 2, vc);
    s.set(3, 3, vinv);
    return {s, s * v};
}

bool trigonalisable(std::int64_t a, std::int64_t x, std::int64_t y, std::int64_t z,
                    const Modulus& m) {
    if (m.reduce(a) == 0) throw std::invalid_argument("criterion wants a != 0");
    std::int64_t g = std::gcd(m.reduce(a), m.d());
    if (m.reduce(x) % g != 0)
        throw std::invalid_argument("criterion wants x a multiple of a");
    return m.reduce(z) % std::gcd(m.reduce(y), m.d()) == 0;
}

namespace {

class StaircaseReducer {
  public:
    StaircaseReducer(const ZdMatrix& b, const SymplecticSpace& sp)
        : sp_(sp),
          mod_(sp.mod()),
          w_(b),
          s_(ZdMatrix::identity(sp.dim(), sp.mod())),
          r_(ZdMatrix::identity(b.cols(), sp.mod())) {}

    SymplecticCertificate run() {
        const std::size_t two_n = sp_.dim();
        const std::size_t k = w_.cols();
        std::size_t i = 0, j = 0;
        bool skip_step1 = false;
        bool early = false;
        while (k >= 2 && two_n >= 4 && i + 4 <= two_n && j + 2 <= k) {
            if (!skip_step1) {
                apply_a_ij(i, j);
                clear_column_below(i, j);
                pivots_.emplace_back(i, j);
            } else {
                pivots_.emplace_back(i, j);
            }
            skip_step1 = false;

            apply_a_ij(i + 1, j + 1);
            clear_column_from(i + 4, i / 2 + 1, j + 1);
            compress_pair(i + 2, j + 1);               // substep-2 shape
            apply_window_step(i, j + 1, /*step4=*/true);
            std::int64_t delta2 = w_(i + 2, j + 1);
            std::int64_t x = divide_exact(w_(i + 1, j + 1), delta2, mod_);
            if (mod_.is_unit(x)) {
                apply_window_step(i, j + 1, /*step4=*/false);  // substep 3
                clear_row_right(i, j);
                clear_row_right(i + 1, j + 1);
                pivots_.emplace_back(i + 1, j + 1);
                i += 2;
                j += 2;
            } else {
                clear_row_right(i, j);
                rents_.push_back({i + 1, j + 1, delta2});
                if (delta2 == 0) {
                    early = true;
                    break;
                }
                i += 2;
                j += 1;
                skip_step1 = true;
            }
        }
        if (!early && k >= 1) {
            if (i + 2 >= two_n) {
                if (j < k) tail_simple(i, j);
            } else if (j + 1 == k) {
                apply_a_ij(i, j);
                clear_column_below(i, j);
                if (w_(i, j) != 0) pivots_.emplace_back(i, j);
            }
        }
        return {s_, r_, w_, rents_, pivots_, early};
    }

  private:
    // Left-multiplies by the 4x4 block `e4` embedded at row pair r0/2.
    void apply_left4(std::size_t r0, const ZdMatrix& e4) {
        ZdMatrix e = ZdMatrix::identity(sp_.dim(), mod_);
        e.set_block(r0, r0, e4);
        w_ = e * w_;
        s_ = e * s_;
    }

    void apply_left2(std::size_t r0, const ZdMatrix& e2) {
        ZdMatrix e = ZdMatrix::identity(sp_.dim(), mod_);
        e.set_block(r0, r0, e2);
        w_ = e * w_;
        s_ = e * s_;
    }

    void apply_a_ij(std::size_t i, std::size_t j) {
        auto ar = algorithm_a_ij(w_, i, j);
        w_ = ar.result;
        r_ = r_ * ar.R;
    }

    ZdMatrix window(std::size_t r0, std::size_t col) const {
        return w_.submatrix(r0, col, 4, 1);
    }

    // Gathers the gcd of column `col` over rows >= row_lo*2 by bottom-up
    // 4-windows; afterwards only rows 2*row_lo and 2*row_lo+1 are nonzero.
    void windows_down_to(std::size_t pair_lo, std::size_t col) {
        if (sp_.n() < 2) return;
        for (std::size_t m = sp_.n() - 2; m + 1 > pair_lo; --m) {
            std::size_t r0 = 2 * m;
            auto s1 = substep1(window(r0, col));
            apply_left4(r0, s1.s);
            auto s2 = substep2(window(r0, col));
            apply_left4(r0, s2.s);
            auto s3 = substep3(window(r0, col));
            apply_left4(r0, s3.s);
        }
    }

    // Determinant-1 pair block sending (x, y)^T to (x^y, 0)^T.
    void compress_pair(std::size_t r0, std::size_t col) {
        auto eg = ext_gcd(w_(r0, col), w_(r0 + 1, col));
        if (eg.g == 0) return;
        ZdMatrix e(2, 2, mod_);
        e.set(0, 0, eg.x);
        e.set(0, 1, eg.y);
        e.set(1, 0, -(w_(r0 + 1, col) / eg.g));
        e.set(1, 1, w_(r0, col) / eg.g);
        apply_left2(r0, e);
    }

    void clear_column_from(std::size_t first_zero_row, std::size_t pair_lo,
                           std::size_t col) {
        if (first_zero_row >= sp_.dim()) return;
        windows_down_to(pair_lo, col);
    }

    // Zeroes column `col` strictly below row i (pivot lands at row i).
    void clear_column_below(std::size_t i, std::size_t col) {
        windows_down_to(i / 2, col);
        compress_pair(i, col);
    }

    // Runs substep 4 (or substep 3) on the 4-window rows i..i+3 of `col`.
    void apply_window_step(std::size_t i, std::size_t col, bool step4) {
        auto res = step4 ? substep4(window(i, col)) : substep3(window(i, col));
        apply_left4(i, res.s);
    }

    // Zeroes row `row` to the right of `col`; trailing entries are multiples
    // of the pivot by the order-domination of algorithm A.
    void clear_row_right(std::size_t row, std::size_t col) {
        std::int64_t piv = w_(row, col);
        for (std::size_t c = col + 1; c < w_.cols(); ++c) {
            std::int64_t q = divide_exact(w_(row, c), piv, mod_);
            if (q == 0) continue;
            w_.add_col_multiple(c, col, mod_.neg(q));
            r_.add_col_multiple(c, col, mod_.neg(q));
        }
    }

    // Simple reduction of the last two rows; the left factors have
    // determinant 1, hence act symplectically on the final pair.
    void tail_simple(std::size_t i, std::size_t j) {
        auto cert = d0(w_.submatrix(i, j, 2, w_.cols() - j));
        ZdMatrix le = ZdMatrix::identity(sp_.dim(), mod_);
        le.set_block(i, i, cert.L);
        ZdMatrix re = ZdMatrix::identity(w_.cols(), mod_);
        re.set_block(j, j, cert.R);
        w_ = le * w_ * re;
        s_ = le * s_;
        r_ = r_ * re;
        if (w_(i, j) != 0) pivots_.emplace_back(i, j);
        if (j + 1 < w_.cols() && w_(i + 1, j + 1) != 0)
            pivots_.emplace_back(i + 1, j + 1);
    }

    const SymplecticSpace& sp_;
    const Modulus& mod_;
    ZdMatrix w_, s_, r_;
    std::vector<RentRecord> rents_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

}  // namespace

SymplecticCertificate symplectic_reduce(const ZdMatrix& b, const SymplecticSpace& sp) {
    if (!sp.mod().is_prime_power())
        throw std::invalid_argument(
            "composite modulus: split into Chinese factors first");
    if (b.rows() != sp.dim() || b.mod().d() != sp.mod().d())
        throw std::invalid_argument("symplectic_reduce shape mismatch");
    auto cert = StaircaseReducer(b, sp).run();
    if (!(cert.S * b * cert.R == cert.form))
        throw std::logic_error("symplectic_reduce: certificate identity failed");
    if (!is_symplectic_matrix(cert.S, sp))
        throw std::logic_error("symplectic_reduce: left factor not symplectic");
    return cert;
}

std::vector<std::pair<std::int64_t, SymplecticCertificate>>
symplectic_reduce_factors(const ZdMatrix& b) {
    if (b.rows() % 2 != 0) throw std::invalid_argument("row count must be even");
    std::vector<std::pair<std::int64_t, SymplecticCertificate>> out;
    for (const auto& f : b.mod().factors()) {
        ZdMatrix bp = matrix_pi_p(b, f.prime);
        SymplecticSpace sp(b.rows() / 2, bp.mod());
        out.emplace_back(f.prime, symplectic_reduce(bp, sp));
    }
    return out;
}

}  // namespace zdred
