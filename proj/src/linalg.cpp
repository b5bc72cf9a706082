#include "zdred/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

#include "zdred/reduce.hpp"

namespace zdred {

ZdMatrix::ZdMatrix(std::size_t rows, std::size_t cols, Modulus m)
    : rows_(rows), cols_(cols), mod_(std::move(m)), e_(rows * cols, 0) {}

ZdMatrix ZdMatrix::identity(std::size_t n, const Modulus& m) {
    ZdMatrix out(n, n, m);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
    return out;
}

ZdMatrix ZdMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                             const Modulus& m) {
    std::size_t nr = rows.size();
    std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
    ZdMatrix out(nr, nc, m);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != nc) throw std::invalid_argument("ragged matrix literal");
        std::size_t j = 0;
        for (std::int64_t v : row) out.set(i, j++, v);
        ++i;
    }
    return out;
}

ZdMatrix ZdMatrix::column(std::initializer_list<std::int64_t> entries, const Modulus& m) {
    ZdMatrix out(entries.size(), 1, m);
    std::size_t i = 0;
    for (std::int64_t v : entries) out.set(i++, 0, v);
    return out;
}

ZdMatrix ZdMatrix::operator*(const ZdMatrix& rhs) const {
    if (cols_ != rhs.rows_ || mod_.d() != rhs.mod_.d())
        throw std::invalid_argument("matrix product shape mismatch");
    ZdMatrix out(rows_, rhs.cols_, mod_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::int64_t a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.e_[i * rhs.cols_ + j] = mod_.add(out.e_[i * rhs.cols_ + j],
                                                     mod_.mul(a, rhs(k, j)));
        }
    return out;
}

ZdMatrix ZdMatrix::operator+(const ZdMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || mod_.d() != rhs.mod_.d())
        throw std::invalid_argument("matrix sum shape mismatch");
    ZdMatrix out(rows_, cols_, mod_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = mod_.add(e_[i], rhs.e_[i]);
    return out;
}

ZdMatrix ZdMatrix::operator-(const ZdMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || mod_.d() != rhs.mod_.d())
        throw std::invalid_argument("matrix difference shape mismatch");
    ZdMatrix out(rows_, cols_, mod_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = mod_.sub(e_[i], rhs.e_[i]);
    return out;
}

ZdMatrix ZdMatrix::scaled(std::int64_t c) const {
    ZdMatrix out(rows_, cols_, mod_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = mod_.mul(e_[i], c);
    return out;
}

ZdMatrix ZdMatrix::transpose() const {
    ZdMatrix out(cols_, rows_, mod_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
    return out;
}

ZdMatrix ZdMatrix::col(std::size_t j) const { return submatrix(0, j, rows_, 1); }

void ZdMatrix::set_col(std::size_t j, const ZdMatrix& v) {
    if (v.rows() != rows_ || v.cols() != 1)
        throw std::invalid_argument("set_col shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i) set(i, j, v(i, 0));
}

ZdMatrix ZdMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                             std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::invalid_argument("submatrix out of range");
    ZdMatrix out(nr, nc, mod_);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out.set(i, j, (*this)(r0 + i, c0 + j));
    return out;
}

void ZdMatrix::set_block(std::size_t r0, std::size_t c0, const ZdMatrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
        throw std::invalid_argument("set_block out of range");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            set(r0 + i, c0 + j, block(i, j));
}

void ZdMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t coef) {
    for (std::size_t i = 0; i < rows_; ++i)
        set(i, dst, mod_.add((*this)(i, dst), mod_.mul(coef, (*this)(i, src))));
}

ZdMatrix ZdMatrix::without_row_col(std::size_t r, std::size_t c) const {
    ZdMatrix out(rows_ - 1, cols_ - 1, mod_);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == c) continue;
            out.set(oi, oj++, (*this)(i, j));
        }
        ++oi;
    }
    return out;
}

bool ZdMatrix::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](std::int64_t v) { return v == 0; });
}

bool ZdMatrix::is_diagonal() const noexcept {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

ZdMatrix hstack(const ZdMatrix& a, const ZdMatrix& b) {
    if (a.rows() != b.rows() || a.mod().d() != b.mod().d())
        throw std::invalid_argument("hstack shape mismatch");
    ZdMatrix out(a.rows(), a.cols() + b.cols(), a.mod());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

std::ostream& operator<<(std::ostream& os, const ZdMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
    return os;
}

std::int64_t vector_order(const ZdMatrix& a) {
    if (a.cols() != 1) throw std::invalid_argument("vector_order wants a column");
    std::int64_t g = a.mod().d();
    for (std::size_t i = 0; i < a.rows(); ++i) g = std::gcd(g, a(i, 0));
    return a.mod().d() / g;
}

std::int64_t det(const ZdMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det wants a square matrix");
    const std::size_t n = m.rows();
    const Modulus& mod = m.mod();
    if (n == 0) return mod.reduce(1);
    if (n > 20) throw std::invalid_argument("det size guard exceeded");
    // permutation DP over used-column subsets; sign tracked by inversion count
    std::vector<std::int64_t> dp(std::size_t{1} << n, 0);
    dp[0] = 1;
    for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
        if (dp[mask] == 0) continue;
        std::size_t r = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t c = 0; c < n; ++c) {
            if (mask & (std::size_t{1} << c)) continue;
            std::int64_t term = mod.mul(dp[mask], m(r, c));
            if (std::popcount(mask >> (c + 1)) & 1) term = mod.neg(term);
            std::size_t next = mask | (std::size_t{1} << c);
            dp[next] = mod.add(dp[next], term);
        }
    }
    return dp.back();
}

bool is_invertible(const ZdMatrix& m) { return m.mod().is_unit(det(m)); }

ZdMatrix inverse(const ZdMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse wants a square matrix");
    const Modulus& mod = m.mod();
    std::int64_t dval = det(m);
    std::int64_t dinv = unit_inverse(dval, mod);  // throws if not a unit
    const std::size_t n = m.rows();
    ZdMatrix out(n, n, mod);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t c = det(m.without_row_col(j, i));
            if ((i + j) & 1) c = mod.neg(c);
            out.set(i, j, mod.mul(dinv, c));
        }
    return out;
}

int matrix_vp(const ZdMatrix& m, std::int64_t p) {
    int s = m.mod().exponent_of(p);
    if (s == 0) throw std::invalid_argument("prime does not divide the modulus");
    int best = s;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            best = std::min(best, vp(m(i, j), p, m.mod()));
    return best;
}

ZdMatrix matrix_pi_p(const ZdMatrix& m, std::int64_t p) {
    std::int64_t q = m.mod().prime_power(p);  // throws if p does not divide d
    ZdMatrix out(m.rows(), m.cols(), Modulus(q));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m(i, j) % q);
    return out;
}

ZdMatrix kernel(const ZdMatrix& m) {
    const Modulus& mod = m.mod();
    auto cert = d0(m);
    const std::size_t k = m.rows(), l = m.cols();
    const std::size_t mu = std::min(k, l);
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> weight;
    for (std::size_t i = 0; i < mu; ++i) {
        std::int64_t nu = order(cert.D(i, i), mod);
        if (nu == mod.d()) continue;  // unit pivot annihilates nothing
        idx.push_back(i);
        weight.push_back(nu);
    }
    for (std::size_t i = mu; i < l; ++i) {
        idx.push_back(i);
        weight.push_back(1);
    }
    ZdMatrix out(l, idx.size(), mod);
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t i = 0; i < l; ++i)
            out.set(i, c, mod.mul(weight[c], cert.R(i, idx[c])));
    return out;
}

ZdMatrix complete_free_family(const ZdMatrix& b, std::size_t n) {
    const Modulus& mod = b.mod();
    if (b.rows() != n) throw std::invalid_argument("ambient dimension mismatch");
    const std::size_t r = b.cols();
    auto cert = d0(b);
    if (r > n) throw std::invalid_argument("family not free");
    for (std::size_t i = 0; i < r; ++i)
        if (!mod.is_unit(cert.D(i, i))) throw std::invalid_argument("family not free");
    ZdMatrix mid(n, n, mod);
    if (r > 0) mid.set_block(0, 0, cert.D.submatrix(0, 0, r, r) * inverse(cert.R));
    for (std::size_t i = r; i < n; ++i) mid.set(i, i, 1);
    return inverse(cert.L) * mid;
}

namespace {

// Solves B c = x through L B R = D; returns nullopt when x is outside the span.
std::optional<ZdMatrix> solve_via_certificate(const ReductionCertificate& cert,
                                              const ZdMatrix& x) {
    const Modulus& mod = x.mod();
    const std::size_t k = cert.D.rows(), l = cert.D.cols();
    ZdMatrix y = cert.L * x;
    ZdMatrix z(l, 1, mod);
    const std::size_t mu = std::min(k, l);
    for (std::size_t i = 0; i < mu; ++i) {
        std::int64_t g = std::gcd(cert.D(i, i), mod.d());
        if (y(i, 0) % g != 0) return std::nullopt;
        z.set(i, 0, cert.D(i, i) == 0 ? 0 : divide_exact(y(i, 0), cert.D(i, i), mod));
    }
    for (std::size_t i = mu; i < k; ++i)
        if (y(i, 0) != 0) return std::nullopt;
    return cert.R * z;
}

}  // namespace

std::optional<ZdMatrix> solve_in_span(const ZdMatrix& b, const ZdMatrix& x) {
    if (x.rows() != b.rows() || x.cols() != 1)
        throw std::invalid_argument("solve_in_span shape mismatch");
    return solve_via_certificate(d0(b), x);
}

bool membership(const ZdMatrix& x, const Submodule& s) {
    if (x.rows() != s.ambient || x.cols() != 1 || x.mod().d() != s.mod.d())
        throw std::invalid_argument("membership shape mismatch");
    return solve_in_span(s.basis, x).has_value();
}

bool submodule_equal(const Submodule& s, const Submodule& t) {
    if (s.ambient != t.ambient || s.mod.d() != t.mod.d())
        throw std::invalid_argument("submodule_equal shape mismatch");
    auto cs = d0(s.basis);
    auto ct = d0(t.basis);
    for (std::size_t j = 0; j < t.basis.cols(); ++j)
        if (!solve_via_certificate(cs, t.basis.col(j))) return false;
    for (std::size_t j = 0; j < s.basis.cols(); ++j)
        if (!solve_via_certificate(ct, s.basis.col(j))) return false;
    return true;
}

}  // namespace zdred
