#pragma once

// Dense matrices and vectors over Z_d, and submodules of Z_d^n given by a
// generating matrix.  Entries are kept canonical in [0, d) at all times.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zdred/zmod.hpp"

namespace zdred {

class ZdMatrix {
  public:
    ZdMatrix(std::size_t rows, std::size_t cols, Modulus m);

    static ZdMatrix identity(std::size_t n, const Modulus& m);
    static ZdMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                              const Modulus& m);
    static ZdMatrix column(std::initializer_list<std::int64_t> entries, const Modulus& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Modulus& mod() const noexcept { return mod_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, std::int64_t v) {
        e_[i * cols_ + j] = mod_.reduce(v);
    }

    ZdMatrix operator*(const ZdMatrix& rhs) const;
    ZdMatrix operator+(const ZdMatrix& rhs) const;
    ZdMatrix operator-(const ZdMatrix& rhs) const;
    ZdMatrix scaled(std::int64_t c) const;
    ZdMatrix transpose() const;

    ZdMatrix col(std::size_t j) const;
    void set_col(std::size_t j, const ZdMatrix& v);
    ZdMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    /// Writes `block` into this matrix with top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const ZdMatrix& block);
    /// col_dst += coef * col_src
    void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t coef);
    ZdMatrix without_row_col(std::size_t r, std::size_t c) const;
    ZdMatrix first_cols(std::size_t n) const { return submatrix(0, 0, rows_, n); }

    bool is_zero() const noexcept;
    bool is_diagonal() const noexcept;

    friend bool operator==(const ZdMatrix& a, const ZdMatrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.mod_.d() == b.mod_.d() && a.e_ == b.e_;
    }

  private:
    std::size_t rows_, cols_;
    Modulus mod_;
    std::vector<std::int64_t> e_;
};

ZdMatrix hstack(const ZdMatrix& a, const ZdMatrix& b);
std::ostream& operator<<(std::ostream& os, const ZdMatrix& m);

/// A submodule of Z_d^ambient generated by the columns of `basis`.
struct Submodule {
    std::size_t ambient;
    Modulus mod;
    ZdMatrix basis;

    explicit Submodule(ZdMatrix generators)
        : ambient(generators.rows()), mod(generators.mod()), basis(std::move(generators)) {}
};

/// lcm of the component orders: d / (gcd of all components ^ d).
std::int64_t vector_order(const ZdMatrix& a);

/// Division-free determinant (permutation DP over column subsets); exact over
/// Z_d, which has zero divisors and admits no fraction-based elimination.
std::int64_t det(const ZdMatrix& m);
bool is_invertible(const ZdMatrix& m);
/// Inverse via adjugate * det^{-1}; throws on a non-unit determinant.
ZdMatrix inverse(const ZdMatrix& m);

int matrix_vp(const ZdMatrix& m, std::int64_t p);
ZdMatrix matrix_pi_p(const ZdMatrix& m, std::int64_t p);

/// Columns generating {x : M x = 0}, read off the diagonal reduction of M.
ZdMatrix kernel(const ZdMatrix& m);

/// Completes a free family (columns of B) to a free basis of Z_d^n whose
/// first r columns equal B.  Throws "family not free" otherwise.
ZdMatrix complete_free_family(const ZdMatrix& b, std::size_t n);

bool membership(const ZdMatrix& x, const Submodule& s);
/// Coefficients c with B c = x, when x lies in the span of B's columns.
std::optional<ZdMatrix> solve_in_span(const ZdMatrix& b, const ZdMatrix& x);
bool submodule_equal(const Submodule& s, const Submodule& t);

}  // namespace zdred
