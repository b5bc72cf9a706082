#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

using namespace zdred;
using namespace zdred::testing;

namespace {

void require_certificate(const ReductionCertificate& cert, const ZdMatrix& b) {
    REQUIRE(cert.L * b * cert.R == cert.D);
    REQUIRE(is_invertible(cert.L));
    REQUIRE(is_invertible(cert.R));
    REQUIRE(cert.D.is_diagonal());
    const Modulus& m = b.mod();
    std::size_t mu = std::min(cert.D.rows(), cert.D.cols());
    for (std::size_t i = 0; i + 1 < mu; ++i) {
        std::int64_t g = std::gcd(cert.D(i, i), m.d());
        REQUIRE(cert.D(i + 1, i + 1) % g == 0);
    }
}

}  // namespace

TEST_CASE("reduce_vector") {
    Modulus m6(6);
    {
        ZdMatrix a(3, 1, m6);
        auto rv = reduce_vector(a);
        CHECK(rv.L == ZdMatrix::identity(3, m6));
        CHECK(rv.k == 0);
    }
    {
        ZdMatrix a = ZdMatrix::column({4, 0, 0}, m6);
        auto rv = reduce_vector(a);
        CHECK(rv.L == ZdMatrix::identity(3, m6));
        CHECK(rv.k == 4);
    }
    {
        ZdMatrix a = ZdMatrix::column({2, 3}, m6);
        auto rv = reduce_vector(a);
        CHECK(det(rv.L) == 1);
        ZdMatrix e1 = ZdMatrix::column({1, 0}, m6);
        CHECK(rv.L * a == e1.scaled(rv.k));
        CHECK(m6.is_unit(rv.k));  // gcd(2,3) is associated to 1
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 14);
        Modulus m(d);
        std::size_t n = 1 + rng() % 5;
        ZdMatrix a = random_matrix(n, 1, m, rng);
        auto rv = reduce_vector(a);
        REQUIRE(det(rv.L) == 1);
        ZdMatrix expect(n, 1, m);
        expect.set(0, 0, rv.k);
        REQUIRE(rv.L * a == expect);
        std::vector<std::int64_t> comps;
        for (std::size_t i = 0; i < n; ++i) comps.push_back(a(i, 0));
        REQUIRE(std::gcd(rv.k, d) % d == canonical_gcd(comps, m));
        REQUIRE(order(rv.k, m) == vector_order(a));
    }
}

TEST_CASE("max_order_combination") {
    Modulus m6(6);
    {
        ZdMatrix a1 = ZdMatrix::column({2, 1}, m6);
        ZdMatrix a2(2, 1, m6);
        auto mc = max_order_combination(a1, a2);
        CHECK(mc.combined == a1);
        CHECK(mc.replaced == 2);
    }
    std::mt19937_64 rng(5);
    auto check_pair = [&](const ZdMatrix& a1, const ZdMatrix& a2) {
        auto mc = max_order_combination(a1, a2);
        REQUIRE(vector_order(mc.combined) ==
                std::lcm(vector_order(a1), vector_order(a2)));
        REQUIRE(is_invertible(mc.transform));
        ZdMatrix both = hstack(a1, a2);
        ZdMatrix image = both * mc.transform;
        REQUIRE(image.col(0) == mc.combined);
        // the pair after replacement still generates the same module
        REQUIRE(submodule_equal(Submodule(both), Submodule(image)));
        REQUIRE(sets_equal(oracle::enumerate(Submodule(both)),
                           oracle::enumerate(Submodule(image))));
    };
    check_pair(ZdMatrix::column({2, 0}, m6), ZdMatrix::column({0, 3}, m6));
    {
        Modulus m8(8);
        ZdMatrix a1 = ZdMatrix::column({2, 0}, m8), a2 = ZdMatrix::column({4, 0}, m8);
        auto mc = max_order_combination(a1, a2);
        CHECK(vector_order(mc.combined) == 4);
        check_pair(a1, a2);
    }
    for (int trial = 0; trial < 150; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 11);
        Modulus m(d);
        std::size_t n = 1 + rng() % 3;
        check_pair(random_matrix(n, 1, m, rng), random_matrix(n, 1, m, rng));
    }
}

TEST_CASE("algorithm A") {
    Modulus m6(6);
    {
        ZdMatrix single = ZdMatrix::column({4, 2}, m6);
        auto ar = algorithm_a(single);
        CHECK(ar.R == ZdMatrix::identity(1, m6));
    }
    {
        ZdMatrix zero(3, 2, m6);
        auto ar = algorithm_a(zero);
        CHECK(ar.R == ZdMatrix::identity(2, m6));
    }
    {
        ZdMatrix b(2, 2, m6);
        b.set_col(0, ZdMatrix::column({0, 3}, m6));
        b.set_col(1, ZdMatrix::column({2, 0}, m6));
        auto ar = algorithm_a(b);
        CHECK(vector_order(ar.result.col(0)) == 6);
        CHECK(sets_equal(oracle::enumerate(Submodule(b)),
                         oracle::enumerate(Submodule(ar.result))));
    }
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 11);
        Modulus m(d);
        ZdMatrix b = random_matrix(1 + rng() % 4, 1 + rng() % 4, m, rng);
        auto ar = algorithm_a(b);
        REQUIRE(is_invertible(ar.R));
        REQUIRE(b * ar.R == ar.result);
        std::int64_t want = 1;
        for (std::size_t j = 0; j < b.cols(); ++j)
            want = std::lcm(want, vector_order(b.col(j)));
        REQUIRE(vector_order(ar.result.col(0)) == want);
    }
}

TEST_CASE("algorithm A_ij") {
    Modulus m9(9);
    std::mt19937_64 rng(37);
    {
        ZdMatrix b = random_matrix(4, 3, m9, rng);
        auto full = algorithm_a(b);
        auto windowed = algorithm_a_ij(b, 0, 0);
        CHECK(full.result == windowed.result);
    }
    {
        ZdMatrix b = random_matrix(4, 3, m9, rng);
        auto ar = algorithm_a_ij(b, 1, 2);  // single column in scope
        CHECK(ar.R == ZdMatrix::identity(3, m9));
    }
    for (int trial = 0; trial < 60; ++trial) {
        ZdMatrix b = random_matrix(2 + rng() % 4, 2 + rng() % 4, m9, rng);
        std::size_t i = rng() % b.rows();
        std::size_t j = rng() % b.cols();
        auto ar = algorithm_a_ij(b, i, j);
        REQUIRE(is_invertible(ar.R));
        for (std::size_t c = 0; c < j; ++c)
            REQUIRE(ar.result.col(c) == b.col(c));
        // the window's first column dominates the window's orders
        std::int64_t want = 1;
        auto sub = b.submatrix(i, j, b.rows() - i, b.cols() - j);
        for (std::size_t c = 0; c < sub.cols(); ++c)
            want = std::lcm(want, vector_order(sub.col(c)));
        auto out = ar.result.submatrix(i, j, b.rows() - i, b.cols() - j);
        REQUIRE(vector_order(out.col(0)) == want);
    }
}

TEST_CASE("d0 on the worked fixture") {
    Modulus m6(6);
    ZdMatrix b = ZdMatrix::from_rows({{1, 1}, {0, 3}}, m6);
    auto cert = d0(b);
    require_certificate(cert, b);
    CHECK(cert.D == ZdMatrix::from_rows({{1, 0}, {0, 3}}, m6));
}

TEST_CASE("d0 leaves admissible diagonals alone") {
    Modulus m12(12);
    ZdMatrix b = ZdMatrix::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}, m12);
    auto cert = d0(b);
    CHECK(cert.L == ZdMatrix::identity(3, m12));
    CHECK(cert.R == ZdMatrix::identity(3, m12));
    CHECK(cert.D == b);
}

TEST_CASE("d0 on the empty matrix") {
    Modulus m6(6);
    auto cert = d0(ZdMatrix(0, 0, m6));
    CHECK(cert.L.rows() == 0);
    CHECK(cert.R.rows() == 0);
    CHECK(cert.D.rows() == 0);
}

TEST_CASE("d0 random certificates") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 15);
        Modulus m(d);
        ZdMatrix b = random_matrix(1 + rng() % 4, 1 + rng() % 4, m, rng);
        require_certificate(d0(b), b);
    }
}

TEST_CASE("d0 4x3 over Z_12") {
    std::mt19937_64 rng(43);
    Modulus m12(12);
    for (int trial = 0; trial < 60; ++trial) {
        ZdMatrix b = random_matrix(4, 3, m12, rng);
        require_certificate(d0(b), b);
    }
}

TEST_CASE("simple_reduce") {
    Modulus m6(6);
    {
        Submodule s(ZdMatrix::column({1, 0}, m6));
        auto sr = simple_reduce(s);
        CHECK(sr.minimal_basis.cols() == 1);
        CHECK(sr.minimal_basis(0, 0) == 1);
    }
    {
        Modulus m4(4);
        ZdMatrix b(2, 3, m4);
        for (int j = 0; j < 3; ++j) b.set_col(j, ZdMatrix::column({2, 0}, m4));
        auto sr = simple_reduce(Submodule(b));
        REQUIRE(sr.minimal_basis.cols() == 1);
        CHECK(order(sr.minimal_basis(0, 0), m4) == 2);
        CHECK(oracle::enumerate(Submodule(b)).size() == 2);
    }
    {
        Submodule s(ZdMatrix::identity(2, m6));
        auto sr = simple_reduce(s);
        CHECK(sr.minimal_basis == ZdMatrix::identity(2, m6));
    }
}

TEST_CASE("characteristic sequence") {
    Modulus m6(6);
    CHECK(characteristic_sequence(Submodule(ZdMatrix(2, 1, m6))).empty());
    {
        // (2,0) and (0,3) combine to the full-order (2,3); the module is cyclic
        ZdMatrix b(2, 2, m6);
        b.set_col(0, ZdMatrix::column({2, 0}, m6));
        b.set_col(1, ZdMatrix::column({0, 3}, m6));
        auto seq = characteristic_sequence(Submodule(b));
        CHECK(seq == std::vector<std::int64_t>{1});
    }
    {
        std::mt19937_64 rng(47);
        ZdMatrix free_basis = random_invertible(3, m6, rng).first_cols(2);
        auto seq = characteristic_sequence(Submodule(free_basis));
        CHECK(seq == std::vector<std::int64_t>{1, 1});
    }
}

TEST_CASE("characteristic sequence is basis independent") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 7);
        Modulus m(d);
        std::size_t n = 1 + rng() % 3;
        Submodule s = random_submodule(n, m, rng, n + 1);
        auto seq = characteristic_sequence(s);
        auto codes = oracle::enumerate(s);
        for (int variant = 0; variant < 6; ++variant) {
            Submodule t(regenerate(s, rng));
            REQUIRE(sets_equal(codes, oracle::enumerate(t)));
            REQUIRE(characteristic_sequence(t) == seq);
        }
    }
}

TEST_CASE("build_isomorphism") {
    Modulus m4(4);
    {
        Submodule s(ZdMatrix::column({2, 0}, m4));
        auto a = build_isomorphism(s, s);
        REQUIRE(a.has_value());
        CHECK(*a == ZdMatrix::identity(2, m4));
    }
    {
        Submodule s(ZdMatrix::column({2, 0}, m4));
        Submodule t(ZdMatrix::column({0, 2}, m4));
        auto a = build_isomorphism(s, t);
        REQUIRE(a.has_value());
        REQUIRE(is_invertible(*a));
        REQUIRE(sets_equal(oracle::enumerate(Submodule(*a * s.basis)),
                           oracle::enumerate(t)));
    }
    {
        Submodule s(ZdMatrix::column({2, 0}, m4));
        Submodule t(ZdMatrix::column({1, 0}, m4));
        CHECK_FALSE(build_isomorphism(s, t).has_value());
    }
}

TEST_CASE("sigma_d membership") {
    Modulus m4(4);
    Submodule s(ZdMatrix::column({1, 0}, m4));  // K0 = {1}, K2 = {2}
    CHECK(sigma_d_contains(ZdMatrix::identity(2, m4), s, 2));
    CHECK(sigma_d_contains(ZdMatrix::from_rows({{1, 0}, {0, 3}}, m4), s, 2));
    CHECK_FALSE(sigma_d_contains(ZdMatrix::from_rows({{1, 0}, {1, 1}}, m4), s, 2));
    ZdMatrix ok = ZdMatrix::from_rows({{1, 2}, {0, 3}}, m4);
    CHECK(sigma_d_contains(ok, s, 2));
    CHECK_THROWS_AS(sigma_d_contains(ZdMatrix::identity(2, Modulus(6)),
                                     Submodule(ZdMatrix::column({1, 0}, Modulus(6))), 2),
                    std::invalid_argument);
}

TEST_CASE("sigma_d is closed under products and inverses") {
    std::mt19937_64 rng(59);
    for (std::int64_t d : {4, 8, 9}) {
        Modulus m(d);
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t n = 2 + rng() % 2;
            Submodule s = random_submodule(n, m, rng, n);
            std::int64_t p = m.factors()[0].prime;
            ZdMatrix a = random_sigma_d(s, rng);
            ZdMatrix b = random_sigma_d(s, rng);
            REQUIRE(sigma_d_contains(a, s, p));
            REQUIRE(sigma_d_contains(b, s, p));
            REQUIRE(sigma_d_contains(a * b, s, p));
            REQUIRE(sigma_d_contains(inverse(a), s, p));
        }
    }
}

TEST_CASE("sigma_d members map convenient pairs to convenient pairs") {
    std::mt19937_64 rng(61);
    for (std::int64_t d : {4, 8, 9}) {
        Modulus m(d);
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t n = 2 + rng() % 2;
            Submodule s = random_submodule(n, m, rng, n);
            auto sr = simple_reduce(s);
            ZdMatrix f = inverse(sr.cert.L);
            ZdMatrix p = random_sigma_d(s, rng);
            // f P D(b) generates the same module again
            ZdMatrix regenerated = f * p * sr.minimal_basis;
            REQUIRE(submodule_equal(Submodule(regenerated), s));
        }
    }
}
