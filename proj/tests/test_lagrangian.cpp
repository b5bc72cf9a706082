#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"

using namespace zdred;
using namespace zdred::testing;

TEST_CASE("orthogonal of trivial and full modules") {
    Modulus m3(3);
    SymplecticSpace sp(1, m3);
    {
        Submodule zero(ZdMatrix(2, 1, m3));
        auto orth = orthogonal(zero, sp);
        CHECK(oracle::enumerate(orth).size() == 9);
    }
    {
        Submodule full(ZdMatrix::identity(2, m3));
        auto orth = orthogonal(full, sp);
        CHECK(oracle::enumerate(orth).size() == 1);
    }
}

TEST_CASE("self-orthogonal line in Z_2^2") {
    Modulus m2(2);
    SymplecticSpace sp(1, m2);
    Submodule s(ZdMatrix::column({1, 0}, m2));
    auto orth = orthogonal(s, sp);
    CHECK(sets_equal(oracle::enumerate(orth), oracle::enumerate(s)));
}

TEST_CASE("orthogonal agrees with the brute-force oracle") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 200) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 3);
        Modulus m(d);
        std::size_t n = 1 + rng() % 2;
        SymplecticSpace sp(n, m);
        Submodule s = random_submodule(2 * n, m, rng, 2 * n);
        REQUIRE(sets_equal(oracle::enumerate(orthogonal(s, sp)),
                           oracle::brute_orthogonal(s, sp)));
        ++done;
    }
}

TEST_CASE("classification flags") {
    Modulus m2(2);
    SymplecticSpace sp(1, m2);
    {
        auto flags = classify(Submodule(ZdMatrix(2, 1, m2)), sp);
        CHECK(flags.isotropic);
        CHECK_FALSE(flags.coisotropic);
        CHECK(flags.symplectic);
        CHECK_FALSE(flags.lagrangian);
    }
    {
        auto flags = classify(Submodule(ZdMatrix::column({1, 0}, m2)), sp);
        CHECK(flags.lagrangian);
        CHECK(flags.isotropic);
        CHECK(flags.coisotropic);
    }
    {
        auto flags = classify(Submodule(ZdMatrix::identity(2, m2)), sp);
        CHECK(flags.coisotropic);
        CHECK(flags.symplectic);
        CHECK_FALSE(flags.lagrangian);
    }
}

TEST_CASE("classification agrees with the brute-force oracle") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 80; ++trial) {
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 3);
        Modulus m(d);
        std::size_t n = 1 + rng() % 2;
        SymplecticSpace sp(n, m);
        Submodule s = random_submodule(2 * n, m, rng, 2 * n);
        auto mine = classify(s, sp);
        auto brute = oracle::brute_classify(s, sp);
        REQUIRE(mine.isotropic == brute.isotropic);
        REQUIRE(mine.coisotropic == brute.coisotropic);
        REQUIRE(mine.symplectic == brute.symplectic);
        REQUIRE(mine.lagrangian == brute.lagrangian);
    }
}

TEST_CASE("double orthogonal contains the module") {
    for (std::int64_t d : {2, 3, 4}) {
        Modulus m(d);
        SymplecticSpace sp(1, m);
        for (const auto& s : oracle::all_submodules(m, 2)) {
            auto dbl = orthogonal(orthogonal(s, sp), sp);
            for (std::size_t j = 0; j < s.basis.cols(); ++j)
                REQUIRE(membership(s.basis.col(j), dbl));
            if (classify(s, sp).lagrangian)
                REQUIRE(submodule_equal(dbl, s));
        }
    }
}

TEST_CASE("lagrangian canonical form on lines of Z_2^2") {
    Modulus m2(2);
    SymplecticSpace sp(1, m2);
    Submodule s(ZdMatrix::column({1, 0}, m2));
    auto form = lagrangian_canonical(s, sp);
    REQUIRE(form.has_value());
    CHECK(form->signature == std::vector<std::int64_t>{1});
    CHECK(is_symplectic_matrix(form->S, sp));
    CHECK(submodule_equal(
        Submodule(form->S * lagrangian_diagonal(form->signature, sp)), s));
}

TEST_CASE("lagrangian canonical form of 2Z_4 x 2Z_4") {
    Modulus m4(4);
    SymplecticSpace sp(1, m4);
    ZdMatrix b(2, 2, m4);
    b.set(0, 0, 2);
    b.set(1, 1, 2);
    Submodule s(b);
    // M equals its orthogonal, cross-checked by enumeration
    REQUIRE(sets_equal(oracle::enumerate(s), oracle::brute_orthogonal(s, sp)));
    auto form = lagrangian_canonical(s, sp);
    REQUIRE(form.has_value());
    CHECK(form->signature == std::vector<std::int64_t>{2});
    CHECK(submodule_equal(
        Submodule(form->S * lagrangian_diagonal(form->signature, sp)), s));
}

TEST_CASE("all three Lagrangians of Z_2^2 share the signature") {
    Modulus m2(2);
    SymplecticSpace sp(1, m2);
    int lagrangians = 0;
    for (const auto& s : oracle::all_submodules(m2, 2)) {
        auto form = lagrangian_canonical(s, sp);
        bool brute = sets_equal(oracle::enumerate(s), oracle::brute_orthogonal(s, sp));
        REQUIRE(form.has_value() == brute);
        if (form) {
            ++lagrangians;
            CHECK(form->signature == std::vector<std::int64_t>{1});
        }
    }
    CHECK(lagrangians == 3);
}

TEST_CASE("non-Lagrangian input yields none") {
    Modulus m4(4);
    SymplecticSpace sp(2, m4);
    ZdMatrix b = ZdMatrix::from_rows({{1, 0}, {0, 2}, {0, 1}, {0, 0}}, m4);
    CHECK_FALSE(lagrangian_canonical(Submodule(b), sp).has_value());
}

TEST_CASE("composite modulus Lagrangian via CRT recombination") {
    Modulus m6(6);
    SymplecticSpace sp(1, m6);
    Submodule s(ZdMatrix::column({1, 0}, m6));
    auto form = lagrangian_canonical(s, sp);
    REQUIRE(form.has_value());
    CHECK(form->signature == std::vector<std::int64_t>{1});
    CHECK(is_symplectic_matrix(form->S, sp));
    CHECK(submodule_equal(
        Submodule(form->S * lagrangian_diagonal(form->signature, sp)), s));
}

TEST_CASE("random Lagrangians round trip") {
    std::mt19937_64 rng(31);
    for (std::int64_t d : {2, 4, 8, 9, 12}) {
        Modulus m(d);
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t n = 1 + rng() % 2;
            SymplecticSpace sp(n, m);
            auto sigs = enumerate_signatures(sp);
            const auto& sig = sigs[rng() % sigs.size()];
            ZdMatrix witness = random_symplectic(sp, rng);
            Submodule s(witness * lagrangian_diagonal(sig, sp));
            REQUIRE(classify(s, sp).lagrangian);
            auto form = lagrangian_canonical(s, sp);
            REQUIRE(form.has_value());
            REQUIRE(form->signature == sig);
            REQUIRE(submodule_equal(
                Submodule(form->S * lagrangian_diagonal(form->signature, sp)), s));
        }
    }
}

TEST_CASE("odd s forces rents on every even row but the last") {
    std::mt19937_64 rng(37);
    for (std::int64_t d : {2, 8}) {
        Modulus m(d);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t n = 2 + rng() % 2;
            SymplecticSpace sp(n, m);
            auto sigs = enumerate_signatures(sp);
            const auto& sig = sigs[rng() % sigs.size()];
            Submodule s(random_symplectic(sp, rng) * lagrangian_diagonal(sig, sp));
            auto cert = symplectic_reduce(s.basis, sp);
            std::set<std::size_t> rent_rows;
            for (const auto& r : cert.rents) rent_rows.insert(r.row);
            for (std::size_t i = 0; i + 1 < n; ++i)
                REQUIRE(rent_rows.count(2 * i + 1) == 1);
        }
    }
}

TEST_CASE("Lagrangians are maximal isotropic in Z_2^2") {
    Modulus m2(2);
    SymplecticSpace sp(1, m2);
    auto all = oracle::all_submodules(m2, 2);
    for (const auto& s : all) {
        if (!classify(s, sp).lagrangian) continue;
        auto s_set = oracle::enumerate(s);
        for (const auto& t : all) {
            if (!classify(t, sp).isotropic) continue;
            auto t_set = oracle::enumerate(t);
            bool proper_superset =
                t_set.size() > s_set.size() &&
                std::includes(t_set.codes.begin(), t_set.codes.end(),
                              s_set.codes.begin(), s_set.codes.end());
            REQUIRE_FALSE(proper_superset);
        }
    }
}

TEST_CASE("signature enumeration") {
    Modulus m2(2), m4(4);
    CHECK(enumerate_signatures(SymplecticSpace(1, m2)) ==
          std::vector<std::vector<std::int64_t>>{{1}});
    CHECK(enumerate_signatures(SymplecticSpace(1, m4)) ==
          std::vector<std::vector<std::int64_t>>{{1}, {2}});
    CHECK(enumerate_signatures(SymplecticSpace(2, m4)) ==
          std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 2}, {2, 2}});
}
