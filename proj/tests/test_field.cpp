#include <catch2/catch_amalgamated.hpp>

#include "quiversat/field.hpp"

using namespace quiversat;

namespace {
FieldPtr gf(std::uint32_t p, std::uint32_t d = 1) { return Field::make(p, d); }
}

TEST_CASE("construction and enumeration") {
    CHECK(gf(2)->order() == 2);
    CHECK(gf(3)->order() == 3);
    CHECK(gf(2, 2)->order() == 4);
    CHECK(gf(5)->order() == 5);

    // canonical coefficient vectors are pairwise distinct
    for (auto F : {gf(2), gf(3), gf(2, 2), gf(5), gf(3, 2)}) {
        std::vector<std::vector<std::uint32_t>> seen;
        for (std::uint32_t a = 0; a < F->order(); ++a) {
            const auto c = F->coeffs(static_cast<Elt>(a));
            for (const auto& prev : seen) CHECK(prev != c);
            seen.push_back(c);
            CHECK(F->from_coeffs(c) == static_cast<Elt>(a));
        }
    }
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Field::make(4), FieldError);         // not prime
    CHECK_THROWS_AS(Field::make(1), FieldError);
    CHECK_THROWS_AS(Field::make(2, 0), FieldError);      // degree < 1
    CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), FieldError); // x^2+1 reducible over GF(2)
    CHECK_THROWS_AS(Field::make(2, 2, {1, 1, 0}), FieldError); // not monic
    CHECK_THROWS_AS(Field::make(2, 2, {1, 1}), FieldError);    // wrong length
    CHECK_THROWS_AS(Field::make(17, 2), FieldError);     // order 289 > 256
}

TEST_CASE("default modulus is the first irreducible in counting order") {
    CHECK(gf(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1}); // x^2+x+1
    CHECK(gf(2, 3)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1}); // x^3+x+1
    CHECK(gf(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});    // x^2+1
}

TEST_CASE("basic arithmetic values") {
    auto F2 = gf(2);
    CHECK(F2->add(1, 1) == 0);

    auto F3 = gf(3);
    CHECK(F3->inv(2) == 2); // 2*2 = 4 = 1 mod 3

    // GF(4) with modulus x^2+x+1: x*x = x+1, i.e. index 2 * index 2 = index 3
    auto F4 = Field::make(2, 2, {1, 1, 1});
    CHECK(F4->mul(2, 2) == 3);

    CHECK(gf(5)->embed_bool(true) == 1);
    CHECK(F2->embed_bool(false) == 0);
    CHECK(F4->embed_bool(true) == 1);
}

TEST_CASE("field axioms, exhaustive for small orders") {
    for (auto F : {gf(2), gf(3), gf(2, 2), gf(5)}) {
        const auto q = F->order();
        for (std::uint32_t a = 0; a < q; ++a) {
            const Elt ea = static_cast<Elt>(a);
            CHECK(F->add(ea, 0) == ea);
            CHECK(F->mul(ea, 1) == ea);
            CHECK(F->add(ea, F->neg(ea)) == 0);
            if (a != 0) CHECK(F->mul(ea, F->inv(ea)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                const Elt eb = static_cast<Elt>(b);
                CHECK(F->add(ea, eb) == F->add(eb, ea));
                CHECK(F->mul(ea, eb) == F->mul(eb, ea));
                for (std::uint32_t c = 0; c < q; ++c) {
                    const Elt ec = static_cast<Elt>(c);
                    CHECK(F->add(F->add(ea, eb), ec) == F->add(ea, F->add(eb, ec)));
                    CHECK(F->mul(F->mul(ea, eb), ec) == F->mul(ea, F->mul(eb, ec)));
                    CHECK(F->mul(ea, F->add(eb, ec)) == F->add(F->mul(ea, eb), F->mul(ea, ec)));
                }
            }
        }
    }
}

TEST_CASE("add and mul tables are closed") {
    for (auto F : {gf(2), gf(3), gf(2, 2), gf(5)}) {
        for (std::uint32_t a = 0; a < F->order(); ++a)
            for (std::uint32_t b = 0; b < F->order(); ++b) {
                CHECK(F->add(static_cast<Elt>(a), static_cast<Elt>(b)) < F->order());
                CHECK(F->mul(static_cast<Elt>(a), static_cast<Elt>(b)) < F->order());
            }
    }
}

TEST_CASE("inversion of zero fails") {
    CHECK_THROWS_AS(gf(3)->inv(0), FieldError);
}

TEST_CASE("pow") {
    auto F5 = gf(5);
    CHECK(F5->pow(2, 0) == 1);
    CHECK(F5->pow(2, 4) == 1); // Fermat
    CHECK(F5->pow(3, 2) == 4);
}

TEST_CASE("field spec strings") {
    CHECK(Field::parse("2")->order() == 2);
    CHECK(Field::parse("3")->order() == 3);
    CHECK(Field::parse("2^2")->order() == 4);
    CHECK(Field::parse("2^2")->name() == "2^2");
    CHECK(Field::parse("7")->name() == "7");
    CHECK_THROWS_AS(Field::parse(""), FieldError);
    CHECK_THROWS_AS(Field::parse("2 "), FieldError);
    CHECK_THROWS_AS(Field::parse("two"), FieldError);
    CHECK_THROWS_AS(Field::parse("2^"), FieldError);
    CHECK_THROWS_AS(Field::parse("^2"), FieldError);
}
