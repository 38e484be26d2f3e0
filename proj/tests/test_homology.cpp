#include <doctest.h>

#include "crosscap/homology.hpp"
#include "crosscap/surface.hpp"
#include "crosscap/words.hpp"

#include <random>

using namespace crosscap;

namespace {

F2Vector cls(const CurveTable& t, CurveId id) {
    return F2Vector::from_support(t.genus().value, t.resolve_curve(id).h_class);
}

Word W(const std::string& s, int g) { return parse_word(s, Genus(g)); }

Letter random_generator(std::mt19937& rng, const CurveTable& t) {
    int g = t.genus().value;
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    int e = sign(rng) ? 1 : -1;
    switch (kind(rng)) {
    case 0: {
        std::uniform_int_distribution<size_t> pick(0, t.curves().size() - 1);
        return Letter::twist(t.curves()[pick(rng)].id, e);
    }
    case 1: {
        std::uniform_int_distribution<int> pos(1, g - 1);
        return Letter::transposition(pos(rng), e);
    }
    default: {
        std::uniform_int_distribution<int> re(1, g);
        return Letter::rotation(re(rng) * e);
    }
    }
}

Word random_word(std::mt19937& rng, const CurveTable& t, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::vector<Letter> ls;
    int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back(random_generator(rng, t));
    return reduce(std::move(ls));
}

} // namespace

TEST_CASE("F2 vectors: construction, xor, string form") {
    F2Vector v = F2Vector::basis(4, 1);
    CHECK(v.str() == "1000");
    CHECK(F2Vector::basis(4, 4).str() == "0001");
    F2Vector s = F2Vector::from_support(14, {1, 5});
    CHECK(s.get(1));
    CHECK(s.get(5));
    CHECK(!s.get(2));
    s ^= F2Vector::basis(14, 5);
    CHECK(s == F2Vector::basis(14, 1));
    CHECK(F2Vector(7).is_zero());
    // blocks beyond 64 bits work
    F2Vector big = F2Vector::basis(70, 70);
    CHECK(big.get(70));
    CHECK(!big.is_zero());
}

TEST_CASE("pairing is the parity of the common support") {
    F2Vector a2 = F2Vector::from_support(14, {1, 2, 3, 4});
    F2Vector g2 = F2Vector::from_support(14, {2, 3, 4, 5});
    F2Vector b4 = F2Vector::from_support(14, {8, 9});
    CHECK(pairing(a2, g2) == 1); // three shared crosscaps
    CHECK(pairing(a2, b4) == 0);
    CHECK(pairing(a2, a2) == 0); // even self-support
}

TEST_CASE("rotation matrix golden at genus 4") {
    F2Matrix m = F2Matrix::cyclic_shift(4);
    CHECK(m.str() == "0001\n1000\n0100\n0010\n");
    CHECK(m.apply(F2Vector::basis(4, 1)) == F2Vector::basis(4, 2));
    CHECK(m.apply(F2Vector::basis(4, 4)) == F2Vector::basis(4, 1));
    // order g
    F2Matrix p = F2Matrix::identity(4);
    for (int i = 0; i < 4; ++i) p = m * p;
    CHECK(p == F2Matrix::identity(4));
}

TEST_CASE("transvection golden: the twist about a2 sends gamma2 to e1+e5") {
    CurveTable t = default_table(Genus(14));
    F2Matrix m = generator_matrix(Letter::twist({Family::A, 2}), t);
    F2Vector image = m.apply(cls(t, {Family::Gamma, 2}));
    F2Vector expect = F2Vector::basis(14, 1);
    expect ^= F2Vector::basis(14, 5);
    CHECK(image == expect);
    // fixed vectors: anything pairing to zero with the class
    CHECK(m.apply(cls(t, {Family::B, 4})) == cls(t, {Family::B, 4}));
}

TEST_CASE("generator matrices are involutions or order-g, always isometries") {
    CurveTable t = default_table(Genus(13));
    F2Matrix id = F2Matrix::identity(13);
    for (const CurveRecord& rec : t.curves()) {
        F2Matrix m = generator_matrix(Letter::twist(rec.id), t);
        CHECK(m * m == id); // transvections square to the identity
        CHECK(m.is_isometry());
    }
    for (int p = 1; p <= 12; ++p) {
        F2Matrix m = generator_matrix(Letter::transposition(p), t);
        CHECK(m * m == id);
        CHECK(m.is_isometry());
    }
    F2Matrix rot = generator_matrix(Letter::rotation(), t);
    CHECK(rot.is_isometry());
    F2Matrix p = id;
    for (int i = 0; i < 13; ++i) p = rot * p;
    CHECK(p == id);
}

TEST_CASE("twists about alpha boundaries act trivially on H_1") {
    CurveTable t = default_table(Genus(13));
    CHECK(generator_matrix(Letter::twist({Family::Alpha, 5}), t) == F2Matrix::identity(13));
}

TEST_CASE("word_matrix folds exponents correctly") {
    CurveTable t = default_table(Genus(13));
    // twists and transpositions are involutions: even powers vanish
    CHECK(word_matrix(W("A2^2", 13), t) == F2Matrix::identity(13));
    CHECK(word_matrix(W("u5^-3", 13), t) == word_matrix(W("u5", 13), t));
    // rotation exponents fold mod g, negative powers invert
    CHECK(word_matrix(W("T^13", 13), t) == F2Matrix::identity(13));
    CHECK(word_matrix(W("T^-1", 13), t) * word_matrix(W("T", 13), t) ==
          F2Matrix::identity(13));
    CHECK(word_matrix(W("T^16", 13), t) == word_matrix(W("T^3", 13), t));
}

TEST_CASE("word_matrix is a homomorphism (sampled)") {
    for (int g : {13, 14}) {
        CurveTable t = default_table(Genus(g));
        std::mt19937 rng(101 + g);
        for (int i = 0; i < 60; ++i) {
            Word w1 = random_word(rng, t, 12);
            Word w2 = random_word(rng, t, 12);
            CHECK(word_matrix(multiply(w1, w2), t) == word_matrix(w1, t) * word_matrix(w2, t));
        }
    }
}

TEST_CASE("conjugating a transposition by T shifts its matrix") {
    CurveTable t = default_table(Genus(14));
    for (int i = 1; i <= 12; ++i) {
        std::string w = "T u" + std::to_string(i) + " T^-1";
        CHECK(word_matrix(W(w, 14), t) ==
              word_matrix(W("u" + std::to_string(i + 1), 14), t));
    }
}

TEST_CASE("oracle refutes A2 = Gamma2 with witness e1") {
    CurveTable t = default_table(Genus(14));
    OracleResult r = oracle_check(W("A2", 14), W("Gamma2", 14), t);
    CHECK(!r.consistent);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == F2Vector::basis(14, 1));
}

TEST_CASE("oracle is consistent on genuinely equal words") {
    CurveTable t = default_table(Genus(14));
    // conjugation relation seen through homology
    OracleResult r = oracle_check(W("T u10 T^-1", 14), W("u11", 14), t);
    CHECK(r.consistent);
    CHECK(!r.witness.has_value());
    // and on the bundled seed relation shape
    OracleResult r2 =
        oracle_check(W("T^3 u10 A2 C2^-1 T^-3", 14), W("u13 Gamma4 B4^-1", 14), t);
    CHECK(r2.consistent);
}

TEST_CASE("matrix multiplication agrees with columnwise application") {
    std::mt19937 rng(55);
    CurveTable t = default_table(Genus(13));
    for (int i = 0; i < 40; ++i) {
        F2Matrix m1 = word_matrix(random_word(rng, t, 8), t);
        F2Matrix m2 = word_matrix(random_word(rng, t, 8), t);
        F2Matrix prod = m1 * m2;
        for (int c = 1; c <= 13; ++c)
            CHECK(prod.column(c) == m1.apply(m2.column(c)));
    }
}
