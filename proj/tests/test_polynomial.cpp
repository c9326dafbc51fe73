#include <gtest/gtest.h>

#include <random>

#include "discrel/automata.hpp"
#include "discrel/polynomial.hpp"
#include "life_polynomials.hpp"
#include "oracle.hpp"

using namespace discrel;

namespace {

const std::vector<std::string> pqrs{"p", "q", "r", "s"};

Polynomial poly(std::string_view text, const std::vector<std::string>& vars = pqrs, unsigned p = 2) {
    return parse_polynomial(text, vars, p);
}

Relation rule(int n) { return wolfram_relation(n).relation; }

} // namespace

TEST(RelationToPolynomial, ElementaryRules) {
    EXPECT_EQ(relation_to_polynomial(rule(30)), poly("qr+s+r+q+p"));
    EXPECT_EQ(relation_to_polynomial(rule(105)), poly("p+q+r+s+1"));
    EXPECT_EQ(relation_to_polynomial(rule(150)), poly("p+q+r+s"));
    EXPECT_EQ(relation_to_polynomial(rule(110)), poly("pqr+qr+s+r+q"));
    EXPECT_EQ(relation_to_polynomial(rule(168)), poly("pqr+qr+pr+s"));
    EXPECT_EQ(to_string(relation_to_polynomial(rule(30))), "qr+p+q+r+s");
}

TEST(RelationToPolynomial, Degenerate) {
    EXPECT_TRUE(relation_to_polynomial(Relation::trivial(Domain(pqrs, 2))).is_zero());
    EXPECT_EQ(relation_to_polynomial(Relation::empty(Domain({"a"}, 2))), Polynomial::constant(2, {"a"}, 1));
    EXPECT_THROW(relation_to_polynomial(make_relation({"a"}, 4, "1000")), UnsupportedError);
}

TEST(RelationToPolynomial, ConsequenceTables) {
    EXPECT_EQ(relation_to_polynomial(make_relation({"p", "q", "s"}, 2, "11011110")), poly("qs+pq+q", {"p", "q", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation({"p", "r", "s"}, 2, "11011110")), poly("rs+pr+r", {"p", "r", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation(pqrs, 2, "1011111101111111")), poly("qrs+pqr+rs+qs+pr+pq+s+p"));
    EXPECT_EQ(relation_to_polynomial(make_relation({"q", "r", "s"}, 2, "10010111")), poly("qrs+s+r+q", {"q", "r", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation({"q", "r", "s"}, 2, "10011111")), poly("qs+rs+r+q", {"q", "r", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation({"q", "r", "s"}, 2, "10110111")), poly("qr+rs+s+q", {"q", "r", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation(pqrs, 2, "1110101110111110")), poly("pr+pq+ps"));
    EXPECT_EQ(relation_to_polynomial(make_relation({"r", "s"}, 2, "1101")), poly("rs+s", {"r", "s"}));
    EXPECT_EQ(relation_to_polynomial(make_relation({"p", "r", "s"}, 2, "10010110")), poly("s+p+r", {"p", "r", "s"}));
}

TEST(PolynomialToRelation, Examples) {
    EXPECT_EQ(polynomial_to_relation(poly("p+q+r+s"), Domain(pqrs, 2)), rule(150));
    EXPECT_TRUE(polynomial_to_relation(Polynomial(2, pqrs), Domain(pqrs, 2)).is_trivial());
    EXPECT_EQ(polynomial_to_relation(poly("pqrs"), Domain(pqrs, 2)).to_string(), "1111111111111110");
    // Unmentioned domain points are free; mentioned ones must exist.
    EXPECT_EQ(polynomial_to_relation(poly("rs+s", {"r", "s"}), Domain(pqrs, 2)),
              extend(make_relation({"r", "s"}, 2, "1101"), Domain(pqrs, 2)));
    EXPECT_THROW(polynomial_to_relation(poly("p", {"p"}), Domain({"q"}, 2)), DomainError);
    EXPECT_THROW(polynomial_to_relation(poly("p", {"p"}, 3), Domain({"p"}, 2)), DomainError);
}

TEST(Evaluate, Examples) {
    const std::vector<State> zero{0, 0, 0, 0}, first{1, 0, 0, 0};
    EXPECT_EQ(eval_polynomial(Polynomial(2, pqrs), zero), 0u);
    EXPECT_EQ(eval_polynomial(poly("qr+s+r+q+p"), zero), 0u);
    EXPECT_EQ(eval_polynomial(poly("qr+s+r+q+p"), first), 1u);
    EXPECT_THROW(eval_polynomial(poly("p"), std::vector<State>{0}), DomainError);
}

TEST(ElementarySymmetric, Examples) {
    const std::vector<State> ones{1, 1, 1};
    EXPECT_EQ(elementary_symmetric(0, ones, 2), 1u);
    EXPECT_EQ(elementary_symmetric(2, ones, 2), 1u);
    EXPECT_EQ(elementary_symmetric(2, ones, 5), 3u);
    EXPECT_THROW(elementary_symmetric(4, ones, 2), DomainError);
    const std::vector<State> all8(8, 1);
    EXPECT_EQ(elementary_symmetric(7, all8, 2), 0u); // C(8,7) = 8
    EXPECT_EQ(elementary_symmetric(3, all8, 2), 0u); // C(8,3) = 56
    EXPECT_EQ(elementary_symmetric(2, all8, 2), 0u); // C(8,2) = 28
}

// P_Life evaluated through sigma values agrees with membership.
TEST(ElementarySymmetric, LifeFormulaAgreesWithMembership) {
    const auto life = life_relation();
    std::mt19937_64 rng(31);
    for (int n = 0; n < 50; ++n) {
        std::vector<State> t(10);
        for (auto& v : t) v = static_cast<State>(rng() & 1U);
        const std::span<const State> nb(t.data(), 8);
        auto s = [&](std::size_t k) { return elementary_symmetric(k, nb, 2); };
        const auto value = (t[9] + t[8] * (s(7) + s(6) + s(3) + s(2)) + s(7) + s(3)) % 2;
        EXPECT_EQ(value == 0, life.contains(t));
    }
}

TEST(LifePolynomials, NormalFormsMatch) {
    const auto life = life_relation();
    EXPECT_EQ(relation_to_polynomial(life), lifepoly::life());
    auto without = [&](std::initializer_list<int> drop) {
        std::vector<std::string> face;
        for (int i = 0; i < 10; ++i)
            if (std::find(drop.begin(), drop.end(), i) == drop.end()) face.push_back(lifepoly::x(i));
        return project(life, face);
    };
    EXPECT_EQ(relation_to_polynomial(without({3})), lifepoly::r1(3));
    EXPECT_EQ(relation_to_polynomial(without({8})), lifepoly::r2());
    EXPECT_EQ(relation_to_polynomial(without({1, 6})), lifepoly::r11(1, 6));
    EXPECT_EQ(relation_to_polynomial(without({5, 8})), lifepoly::r12(5));
    EXPECT_EQ(relation_to_polynomial(project(life, {"x0", "x2", "x4", "x7", "x9"})), lifepoly::prime(0, 2, 4, 7));
}

TEST(ZeroSet, RoundTripExhaustiveSmall) {
    // every relation with q = 2, k <= 3
    for (std::size_t k = 0; k <= 3; ++k) {
        const Domain d(oracle::default_points(k), 2);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << d.cell_count()); ++m) {
            BitTable bits(d.cell_count());
            for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, m >> i & 1U);
            const Relation r(d, bits);
            EXPECT_EQ(polynomial_to_relation(relation_to_polynomial(r), d), r);
        }
    }
}

TEST(ZeroSet, RoundTripRandomPrimeModuli) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        const unsigned q = std::array<unsigned, 3>{2, 3, 5}[rng() % 3];
        const std::size_t k = 1 + rng() % (q == 5 ? 3 : 4);
        const Domain d(oracle::default_points(k), q);
        BitTable bits(d.cell_count());
        for (std::size_t b = 0; b < bits.size(); ++b) bits.set(b, rng() & 1U);
        const Relation r(d, bits);
        const auto P = relation_to_polynomial(r);
        EXPECT_EQ(polynomial_to_relation(P, d), r);
        // off the relation the canonical polynomial is exactly 1
        for (const auto& t : oracle::hypercube(k, q))
            if (!r.contains(std::span<const State>(t))) {
                EXPECT_EQ(P.evaluate(t), 1u);
            }
        for (const auto& [m, c] : P.terms())
            for (auto e : m) EXPECT_LT(e, q);
    }
}

TEST(ZeroSet, UniqueNormalFormOverGF2) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const auto a = oracle::random_relation(rng, 4, 2);
        auto bits = a.bits();
        const auto flip = rng() % bits.size();
        bits.set(flip, !bits.test(flip));
        const Relation b(a.domain(), bits);
        EXPECT_NE(relation_to_polynomial(a), relation_to_polynomial(b));
        EXPECT_EQ(relation_to_polynomial(a), relation_to_polynomial(Relation(a.domain(), a.bits())));
    }
}

TEST(Arithmetic, FermatReductionAndRing) {
    const auto x = parse_polynomial("x^5", {"x"}, 3);
    EXPECT_EQ(x, parse_polynomial("x", {"x"}, 3)); // x^5 = x^3 = x over GF(3)
    const auto a = parse_polynomial("x+1", {"x"}, 2);
    EXPECT_EQ(a * a, a); // (x+1)^2 = x^2+1 = x+1
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(parse_polynomial("2x - x", {"x"}, 5), parse_polynomial("x", {"x"}, 5));
    EXPECT_THROW(Polynomial(4, {"x"}), UnsupportedError);
    EXPECT_THROW(a + parse_polynomial("y", {"y"}, 2), DomainError);
}

TEST(Text, ParsePrintRoundTrip) {
    const std::vector<std::string> xs{"x0", "x1", "x8", "x9", "x10"};
    const auto P = parse_polynomial("x8 x9 + x9*x10 + x1^2 + 1", xs, 3);
    EXPECT_EQ(to_string(P), "x1^2+x8*x9+x9*x10+1");
    EXPECT_EQ(parse_polynomial(to_string(P), xs, 3), P);
    EXPECT_EQ(to_string(Polynomial(2, xs)), "0");
    EXPECT_THROW(parse_polynomial("p+z", pqrs, 2), FormatError);
    EXPECT_THROW(parse_polynomial("p++q", pqrs, 2), FormatError);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const auto r = oracle::random_relation(rng, 4, 3);
        const auto P2 = relation_to_polynomial(r);
        EXPECT_EQ(parse_polynomial(to_string(P2), P2.variables(), P2.modulus()), P2);
    }
}

TEST(Text, SymmetricDisplay) {
    const std::vector<std::string> nb{"x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"};
    EXPECT_EQ(to_symmetric_string(lifepoly::life(), nb), "x8*(sigma7+sigma6+sigma3+sigma2) + x9 + sigma7 + sigma3");
    // incomplete sums fall back to monomials
    EXPECT_EQ(to_symmetric_string(parse_polynomial("pq+p", pqrs, 2), {"p", "q", "r"}), "pq + p");
}
