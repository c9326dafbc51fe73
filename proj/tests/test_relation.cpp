#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "discrel/relation.hpp"
#include "discrel/relation_io.hpp"
#include "oracle.hpp"

using namespace discrel;

namespace {

const std::vector<std::string> pqrs{"p", "q", "r", "s"};

Relation rule30() { return make_relation(pqrs, 2, "1001010101101010"); }
Relation rule110() { return make_relation(pqrs, 2, "1100000100111110"); }
Relation rule90() { return make_relation(pqrs, 2, "1010010101011010"); }

} // namespace

TEST(BitTable, WordBoundaries) {
    BitTable t(130);
    t.set(0);
    t.set(63);
    t.set(64);
    t.set(129);
    EXPECT_EQ(t.count(), 4u);
    EXPECT_EQ(t.find_first(), 0u);
    EXPECT_EQ(t.find_next(1), 63u);
    EXPECT_EQ(t.find_next(65), 129u);
    auto n = ~t;
    EXPECT_EQ(n.count(), 126u);
    EXPECT_TRUE((n & t).none());
    EXPECT_TRUE((n | t).all());
    EXPECT_THROW(BitTable::from_string("10x1"), FormatError);
}

TEST(Encoding, EncodePoint) {
    EXPECT_EQ(encode_point({0, 0, 0, 0}, 2), 0u);
    EXPECT_EQ(encode_point({1, 0, 0, 0}, 2), 1u);
    EXPECT_EQ(encode_point({1, 1, 1, 1}, 2), 15u);
    EXPECT_EQ(encode_point({2, 2, 2}, 3), 26u); // q^k - 1
    EXPECT_THROW(encode_point({0, 2}, 2), DomainError);
}

TEST(Encoding, DecodePoint) {
    EXPECT_EQ(decode_point(0, 4, 2), (std::vector<State>{0, 0, 0, 0}));
    EXPECT_EQ(decode_point(15, 4, 2), (std::vector<State>{1, 1, 1, 1}));
    EXPECT_EQ(decode_point(6, 3, 2), (std::vector<State>{0, 1, 1}));
    EXPECT_THROW(decode_point(16, 4, 2), DomainError);
}

TEST(Encoding, RoundTrip) {
    for (unsigned q : {2u, 3u, 5u})
        for (std::size_t k = 0; k <= 4; ++k)
            for (const auto& t : oracle::hypercube(k, q)) {
                const auto i = encode_point(std::span<const State>(t), q);
                EXPECT_EQ(decode_point(i, k, q), t);
            }
}

TEST(DomainTest, Validation) {
    EXPECT_THROW(Domain({"a", "a"}, 2), DomainError);
    EXPECT_THROW(Domain({"a"}, 1), DomainError);
    EXPECT_THROW(Domain({"1a"}, 2), DomainError);
    EXPECT_THROW(Domain({"a", "b", "c"}, 2, 4), DomainError); // size guard
    EXPECT_NO_THROW(Domain({"a", "b"}, 2, 4));
    EXPECT_FALSE(Domain({"a", "b"}, 2) == Domain({"b", "a"}, 2));
}

TEST(MakeRelation, Examples) {
    const auto r30 = rule30();
    EXPECT_EQ(r30.to_string(), "1001010101101010");
    EXPECT_TRUE(make_relation({"p"}, 2, "11").is_trivial());
    EXPECT_EQ(make_relation({"p", "s"}, 2, "0110").cardinality(), 2u);
    EXPECT_THROW(make_relation(pqrs, 2, "101"), FormatError);
}

TEST(Contains, Examples) {
    EXPECT_TRUE(rule30().contains({0, 0, 0, 0}));
    EXPECT_FALSE(rule30().contains({1, 0, 0, 0}));
    const auto e = Relation::empty(Domain(pqrs, 2));
    for (const auto& t : oracle::hypercube(4, 2)) EXPECT_FALSE(e.contains(std::span<const State>(t)));
    EXPECT_THROW((void)rule30().contains({0, 0, 0}), DomainError);
}

TEST(SetAlgebra, Examples) {
    const auto r = rule30();
    const auto s = Relation::trivial(r.domain());
    EXPECT_EQ(intersect(r, s), r);
    EXPECT_TRUE(intersect(r, complement(r)).is_empty());
    EXPECT_EQ(intersect(rule30(), rule110()).to_string(), "1000000100101010");
    EXPECT_THROW(intersect(r, make_relation({"p", "q", "s", "r"}, 2, r.to_string())), DomainError);
}

TEST(SetAlgebra, BooleanLawsProperty) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto a = oracle::random_relation(rng);
        BitTable other(a.bits().size());
        for (std::size_t j = 0; j < other.size(); ++j) other.set(j, rng() & 1U);
        const Relation b(a.domain(), other);
        EXPECT_EQ(complement(intersect(a, b)), unite(complement(a), complement(b)));
        EXPECT_EQ(complement(unite(a, b)), intersect(complement(a), complement(b)));
        EXPECT_EQ(intersect(a, a), a);
        EXPECT_EQ(unite(a, a), a);
        EXPECT_EQ(complement(complement(a)), a);
        EXPECT_EQ(a.cardinality() + complement(a).cardinality(), a.domain().cell_count());
    }
}

TEST(Extend, Examples) {
    const Domain ab({"a", "b"}, 2);
    EXPECT_TRUE(extend(Relation::trivial(Domain({"a"}, 2)), ab).is_trivial());
    EXPECT_EQ(extend(make_relation({"a"}, 2, "10"), ab).to_string(), "1010");
    // reordered superdomain: b first
    EXPECT_EQ(extend(make_relation({"a"}, 2, "10"), Domain({"b", "a"}, 2)).to_string(), "1100");
    EXPECT_THROW(extend(make_relation({"z"}, 2, "10"), ab), DomainError);
    EXPECT_THROW(extend(make_relation({"a"}, 3, "100"), ab), DomainError);
}

TEST(Extend, MatchesOracleAndCardinality) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto r = oracle::random_relation(rng, 3);
        auto pts = r.points();
        pts.insert(pts.begin(), "z");
        if (i % 2) pts.push_back("y");
        const Domain super(pts, r.states());
        const auto e = extend(r, super);
        EXPECT_EQ(oracle::from_relation(e), oracle::extend(oracle::from_relation(r), pts));
        std::size_t factor = 1;
        for (std::size_t j = r.arity(); j < pts.size(); ++j) factor *= r.states();
        EXPECT_EQ(e.cardinality(), r.cardinality() * factor);
    }
}

TEST(Project, Examples) {
    EXPECT_EQ(project(rule90(), {"p", "r", "s"}).to_string(), "10010110");
    EXPECT_EQ(project(rule30(), {"p", "q", "s"}).to_string(), "11011110");
    EXPECT_TRUE(project(Relation::trivial(Domain(pqrs, 2)), {"q", "s"}).is_trivial());
    EXPECT_THROW(project(rule30(), {"p", "x"}), DomainError);
}

TEST(Project, MatchesOracle) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        const auto r = oracle::random_relation(rng);
        const auto tr = oracle::from_relation(r);
        for (const auto& face : oracle::proper_faces(r.points()))
            EXPECT_EQ(oracle::from_relation(project(r, face)), oracle::project(tr, face));
    }
}

// project(R, tau) <= Q  <=>  R <= extend(Q, delta)
TEST(Project, GaloisAdjunctionProperty) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const auto r = oracle::random_relation(rng);
        const auto faces = oracle::proper_faces(r.points());
        if (faces.empty()) continue;
        const auto& face = faces[rng() % faces.size()];
        const auto pr = project(r, face);
        // Q: the projection with some random bits flipped either way.
        auto qbits = pr.bits();
        for (std::size_t j = 0; j < qbits.size(); ++j)
            if (rng() % 3 == 0) qbits.set(j, !qbits.test(j));
        const Relation q(pr.domain(), qbits);
        EXPECT_EQ(pr.is_subset_of(q), r.is_subset_of(extend(q, r.domain())));
    }
}

TEST(Project, CompositionProperty) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const auto r = oracle::random_relation(rng);
        for (const auto& mid : oracle::proper_faces(r.points()))
            for (const auto& small : oracle::proper_faces(mid))
                EXPECT_EQ(project(project(r, mid), small), project(r, small));
    }
}

TEST(Permute, Examples) {
    const auto red90 = make_relation({"p", "r", "s"}, 2, "10010110");
    EXPECT_EQ(permute_points(red90, {"p", "r", "s"}), red90);
    EXPECT_EQ(permute_points(red90, {"r", "p", "s"}).to_string(), "10010110");
    const auto r30 = rule30();
    const std::vector<std::string> cyc{"q", "r", "s", "p"}, inv{"s", "p", "q", "r"};
    EXPECT_EQ(permute_points(permute_points(r30, cyc), inv), r30);
    EXPECT_THROW(permute_points(r30, {"p", "p", "r", "s"}), DomainError);
    EXPECT_THROW(permute_points(r30, {"p", "q"}), DomainError);
}

TEST(Permute, MembershipAndInvariantsProperty) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const auto r = oracle::random_relation(rng);
        auto images = r.points();
        std::shuffle(images.begin(), images.end(), rng);
        const auto moved = permute_points(r, images);
        // member v of result  <=>  v o pi member of R
        for (const auto& v : oracle::hypercube(r.arity(), r.states())) {
            std::vector<State> pulled(r.arity());
            for (std::size_t j = 0; j < r.arity(); ++j) pulled[j] = v[r.domain().index_of(images[j])];
            EXPECT_EQ(moved.contains(std::span<const State>(v)), r.contains(std::span<const State>(pulled)));
        }
        EXPECT_EQ(moved.cardinality(), r.cardinality());
        EXPECT_EQ(moved.is_empty(), r.is_empty());
        EXPECT_EQ(moved.is_trivial(), r.is_trivial());
    }
}

TEST(Cardinality, Examples) {
    EXPECT_EQ(Relation::empty(Domain(pqrs, 2)).cardinality(), 0u);
    EXPECT_EQ(rule30().cardinality(), 8u);
}

TEST(RelationFile, ParsesAndWrites) {
    const auto recs = parse_relations(R"(# sample
name = rule90
q = 2
points = p, r s
bits = 10010110

q=3
points = a
bits_hex = a
)");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(*recs[0].attribute("name"), "rule90");
    EXPECT_EQ(recs[0].relation, make_relation({"p", "r", "s"}, 2, "10010110"));
    EXPECT_EQ(recs[1].relation.to_string(), "101");

    std::ostringstream out;
    std::vector<std::pair<std::string, std::string>> attrs{{"role", "source"}};
    write_relation(out, rule30(), attrs);
    write_relation(out << '\n', rule110(), {}, BitEncoding::hex);
    const auto back = parse_relations(out.str());
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].relation, rule30());
    EXPECT_EQ(*back[0].attribute("role"), "source");
    EXPECT_EQ(back[1].relation, rule110());
    EXPECT_EQ(to_hex(rule30().bits()), "956a");
}

TEST(RelationFile, HexRoundTripProperty) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const auto r = oracle::random_relation(rng);
        EXPECT_EQ(from_hex(to_hex(r.bits()), r.bits().size()), r.bits());
    }
}

TEST(RelationFile, Diagnostics) {
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_relations(text);
        } catch (const FormatError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("q = 2\npoints = a b\nbits = 101\n"), 3u);
    EXPECT_EQ(line_of("q = x\npoints = a\nbits = 10\n"), 1u);
    EXPECT_EQ(line_of("q = 2\npoints = a a\nbits = 1010\n"), 2u);
    EXPECT_EQ(line_of("q = 2\nbits = 10\n"), 1u);
    EXPECT_EQ(line_of("q = 2\npoints = a\nbits = 10\nbits_hex = 8\n"), 4u);
    EXPECT_EQ(line_of("q = 2\npoints = a\nthis is not a field\n"), 3u);
    EXPECT_EQ(line_of("q = 2\npoints = a\nbits_hex = 9\n"), 3u); // nonzero padding
}
