#include <doctest.h>

#include <numeric>
#include <random>

#include "cobweb/errors.hpp"
#include "cobweb/fseq.hpp"
#include "cobweb/seqalg.hpp"
#include "oracles.hpp"

using namespace cobweb;

namespace {

std::vector<long> terms(const FSeq& s, std::size_t first, std::size_t last) {
    std::vector<long> out;
    for (const auto& v : s.terms(first, last)) out.push_back(v.get_si());
    return out;
}

// A random member of the builder families with small parameters.
FSeq random_family(std::mt19937_64& rng) {
    auto pick = [&](unsigned lo, unsigned hi) { return lo + static_cast<unsigned>(rng() % (hi - lo + 1)); };
    FamilyParams p;
    switch (rng() % 7) {
        case 0: return FSeq::natural();
        case 1: return FSeq::fibonacci();
        case 2: p.t = pick(1, 9); return build(SeqKind::Constant, p);
        case 3: p.c = pick(1, 9); p.M = pick(1, 6); return build(SeqKind::NonDiminishing, p);
        case 4: p.c = pick(1, 9); p.M = pick(1, 6); return build(SeqKind::Periodic, p);
        case 5: p.alpha = pick(1, 3); p.c = pick(1, 3); return build(SeqKind::Geometric, p);
        default: p.f1 = 1; p.f2 = pick(1, 4); return build(SeqKind::Rec2, p);
    }
}

}  // namespace

TEST_CASE("shift examples") {
    CHECK(terms(shift(FSeq::natural(), 3), 1, 7) == std::vector<long>{1, 1, 1, 1, 2, 3, 4});
    const FSeq b22 = FSeq::periodic(2, 2);
    CHECK(terms(shift(b22, 0), 0, 12) == terms(b22, 0, 12));
    std::vector<long> expect(10, 1);
    for (long v : {1, 2, 1, 2}) expect.push_back(v);
    CHECK(terms(shift(b22, 10), 1, 14) == expect);
    CHECK(shift(FSeq::natural(), 2).term(0) == 1);
}

TEST_CASE("point product examples") {
    const FSeq f = point_product(FSeq::periodic(2, 2), FSeq::periodic(3, 3));
    CHECK(terms(f, 1, 9) == std::vector<long>{1, 2, 3, 2, 1, 6, 1, 2, 3});
    const FSeq a = FSeq::rec2(1, 3);
    CHECK(terms(point_product(unit_sequence(), a), 0, 15) == terms(a, 0, 15));
    const FSeq c = point_product(FSeq::constant(3), shift(FSeq::constant(2), 10));
    std::vector<long> expect{1};
    expect.insert(expect.end(), 10, 3);
    expect.insert(expect.end(), 3, 6);
    CHECK(terms(c, 0, 13) == expect);
}

TEST_CASE("builder examples") {
    FamilyParams p;
    p.c = 2;
    p.M = 3;
    CHECK(terms(build(SeqKind::Periodic, p), 1, 6) == std::vector<long>{1, 1, 2, 1, 1, 2});
    p.c = 7;
    p.M = 4;
    CHECK(terms(build(SeqKind::Periodic, p), 1, 8) == std::vector<long>{1, 1, 1, 7, 1, 1, 1, 7});
    FamilyParams g;
    g.alpha = 2;
    g.c = 1;
    CHECK(terms(build(SeqKind::Geometric, g), 0, 6) == std::vector<long>{1, 1, 2, 4, 8, 16, 32});
    FamilyParams a;
    a.c = 5;
    a.M = 10;
    CHECK(terms(build(SeqKind::NonDiminishing, a), 8, 11) == std::vector<long>{1, 1, 5, 5});
    FamilyParams t;
    t.t = 5;
    CHECK(terms(build(SeqKind::Constant, t), 0, 3) == std::vector<long>{1, 5, 5, 5});
}

TEST_CASE("builder rejects out-of-range parameters") {
    FamilyParams p;
    p.c = 0;
    CHECK_THROWS_AS(build(SeqKind::Periodic, p), PreconditionError);
    p.c = 2;
    p.M = 0;
    CHECK_THROWS_AS(build(SeqKind::NonDiminishing, p), PreconditionError);
    FamilyParams t;
    t.t = 0;
    CHECK_THROWS_AS(build(SeqKind::Constant, t), PreconditionError);
    FamilyParams r;
    r.f1 = 0;
    CHECK_THROWS_AS(build(SeqKind::Rec2, r), PreconditionError);
    CHECK_THROWS_AS(build(SeqKind::Shift, FamilyParams{}), PreconditionError);
}

TEST_CASE("h_natural examples") {
    std::vector<long> h;
    for (std::size_t n = 1; n <= 17; ++n) h.push_back(h_natural(n).get_si());
    CHECK(h == std::vector<long>{1, 2, 3, 2, 5, 1, 7, 2, 3, 1, 11, 1, 13, 1, 1, 2, 17});
    CHECK(h_natural(6) == 1);
    CHECK(h_natural(16) == 2);
}

TEST_CASE("h_general examples") {
    const HReport nat = h_general(FSeq::natural(), 100);
    REQUIRE(nat.ok());
    for (std::size_t n = 1; n <= 100; ++n) CHECK(nat.sequence.h[n - 1] == oracle::prime_power_base(n));

    const HReport fib = h_general(FSeq::fibonacci(), 12);
    REQUIRE(fib.ok());
    std::vector<long> got;
    for (const auto& v : fib.sequence.h) got.push_back(v.get_si());
    CHECK(got == std::vector<long>{1, 1, 2, 3, 5, 4, 13, 7, 17, 11, 89, 6});
    // n = 12: 144 / lcm(1, 1, 2, 3, 8) = 6
    CHECK(144 / std::lcm(std::lcm(std::lcm(1, 2), 3), 8) == 6);

    const HReport c5 = h_general(FSeq::constant(5), 6);
    REQUIRE(c5.ok());
    std::vector<long> hc;
    for (const auto& v : c5.sequence.h) hc.push_back(v.get_si());
    CHECK(hc == std::vector<long>{5, 1, 1, 1, 1, 1});
}

TEST_CASE("h_general reports a divisibility failure") {
    // 4_F = 6 is not a multiple of lcm(1_F, 2_F) = 4.
    const HReport r = h_general(FSeq::explicit_terms({1, 1, 4, 3, 6}), 4);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failure->n == 4);
    CHECK(r.failure->term == 6);
    CHECK(r.failure->lcm == 4);
    CHECK(r.sequence.h.size() == 3);
    CHECK_THROWS_AS(h_general(FSeq::explicit_terms({1, 1, 0}), 2), PreconditionError);
}

TEST_CASE("reconstruct examples") {
    const HSequence nat = h_general(FSeq::natural(), 24).sequence;
    CHECK(terms(reconstruct(nat, 3), 1, 6) == std::vector<long>{1, 2, 3, 2, 1, 6});
    CHECK(terms(reconstruct(nat, 1), 1, 10) == std::vector<long>(10, 1));
    const HSequence fib = h_general(FSeq::fibonacci(), 24).sequence;
    CHECK(terms(reconstruct(fib, 8), 1, 8) == std::vector<long>{1, 1, 2, 3, 5, 8, 13, 21});
}

TEST_CASE("property: reconstruction agrees with the base on every prefix") {
    for (const FSeq& base : {FSeq::natural(), FSeq::fibonacci()}) {
        const HReport r = h_general(base, 24);
        REQUIRE(r.ok());
        for (std::size_t s = 1; s <= 24; ++s) {
            const FSeq rebuilt = reconstruct(r.sequence, s);
            for (std::size_t i = 1; i <= s; ++i) CHECK(rebuilt.term(i) == base.term(i));
        }
    }
}

TEST_CASE("property: F-nomials are multiplicative under the point product") {
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 200; ++trial) {
        const FSeq a = random_family(rng);
        const FSeq b = random_family(rng);
        const std::size_t n = rng() % 13;
        const std::size_t k = rng() % (n + 1);
        CAPTURE(a.label());
        CAPTURE(b.label());
        CAPTURE(n);
        CAPTURE(k);
        CHECK(fnomial(point_product(a, b), n, k).value == fnomial(a, n, k).value * fnomial(b, n, k).value);
    }
}

TEST_CASE("property: the product of admissible prefixes is admissible") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const FSeq a = random_family(rng);
        const FSeq b = random_family(rng);
        const std::size_t N = 1 + rng() % 12;
        if (is_admissible_prefix(a, N).admissible() && is_admissible_prefix(b, N).admissible())
            CHECK(is_admissible_prefix(point_product(a, b), N).admissible());
    }
}

TEST_CASE("property: shifts compose additively") {
    for (const FSeq& base : {FSeq::natural(), FSeq::fibonacci()})
        for (std::size_t s = 0; s <= 5; ++s)
            for (std::size_t t = 0; t <= 5; ++t)
                CHECK(terms(shift(shift(base, t), s), 0, 30) == terms(shift(base, s + t), 0, 30));
}
