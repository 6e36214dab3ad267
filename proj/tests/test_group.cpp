#include <algorithm>
#include <set>

#include "doctest.h"
#include "hq/catalog.hpp"
#include "hq/error.hpp"
#include "hq/group.hpp"

using namespace hq;

namespace {

Mat3 diag(const FieldTower& t, int64_t a, int64_t b, int64_t c) {
    Fe z = t.zero();
    return {t.from_int(a), z, z, z, t.from_int(b), z, z, z, t.from_int(c)};
}

std::set<std::string> element_set(const Subgroup& g) {
    std::set<std::string> keys;
    for (int64_t i = 0; i < g.order(); ++i) keys.insert(format_element(g.element(i)));
    return keys;
}

}  // namespace

TEST_CASE("make_element validates entries, rank and unitarity") {
    FieldTower t = FieldTower::build(5, 1);
    HermitianForm f = HermitianForm::fermat(t);
    Fe z = t.zero(), o = t.one();

    // diag(-1, 1, 1) satisfies a^{q+1} = 1; diag(2, 1, 1) does not (2^6 = 4 in F_5).
    CHECK_NOTHROW(make_element(f, diag(t, 4, 1, 1)));
    CHECK_THROWS_AS(make_element(f, diag(t, 2, 1, 1)), Error);

    // Singular matrix.
    CHECK_THROWS_AS(make_element(f, Mat3{o, z, z, o, z, z, z, z, o}), Error);
    // Zero matrix.
    CHECK_THROWS_AS(make_element(f, Mat3{z, z, z, z, z, z, z, z, z}), Error);

    // Entry outside F_{q^2}: the tower generator spans F_{q^6}.
    CHECK(!t.in_fq2(t.x()));
    CHECK_THROWS_AS(make_element(f, Mat3{t.x(), z, z, z, o, z, z, z, o}), Error);

    // A matrix from a different tower is rejected.
    FieldTower t2 = FieldTower::build(3, 1);
    CHECK_THROWS_AS(make_element(f, diag(t2, 1, 1, 1)), Error);
}

TEST_CASE("canonical scaling makes scalar multiples equal") {
    FieldTower t = FieldTower::build(5, 1);
    HermitianForm f = HermitianForm::fermat(t);
    GroupElement id = identity(f);
    GroupElement scaled = make_element(f, diag(t, 3, 3, 3));
    CHECK(scaled == id);
    CHECK(is_identity(scaled));
    CHECK(format_element(scaled) == "1;0;0;0;1;0;0;0;1");
    // Canonicalization picks the first nonzero entry even off the diagonal.
    Fe z = t.zero();
    GroupElement w = make_element(f, Mat3{z, z, t.from_int(2), z, t.from_int(2), z,
                                          t.from_int(2), z, z});
    CHECK(format_element(w) == "0;0;1;0;1;0;1;0;0");
}

TEST_CASE("group operations: products, inverses, associativity") {
    Construction con = full_group_generators(3, 1, false);
    const HermitianForm& f = *con.form;
    REQUIRE(con.gens.size() >= 3);
    const GroupElement &a = con.gens[0], &b = con.gens[1], &c = con.gens[2];

    CHECK(mul(a, inverse(a)) == identity(f));
    CHECK(mul(inverse(b), b) == identity(f));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(inverse(mul(a, b)) == mul(inverse(b), inverse(a)));
}

TEST_CASE("projective orders of known elements") {
    FieldTower t = FieldTower::build(3, 1);
    HermitianForm nt = HermitianForm::norm_trace(t);

    Construction con = full_group_generators(3, 1, false);
    // Generators: 2n translations, one central translation, torus, involution.
    REQUIRE(con.gens.size() == 2 + 1 + 1 + 1);
    CHECK(projective_order(con.gens[0]) == 3);   // translation: order p (p odd: all wild parts)
    CHECK(projective_order(con.gens[2]) == 3);   // central translation: order p
    CHECK(projective_order(con.gens[3]) == 8);   // torus generator: order q^2 - 1
    CHECK(projective_order(con.gens[4]) == 2);   // X <-> Z involution

    HermitianForm fm = HermitianForm::fermat(t);
    CHECK(projective_order(identity(fm)) == 1);
    CHECK(projective_order(make_element(fm, diag(t, 2, 1, 1))) == 2);  // 2 = -1 in F_3
}

TEST_CASE("central translations at q = 2 have order 2, others order 4") {
    // In even characteristic a translation with b != 0 has order 2p = 4,
    // and the central translation (b = 0) has order p = 2.
    Construction con = full_group_generators(2, 1, false);
    REQUIRE(con.gens.size() == 2 + 1 + 1 + 1);
    CHECK(projective_order(con.gens[0]) == 4);
    CHECK(projective_order(con.gens[1]) == 4);
    CHECK(projective_order(con.gens[2]) == 2);
}

TEST_CASE("closure of the full-group generators has order |PGU(3,q)|") {
    GroupOrders o2 = group_orders(2);
    CHECK(o2.pgu == 216);
    CHECK(o2.psu == 72);
    CHECK(o2.index == 3);

    RealizedGroup g2 = realize(2, 1, SubgroupSpec::parse("full-pgu"));
    CHECK(g2.sub.order() == 216);
    CHECK(g2.sub.label() == "full-pgu");

    RealizedGroup s2 = realize(2, 1, SubgroupSpec::parse("full-psu"));
    CHECK(s2.sub.order() == 72);

    GroupOrders o3 = group_orders(3);
    CHECK(o3.pgu == 6048);
    CHECK(o3.psu == 6048);  // gcd(3, 4) = 1
    CHECK(o3.index == 1);
    RealizedGroup g3 = realize(3, 1, SubgroupSpec::parse("full-pgu"));
    CHECK(g3.sub.order() == 6048);
}

TEST_CASE("special elements: exactly 72 of the 216 at q = 2, all of PSU") {
    RealizedGroup g = realize(2, 1, SubgroupSpec::parse("full-pgu"));
    int64_t special = 0;
    for (int64_t i = 0; i < g.sub.order(); ++i)
        if (is_special(g.sub.element(i))) ++special;
    CHECK(special == 72);

    RealizedGroup s = realize(2, 1, SubgroupSpec::parse("full-psu"));
    for (int64_t i = 0; i < s.sub.order(); ++i) CHECK(is_special(s.sub.element(i)));
    // The special closure is exactly the special subset of the full closure.
    std::set<std::string> specials;
    for (int64_t i = 0; i < g.sub.order(); ++i) {
        GroupElement e = g.sub.element(i);
        if (is_special(e)) specials.insert(format_element(e));
    }
    CHECK(specials == element_set(s.sub));
}

TEST_CASE("closure is generator-order independent as a set") {
    Construction con = full_group_generators(2, 1, false);
    Subgroup fwd = closure(*con.form, con.gens);
    std::vector<GroupElement> rev(con.gens.rbegin(), con.gens.rend());
    Subgroup bwd = closure(*con.form, rev);
    CHECK(fwd.order() == bwd.order());
    CHECK(element_set(fwd) == element_set(bwd));
}

TEST_CASE("closure respects the cap") {
    Construction con = full_group_generators(3, 1, false);
    try {
        closure(*con.form, con.gens, 100);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.cap == 100);
        CHECK(e.reached == 101);
    }
    // Empty generator list closes to the trivial group.
    CHECK(closure(*con.form, {}).order() == 1);
}

TEST_CASE("subgroup bookkeeping: membership, element round-trip") {
    RealizedGroup g = realize(2, 1, SubgroupSpec::parse("full-psu"));
    GroupElement e = g.sub.element(17);
    CHECK(g.sub.contains(e));
    CHECK(g.sub.contains(inverse(e)));
    CHECK(g.sub.contains(identity(g.sub.form())));
    // Parse/format round trip through the subgroup's own form.
    GroupElement back = parse_element(g.sub.form(), format_element(e));
    CHECK(back == e);
}

TEST_CASE("element serialization errors") {
    FieldTower t = FieldTower::build(5, 1);
    HermitianForm f = HermitianForm::fermat(t);
    CHECK_THROWS_AS(parse_element(f, "bogus"), Error);
    CHECK_THROWS_AS(parse_element(f, "1;0;0"), Error);                    // wrong count
    CHECK_THROWS_AS(parse_element(f, "2;0;0;0;1;0;0;0;1"), Error);       // not unitary
    GroupElement homology = parse_element(f, "4;0;0;0;1;0;0;0;1");
    CHECK(projective_order(homology) == 2);
}

TEST_CASE("maximal subgroup order table") {
    auto m2 = maximal_orders(2);
    REQUIRE(m2.size() == 5);
    CHECK(m2[0] == std::pair<std::string, int64_t>("m1_curve_point_stab", 24));
    CHECK(m2[1] == std::pair<std::string, int64_t>("m2_polar_point_stab", 18));
    CHECK(m2[2] == std::pair<std::string, int64_t>("m3_triangle_stab", 54));
    CHECK(m2[3] == std::pair<std::string, int64_t>("m4_singer_normalizer", 9));
    CHECK(m2[4] == std::pair<std::string, int64_t>("psu", 72));

    auto m3 = maximal_orders(3);
    REQUIRE(m3.size() == 4);  // 3 does not divide q + 1 = 4
    CHECK(m3[0].second == 27 * 8);
    CHECK(m3[1].second == 3 * 16 * 2);
    CHECK(m3[2].second == 6 * 16);
    CHECK(m3[3].second == 3 * 7);

    CHECK_THROWS_AS(group_orders(1), Error);
    CHECK_THROWS_AS(group_orders(1000), Error);
}
