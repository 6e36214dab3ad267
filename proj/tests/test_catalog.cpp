#include <cstdio>
#include <fstream>
#include <set>

#include "doctest.h"
#include "hq/catalog.hpp"
#include "hq/error.hpp"

using namespace hq;

namespace {

std::set<std::string> element_keys(const Subgroup& g) {
    std::set<std::string> keys;
    for (int64_t i = 0; i < g.order(); ++i) keys.insert(format_element(g.element(i)));
    return keys;
}

int64_t count_of_order(const Subgroup& g, int64_t ord) {
    int64_t c = 0;
    for (int64_t i = 0; i < g.order(); ++i)
        if (projective_order(g.element(i)) == ord) ++c;
    return c;
}

}  // namespace

TEST_CASE("subgroup spec parsing") {
    SubgroupSpec s = SubgroupSpec::parse("subfield-pgu:2");
    CHECK(s.family == "subfield-pgu");
    CHECK(s.param == "2");
    CHECK(s.str() == "subfield-pgu:2");
    SubgroupSpec p = SubgroupSpec::parse("hessian216");
    CHECK(p.family == "hessian216");
    CHECK(p.param.empty());
    SubgroupSpec u = SubgroupSpec::parse("user-file:/a/b:c.json");
    CHECK(u.family == "user-file");
    CHECK(u.param == "/a/b:c.json");
    CHECK_THROWS_AS(realize(2, 1, SubgroupSpec::parse("no-such-family")), Error);
    CHECK_THROWS_AS(realize(2, 1, SubgroupSpec::parse("subfield-pgu:x")), Error);
}

TEST_CASE("prime power factoring") {
    CHECK(factor_prime_power(8) == std::pair<int64_t, int>(2, 3));
    CHECK(factor_prime_power(9) == std::pair<int64_t, int>(3, 2));
    CHECK(factor_prime_power(17) == std::pair<int64_t, int>(17, 1));
    CHECK(factor_prime_power(125) == std::pair<int64_t, int>(5, 3));
    CHECK_THROWS_AS(factor_prime_power(12), Error);
    CHECK_THROWS_AS(factor_prime_power(1), Error);
}

TEST_CASE("degenerate subfield group equals the full group") {
    Construction full = full_group_generators(2, 1, false);
    Construction sub = subfield_generators(2, 1, 2, false);
    Subgroup a = closure(*full.form, full.gens);
    Subgroup b = closure(*sub.form, sub.gens);
    CHECK(a.order() == 216);
    CHECK(element_keys(a) == element_keys(b));
}

TEST_CASE("subfield copy of PGU(3,2) inside PGU(3,8)") {
    RealizedGroup pgu = realize(2, 3, SubgroupSpec::parse("subfield-pgu:2"));
    CHECK(pgu.sub.order() == 216);
    // Every element has entries in F_{qbar^2} = F_4, i.e. in the degree-2 subfield.
    const FieldTower& t = *pgu.con.tower;
    for (int64_t i = 0; i < pgu.sub.order(); ++i) {
        GroupElement e = pgu.sub.element(i);
        for (const Fe& entry : e.m) CHECK(t.in_subfield(entry, 2));
    }
    RealizedGroup psu = realize(2, 3, SubgroupSpec::parse("subfield-psu:2"));
    CHECK(psu.sub.order() == 72);

    // Embedding requires odd-degree steps: F_4 inside F_{q^2} with q = 4
    // (n/k = 2) is not unitary-compatible, and 9 is not a power of 2.
    CHECK_THROWS_AS(subfield_generators(2, 2, 2, false), Error);
    CHECK_THROWS_AS(subfield_generators(2, 3, 9, false), Error);
}

TEST_CASE("hessian tower at q = 5: orders 216 / 72 / 36") {
    RealizedGroup h216 = realize(5, 1, SubgroupSpec::parse("hessian216"));
    RealizedGroup h72 = realize(5, 1, SubgroupSpec::parse("hessian72"));
    RealizedGroup h36 = realize(5, 1, SubgroupSpec::parse("hessian36"));
    CHECK(h216.sub.order() == 216);
    CHECK(h72.sub.order() == 72);
    CHECK(h36.sub.order() == 36);

    // The order-72 member is exactly the special part of the order-216 one.
    std::set<std::string> specials;
    for (int64_t i = 0; i < h216.sub.order(); ++i) {
        GroupElement e = h216.sub.element(i);
        if (is_special(e)) specials.insert(format_element(e));
    }
    CHECK(specials == element_keys(h72.sub));

    // Element statistics fixed by the classification: 9 involutions and 54
    // elements of order 4 in the order-216 group.
    CHECK(count_of_order(h216.sub, 2) == 9);
    CHECK(count_of_order(h216.sub, 4) == 54);

    // Extraction agrees: order 72 from the 216 (unique index-3 subgroup),
    // order 36 with no normal cyclic subgroup from the 72.
    Subgroup e72 = extract_subgroup(h216.sub, 72, false);
    CHECK(element_keys(e72) == element_keys(h72.sub));
    Subgroup e36 = extract_subgroup(h72.sub, 36, true);
    CHECK(e36.order() == 36);

    // Without the cyclic-normal restriction the first order-4 subgroup found
    // may be cyclic; with it, C4 and the like are rejected.
    Subgroup any4 = extract_subgroup(h72.sub, 4, false);
    CHECK(any4.order() == 4);
    CHECK_THROWS_AS(extract_subgroup(h216.sub, 216000, false), Error);  // Lagrange
}

TEST_CASE("hessian tower exists at q = 2 and q = 17") {
    // q = 2: the order-216 closure IS PGU(3,2).
    RealizedGroup h216 = realize(2, 1, SubgroupSpec::parse("hessian216"));
    CHECK(h216.sub.order() == 216);
    RealizedGroup h36 = realize(2, 1, SubgroupSpec::parse("hessian36"));
    CHECK(h36.sub.order() == 36);

    RealizedGroup g17 = realize(17, 1, SubgroupSpec::parse("hessian216"));
    CHECK(g17.sub.order() == 216);
    CHECK(count_of_order(g17.sub, 2) == 9);
    CHECK(count_of_order(g17.sub, 4) == 54);
    RealizedGroup h72 = realize(17, 1, SubgroupSpec::parse("hessian72"));
    CHECK(h72.sub.order() == 72);

    // No Hessian subgroup when 3 does not divide q + 1.
    CHECK_THROWS_AS(hessian_generators(3, 1), Error);
    CHECK_THROWS_AS(hessian_generators(7, 1), Error);
}

TEST_CASE("conic embedding is a homomorphism into the unitary group") {
    FieldTower t = FieldTower::build(7, 1);
    HermitianForm conic = HermitianForm::conic(t);
    auto m2 = [&](int64_t a, int64_t b, int64_t c, int64_t d) {
        return std::array<Fe, 4>{t.from_int(a), t.from_int(b), t.from_int(c), t.from_int(d)};
    };
    GroupElement x = conic_embedding(conic, m2(1, 1, 0, 1));
    GroupElement y = conic_embedding(conic, m2(3, 0, 0, 1));
    // psi(A) psi(B) = psi(AB): AB = [[3,1],[0,1]].
    CHECK(mul(x, y) == conic_embedding(conic, m2(3, 1, 0, 1)));
    // Scalar 2x2 matrices map to the identity projectively.
    CHECK(is_identity(conic_embedding(conic, m2(4, 0, 0, 4))));
    // Singular input is rejected.
    CHECK_THROWS_AS(conic_embedding(conic, m2(1, 1, 1, 1)), Error);
    // Entries must be in F_q.
    FieldTower t9 = FieldTower::build(3, 2);
    HermitianForm conic9 = HermitianForm::conic(t9);
    Fe big = t9.x();
    CHECK(!t9.in_fq(big));
    CHECK_THROWS_AS(conic_embedding(conic9, std::array<Fe, 4>{big, t9.zero(), t9.zero(), t9.one()}),
                    Error);
    // The embedding needs the conic-adapted form.
    HermitianForm fermat = HermitianForm::fermat(t);
    CHECK_THROWS_AS(conic_embedding(fermat, m2(1, 1, 0, 1)), Error);
}

TEST_CASE("conic groups close to |PGL(2,q)| and |PSL(2,q)|") {
    RealizedGroup pgl7 = realize(7, 1, SubgroupSpec::parse("conic-pgl:7"));
    CHECK(pgl7.sub.order() == 336);
    RealizedGroup psl7 = realize(7, 1, SubgroupSpec::parse("conic-psl:7"));
    CHECK(psl7.sub.order() == 168);
    for (int64_t i = 0; i < psl7.sub.order(); ++i) CHECK(is_special(psl7.sub.element(i)));

    RealizedGroup psl9 = realize(3, 2, SubgroupSpec::parse("conic-psl:9"));
    CHECK(psl9.sub.order() == 360);  // PSL(2,9) = A6

    // PSL(2,5) inside PGU(3,5) via the subfield conic.
    RealizedGroup psl5 = realize(5, 1, SubgroupSpec::parse("conic-psl:5"));
    CHECK(psl5.sub.order() == 60);

    CHECK_THROWS_AS(conic_group_generators(2, 1, 2, false), Error);  // p = 2 has no conic model
    CHECK_THROWS_AS(conic_group_generators(7, 1, 49, false), Error);  // 49 is not a subfield size
}

TEST_CASE("alternating group realizations") {
    RealizedGroup a5_direct = realize(5, 1, SubgroupSpec::parse("a5"));
    CHECK(a5_direct.sub.order() == 60);
    CHECK(a5_direct.sub.label() == "a5");

    // p != 5: extracted from a subfield PGL(2, qbar) with 5 | |PGL|.
    RealizedGroup a5_ex = realize(3, 2, SubgroupSpec::parse("a5"));
    CHECK(a5_ex.sub.order() == 60);
    // A5 has elements of orders 1, 2, 3, 5 only.
    for (int64_t i = 0; i < a5_ex.sub.order(); ++i) {
        int64_t o = projective_order(a5_ex.sub.element(i));
        CHECK((o == 1 || o == 2 || o == 3 || o == 5));
    }
    CHECK(count_of_order(a5_ex.sub, 2) == 15);
    CHECK(count_of_order(a5_ex.sub, 3) == 20);
    CHECK(count_of_order(a5_ex.sub, 5) == 24);

    CHECK_THROWS_AS(realize(7, 1, SubgroupSpec::parse("a5")), Error);  // 5 does not divide |PGU(3,7)|

    RealizedGroup a6 = realize(3, 2, SubgroupSpec::parse("a6"));
    CHECK(a6.sub.order() == 360);
    CHECK_THROWS_AS(realize(5, 1, SubgroupSpec::parse("a6")), Error);
}

TEST_CASE("generator files load and are validated") {
    const char* path = "catalog_test_gens.json";
    {
        std::ofstream out(path);
        out << R"({"p": 5, "n": 1,
                   "form": ["1", "0", "0", "0", "1", "0", "0", "0", "1"],
                   "generators": [["4", "0", "0", "0", "1", "0", "0", "0", "1"],
                                   ["0", "0", "1", "0", "1", "0", "1", "0", "0"]]})";
    }
    Construction con = load_generator_file(path);
    CHECK(con.gens.size() == 2);
    RealizedGroup g = realize(0, 0, SubgroupSpec::parse(std::string("user-file:") + path));
    CHECK(g.sub.order() == 8);  // two involutions whose product has order 4
    std::remove(path);

    CHECK_THROWS_AS(load_generator_file("does-not-exist.json"), Error);
    {
        std::ofstream out(path);
        out << R"({"p": 5, "n": 1, "form": ["1", "0"], "generators": []})";
    }
    CHECK_THROWS_AS(load_generator_file(path), Error);
    std::remove(path);
    {
        std::ofstream out(path);
        out << "not json at all";
    }
    CHECK_THROWS_AS(load_generator_file(path), Error);
    std::remove(path);
}

TEST_CASE("applicable family lists") {
    CHECK(applicable_specs(3, 1) == std::vector<std::string>{"full-pgu"});
    CHECK(applicable_specs(7, 1) ==
          std::vector<std::string>{"full-pgu", "conic-pgl:7", "conic-psl:7"});
    CHECK(applicable_specs(5, 1) ==
          std::vector<std::string>{"full-pgu", "full-psu", "hessian216", "hessian72", "hessian36",
                                   "conic-pgl:5", "conic-psl:5", "a5"});
    CHECK(applicable_specs(2, 3) ==
          std::vector<std::string>{"full-pgu", "full-psu", "subfield-pgu:2", "subfield-psu:2",
                                   "hessian216", "hessian72", "hessian36"});
    CHECK(applicable_specs(3, 2) ==
          std::vector<std::string>{"full-pgu", "conic-pgl:9", "conic-psl:9", "a5", "a6"});
}
