// Closed-form genus formulas: frozen values, parameter-rule cases,
// applicability guards, spectrum assembly, and integrality scans.

#include "hq/formulas.hpp"

#include <algorithm>

#include "doctest.h"
#include "hq/error.hpp"

using namespace hq;

namespace {

BigRational frac(long long n, long long d) { return BigRational(n, d); }

const FormulaResult& find_member(const std::vector<FormulaResult>& v, const std::string& fam) {
    for (const auto& r : v)
        if (r.family == fam) return r;
    REQUIRE(false);
    return v.front();
}

}  // namespace

TEST_CASE("hessian tower: frozen values and the order-216 integrality defect") {
    // q = 5: the order-72 and order-36 quotients are genus 0, but the
    // order-216 expression evaluates to 1/3 because 9 does not divide q+1.
    auto h216 = genus_hessian_family(5, HessianVariant::H216);
    CHECK(h216.applicable);
    CHECK(h216.params.delta == 2);  // 4 | (5-1)
    CHECK(h216.value == frac(1, 3));
    CHECK_FALSE(h216.integral);
    CHECK_FALSE(h216.negative);
    CHECK(h216.note.find("9 | (q+1)") != std::string::npos);

    auto h72 = genus_hessian_family(5, HessianVariant::H72);
    CHECK(h72.applicable);
    CHECK(h72.value == 0);
    CHECK(h72.integral);

    auto sg36 = genus_hessian_family(5, HessianVariant::SG36);
    CHECK(sg36.applicable);
    CHECK(sg36.value == 0);
    CHECK(sg36.integral);

    // q = 17 has 9 | 18: all three are integral, H216 gives 0.
    auto h216_17 = genus_hessian_family(17, HessianVariant::H216);
    CHECK(h216_17.params.delta == 2);
    CHECK(h216_17.value == 0);
    CHECK(h216_17.integral);
    CHECK(h216_17.note.empty());

    // More frozen H216 values: 1/3 at 11, 23, 29; 4/3 at 41; 7/3 at 47.
    CHECK(genus_hessian_family(11, HessianVariant::H216).value == frac(1, 3));
    CHECK(genus_hessian_family(23, HessianVariant::H216).value == frac(1, 3));
    CHECK(genus_hessian_family(29, HessianVariant::H216).value == frac(1, 3));
    CHECK(genus_hessian_family(41, HessianVariant::H216).value == frac(4, 3));
    CHECK(genus_hessian_family(47, HessianVariant::H216).value == frac(7, 3));
    CHECK(genus_hessian_family(125, HessianVariant::H216).value == 27);
    CHECK(genus_hessian_family(125, HessianVariant::H216).integral);

    // H72/SG36 frozen values, including delta = 0 cases (4 | q+1).
    CHECK(genus_hessian_family(11, HessianVariant::H72).params.delta == 0);
    CHECK(genus_hessian_family(11, HessianVariant::H72).value == 1);
    CHECK(genus_hessian_family(23, HessianVariant::H72).value == 3);
    CHECK(genus_hessian_family(125, HessianVariant::H72).value == 100);
    CHECK(genus_hessian_family(11, HessianVariant::SG36).value == 1);
    CHECK(genus_hessian_family(17, HessianVariant::SG36).value == 2);
    CHECK(genus_hessian_family(125, HessianVariant::SG36).value == 200);

    // Hypotheses: odd characteristic and 3 | (q+1).
    CHECK_FALSE(genus_hessian_family(8, HessianVariant::H216).applicable);
    CHECK_FALSE(genus_hessian_family(7, HessianVariant::H216).applicable);
    CHECK_FALSE(genus_hessian_family(9, HessianVariant::SG36).applicable);
    CHECK_THROWS_AS(genus_hessian_family(6, HessianVariant::H216), Error);
    CHECK_THROWS_AS(genus_hessian_family(1, HessianVariant::H72), Error);
}

TEST_CASE("icosahedral quotients: frozen values across the gamma/delta cases") {
    struct Row {
        int64_t q;
        int gamma, delta;
        long long genus;
    };
    // gamma: 0 when 5 | q+1, else 2 (p = 5 or 5 | q-1);
    // delta: 2 when p = 3 or 3 | q-1, else 0 (3 | q+1).
    const Row rows[] = {
        {5, 2, 0, 0},  {9, 0, 2, 0},   {11, 2, 0, 0},  {19, 0, 2, 1},
        {25, 2, 2, 2}, {29, 0, 0, 4},  {31, 2, 2, 4},  {41, 2, 0, 9},
        {49, 0, 2, 14}, {125, 2, 0, 114},
    };
    for (const Row& row : rows) {
        CAPTURE(row.q);
        auto r = genus_conic_family(row.q, 0, ConicVariant::A5);
        CHECK(r.applicable);
        CHECK(r.params.gamma == row.gamma);
        CHECK(r.params.delta == row.delta);
        CHECK(r.value == row.genus);
        CHECK(r.integral);
    }
    // Needs p = 5 or 5 | q^2-1, and odd characteristic.
    CHECK_FALSE(genus_conic_family(7, 0, ConicVariant::A5).applicable);
    CHECK_FALSE(genus_conic_family(8, 0, ConicVariant::A5).applicable);
}

TEST_CASE("PSL(2,qbar) conic expression is non-integral where the engine says 0") {
    // q = qbar = 5: prints 1/10; the enumeration engine gives genus 0.
    auto p55 = genus_conic_family(5, 5, ConicVariant::PSL2);
    CHECK(p55.applicable);
    CHECK(p55.params.h == 1);
    CHECK(p55.params.delta == 0);
    CHECK(p55.value == frac(1, 10));
    CHECK_FALSE(p55.integral);
    CHECK_FALSE(p55.negative);
    CHECK_FALSE(p55.note.empty());

    // q = qbar = 7: prints -1/6, impossible for a genus; engine gives 0.
    auto p77 = genus_conic_family(7, 7, ConicVariant::PSL2);
    CHECK(p77.value == frac(-1, 6));
    CHECK_FALSE(p77.integral);
    CHECK(p77.negative);

    // q = qbar = 9 prints 1/36; the engine census (delta 790) gives 0.
    CHECK(genus_conic_family(9, 9, ConicVariant::PSL2).value == frac(1, 36));

    // qbar = 3 is excluded; mismatched primes and non-divisor degrees too.
    CHECK_FALSE(genus_conic_family(9, 3, ConicVariant::PSL2).applicable);
    CHECK_FALSE(genus_conic_family(49, 5, ConicVariant::PSL2).applicable);
    CHECK_FALSE(genus_conic_family(25, 125, ConicVariant::PSL2).applicable);
    CHECK_FALSE(genus_conic_family(25, 1, ConicVariant::PSL2).applicable);
}

TEST_CASE("PGL(2,qbar) conic expression matches the engine at q = qbar = 7") {
    auto g77 = genus_conic_family(7, 7, ConicVariant::PGL2);
    CHECK(g77.applicable);
    CHECK(g77.params.qbar == 7);
    CHECK(g77.params.delta == 0);
    CHECK(g77.value == 0);  // engine: delta 712 over |G| = 336
    CHECK(g77.integral);
    CHECK(g77.note.empty());

    CHECK(genus_conic_family(5, 5, ConicVariant::PGL2).value == 0);
    CHECK(genus_conic_family(9, 9, ConicVariant::PGL2).value == 0);
    CHECK(genus_conic_family(125, 125, ConicVariant::PGL2).value == 0);

    // Over the degree-2 extension delta flips to 2 and the value stays exact.
    auto g25 = genus_conic_family(25, 5, ConicVariant::PGL2);
    CHECK(g25.params.h == 2);
    CHECK(g25.params.delta == 2);
    CHECK(g25.value == 0);

    // PGL(2,5) inside H_125: same abstract group as the A5xC2 member below.
    CHECK(genus_conic_family(125, 5, ConicVariant::PGL2).value == 52);
}

TEST_CASE("Klein quartic group PSL(2,7): frozen values and parameter rules") {
    auto q7 = genus_psl27(7);
    CHECK(q7.applicable);
    CHECK(q7.params.alpha == 2);
    CHECK(q7.params.beta == 2);
    CHECK(q7.params.gamma == 0);
    CHECK(q7.value == 0);

    auto q139 = genus_psl27(139);
    CHECK(q139.applicable);
    CHECK(q139.params.alpha == 2);   // 3 does not divide 140
    CHECK(q139.params.beta == 0);    // 7 | 140
    CHECK(q139.params.gamma == 0);   // 4 | 140
    CHECK(q139.value == 49);
    CHECK(q139.integral);

    // q = 5: 7 | q^2-q+1 = 21 forces beta = 3, and 4 does not divide 6,
    // so gamma = 2; the value is exactly 0.
    auto q5 = genus_psl27(5);
    CHECK(q5.applicable);
    CHECK(q5.params.alpha == 0);
    CHECK(q5.params.beta == 3);
    CHECK(q5.params.gamma == 2);
    CHECK(q5.value == 0);
    CHECK(q5.integral);

    CHECK(genus_psl27(3).value == 0);   // H_3 is the Klein quartic itself
    CHECK(genus_psl27(13).value == 0);
    CHECK(genus_psl27(17).value == 0);  // beta = 3: 7 | 17^2-17+1 = 273
    CHECK(genus_psl27(19).value == 0);
    CHECK(genus_psl27(27).value == 1);
    CHECK(genus_psl27(31).value == 1);
    CHECK(genus_psl27(41).value == 3);
    CHECK(genus_psl27(47).value == 4);
    CHECK(genus_psl27(49).value == 4);  // p = 7 carries no parity condition
    CHECK(genus_psl27(125).value == 39);

    // Inapplicable when -7 is a square in F_q: p = 11 (= 4 mod 7),
    // p = 23 (-7 = 16 = 4^2 mod 23; 7 does not divide the ambient group
    // order), p = 2, and even extension degrees of good primes.
    CHECK_FALSE(genus_psl27(11).applicable);
    CHECK_FALSE(genus_psl27(23).applicable);
    CHECK_FALSE(genus_psl27(8).applicable);
    CHECK_FALSE(genus_psl27(25).applicable);
    CHECK_FALSE(genus_psl27(9).applicable);
}

TEST_CASE("order-720 tower over F_5^n, n odd") {
    auto at5 = genus_sg720_family(5);
    REQUIRE(at5.size() == 5);
    for (const auto& r : at5) {
        CAPTURE(r.family);
        CHECK(r.applicable);
        CHECK(r.value == 0);
        CHECK(r.integral);
    }

    auto at125 = genus_sg720_family(125);
    CHECK(find_member(at125, "sg720:sg36").value == 200);
    CHECK(find_member(at125, "sg720:a5").value == 114);
    CHECK(find_member(at125, "sg720:psu32").value == 100);
    CHECK(find_member(at125, "sg720:a6").value == 14);
    CHECK(find_member(at125, "sg720").value == 7);
    for (const auto& r : at125) CHECK(r.integral);

    for (const auto& r : genus_sg720_family(25)) CHECK_FALSE(r.applicable);
    for (const auto& r : genus_sg720_family(7)) CHECK_FALSE(r.applicable);
}

TEST_CASE("alternating A6 tower: applicability and frozen values") {
    // q = 9 = 3^2: applicable via p = 3, n even; the SG36 member drops out
    // because the normal Sylow 3-subgroup fixes a rational curve point.
    auto at9 = genus_a6_family(9);
    REQUIRE(at9.size() == 3);
    CHECK(find_member(at9, "a6").applicable);
    CHECK(find_member(at9, "a6").value == 0);
    CHECK(find_member(at9, "a6:a5").value == 0);
    CHECK_FALSE(find_member(at9, "a6:sg36").applicable);
    CHECK(find_member(at9, "a6:sg36").why.find("Sylow") != std::string::npos);

    // q = 11: sqrt(5) exists (5 | 11-1 fails but 11 = 1 mod 5), no cube
    // roots of unity (11 = 2 mod 3); all three members evaluate.
    auto at11 = genus_a6_family(11);
    CHECK(find_member(at11, "a6").value == 0);
    CHECK(find_member(at11, "a6:a5").value == 0);
    CHECK(find_member(at11, "a6:sg36").value == 1);

    auto at29 = genus_a6_family(29);
    CHECK(find_member(at29, "a6").value == 0);
    CHECK(find_member(at29, "a6:a5").value == 4);
    CHECK(find_member(at29, "a6:sg36").value == 8);

    auto at81 = genus_a6_family(81);
    CHECK(find_member(at81, "a6").value == 4);
    CHECK(find_member(at81, "a6:a5").value == 44);

    auto at125 = genus_a6_family(125);
    CHECK(find_member(at125, "a6").value == 14);
    CHECK(find_member(at125, "a6:a5").value == 114);
    CHECK(find_member(at125, "a6:sg36").value == 200);

    // q = 19: 19 = 1 mod 3 gives cube roots of unity; q = 7 lacks sqrt(5).
    for (const auto& r : genus_a6_family(19)) CHECK_FALSE(r.applicable);
    for (const auto& r : genus_a6_family(7)) CHECK_FALSE(r.applicable);
    for (const auto& r : genus_a6_family(4)) CHECK_FALSE(r.applicable);
}

TEST_CASE("alternating A7 tower over F_5^n, n odd") {
    auto at5 = genus_a7_family(5);
    REQUIRE(at5.size() == 6);
    for (const auto& r : at5) {
        CAPTURE(r.family);
        CHECK(r.applicable);
        CHECK(r.value == 0);
    }
    CHECK(find_member(at5, "a7").params.beta == 3);  // 7 | 5^2-5+1 = 21

    auto at125 = genus_a7_family(125);
    CHECK(find_member(at125, "a7").params.beta == 0);  // 7 | 126
    CHECK(find_member(at125, "a7").value == 1);
    CHECK(find_member(at125, "a7:a6").value == 14);
    CHECK(find_member(at125, "a7:psl27").value == 39);
    CHECK(find_member(at125, "a7:a5xc2").value == 52);
    CHECK(find_member(at125, "a7:a5").value == 114);
    CHECK(find_member(at125, "a7:sg36").value == 200);
    for (const auto& r : at125) CHECK(r.integral);

    for (const auto& r : genus_a7_family(25)) CHECK_FALSE(r.applicable);
    for (const auto& r : genus_a7_family(3)) CHECK_FALSE(r.applicable);
}

TEST_CASE("order-36 group in characteristic two") {
    CHECK(genus_subfield(2, 0, SubfieldVariant::SG36char2).value == 0);
    CHECK(genus_subfield(8, 0, SubfieldVariant::SG36char2).value == 0);
    CHECK(genus_subfield(32, 0, SubfieldVariant::SG36char2).value == 10);
    CHECK(genus_subfield(128, 0, SubfieldVariant::SG36char2).value == 210);
    CHECK(genus_subfield(32, 0, SubfieldVariant::SG36char2).integral);
    CHECK_FALSE(genus_subfield(4, 0, SubfieldVariant::SG36char2).applicable);
    CHECK_FALSE(genus_subfield(3, 0, SubfieldVariant::SG36char2).applicable);
}

TEST_CASE("subfield unitary groups: frozen values against engine censuses") {
    // PGU(3,2) inside H_8: gamma = 0 (3 | n), delta sum 486, genus 0 —
    // exactly the enumeration engine's reclassified census.
    auto pgu8 = genus_subfield(8, 2, SubfieldVariant::PGU);
    CHECK(pgu8.applicable);
    CHECK(pgu8.params.h == 3);
    CHECK(pgu8.params.gamma == 0);
    CHECK(pgu8.value == 0);

    // PGU(3,2) inside H_32: gamma = 3 (3 does not divide n = 5), genus 0.
    auto pgu32 = genus_subfield(32, 2, SubfieldVariant::PGU);
    CHECK(pgu32.params.gamma == 3);
    CHECK(pgu32.value == 0);

    CHECK(genus_subfield(128, 2, SubfieldVariant::PGU).value == 28);
    CHECK(genus_subfield(27, 3, SubfieldVariant::PGU).value == 0);
    CHECK(genus_subfield(64, 4, SubfieldVariant::PGU).value == 0);
    CHECK(genus_subfield(125, 5, SubfieldVariant::PGU).value == 0);

    // At qbar = q the expression reduces to the full-group count: genus 0.
    for (int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        CAPTURE(q);
        auto r = genus_subfield(q, q, SubfieldVariant::PGU);
        CHECK(r.applicable);
        CHECK(r.value == 0);
        CHECK(r.integral);
    }

    // PSU: requires 3 | (q+1); frozen values from the engine.
    CHECK(genus_subfield(8, 2, SubfieldVariant::PSU).value == 0);
    CHECK(genus_subfield(32, 2, SubfieldVariant::PSU).value == 5);
    CHECK(genus_subfield(128, 2, SubfieldVariant::PSU).value == 105);
    CHECK(genus_subfield(125, 5, SubfieldVariant::PSU).value == 0);
    CHECK(genus_subfield(5, 5, SubfieldVariant::PSU).value == 0);
    CHECK_FALSE(genus_subfield(64, 4, SubfieldVariant::PSU).applicable);
    CHECK_FALSE(genus_subfield(27, 3, SubfieldVariant::PSU).applicable);

    // Embedding degree must be an odd divisor; primes must agree.
    CHECK_FALSE(genus_subfield(16, 2, SubfieldVariant::PGU).applicable);
    CHECK_FALSE(genus_subfield(64, 2, SubfieldVariant::PGU).applicable);
    CHECK_FALSE(genus_subfield(27, 2, SubfieldVariant::PGU).applicable);
    CHECK_FALSE(genus_subfield(8, 0, SubfieldVariant::PGU).applicable);
}

TEST_CASE("spectrum assembles exactly the applicable families") {
    // q = 8: three rows — the two subfield unitary groups over F_4 and the
    // characteristic-two order-36 group — all genus 0.
    Spectrum s8 = spectrum(8);
    REQUIRE(s8.entries.size() == 3);
    std::vector<std::string> fams;
    for (const auto& e : s8.entries) fams.push_back(e.family);
    CHECK(std::count(fams.begin(), fams.end(), "subfield-pgu") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "subfield-psu") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "sg36char2") == 1);
    for (const auto& e : s8.entries) {
        CHECK(e.result.value == 0);
        CHECK(e.result.integral);
    }
    REQUIRE(s8.genera.size() == 1);
    CHECK(s8.genera[0] == 0);

    // q = 9: conic families at qbar = 9 only (qbar = 3 is excluded), the
    // A6 pair, A5 — and no subfield rows since n/k = 2 is even.
    Spectrum s9 = spectrum(9);
    fams.clear();
    for (const auto& e : s9.entries) fams.push_back(e.family);
    CHECK(std::count(fams.begin(), fams.end(), "psl2") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "pgl2") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "a5") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "a6") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "a6:a5") == 1);
    CHECK(std::count(fams.begin(), fams.end(), "subfield-pgu") == 0);
    CHECK(std::count(fams.begin(), fams.end(), "h216") == 0);
    for (const auto& e : s9.entries)
        if (e.family == "psl2") CHECK(e.subfamily == "qbar=9");

    // q = 125: the full table column.  Every member family evaluates and
    // the integral genus values collapse to a frozen ten-element set.
    Spectrum s125 = spectrum(125);
    const std::vector<BigRational> expected = {
        BigRational(0),  BigRational(1),   BigRational(7),   BigRational(14),
        BigRational(27), BigRational(39),  BigRational(52),  BigRational(100),
        BigRational(114), BigRational(200),
    };
    CHECK(s125.genera == expected);

    // Genus bound: every integral value is at most the curve genus.
    for (int64_t q : {5, 7, 8, 9, 11, 13, 17, 25, 27, 32, 49, 125, 128}) {
        CAPTURE(q);
        Spectrum s = spectrum(q);
        const BigRational bound(q * (q - 1) / 2);
        for (const auto& e : s.entries) {
            CAPTURE(e.family);
            CHECK(e.result.applicable);
            if (e.result.integral) {
                CHECK(e.result.value >= 0);
                CHECK(e.result.value <= bound);
            }
        }
        for (const auto& g : s.genera) {
            CHECK(g >= 0);
            CHECK(g <= bound);
        }
    }
}

TEST_CASE("integrality scans: clean families are clean, the defect is localized") {
    // Families proved integral: no discrepancies up to q = 200.
    for (const char* fam : {"h72", "sg36", "sg36char2", "a5", "subfield-pgu",
                            "subfield-psu", "psl27", "pgl2", "sg720", "a6", "a7"}) {
        CAPTURE(fam);
        ScanReport rep = integrality_scan(fam, 200);
        CHECK(rep.evaluated > 0);
        CHECK(rep.discrepancies.empty());
    }

    // The order-216 Hessian expression fails integrality exactly where
    // 9 does not divide q+1.
    ScanReport h216 = integrality_scan("h216", 200);
    std::vector<int64_t> bad;
    for (const auto& row : h216.discrepancies) {
        bad.push_back(row.q);
        CHECK((row.q + 1) % 9 != 0);
        CHECK_FALSE(row.result.integral);
        CHECK_FALSE(row.result.note.empty());
    }
    for (int64_t q : {5, 11, 23, 29, 41})
        CHECK(std::find(bad.begin(), bad.end(), q) != bad.end());
    CHECK(std::find(bad.begin(), bad.end(), 17) == bad.end());
    CHECK(std::find(bad.begin(), bad.end(), 125) == bad.end());
    REQUIRE(bad.size() >= 5);
    CHECK(h216.discrepancies[0].result.value == frac(1, 3));   // q = 5
    CHECK(h216.discrepancies[1].result.value == frac(1, 3));   // q = 11
    CHECK(h216.discrepancies[2].result.value == frac(1, 3));   // q = 23
    CHECK(h216.discrepancies[3].result.value == frac(1, 3));   // q = 29
    CHECK(h216.discrepancies[4].result.value == frac(4, 3));   // q = 41

    // Scan coverage sanity: the order-36 Hessian family applies at the nine
    // odd prime powers q <= 60 with 3 | (q+1): 5, 11, 17, 23, 29, 41, 47, 53, 59.
    CHECK(integrality_scan("sg36", 60).evaluated == 9);

    // The PSL(2,qbar) conic expression, by contrast, is broken almost
    // everywhere it applies.
    ScanReport psl2 = integrality_scan("psl2", 30);
    CHECK(psl2.evaluated > 0);
    CHECK_FALSE(psl2.discrepancies.empty());

    CHECK_THROWS_AS(integrality_scan("no-such-family", 50), Error);
}
