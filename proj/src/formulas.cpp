#include "hq/formulas.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "hq/error.hpp"

namespace hq {

namespace {

struct PrimePower {
    int64_t p;
    int n;
};

PrimePower factor_pp(int64_t q) {
    if (q < 2 || q > 1'000'000'000'000)
        throw Error("formula: q must be a prime power in [2, 10^12], got " + std::to_string(q));
    int64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) p = q;
    int64_t v = q;
    int n = 0;
    while (v % p == 0) {
        v /= p;
        ++n;
    }
    if (v != 1) throw Error("formula: q = " + std::to_string(q) + " is not a prime power");
    return {p, n};
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

FormulaResult base(std::string family, int64_t q) {
    FormulaResult r;
    r.family = std::move(family);
    r.params.q = q;
    return r;
}

FormulaResult& inapplicable(FormulaResult& r, std::string why) {
    r.applicable = false;
    r.why = std::move(why);
    return r;
}

FormulaResult& finish(FormulaResult& r, const BigInt& num, const BigInt& den) {
    r.applicable = true;
    r.value = BigRational(num, den);
    r.raw_num = num;
    r.raw_den = den;
    r.integral = boost::multiprecision::denominator(r.value) == 1;
    r.negative = r.value < 0;
    return r;
}

BigInt exact_div(const BigInt& num, int64_t den, const char* what) {
    if (num % den != 0)
        throw InternalInconsistency(std::string("formula: ") + what + " is not an integer");
    return num / den;
}

// Shared hypothesis of the Hessian tower: odd characteristic, 3 | (q+1).
bool hessian_applicable(int64_t q, int64_t p, std::string* why) {
    if (p == 2) {
        *why = "requires odd characteristic";
        return false;
    }
    if ((q + 1) % 3 != 0) {
        *why = "requires 3 | (q+1)";
        return false;
    }
    return true;
}

}  // namespace

FormulaResult genus_hessian_family(int64_t q, HessianVariant v) {
    const char* tag = v == HessianVariant::H216 ? "h216"
                      : v == HessianVariant::H72 ? "h72"
                                                 : "sg36";
    FormulaResult r = base(tag, q);
    auto [p, n] = factor_pp(q);
    std::string why;
    if (!hessian_applicable(q, p, &why)) return inapplicable(r, why);

    const int delta = ((q + 1) % 4 == 0) ? 0 : 2;
    r.params.delta = delta;
    const BigInt q2 = BigInt(q) * q;
    switch (v) {
        case HessianVariant::H216:
            finish(r, q2 - 34 * q + 397 - 54 * delta, 432);
            if (!r.integral)
                r.note =
                    "non-integral: the closed form holds only when 9 | (q+1) (this group "
                    "otherwise fixes a point or a triangle); the enumeration engine at q = 5 "
                    "classifies the two large order-3 classes oppositely and finds genus 0";
            break;
        case HessianVariant::H72:
            finish(r, q2 - 10 * q + 133 - 54 * delta, 144);
            break;
        case HessianVariant::SG36:
            finish(r, q2 - 10 * q + 61 - 18 * delta, 72);
            break;
    }
    return r;
}

FormulaResult genus_conic_family(int64_t q, int64_t qbar, ConicVariant v) {
    auto [p, n] = factor_pp(q);
    const BigInt Q = q;

    if (v == ConicVariant::A5) {
        FormulaResult r = base("a5", q);
        if (p == 2) return inapplicable(r, "requires odd characteristic");
        if (p != 5 && (Q * Q - 1) % 5 != 0)
            return inapplicable(r, "requires p = 5 or 5 | (q^2 - 1)");
        const int gamma = ((q + 1) % 5 == 0) ? 0 : 2;
        const int delta = (p == 3 || (q - 1) % 3 == 0) ? 2 : 0;
        r.params.gamma = gamma;
        r.params.delta = delta;
        return finish(r, Q * Q - 16 * q + 103 - 24 * gamma - 20 * delta, 120);
    }

    FormulaResult r = base(v == ConicVariant::PSL2 ? "psl2" : "pgl2", q);
    if (p == 2) return inapplicable(r, "requires odd characteristic");
    if (qbar < 2) return inapplicable(r, "requires a subfield parameter qbar >= 2");
    auto [pb, k] = factor_pp(qbar);
    if (pb != p) return inapplicable(r, "qbar must be a power of the same prime as q");
    if (n % k != 0 || ipow(pb, k * (n / k)) != q)
        return inapplicable(r, "q must be a power of qbar");
    if (qbar == 3) return inapplicable(r, "qbar = 3 is excluded");
    const int h = n / k;
    const int delta = (h % 2 == 0) ? 2 : 0;
    r.params.qbar = qbar;
    r.params.h = h;
    r.params.delta = delta;

    const BigInt b = qbar;
    BigInt D;
    if (v == ConicVariant::PSL2) {
        // Class sums as printed, branching on qbar mod 4.
        if (qbar % 4 == 1)
            D = 2 * (b - 2) * (b + 1) + 2 * (b * (b + 1) / 2) * ((b - 1) / 2 - 2) +
                (b * (b + 1) / 2) * (Q + 1) + delta * (b * (b - 1) / 2) * ((b + 1) / 2 - 1);
        else
            D = 2 * (b - 1) * (b + 1) + 2 * (b * (b + 1) / 2) * ((b - 1) / 2 - 1) +
                (b * (b + 1) / 2) * (Q + 1) + delta * (b * (b - 1) / 2) * ((b + 1) / 2 - 2);
        finish(r, Q * Q - Q - 2 - D + b * (b + 1) * (b - 1), b * (b + 1) * (b - 1));
        if (!r.integral)
            r.note =
                "non-integral: these class sums disagree with the enumeration engine where "
                "both run (engine genus 0 at q = qbar = 7, where this expression gives -1/6)";
        return r;
    }
    D = 2 * (b - 1) * (b + 1) + (b * (b + 1) / 2) * (Q + 1) + (b * (b - 1) / 2) * (Q + 1) +
        2 * (b * (b + 1) / 2) * (b - 3) + delta * (b * (b - 1) / 2) * (b - 1);
    return finish(r, Q * Q - Q - 2 - D + 2 * b * (b + 1) * (b - 1), 2 * b * (b + 1) * (b - 1));
}

FormulaResult genus_psl27(int64_t q) {
    FormulaResult r = base("psl27", q);
    auto [p, n] = factor_pp(q);
    if (p == 2) return inapplicable(r, "requires odd characteristic");
    // -7 is a non-square in F_q  <=>  it is a non-square mod p and n is odd.
    // By quadratic reciprocity (-7|p) = (p|7), so that means p = 3, 5, 6
    // mod 7.  (At p = 2 mod 7, e.g. p = 23, the ambient group order
    // q^3(q^3+1)(q^2-1) is prime to 7 and no such subgroup exists at all.)
    const int64_t pm7 = p % 7;
    if (!(p == 7 || ((pm7 == 3 || pm7 == 5 || pm7 == 6) && n % 2 == 1)))
        return inapplicable(r,
                            "requires p = 7 or -7 a non-square in F_q "
                            "(p = 3, 5, 6 mod 7 with n odd)");
    const BigInt Q = q;
    const int alpha = ((q + 1) % 3 == 0) ? 0 : 2;
    const int beta = ((q + 1) % 7 == 0) ? 0 : (((Q * Q - q + 1) % 7 == 0) ? 3 : 2);
    const int gamma = ((q + 1) % 4 == 0) ? 0 : 2;
    r.params.alpha = alpha;
    r.params.beta = beta;
    r.params.gamma = gamma;
    return finish(r, Q * Q - 22 * q + 313 - 56 * alpha - 48 * beta - 42 * gamma, 336);
}

std::vector<FormulaResult> genus_sg720_family(int64_t q) {
    auto [p, n] = factor_pp(q);
    const bool ok = (p == 5 && n % 2 == 1);
    const BigInt Q = q;

    std::vector<FormulaResult> out;
    auto emit = [&](const char* tag, const BigInt& num, int64_t den) {
        FormulaResult r = base(tag, q);
        if (!ok) {
            inapplicable(r, "requires q an odd power of 5");
        } else {
            finish(r, num, den);
        }
        out.push_back(std::move(r));
    };
    emit("sg720:sg36", Q * Q - 10 * q + 25, 72);
    emit("sg720:a5", Q * Q - 16 * q + 55, 120);
    emit("sg720:psu32", Q * Q - 10 * q + 25, 144);
    emit("sg720:a6", Q * Q - 46 * q + 205, 720);
    emit("sg720", Q * Q - 46 * q + 205, 1440);
    return out;
}

std::vector<FormulaResult> genus_a6_family(int64_t q) {
    auto [p, n] = factor_pp(q);
    const bool sqrt5 = (p == 5) || (q % 5 == 1) || (q % 5 == 4);
    const bool no_cube_roots = (q % 3 != 1);
    const bool ok = (p != 2) && ((p == 3 && n % 2 == 0) || (sqrt5 && no_cube_roots));
    const char* why = (p == 2) ? "requires odd characteristic"
                               : "requires p = 3 with n even, or 5 a square in F_q with no "
                                 "primitive cube roots of unity in F_q";

    const int alpha = (p == 3) ? 2 : 0;
    const int beta = (p == 3 || q % 4 == 1) ? 2 : 0;
    const int gamma = ((q + 1) % 5 == 0) ? 0 : 2;
    const BigInt Q = q;

    std::vector<FormulaResult> out;

    FormulaResult a6 = base("a6", q);
    if (ok) {
        a6.params.alpha = alpha;
        a6.params.beta = beta;
        a6.params.gamma = gamma;
        finish(a6, Q * Q - 46 * q + 673 - 80 * alpha - 90 * beta - 144 * gamma, 720);
    } else {
        inapplicable(a6, why);
    }
    out.push_back(std::move(a6));

    FormulaResult a5 = base("a6:a5", q);
    if (ok) {
        a5.params.alpha = alpha;
        a5.params.gamma = gamma;
        finish(a5, Q * Q - 16 * q + 103 - 20 * alpha - 24 * gamma, 120);
    } else {
        inapplicable(a5, why);
    }
    out.push_back(std::move(a5));

    FormulaResult sg36 = base("a6:sg36", q);
    if (!ok) {
        inapplicable(sg36, why);
    } else if (p == 3) {
        inapplicable(sg36, "at p = 3 the normal Sylow 3-subgroup fixes a rational curve point");
    } else {
        sg36.params.beta = beta;
        finish(sg36, Q * Q - 10 * q + 61 - 18 * beta, 72);
    }
    out.push_back(std::move(sg36));
    return out;
}

std::vector<FormulaResult> genus_a7_family(int64_t q) {
    auto [p, n] = factor_pp(q);
    const bool ok = (p == 5 && n % 2 == 1);
    const int beta = ((q + 1) % 7 == 0) ? 0 : 3;
    const BigInt Q = q;

    std::vector<FormulaResult> out;
    auto emit = [&](const char* tag, const BigInt& num, int64_t den, bool uses_beta) {
        FormulaResult r = base(tag, q);
        if (!ok) {
            inapplicable(r, "requires q an odd power of 5");
        } else {
            if (uses_beta) r.params.beta = beta;
            finish(r, num, den);
        }
        out.push_back(std::move(r));
    };
    emit("a7", Q * Q - 106 * q + 2665 - 720 * beta, 5040, true);
    emit("a7:a6", Q * Q - 46 * q + 205, 720, false);
    emit("a7:psl27", Q * Q - 22 * q + 229 - 48 * beta, 336, true);
    emit("a7:a5xc2", Q * Q - 26 * q + 105, 240, false);
    emit("a7:a5", Q * Q - 16 * q + 55, 120, false);
    emit("a7:sg36", Q * Q - 10 * q + 25, 72, false);
    return out;
}

FormulaResult genus_subfield(int64_t q, int64_t qbar, SubfieldVariant v) {
    auto [p, n] = factor_pp(q);
    const BigInt Q = q;

    if (v == SubfieldVariant::SG36char2) {
        FormulaResult r = base("sg36char2", q);
        if (p != 2 || n % 2 == 0) return inapplicable(r, "requires q an odd power of 2");
        return finish(r, Q * Q - 10 * q + 16, 72);
    }

    FormulaResult r = base(v == SubfieldVariant::PGU ? "subfield-pgu" : "subfield-psu", q);
    if (qbar < 2) return inapplicable(r, "requires a subfield parameter qbar >= 2");
    auto [pb, k] = factor_pp(qbar);
    if (pb != p) return inapplicable(r, "qbar must be a power of the same prime as q");
    if (n % k != 0) return inapplicable(r, "qbar must generate a subfield of F_q");
    const int h = n / k;
    if (h % 2 == 0) return inapplicable(r, "requires n/k odd (the embedding is unitary only then)");
    r.params.qbar = qbar;
    r.params.h = h;

    const BigInt b = qbar;
    const BigInt b2 = b * b, b3 = b * b * b;
    // Common class blocks: elations, further p-singular elements, singer
    // block (the gamma/delta-weighted term), and the two-point torus block.
    const BigInt elations = (b - 1) * (b3 + 1) * (Q + 2);
    const BigInt psing = (b3 - b) * (b3 + 1) * 2;
    const BigInt singer_block = exact_div(b3 * b3 + b2 * b3 - b2 * b2 - b3, 3, "Singer block");

    if (v == SubfieldVariant::PGU) {
        int gamma;
        const BigInt t = b2 - b + 1;
        if (qbar != 2) {
            if ((Q * Q - Q + 1) % t == 0)
                gamma = 3;
            else if ((Q + 1) % t == 0)
                gamma = 0;
            else
                throw InternalInconsistency(
                    "subfield PGU: no gamma case applies at q = " + std::to_string(q) +
                    ", qbar = " + std::to_string(qbar));
        } else {
            if ((q + 1) % 3 != 0)
                throw InternalInconsistency("subfield PGU: 3 | (q+1) must hold for qbar = 2");
            gamma = (n % 3 == 0) ? 0 : 3;
        }
        r.params.gamma = gamma;
        const BigInt delta_sum = elations + psing + b * (b2 * b2 - b3 + b2) * (Q + 1) +
                                 (b2 - b - 2) * ((b3 + 1) * b3 / 2) * 2 +
                                 (b - 1) * b * (b3 + 1) * b2 + (b2 - b) * singer_block * gamma;
        return finish(r, Q * Q - Q - 2 - delta_sum + 2 * b3 * (b3 + 1) * (b2 - 1),
                      2 * b3 * (b3 + 1) * (b2 - 1));
    }

    if ((q + 1) % 3 != 0)
        return inapplicable(r, "requires 3 | (q+1) (otherwise PSU(3,qbar) = PGU(3,qbar))");
    const BigInt t3 = exact_div(b2 - b + 1, 3, "(qbar^2-qbar+1)/3");
    int delta = 0;
    if (t3 != 1) {
        if ((Q * Q - Q + 1) % t3 == 0)
            delta = 3;
        else if ((Q + 1) % t3 == 0)
            delta = 0;
        else
            throw InternalInconsistency(
                "subfield PSU: no delta case applies at q = " + std::to_string(q) +
                ", qbar = " + std::to_string(qbar));
    }
    r.params.delta = delta;
    const BigInt homs = (b + 1) / 3 - 1;
    const BigInt delta_sum = elations + psing + homs * (b2 * b2 - b3 + b2) * (Q + 1) +
                             ((b2 - 1) / 3 - (b + 1) / 3) * ((b3 + 1) * b3 / 2) * 2 +
                             (b - 1) * homs * (b3 + 1) * b2 + (t3 - 1) * singer_block * delta;
    const BigInt den = 2 * b3 * (b2 - 1) * (b3 + 1);
    return finish(r, 3 * (Q * Q - Q - 2 - delta_sum) + den, den);
}

Spectrum spectrum(int64_t q) {
    Spectrum s;
    s.q = q;
    auto [p, n] = factor_pp(q);

    auto add = [&](const std::string& sub, FormulaResult r) {
        if (!r.applicable) return;
        s.entries.push_back({r.family, sub, std::move(r)});
    };

    // Proper subfield levels (k = n would be the group itself).
    for (int k = 1; k < n; ++k) {
        if (n % k != 0 || ((n / k) % 2) == 0) continue;
        const int64_t qb = ipow(p, k);
        add("qbar=" + std::to_string(qb), genus_subfield(q, qb, SubfieldVariant::PGU));
        add("qbar=" + std::to_string(qb), genus_subfield(q, qb, SubfieldVariant::PSU));
    }
    add("", genus_subfield(q, 0, SubfieldVariant::SG36char2));

    add("", genus_hessian_family(q, HessianVariant::H216));
    add("", genus_hessian_family(q, HessianVariant::H72));
    add("", genus_hessian_family(q, HessianVariant::SG36));

    if (p != 2) {
        for (int k = 1; k <= n; ++k) {
            if (n % k != 0) continue;
            const int64_t qb = ipow(p, k);
            if (qb == 3) continue;
            add("qbar=" + std::to_string(qb), genus_conic_family(q, qb, ConicVariant::PSL2));
            add("qbar=" + std::to_string(qb), genus_conic_family(q, qb, ConicVariant::PGL2));
        }
        add("", genus_conic_family(q, 0, ConicVariant::A5));
    }

    add("", genus_psl27(q));
    for (FormulaResult& r : genus_a6_family(q)) add("", std::move(r));
    for (FormulaResult& r : genus_sg720_family(q)) add("", std::move(r));
    for (FormulaResult& r : genus_a7_family(q)) add("", std::move(r));

    std::set<BigRational> seen;
    for (const SpectrumEntry& e : s.entries)
        if (e.result.integral && !e.result.negative) seen.insert(e.result.value);
    s.genera.assign(seen.begin(), seen.end());
    return s;
}

std::vector<ScanRow> family_values(const std::string& family, int64_t qmax) {
    std::vector<ScanRow> out;

    auto is_prime_power = [](int64_t q) {
        if (q < 2) return false;
        int64_t p = 2;
        while (p * p <= q && q % p != 0) ++p;
        if (p * p > q) p = q;
        int64_t v = q;
        while (v % p == 0) v /= p;
        return v == 1;
    };

    for (int64_t q = 2; q <= qmax; ++q) {
        if (!is_prime_power(q)) continue;
        auto [p, n] = factor_pp(q);

        std::vector<FormulaResult> batch;
        if (family == "h216") {
            batch.push_back(genus_hessian_family(q, HessianVariant::H216));
        } else if (family == "h72") {
            batch.push_back(genus_hessian_family(q, HessianVariant::H72));
        } else if (family == "sg36") {
            batch.push_back(genus_hessian_family(q, HessianVariant::SG36));
        } else if (family == "a5") {
            batch.push_back(genus_conic_family(q, 0, ConicVariant::A5));
        } else if (family == "psl2" || family == "pgl2") {
            const ConicVariant v = family == "psl2" ? ConicVariant::PSL2 : ConicVariant::PGL2;
            if (p != 2)
                for (int k = 1; k <= n; ++k)
                    if (n % k == 0 && ipow(p, k) != 3)
                        batch.push_back(genus_conic_family(q, ipow(p, k), v));
        } else if (family == "psl27") {
            batch.push_back(genus_psl27(q));
        } else if (family == "sg720") {
            batch = genus_sg720_family(q);
        } else if (family == "a6") {
            batch = genus_a6_family(q);
        } else if (family == "a7") {
            batch = genus_a7_family(q);
        } else if (family == "sg36char2") {
            batch.push_back(genus_subfield(q, 0, SubfieldVariant::SG36char2));
        } else if (family == "subfield-pgu" || family == "subfield-psu") {
            const SubfieldVariant v =
                family == "subfield-pgu" ? SubfieldVariant::PGU : SubfieldVariant::PSU;
            for (int k = 1; k <= n; ++k)
                if (n % k == 0 && ((n / k) % 2) == 1)
                    batch.push_back(genus_subfield(q, ipow(p, k), v));
        } else {
            throw Error("unknown scan family '" + family + "'");
        }

        for (FormulaResult& r : batch)
            if (r.applicable) out.push_back({q, std::move(r)});
    }
    return out;
}

ScanReport integrality_scan(const std::string& family, int64_t qmax) {
    ScanReport rep;
    rep.family = family;
    rep.qmax = qmax;
    for (ScanRow& row : family_values(family, qmax)) {
        ++rep.evaluated;
        if (!row.result.integral || row.result.negative)
            rep.discrepancies.push_back(std::move(row));
    }
    return rep;
}

}  // namespace hq
