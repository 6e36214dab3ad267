#pragma once

// Closed-form genus expressions for the quotient families, transcribed
// exactly as printed, together with their parameter case rules (alpha,
// beta, gamma, delta), applicability predicates, the per-q spectrum of
// attainable genera, and an integrality audit.
//
// Transcription policy: the expressions are implemented verbatim, including
// the ones the brute-force engine contradicts.  A non-integral or negative
// value is reported through the `integral` / `negative` flags and, where the
// engine has established what actually happens, a `note` explains the
// divergence.  The formulas are never silently "corrected".
//
// Everything here is pure integer arithmetic: no field tower is built, so
// scans over thousands of q are instant.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hq/rational.hpp"

namespace hq {

// Parameters entering a closed-form expression.  Only the ones a formula
// actually uses are set; q̄ and h describe a subfield/conic parameter with
// q = q̄^h.
struct FormulaParams {
    int64_t q = 0;
    std::optional<int64_t> qbar;
    std::optional<int> h;
    std::optional<int> alpha;
    std::optional<int> beta;
    std::optional<int> gamma;
    std::optional<int> delta;
};

struct FormulaResult {
    std::string family;    // stable tag: "h216", "sg36", "psl2", "a7:a5xc2", ...
    FormulaParams params;
    bool applicable = false;
    std::string why;       // reason when inapplicable, empty otherwise
    BigRational value;     // exact genus as printed (meaningful when applicable)
    BigInt raw_num;        // numerator and denominator as evaluated, before
    BigInt raw_den = 1;    // reduction (e.g. 16464 / 336 for PSL(2,7) at 139)
    bool integral = false;
    bool negative = false;  // value < 0: impossible for a genus
    std::string note;      // audit annotation where the engine contradicts the print
};

enum class HessianVariant { H216, H72, SG36 };
enum class ConicVariant { A5, PSL2, PGL2 };
enum class SubfieldVariant { SG36char2, PGU, PSU };

// Hessian tower (orders 216 / 72 / 36) for p odd, 3 | (q+1):
//   (q^2-34q+397-54d)/432,  (q^2-10q+133-54d)/144,  (q^2-10q+61-18d)/72,
// with d = 0 if 4 | (q+1), d = 2 if 4 | (q-1).
FormulaResult genus_hessian_family(int64_t q, HessianVariant v);

// Conic-stabilizer subgroups for p odd.  A5 (needs p=5 or 5 | (q^2-1)):
//   (q^2-16q+103-24c-20d)/120,
// c = 0 if 5|(q+1) else 2; d = 2 if p=3 or 3|(q-1), 0 if 3|(q+1).
// PSL(2,qb) and PGL(2,qb) (q = qb^h, qb != 3): the printed Delta sums with
// the qb mod 4 branch for PSL and d = 2 iff h even.  qbar is ignored for A5.
FormulaResult genus_conic_family(int64_t q, int64_t qbar, ConicVariant v);

// PSL(2,7) for p odd with p = 7 or sqrt(-7) not in F_q (tested as p = 7, or
// p = 2,5,6 mod 7 with n odd):
//   (q^2-22q+313-56a-48b-42c)/336,
// a = 0 if 3|(q+1) else 2; b = 0 if 7|(q+1), 3 if 7|(q^2-q+1), else 2;
// c = 0 if 4|(q+1) else 2.
FormulaResult genus_psl27(int64_t q);

// SmallGroup(720,765) tower for q an odd power of 5, in printed order
// SG36, A5, PSU(3,2), A6, SG720:
//   (q^2-10q+25)/72, (q^2-16q+55)/120, (q^2-10q+25)/144,
//   (q^2-46q+205)/720, (q^2-46q+205)/1440.
std::vector<FormulaResult> genus_sg720_family(int64_t q);

// A6 tower for (p = 3, n even) or (5 a square in F_q and no primitive cube
// roots of unity in F_q), in printed order A6, A5, SG36:
//   (q^2-46q+673-80a-90b-144c)/720, (q^2-16q+103-20a-24c)/120,
//   (q^2-10q+61-18b)/72,
// a = 2 iff p = 3; b = 2 iff p = 3 or q = 1 mod 4; c = 0 if 5|(q+1) else 2.
// The SG36 member is inapplicable at p = 3 (normal Sylow 3-subgroup fixes a
// rational curve point).
std::vector<FormulaResult> genus_a6_family(int64_t q);

// A7 tower for q an odd power of 5, in printed order A7, A6, PSL(2,7),
// A5xC2, A5, SG36:
//   (q^2-106q+2665-720b)/5040, (q^2-46q+205)/720, (q^2-22q+229-48b)/336,
//   (q^2-26q+105)/240, (q^2-16q+55)/120, (q^2-10q+25)/72,
// with b = 0 if 7|(q+1) else 3.
std::vector<FormulaResult> genus_a7_family(int64_t q);

// Subfield subgroups. SG36char2 (q an odd power of 2): (q^2-10q+16)/72.
// PGU(3,qb), qb = p^k with k | n and n/k odd: 1 + (q^2-q-2-Delta) over
// 2 qb^3 (qb^3+1)(qb^2-1), Delta summed per class with the four-case gamma
// rule in {0,3}.  PSU(3,qb) additionally needs 3 | (q+1); its Delta uses
// the /3 class sizes and delta in {0,3}.  qbar is ignored for SG36char2.
FormulaResult genus_subfield(int64_t q, int64_t qbar, SubfieldVariant v);

// One row of the per-q spectrum: which family produced which value.
struct SpectrumEntry {
    std::string family;     // e.g. "subfield-pgu", "psl2", "a7:a5xc2"
    std::string subfamily;  // e.g. "qbar=2", empty when the family is unique
    FormulaResult result;
};

struct Spectrum {
    int64_t q = 0;
    std::vector<SpectrumEntry> entries;   // fixed report order
    std::vector<BigRational> genera;      // sorted, deduplicated integral values
};

// Evaluates every family applicable at q: proper subfield PGU/PSU levels,
// char-2 SG36, the Hessian tower, the conic family over all admissible
// qbar, PSL(2,7), and the A6 / SmallGroup(720,765) / A7 towers.
Spectrum spectrum(int64_t q);

struct ScanRow {
    int64_t q;
    FormulaResult result;
};

// Every applicable evaluation of one family over prime powers q <= qmax,
// in increasing q.  Family tags: h216, h72, sg36, a5, psl2, pgl2, psl27,
// sg720, a6, a7, sg36char2, subfield-pgu, subfield-psu.  Multi-member
// families contribute every member; subfield/conic tags sweep every
// admissible qbar per q (including qbar = q, where the subfield
// expressions reduce to the full-group identity and must give 0).
std::vector<ScanRow> family_values(const std::string& family, int64_t qmax);

struct ScanReport {
    std::string family;
    int64_t qmax = 0;
    int64_t evaluated = 0;          // formula evaluations attempted
    std::vector<ScanRow> discrepancies;  // applicable but non-integral or negative
};

// Audits one family over every applicable prime power q <= qmax.  Family
// tags: h216, h72, sg36, a5, psl2, pgl2, psl27, sg720, a6, a7, sg36char2,
// subfield-pgu, subfield-psu (multi-member families scan every member;
// subfield/conic tags scan every admissible qbar per q).
ScanReport integrality_scan(const std::string& family, int64_t qmax);

}  // namespace hq
