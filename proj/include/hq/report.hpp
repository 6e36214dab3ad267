#pragma once

// Report emission: every result type rendered as deterministic JSON
// (ordered keys, stable across runs and worker counts — the JSON bytes are
// the determinism witness in the acceptance suite) and as TSV carrying the
// identical numeric content.  All exact values print as decimal strings,
// rationals as "num/den" ("0", "49", "1/3", "-1/6").

#include <string>
#include <vector>

#include "hq/classify.hpp"
#include "hq/formulas.hpp"
#include "hq/genus.hpp"
#include "json.hpp"

namespace hq {

using ordered_json = nlohmann::ordered_json;

// "0", "49", "1/3", "-1/6".
std::string rational_str(const BigRational& v);

// {"group_order": N, "classes": [{"order", "type", "count"}, ...]}.
ordered_json census_json(const TypeCensus& c);

// Full genus report with per-class contributions and the exact genus.
ordered_json genus_report_json(const GenusReport& r);
std::string genus_report_tsv(const GenusReport& r);

// One evaluated closed form.  Unset parameters are omitted (JSON) or
// printed as "-" (TSV).  TSV columns:
//   family  q  qbar  alpha  beta  gamma  delta  numerator  denominator
//   genus  integral
ordered_json formula_json(const FormulaResult& r);
std::string formula_tsv_header();
std::string formula_tsv_row(const FormulaResult& r);

ordered_json spectrum_json(const Spectrum& s);
std::string spectrum_tsv(const Spectrum& s);

ordered_json scan_json(const ScanReport& r);
std::string scan_tsv(const ScanReport& r);

// Engine-vs-formula comparison row.  The verdict is
//   "formula-non-integral"  when the closed form is not an integer,
//   "match"                 when both sides agree exactly,
//   "mismatch"              otherwise.
struct VerifyRow {
    std::string family;     // catalog tag, e.g. "hessian216"
    BigRational engine;     // engine genus (exact, from the census)
    FormulaResult formula;  // closed-form counterpart
    std::string verdict;
};
std::string verify_verdict(const BigRational& engine, const FormulaResult& formula);
ordered_json verify_json(int64_t q, const std::vector<VerifyRow>& rows);
std::string verify_tsv(int64_t q, const std::vector<VerifyRow>& rows);

// Classification record for one element: type, projective order, the
// contribution i, eigenvalues and the fixed configuration.
ordered_json classify_json(Classifier& cl, const GroupElement& e);

}  // namespace hq
