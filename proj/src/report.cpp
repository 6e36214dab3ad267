#include "hq/report.hpp"

#include <sstream>

#include "hq/geometry.hpp"

namespace hq {

namespace {

std::string big_str(const BigInt& v) { return v.str(); }

// Optional parameter -> JSON (omitted when unset) / TSV ("-" when unset).
template <typename T>
void put_opt(ordered_json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
std::string opt_str(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string("-");
}

}  // namespace

std::string rational_str(const BigRational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

ordered_json census_json(const TypeCensus& c) {
    ordered_json j;
    j["group_order"] = c.group_order;
    ordered_json classes = ordered_json::array();
    for (const auto& [key, count] : c.counts) {
        ordered_json row;
        row["order"] = key.first;
        row["type"] = type_name(key.second);
        row["count"] = count;
        classes.push_back(std::move(row));
    }
    j["classes"] = std::move(classes);
    return j;
}

ordered_json genus_report_json(const GenusReport& r) {
    ordered_json j;
    j["label"] = r.label;
    j["q"] = r.q;
    j["group_order"] = r.group_order;
    j["delta"] = r.delta;
    j["genus"] = rational_str(r.genus);
    j["integral"] = r.integral;
    j["negative"] = r.negative;
    ordered_json classes = ordered_json::array();
    for (const GenusRow& row : r.rows) {
        ordered_json c;
        c["order"] = row.order;
        c["type"] = type_name(row.type);
        c["count"] = row.count;
        c["i"] = row.i;
        c["subtotal"] = row.subtotal;
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return j;
}

std::string genus_report_tsv(const GenusReport& r) {
    std::ostringstream out;
    out << "# genus-report label=" << r.label << " q=" << r.q << " group_order=" << r.group_order
        << " delta=" << r.delta << " genus=" << rational_str(r.genus)
        << " integral=" << (r.integral ? "true" : "false")
        << " negative=" << (r.negative ? "true" : "false") << "\n";
    out << "order\ttype\tcount\ti\tsubtotal\n";
    for (const GenusRow& row : r.rows)
        out << row.order << '\t' << type_name(row.type) << '\t' << row.count << '\t' << row.i
            << '\t' << row.subtotal << '\n';
    return out.str();
}

ordered_json formula_json(const FormulaResult& r) {
    ordered_json j;
    j["family"] = r.family;
    j["q"] = r.params.q;
    put_opt(j, "qbar", r.params.qbar);
    put_opt(j, "h", r.params.h);
    put_opt(j, "alpha", r.params.alpha);
    put_opt(j, "beta", r.params.beta);
    put_opt(j, "gamma", r.params.gamma);
    put_opt(j, "delta", r.params.delta);
    j["applicable"] = r.applicable;
    if (!r.applicable) {
        j["why"] = r.why;
        return j;
    }
    j["numerator"] = big_str(r.raw_num);
    j["denominator"] = big_str(r.raw_den);
    j["genus"] = rational_str(r.value);
    j["integral"] = r.integral;
    j["negative"] = r.negative;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string formula_tsv_header() {
    return "family\tq\tqbar\talpha\tbeta\tgamma\tdelta\tnumerator\tdenominator\tgenus\t"
           "integral\n";
}

std::string formula_tsv_row(const FormulaResult& r) {
    std::ostringstream out;
    out << r.family << '\t' << r.params.q << '\t' << opt_str(r.params.qbar) << '\t'
        << opt_str(r.params.alpha) << '\t' << opt_str(r.params.beta) << '\t'
        << opt_str(r.params.gamma) << '\t' << opt_str(r.params.delta) << '\t';
    if (r.applicable)
        out << big_str(r.raw_num) << '\t' << big_str(r.raw_den) << '\t' << rational_str(r.value)
            << '\t' << (r.integral ? "true" : "false");
    else
        out << "-\t-\t-\tinapplicable: " << r.why;
    out << '\n';
    return out.str();
}

ordered_json spectrum_json(const Spectrum& s) {
    ordered_json j;
    j["q"] = s.q;
    ordered_json entries = ordered_json::array();
    for (const SpectrumEntry& e : s.entries) {
        ordered_json row = formula_json(e.result);
        if (!e.subfamily.empty()) row["subfamily"] = e.subfamily;
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    ordered_json genera = ordered_json::array();
    for (const BigRational& g : s.genera) genera.push_back(rational_str(g));
    j["genera"] = std::move(genera);
    return j;
}

std::string spectrum_tsv(const Spectrum& s) {
    std::ostringstream out;
    out << "# spectrum q=" << s.q << "\n";
    out << "family\tsubfamily\tgenus\tintegral\tnote\n";
    for (const SpectrumEntry& e : s.entries) {
        out << e.family << '\t' << (e.subfamily.empty() ? "-" : e.subfamily) << '\t'
            << rational_str(e.result.value) << '\t' << (e.result.integral ? "true" : "false")
            << '\t' << (e.result.note.empty() ? "-" : e.result.note) << '\n';
    }
    out << "# genera";
    for (const BigRational& g : s.genera) out << '\t' << rational_str(g);
    out << '\n';
    return out.str();
}

ordered_json scan_json(const ScanReport& r) {
    ordered_json j;
    j["family"] = r.family;
    j["qmax"] = r.qmax;
    j["evaluated"] = r.evaluated;
    ordered_json rows = ordered_json::array();
    for (const ScanRow& row : r.discrepancies) {
        ordered_json d = formula_json(row.result);
        d["q"] = row.q;
        rows.push_back(std::move(d));
    }
    j["discrepancies"] = std::move(rows);
    return j;
}

std::string scan_tsv(const ScanReport& r) {
    std::ostringstream out;
    out << "# scan family=" << r.family << " qmax=" << r.qmax << " evaluated=" << r.evaluated
        << " discrepancies=" << r.discrepancies.size() << "\n";
    if (!r.discrepancies.empty()) out << "q\t" << formula_tsv_header();
    for (const ScanRow& row : r.discrepancies) out << row.q << '\t' << formula_tsv_row(row.result);
    return out.str();
}

std::string verify_verdict(const BigRational& engine, const FormulaResult& formula) {
    if (!formula.integral) return "formula-non-integral";
    return engine == formula.value ? "match" : "mismatch";
}

ordered_json verify_json(int64_t q, const std::vector<VerifyRow>& rows) {
    ordered_json j;
    j["q"] = q;
    ordered_json arr = ordered_json::array();
    for (const VerifyRow& row : rows) {
        ordered_json r;
        r["family"] = row.family;
        r["engine"] = rational_str(row.engine);
        r["formula"] = rational_str(row.formula.value);
        r["formula_family"] = row.formula.family;
        r["verdict"] = row.verdict;
        if (!row.formula.note.empty()) r["note"] = row.formula.note;
        arr.push_back(std::move(r));
    }
    j["rows"] = std::move(arr);
    return j;
}

std::string verify_tsv(int64_t q, const std::vector<VerifyRow>& rows) {
    std::ostringstream out;
    out << "# verify q=" << q << "\n";
    out << "family\tengine\tformula\tverdict\n";
    for (const VerifyRow& row : rows)
        out << row.family << '\t' << rational_str(row.engine) << '\t'
            << rational_str(row.formula.value) << '\t' << row.verdict << '\n';
    return out.str();
}

ordered_json classify_json(Classifier& cl, const GroupElement& e) {
    const FieldTower& t = cl.form().tower();
    const RamRecord rec = cl.ram_contribution(e);
    const FixedStructure fs = cl.fixed_points(e);

    ordered_json j;
    j["q"] = t.q();
    j["form"] = cl.form().name();
    j["type"] = type_name(rec.type);
    j["order"] = rec.order;
    j["i"] = rec.i;

    ordered_json eig = ordered_json::array();
    for (size_t k = 0; k < fs.eigenvalues.size(); ++k) {
        ordered_json row;
        row["value"] = t.format(fs.eigenvalues[k]);
        row["alg_mult"] = fs.alg_mult[k];
        row["geom_dim"] = fs.geom_dim[k];
        eig.push_back(std::move(row));
    }
    j["eigenvalues"] = std::move(eig);

    ordered_json pts = ordered_json::array();
    for (const FixedPointInfo& p : fs.points) {
        ordered_json row;
        row["point"] = format_point(t, p.point);
        row["rationality"] = p.level == Rationality::Fq2 ? "Fq2" : "Fq6";
        row["on_curve"] = p.on_curve;
        pts.push_back(std::move(row));
    }
    j["fixed_points"] = std::move(pts);
    if (fs.axis) j["axis"] = format_line(t, *fs.axis);
    return j;
}

}  // namespace hq
