#include "hq/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "hq/catalog.hpp"
#include "hq/error.hpp"
#include "hq/report.hpp"

namespace hq {

namespace {

struct Opts {
    int64_t p = 0;
    int n = 1;
    int64_t q = 0;
    std::string group;
    std::string matrix;
    std::string family;
    int64_t qmax = 0;
    std::string format = "tsv";
    std::string out;
    int64_t cap = 2'000'000;
    int jobs = 1;
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + out_path + "'");
    f << text;
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

int64_t parse_qbar(const std::string& param, const std::string& family) {
    try {
        size_t pos = 0;
        const int64_t v = std::stoll(param, &pos);
        if (pos != param.size() || v < 2) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw Error("family " + family + " needs an integer parameter >= 2, got '" + param + "'");
    }
}

// Closed-form counterparts of an engine family tag at q = p^n; empty when
// the family is formula-free or no formula applies there.  conic-psl picks
// up the abstract isomorphisms PSL(2,5) = A5 and PSL(2,9) = A6 as extra
// comparison rows (the PSL(2,qbar) class sums themselves are an audit
// target, not ground truth).
std::vector<FormulaResult> formulas_for(const SubgroupSpec& spec, int64_t p, int64_t q) {
    std::vector<FormulaResult> out;
    auto add = [&](FormulaResult r) {
        if (r.applicable) out.push_back(std::move(r));
    };
    const std::string& fam = spec.family;
    if (fam == "full-pgu") {
        add(genus_subfield(q, q, SubfieldVariant::PGU));
    } else if (fam == "full-psu") {
        add(genus_subfield(q, q, SubfieldVariant::PSU));
    } else if (fam == "subfield-pgu") {
        add(genus_subfield(q, parse_qbar(spec.param, fam), SubfieldVariant::PGU));
    } else if (fam == "subfield-psu") {
        add(genus_subfield(q, parse_qbar(spec.param, fam), SubfieldVariant::PSU));
    } else if (fam == "hessian216") {
        add(genus_hessian_family(q, HessianVariant::H216));
    } else if (fam == "hessian72") {
        add(genus_hessian_family(q, HessianVariant::H72));
    } else if (fam == "hessian36") {
        if (p == 2)
            add(genus_subfield(q, 0, SubfieldVariant::SG36char2));
        else
            add(genus_hessian_family(q, HessianVariant::SG36));
    } else if (fam == "conic-pgl") {
        add(genus_conic_family(q, parse_qbar(spec.param, fam), ConicVariant::PGL2));
    } else if (fam == "conic-psl") {
        const int64_t qbar = parse_qbar(spec.param, fam);
        add(genus_conic_family(q, qbar, ConicVariant::PSL2));
        if (qbar == 5) add(genus_conic_family(q, 0, ConicVariant::A5));
        if (qbar == 9)
            for (FormulaResult& r : genus_a6_family(q))
                if (r.family == "a6") add(std::move(r));
    } else if (fam == "a5") {
        add(genus_conic_family(q, 0, ConicVariant::A5));
    } else if (fam == "a6") {
        for (FormulaResult& r : genus_a6_family(q))
            if (r.family == "a6") add(std::move(r));
    }
    return out;
}

int cmd_classify(const Opts& o) {
    FieldTower t = FieldTower::build(o.p, o.n);
    const HermitianForm form = HermitianForm::fermat(t);
    Classifier cl(form);
    const GroupElement e = parse_element(form, o.matrix);
    emit(o.out, json_text(classify_json(cl, e)));
    return 0;
}

int cmd_census(const Opts& o) {
    RealizedGroup g = realize(o.p, o.n, SubgroupSpec::parse(o.group), o.cap);
    const TypeCensus c = census(g.sub, o.jobs);
    if (o.format == "json") {
        emit(o.out, json_text(census_json(c)));
    } else {
        std::string tsv = "# census label=" + g.sub.label() +
                          " q=" + std::to_string(g.con.form->tower().q()) +
                          " group_order=" + std::to_string(c.group_order) + "\norder\ttype\tcount\n";
        for (const auto& [key, count] : c.counts)
            tsv += std::to_string(key.first) + "\t" + type_name(key.second) + "\t" +
                   std::to_string(count) + "\n";
        emit(o.out, tsv);
    }
    return 0;
}

int cmd_genus(const Opts& o) {
    const SubgroupSpec spec = SubgroupSpec::parse(o.group);
    RealizedGroup g = realize(o.p, o.n, spec, o.cap);
    const GenusReport rep = quotient_genus(g.sub, o.jobs);

    std::vector<FormulaResult> audits = formulas_for(spec, o.p, rep.q);
    if (o.format == "json") {
        ordered_json j = genus_report_json(rep);
        if (!audits.empty()) {
            ordered_json arr = ordered_json::array();
            for (const FormulaResult& f : audits) {
                ordered_json row = formula_json(f);
                row["verdict"] = verify_verdict(rep.genus, f);
                arr.push_back(std::move(row));
            }
            j["formula_audit"] = std::move(arr);
        }
        emit(o.out, json_text(j));
    } else {
        std::string tsv = genus_report_tsv(rep);
        for (const FormulaResult& f : audits)
            tsv += "# formula " + f.family + " genus=" + rational_str(f.value) +
                   " verdict=" + verify_verdict(rep.genus, f) + "\n";
        emit(o.out, tsv);
    }
    return rep.integral ? 0 : 3;
}

int cmd_verify(const Opts& o) {
    std::vector<std::string> tags;
    if (!o.group.empty())
        tags.push_back(o.group);
    else
        tags = applicable_specs(o.p, o.n);

    const int64_t q = [&] {
        int64_t v = 1;
        for (int k = 0; k < o.n; ++k) v *= o.p;
        return v;
    }();

    std::vector<VerifyRow> rows;
    for (const std::string& tag : tags) {
        const SubgroupSpec spec = SubgroupSpec::parse(tag);
        if (spec.family == "user-file") continue;
        std::vector<FormulaResult> formulas = formulas_for(spec, o.p, q);
        if (formulas.empty()) continue;  // engine-only family: nothing to compare
        RealizedGroup g = realize(o.p, o.n, spec, o.cap);
        const GenusReport rep = quotient_genus(g.sub, o.jobs);
        for (FormulaResult& f : formulas) {
            VerifyRow row;
            row.family = tag;
            row.engine = rep.genus;
            row.verdict = verify_verdict(rep.genus, f);
            row.formula = std::move(f);
            rows.push_back(std::move(row));
        }
    }
    if (o.format == "json")
        emit(o.out, json_text(verify_json(q, rows)));
    else
        emit(o.out, verify_tsv(q, rows));
    return 0;
}

int cmd_spectrum(const Opts& o) {
    int64_t q = o.q;
    if (q == 0) {
        if (o.p == 0) throw Error("spectrum needs --q or --p/--n");
        q = 1;
        for (int k = 0; k < o.n; ++k) q *= o.p;
    }
    factor_prime_power(q);  // validates
    const Spectrum s = spectrum(q);
    if (o.format == "json")
        emit(o.out, json_text(spectrum_json(s)));
    else
        emit(o.out, spectrum_tsv(s));
    return 0;
}

int cmd_scan(const Opts& o) {
    const ScanReport rep = integrality_scan(o.family, o.qmax);
    if (o.format == "json")
        emit(o.out, json_text(scan_json(rep)));
    else
        emit(o.out, scan_tsv(rep));
    return 0;
}

int cmd_formula(const Opts& o) {
    const std::vector<ScanRow> rows = family_values(o.group, o.qmax);
    if (o.format == "json") {
        ordered_json j;
        j["family"] = o.group;
        j["qmax"] = o.qmax;
        ordered_json arr = ordered_json::array();
        for (const ScanRow& row : rows) arr.push_back(formula_json(row.result));
        j["rows"] = std::move(arr);
        emit(o.out, json_text(j));
    } else {
        std::string tsv = formula_tsv_header();
        for (const ScanRow& row : rows) tsv += formula_tsv_row(row.result);
        emit(o.out, tsv);
    }
    return 0;
}

int cmd_catalog_list(const Opts& o) {
    auto [p, n] = factor_prime_power(o.q);
    std::string text;
    for (const std::string& tag : applicable_specs(p, n)) text += tag + "\n";
    emit(o.out, text);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "hqgenus: genus of quotients of the Hermitian curve by unitary subgroups\n"
        "without fixed points or triangles — brute-force census vs closed forms"};
    app.require_subcommand(1);
    Opts o;

    const auto add_pn = [&](CLI::App* c, bool required) {
        auto* p = c->add_option("--p", o.p, "field characteristic (prime)");
        auto* n = c->add_option("--n", o.n, "extension degree: q = p^n");
        if (required) p->required();
        (void)n;
    };
    const auto add_io = [&](CLI::App* c) {
        c->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"tsv", "json"}));
        c->add_option("--out", o.out, "write output to a file instead of stdout");
    };
    const auto add_run = [&](CLI::App* c) {
        c->add_option("--cap", o.cap, "closure size cap");
        c->add_option("--jobs", o.jobs, "worker threads for classification");
    };

    auto* classify = app.add_subcommand("classify", "Classify one unitary matrix");
    add_pn(classify, true);
    classify->add_option("--matrix", o.matrix, "nine ';'-separated field entries, row-major")
        ->required();
    add_io(classify);

    auto* census_cmd = app.add_subcommand("census", "Order/type census of a catalog subgroup");
    add_pn(census_cmd, true);
    census_cmd->add_option("--group", o.group, "family tag, e.g. full-pgu, subfield-psu:2")
        ->required();
    add_io(census_cmd);
    add_run(census_cmd);

    auto* genus_cmd = app.add_subcommand("genus", "Quotient genus of a catalog subgroup");
    add_pn(genus_cmd, true);
    genus_cmd->add_option("--group", o.group, "family tag")->required();
    add_io(genus_cmd);
    add_run(genus_cmd);

    auto* verify_cmd =
        app.add_subcommand("verify", "Engine vs closed-form comparison at q = p^n");
    add_pn(verify_cmd, true);
    verify_cmd->add_option("--group", o.group, "restrict to one family tag");
    add_io(verify_cmd);
    add_run(verify_cmd);

    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "All applicable closed forms at one q");
    spectrum_cmd->add_option("--q", o.q, "prime power");
    add_pn(spectrum_cmd, false);
    add_io(spectrum_cmd);

    auto* scan_cmd = app.add_subcommand("scan", "Integrality audit of one formula family");
    scan_cmd->add_option("--family,--group", o.family, "formula family tag, e.g. h216")
        ->required();
    scan_cmd->add_option("--qmax", o.qmax, "scan q = 2..qmax")->required();
    add_io(scan_cmd);

    auto* formula_cmd =
        app.add_subcommand("formula", "Evaluate one formula family over q <= qmax");
    formula_cmd->add_option("--group,--family", o.group, "formula family tag")->required();
    formula_cmd->add_option("--qmax", o.qmax, "evaluate at prime powers up to qmax")
        ->required();
    add_io(formula_cmd);

    auto* catalog_cmd = app.add_subcommand("catalog", "Catalog inspection");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "List families realizable at q");
    list_cmd->add_option("--q", o.q, "prime power")->required();
    add_io(list_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(o);
        if (census_cmd->parsed()) return cmd_census(o);
        if (genus_cmd->parsed()) return cmd_genus(o);
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (spectrum_cmd->parsed()) return cmd_spectrum(o);
        if (scan_cmd->parsed()) return cmd_scan(o);
        if (formula_cmd->parsed()) return cmd_formula(o);
        if (catalog_cmd->parsed()) return cmd_catalog_list(o);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace hq
