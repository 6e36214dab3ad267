#include "hq/catalog.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <utility>

#include "hq/error.hpp"
#include "json.hpp"

namespace hq {

namespace {

std::vector<int64_t> distinct_prime_factors(int64_t m) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        out.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) out.push_back(m);
    return out;
}

// First element of F_{p^d}* (enumeration order) of full multiplicative
// order p^d - 1.
Fe primitive_element(const FieldTower& t, int d) {
    int64_t m = 1;
    for (int i = 0; i < d; ++i) m *= t.p();
    --m;
    std::vector<int64_t> factors = distinct_prime_factors(m);
    for (const Fe& g : t.subfield_elements(d)) {
        if (g.is_zero()) continue;
        bool primitive = true;
        for (int64_t f : factors)
            if (t.pow(g, m / f) == t.one()) {
                primitive = false;
                break;
            }
        if (primitive) return g;
    }
    throw InternalInconsistency("no primitive element in subfield of order " + std::to_string(m + 1));
}

// First c in F_{qbar^2} (qbar = p^k) with c^qbar + c = rhs.
Fe trace_preimage(const FieldTower& t, int k, const Fe& rhs, bool nonzero) {
    for (const Fe& c : t.subfield_elements(2 * k)) {
        if (nonzero && c.is_zero()) continue;
        if (t.add(t.frobenius(c, k), c) == rhs) return c;
    }
    throw InternalInconsistency("no trace preimage in F_{p^" + std::to_string(2 * k) + "}");
}

// Shared generator recipe for the full group (k = n) and its subfield
// copies (k < n): translation per basis element of F_{qbar^2}, central
// translation, diagonal torus generator, X<->Z involution.
std::vector<GroupElement> unitary_group_gens(const HermitianForm& f, int k, bool special_only) {
    const FieldTower& t = f.tower();
    Fe z = t.zero(), o = t.one();
    std::vector<GroupElement> gens;
    for (const Fe& b : t.subfield_basis(2 * k)) {
        Fe c = trace_preimage(t, k, t.mul(b, t.conj(b)), false);
        gens.push_back(make_element(f, {o, t.conj(b), c, z, o, b, z, z, o}));
    }
    gens.push_back(make_element(f, {o, z, trace_preimage(t, k, z, true), z, o, z, z, z, o}));
    Fe a = primitive_element(t, 2 * k);
    if (special_only) a = t.mul(t.mul(a, a), a);
    gens.push_back(make_element(f, {t.mul(a, t.conj(a)), z, z, z, a, z, z, z, o}));
    gens.push_back(make_element(f, {z, z, o, z, o, z, o, z, z}));
    return gens;
}

int64_t parse_group_param(const SubgroupSpec& spec) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(spec.param, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (spec.param.empty() || pos != spec.param.size() || v < 2)
        throw Error("group " + spec.family + " needs a numeric parameter, got '" + spec.param + "'");
    return v;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// qbar must be p^k with k | n; returns k.
int subfield_exponent(int64_t p, int n, int64_t qbar, const std::string& who) {
    int k = 0;
    int64_t v = 1;
    while (v < qbar && k <= n) {
        v *= p;
        ++k;
    }
    if (v != qbar || k < 1)
        throw Error(who + ": parameter " + std::to_string(qbar) + " is not a power of p = " +
                    std::to_string(p) + " below q");
    if (n % k != 0)
        throw Error(who + ": F_{" + std::to_string(qbar) + "} is not a subfield of F_q (k does not divide n)");
    return k;
}

// True when <h> is normal in the group generated by `gens` containing it.
bool generates_normal_cyclic(const Subgroup& h_group, const GroupElement& h) {
    std::unordered_set<std::string> powers;
    GroupElement x = h;
    while (!is_identity(x)) {
        powers.insert(h_group.pack(x));
        x = mul(x, h);
    }
    for (const GroupElement& s : h_group.generators()) {
        GroupElement conj = mul(mul(s, h), inverse(s));
        if (!powers.count(h_group.pack(conj))) return false;
    }
    return true;
}

bool has_nontrivial_normal_cyclic(const Subgroup& h) {
    for (int64_t i = 0; i < h.order(); ++i) {
        GroupElement e = h.element(i);
        if (is_identity(e)) continue;
        if (generates_normal_cyclic(h, e)) return true;
    }
    return false;
}

}  // namespace

Construction full_group_generators(int64_t p, int n, bool special_only) {
    auto tower = std::make_shared<FieldTower>(FieldTower::build(p, n));
    auto form = std::make_shared<HermitianForm>(HermitianForm::norm_trace(*tower));
    std::vector<GroupElement> gens = unitary_group_gens(*form, n, special_only);
    return Construction{tower, form, std::move(gens),
                        special_only ? "full-psu" : "full-pgu"};
}

Construction subfield_generators(int64_t p, int n, int64_t qbar, bool special_only) {
    int k = subfield_exponent(p, n, qbar, "subfield group");
    if ((n / k) % 2 == 0)
        throw Error("subfield group: n/k = " + std::to_string(n / k) +
                    " is even, so the copy over F_{" + std::to_string(qbar) +
                    "^2} is not unitary for the ambient form");
    auto tower = std::make_shared<FieldTower>(FieldTower::build(p, n));
    auto form = std::make_shared<HermitianForm>(HermitianForm::norm_trace(*tower));
    std::vector<GroupElement> gens = unitary_group_gens(*form, k, special_only);
    return Construction{tower, form, std::move(gens),
                        (special_only ? "subfield-psu:" : "subfield-pgu:") + std::to_string(qbar)};
}

Construction hessian_variant_generators(int64_t p, int n, int order) {
    if (order != 216 && order != 72 && order != 36)
        throw Error("hessian variant order must be 216, 72 or 36");
    auto tower = std::make_shared<FieldTower>(FieldTower::build(p, n));
    const FieldTower& t = *tower;
    if ((t.q() + 1) % 3 != 0)
        throw Error("hessian subgroup requires 3 | (q+1); q = " + std::to_string(t.q()));
    auto form = std::make_shared<HermitianForm>(HermitianForm::fermat(t));

    // Primitive cube root of unity: lives in F_{p^2} for every p != 3.
    Fe eps = t.zero();
    bool found = false;
    for (const Fe& e : t.subfield_elements(2)) {
        if (t.add(t.add(t.mul(e, e), e), t.one()).is_zero()) {
            eps = e;
            found = true;
            break;
        }
    }
    if (!found) throw InternalInconsistency("no cube root of unity in F_{p^2}");
    Fe eps2 = t.mul(eps, eps);
    Fe z = t.zero(), o = t.one();

    GroupElement d1 = make_element(*form, {o, z, z, z, eps, z, z, z, eps2});
    GroupElement cyc = make_element(*form, {z, o, z, z, z, o, o, z, z});
    GroupElement fourier = make_element(*form, {o, o, o, o, eps, eps2, o, eps2, eps});
    GroupElement d2 = make_element(*form, {o, z, z, z, o, z, z, z, eps});

    std::vector<GroupElement> gens{d1, cyc, fourier};
    std::string label = "hessian36";
    if (order == 216) {
        gens.push_back(d2);
        label = "hessian216";
    } else if (order == 72) {
        gens.push_back(mul(mul(d2, fourier), inverse(d2)));
        label = "hessian72";
    }
    return Construction{tower, form, std::move(gens), label};
}

Construction hessian_generators(int64_t p, int n) { return hessian_variant_generators(p, n, 216); }

GroupElement conic_embedding(const HermitianForm& conic_form, const std::array<Fe, 4>& a) {
    const FieldTower& t = conic_form.tower();
    if (conic_form.name() != "conic")
        throw Error("conic_embedding requires the conic-adapted form, got '" + conic_form.name() + "'");
    for (const Fe& e : a)
        if (!t.in_fq(e)) throw Error("conic_embedding: matrix entry outside F_q");
    const Fe &A = a[0], &B = a[1], &C = a[2], &D = a[3];
    Fe two = t.from_int(2);
    Mat3 m{t.mul(A, A),           t.mul(A, B),                         t.mul(B, B),
           t.mul(two, t.mul(A, C)), t.add(t.mul(A, D), t.mul(B, C)),   t.mul(two, t.mul(B, D)),
           t.mul(C, C),           t.mul(C, D),                         t.mul(D, D)};
    return make_element(conic_form, m);
}

Construction conic_group_generators(int64_t p, int n, int64_t qbar, bool special_only) {
    int k = subfield_exponent(p, n, qbar, "conic group");
    auto tower = std::make_shared<FieldTower>(FieldTower::build(p, n));
    const FieldTower& t = *tower;
    auto form = std::make_shared<HermitianForm>(HermitianForm::conic(t));
    Fe z = t.zero(), o = t.one();
    std::vector<GroupElement> gens;
    for (const Fe& lam : t.subfield_basis(k)) {
        gens.push_back(conic_embedding(*form, {o, lam, z, o}));
        gens.push_back(conic_embedding(*form, {o, z, lam, o}));
    }
    if (!special_only) gens.push_back(conic_embedding(*form, {primitive_element(t, k), z, z, o}));
    return Construction{tower, form, std::move(gens),
                        (special_only ? "conic-psl:" : "conic-pgl:") + std::to_string(qbar)};
}

Construction load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open generator file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("generator file " + path + ": " + e.what());
    }
    try {
        int64_t p = j.at("p").get<int64_t>();
        int n = j.at("n").get<int>();
        auto tower = std::make_shared<FieldTower>(FieldTower::build(p, n));
        const auto& form_entries = j.at("form");
        if (!form_entries.is_array() || form_entries.size() != 9)
            throw Error("generator file " + path + ": 'form' must list 9 field elements");
        Mat3 gram;
        for (int i = 0; i < 9; ++i) gram[i] = tower->parse(form_entries[i].get<std::string>());
        auto form = std::make_shared<HermitianForm>(
            HermitianForm::custom(*tower, gram, "user"));
        std::vector<GroupElement> gens;
        for (const auto& row : j.at("generators")) {
            if (!row.is_array() || row.size() != 9)
                throw Error("generator file " + path + ": each generator must list 9 entries");
            Mat3 m;
            for (int i = 0; i < 9; ++i) m[i] = tower->parse(row[i].get<std::string>());
            gens.push_back(make_element(*form, m));
        }
        return Construction{tower, form, std::move(gens), "user-file:" + path};
    } catch (const nlohmann::json::exception& e) {
        throw Error("generator file " + path + ": " + e.what());
    }
}

Subgroup extract_subgroup(const Subgroup& g, int64_t order, bool forbid_cyclic_normal,
                          const std::string& label) {
    std::string lab = label.empty() ? g.label() + "/extract:" + std::to_string(order) : label;
    if (order < 1) throw Error("extract_subgroup: order must be positive");
    if (g.order() % order != 0)
        throw Error("extract_subgroup: " + std::to_string(order) + " does not divide |G| = " +
                    std::to_string(g.order()));
    if (order == 1) return closure(g.form(), {}, 2, lab);

    std::vector<GroupElement> cand;
    for (int64_t i = 0; i < g.order(); ++i) {
        GroupElement e = g.element(i);
        if (is_identity(e)) continue;
        if (order % projective_order(e) == 0) cand.push_back(e);
    }

    int64_t attempts = 0;
    auto try_tuple = [&](std::vector<GroupElement> tuple) -> std::optional<Subgroup> {
        if (++attempts > 2'000'000)
            throw Error("extract_subgroup: search budget exhausted looking for order " +
                        std::to_string(order));
        Subgroup h = [&] {
            try {
                return closure(g.form(), std::move(tuple), order, lab);
            } catch (const CapExceeded&) {
                return closure(g.form(), {}, 2, lab);  // sentinel: wrong order
            }
        }();
        if (h.order() != order) return std::nullopt;
        if (forbid_cyclic_normal && has_nontrivial_normal_cyclic(h)) return std::nullopt;
        return h;
    };

    size_t m = cand.size();
    for (size_t i = 0; i < m; ++i)
        if (auto h = try_tuple({cand[i]})) return *h;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (auto h = try_tuple({cand[i], cand[j]})) return *h;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k)
                if (auto h = try_tuple({cand[i], cand[j], cand[k]})) return *h;
    throw Error("extract_subgroup: no subgroup of order " + std::to_string(order) +
                (forbid_cyclic_normal ? " without normal cyclic subgroups" : "") + " found in " +
                g.label());
}

SubgroupSpec SubgroupSpec::parse(const std::string& tag) {
    size_t pos = tag.find(':');
    if (pos == std::string::npos) return SubgroupSpec{tag, ""};
    return SubgroupSpec{tag.substr(0, pos), tag.substr(pos + 1)};
}

std::string SubgroupSpec::str() const { return param.empty() ? family : family + ":" + param; }

std::pair<int64_t, int> factor_prime_power(int64_t q) {
    if (q < 2) throw Error("q must be at least 2");
    int64_t p = 0;
    for (int64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1};
    int n = 0;
    int64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++n;
    }
    if (v != 1) throw Error("q = " + std::to_string(q) + " is not a prime power");
    return {p, n};
}

namespace {

RealizedGroup close_checked(Construction con, int64_t want, int64_t cap) {
    Subgroup s = closure(*con.form, con.gens, cap, con.label);
    if (want > 0 && s.order() != want)
        throw InternalInconsistency(con.label + " closed to order " + std::to_string(s.order()) +
                                    ", expected " + std::to_string(want));
    return RealizedGroup{std::move(con), std::move(s)};
}

// Smallest qbar = p^k (k | n) whose PGL(2, qbar) contains A5 and is small
// enough to search; 0 when there is none.
int64_t a5_host_qbar(int64_t p, int n) {
    for (int k = 1; k <= n; ++k) {
        if (n % k != 0) continue;
        int64_t qb = ipow(p, k);
        if ((qb * (qb * qb - 1)) % 5 != 0) continue;
        if (qb * qb * qb - qb > 20000) break;
        return qb;
    }
    return 0;
}

}  // namespace

RealizedGroup realize(int64_t p, int n, const SubgroupSpec& spec, int64_t cap) {
    const std::string& f = spec.family;
    int64_t q = ipow(p, n);
    if (f == "full-pgu") return close_checked(full_group_generators(p, n, false), group_orders(q).pgu, cap);
    if (f == "full-psu") return close_checked(full_group_generators(p, n, true), group_orders(q).psu, cap);
    if (f == "subfield-pgu" || f == "subfield-psu") {
        bool special = f == "subfield-psu";
        int64_t qb = parse_group_param(spec);
        GroupOrders want = group_orders(qb);
        return close_checked(subfield_generators(p, n, qb, special), special ? want.psu : want.pgu,
                             cap);
    }
    if (f == "hessian216") return close_checked(hessian_variant_generators(p, n, 216), 216, cap);
    if (f == "hessian72") return close_checked(hessian_variant_generators(p, n, 72), 72, cap);
    if (f == "hessian36") return close_checked(hessian_variant_generators(p, n, 36), 36, cap);
    if (f == "conic-pgl" || f == "conic-psl") {
        bool special = f == "conic-psl";
        int64_t qb = parse_group_param(spec);
        int64_t want = qb * qb * qb - qb;
        if (special) want /= std::gcd<int64_t>(2, qb - 1);
        return close_checked(conic_group_generators(p, n, qb, special), want, cap);
    }
    if (f == "a5") {
        if (p == 2) throw Error("a5 engine realization needs odd characteristic (conic model)");
        if (p == 5) {
            Construction con = conic_group_generators(p, n, 5, true);
            con.label = "a5";
            return close_checked(std::move(con), 60, cap);
        }
        int64_t qb = a5_host_qbar(p, n);
        if (qb == 0)
            throw Error("a5: no subfield PGL(2, qbar) at q = " + std::to_string(q) +
                        " contains A5 within the extraction budget");
        RealizedGroup host = realize(p, n, SubgroupSpec{"conic-pgl", std::to_string(qb)}, cap);
        Subgroup sub = extract_subgroup(host.sub, 60, true, "a5");
        Construction con{host.con.tower, host.con.form, sub.generators(), "a5"};
        return RealizedGroup{std::move(con), std::move(sub)};
    }
    if (f == "a6") {
        if (p != 3 || n % 2 != 0)
            throw Error("a6 engine realization requires q = 9^m (PSL(2,9) conic model)");
        Construction con = conic_group_generators(p, n, 9, true);
        con.label = "a6";
        return close_checked(std::move(con), 360, cap);
    }
    if (f == "user-file") {
        if (spec.param.empty()) throw Error("user-file group needs a path parameter");
        return close_checked(load_generator_file(spec.param), 0, cap);
    }
    throw Error("unknown group family '" + f + "'");
}

std::vector<std::string> applicable_specs(int64_t p, int n) {
    int64_t q = ipow(p, n);
    std::vector<std::string> out{"full-pgu"};
    if ((q + 1) % 3 == 0) out.push_back("full-psu");
    for (int k = 1; k < n; ++k) {
        if (n % k != 0 || ((n / k) % 2) == 0) continue;
        int64_t qb = ipow(p, k);
        out.push_back("subfield-pgu:" + std::to_string(qb));
        if ((qb + 1) % 3 == 0) out.push_back("subfield-psu:" + std::to_string(qb));
    }
    if ((q + 1) % 3 == 0) {
        out.push_back("hessian216");
        out.push_back("hessian72");
        out.push_back("hessian36");
    }
    if (p % 2 == 1) {
        for (int k = 1; k <= n; ++k) {
            if (n % k != 0) continue;
            int64_t qb = ipow(p, k);
            if (qb == 3) continue;
            out.push_back("conic-pgl:" + std::to_string(qb));
            out.push_back("conic-psl:" + std::to_string(qb));
        }
        if (p == 5 || a5_host_qbar(p, n) != 0) out.push_back("a5");
    }
    if (p == 3 && n % 2 == 0) out.push_back("a6");
    return out;
}

}  // namespace hq
