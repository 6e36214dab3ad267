#include "hq/geometry.hpp"

#include <sstream>

namespace hq {

namespace {

// Deterministic basis (U, V) of the points of a line: the line is then
// exactly {U + tV : t} union {V}.
std::pair<Vec3, Vec3> line_basis(const FieldTower& t, const ProjLine& l) {
    const Fe &u = l.v[0], &v = l.v[1], &w = l.v[2];
    Fe z = t.zero(), o = t.one();
    if (!w.is_zero()) return {{o, z, t.neg(t.div(u, w))}, {z, o, t.neg(t.div(v, w))}};
    if (!v.is_zero()) return {{o, t.neg(t.div(u, v)), z}, {z, z, o}};
    return {{z, o, z}, {z, z, o}};  // u != 0: the line X = 0
}

// Lazy odometer over all p^{6n} elements of the big field.
template <typename Fn>
void for_each_field_element(const FieldTower& t, Fn&& fn) {
    Fe cur = t.zero();
    const int d = t.deg();
    const int32_t top = static_cast<int32_t>(t.p()) - 1;
    for (;;) {
        fn(cur);
        int i = d - 1;
        while (i >= 0 && cur.c[i] == top) cur.c[i--] = 0;
        if (i < 0) return;
        ++cur.c[i];
    }
}

}  // namespace

Vec3 canonicalize(const FieldTower& t, const Vec3& v) {
    int last = -1;
    for (int i = 2; i >= 0; --i)
        if (!v[i].is_zero()) {
            last = i;
            break;
        }
    if (last < 0) throw Error("canonicalize: zero projective vector");
    if (v[last] == t.one()) return v;
    Fe s = t.inv(v[last]);
    return {v[0] * s, v[1] * s, v[2] * s};
}

ProjPoint make_point(const FieldTower& t, const Fe& x, const Fe& y, const Fe& z) {
    return ProjPoint{canonicalize(t, {x, y, z})};
}

ProjLine make_line(const FieldTower& t, const Fe& u, const Fe& v, const Fe& w) {
    return ProjLine{canonicalize(t, {u, v, w})};
}

bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.v == b.v; }
bool operator==(const ProjLine& a, const ProjLine& b) { return a.v == b.v; }

HermitianForm HermitianForm::fermat(const FieldTower& t) {
    Fe z = t.zero(), o = t.one();
    return HermitianForm(&t, {o, z, z, z, o, z, z, z, o}, "fermat");
}

HermitianForm HermitianForm::norm_trace(const FieldTower& t) {
    // X^q Z + X Z^q - Y^{q+1} = 0: entries B_{13} = B_{31} = 1, B_{22} = -1.
    Fe z = t.zero(), o = t.one(), m = t.neg(t.one());
    return HermitianForm(&t, {z, z, o, z, m, z, o, z, z}, "norm_trace");
}

HermitianForm HermitianForm::conic(const FieldTower& t) {
    if (t.p() == 2) throw Error("conic form requires odd characteristic");
    // Polarization of Y^2 - 4XZ; symmetric with all entries in F_p, so
    // matrices with entries in F_q are unitary for it iff they preserve that
    // conic up to scalar.  This is the quadric preserved by the symmetric-
    // square embedding A |-> [[a^2,ab,b^2],[2ac,ad+bc,2bd],[c^2,cd,d^2]].
    Fe z = t.zero(), o = t.one(), m2 = t.from_int(-2);
    return HermitianForm(&t, {z, z, m2, z, o, z, m2, z, z}, "conic");
}

HermitianForm HermitianForm::custom(const FieldTower& t, const Mat3& gram, std::string name) {
    for (int i = 0; i < 9; ++i) {
        if (gram[i].tw == nullptr || !gram[i].tw->same_field(t))
            throw Error("hermitian form: entry from a different tower");
        if (!t.in_fq2(gram[i])) throw Error("hermitian form: entry outside F_{q^2}");
    }
    Mat3 tr = transpose3(gram);
    Mat3 cj = frob3(t, gram, t.n());
    for (int i = 0; i < 9; ++i)
        if (!(tr[i] == cj[i])) throw Error("hermitian form: B^T != B^(q)");
    if (det3(gram).is_zero()) throw Error("hermitian form: singular Gram matrix");
    return HermitianForm(&t, gram, std::move(name));
}

Fe hermitian_eval(const HermitianForm& f, const ProjPoint& p) {
    const FieldTower& t = f.tower();
    Vec3 pc = {t.conj(p.v[0]), t.conj(p.v[1]), t.conj(p.v[2])};
    Vec3 bp = apply3(f.gram(), pc);
    return p.v[0] * bp[0] + p.v[1] * bp[1] + p.v[2] * bp[2];
}

bool on_curve(const HermitianForm& f, const ProjPoint& p) {
    return hermitian_eval(f, p).is_zero();
}

std::vector<ProjPoint> curve_points_fq2(const HermitianForm& f) {
    const FieldTower& t = f.tower();
    std::vector<Fe> fq2 = t.subfield_elements(2 * t.n());
    std::vector<ProjPoint> out;
    Fe o = t.one(), z = t.zero();
    for (const Fe& x : fq2)
        for (const Fe& y : fq2) {
            ProjPoint p{{x, y, o}};
            if (on_curve(f, p)) out.push_back(p);
        }
    for (const Fe& x : fq2) {
        ProjPoint p{{x, o, z}};
        if (on_curve(f, p)) out.push_back(p);
    }
    ProjPoint inf{{o, z, z}};
    if (on_curve(f, inf)) out.push_back(inf);
    return out;
}

ProjLine polar_line(const HermitianForm& f, const ProjPoint& p) {
    const FieldTower& t = f.tower();
    Vec3 pc = {t.conj(p.v[0]), t.conj(p.v[1]), t.conj(p.v[2])};
    return ProjLine{canonicalize(t, apply3(f.gram(), pc))};
}

ProjPoint pole(const HermitianForm& f, const ProjLine& l) {
    const FieldTower& t = f.tower();
    Vec3 pq = apply3(adj3(f.gram()), l.v);  // B^{-1} l up to scalar
    // Undo the conjugation: x -> x^q is inverted by x -> x^{p^{5n}}.
    Vec3 p = {t.frobenius(pq[0], 5 * t.n()), t.frobenius(pq[1], 5 * t.n()),
              t.frobenius(pq[2], 5 * t.n())};
    return ProjPoint{canonicalize(t, p)};
}

bool incident(const ProjPoint& p, const ProjLine& l) {
    return (p.v[0] * l.v[0] + p.v[1] * l.v[1] + p.v[2] * l.v[2]).is_zero();
}

std::vector<ProjPoint> line_points_fq2(const FieldTower& t, const ProjLine& l) {
    auto [U, V] = line_basis(t, l);
    std::vector<ProjPoint> out;
    for (const Fe& s : t.subfield_elements(2 * t.n())) {
        Vec3 w = {U[0] + s * V[0], U[1] + s * V[1], U[2] + s * V[2]};
        out.push_back(ProjPoint{canonicalize(t, w)});
    }
    out.push_back(ProjPoint{canonicalize(t, V)});
    return out;
}

std::vector<ProjPoint> line_curve_points(const HermitianForm& f, const ProjLine& l) {
    const FieldTower& t = f.tower();
    auto [U, V] = line_basis(t, l);
    std::vector<ProjPoint> out;
    for_each_field_element(t, [&](const Fe& s) {
        Vec3 w = {U[0] + s * V[0], U[1] + s * V[1], U[2] + s * V[2]};
        ProjPoint p{canonicalize(t, w)};
        if (on_curve(f, p)) out.push_back(p);
    });
    ProjPoint pv{canonicalize(t, V)};
    if (on_curve(f, pv)) out.push_back(pv);
    return out;
}

int64_t line_curve_count(const HermitianForm& f, const ProjLine& l) {
    const FieldTower& t = f.tower();
    auto [U, V] = line_basis(t, l);
    // Count without canonicalizing: U + sV runs over distinct points.
    int64_t n = 0;
    const Mat3& B = f.gram();
    for_each_field_element(t, [&](const Fe& s) {
        Vec3 w = {U[0] + s * V[0], U[1] + s * V[1], U[2] + s * V[2]};
        Vec3 wc = {t.conj(w[0]), t.conj(w[1]), t.conj(w[2])};
        Vec3 bw = apply3(B, wc);
        if ((w[0] * bw[0] + w[1] * bw[1] + w[2] * bw[2]).is_zero()) ++n;
    });
    ProjPoint pv{canonicalize(t, V)};
    if (on_curve(f, pv)) ++n;
    return n;
}

Rationality rationality_level(const FieldTower& t, const ProjPoint& p) {
    for (int i = 0; i < 3; ++i)
        if (!t.in_fq2(p.v[i])) return Rationality::Fq6;
    return Rationality::Fq2;
}

namespace {

Vec3 parse_vec3(const FieldTower& t, const std::string& s, const char* what) {
    std::stringstream ss(s);
    std::string tok;
    std::vector<Fe> parts;
    while (std::getline(ss, tok, ';')) parts.push_back(t.parse(tok));
    if (parts.size() != 3) throw Error(std::string(what) + ": expected three ';'-separated field elements");
    return {parts[0], parts[1], parts[2]};
}

}  // namespace

std::string format_point(const FieldTower& t, const ProjPoint& p) {
    return t.format(p.v[0]) + ";" + t.format(p.v[1]) + ";" + t.format(p.v[2]);
}

ProjPoint parse_point(const FieldTower& t, const std::string& s) {
    return ProjPoint{canonicalize(t, parse_vec3(t, s, "parse_point"))};
}

std::string format_line(const FieldTower& t, const ProjLine& l) {
    return t.format(l.v[0]) + ";" + t.format(l.v[1]) + ";" + t.format(l.v[2]);
}

ProjLine parse_line(const FieldTower& t, const std::string& s) {
    return ProjLine{canonicalize(t, parse_vec3(t, s, "parse_line"))};
}

}  // namespace hq
