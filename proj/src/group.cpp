#include "hq/group.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

namespace hq {

namespace {

// Scale so the first nonzero entry (row-major) is 1.
Mat3 canonical_scale(const FieldTower& t, const Mat3& m) {
    int first = -1;
    for (int i = 0; i < 9; ++i)
        if (!m[i].is_zero()) {
            first = i;
            break;
        }
    if (first < 0) throw Error("group element: zero matrix");
    if (m[first] == t.one()) return m;
    return scale3(t, m, t.inv(m[first]));
}

}  // namespace

bool operator==(const GroupElement& a, const GroupElement& b) {
    if (a.form == nullptr || b.form == nullptr) throw Error("==: uninitialized group element");
    return a.m == b.m;
}

GroupElement make_element(const HermitianForm& f, const Mat3& raw) {
    const FieldTower& t = f.tower();
    for (int i = 0; i < 9; ++i) {
        if (raw[i].tw == nullptr || !raw[i].tw->same_field(t))
            throw Error("make_element: entry from a different tower");
        if (!t.in_fq2(raw[i]))
            throw Error("make_element: entry " + t.format(raw[i]) + " outside F_{q^2}");
    }
    if (det3(raw).is_zero()) throw Error("make_element: singular matrix");
    // Unitary condition M^T B M^(q) = lambda B.
    Mat3 r = mul3(mul3(transpose3(raw), f.gram()), frob3(t, raw, t.n()));
    const Mat3& B = f.gram();
    int anchor = -1;
    for (int i = 0; i < 9; ++i)
        if (!B[i].is_zero()) {
            anchor = i;
            break;
        }
    Fe lambda = t.div(r[anchor], B[anchor]);
    if (lambda.is_zero()) throw Error("make_element: degenerate unitary scalar");
    for (int i = 0; i < 9; ++i) {
        Fe residual = r[i] - lambda * B[i];
        if (!residual.is_zero())
            throw Error("make_element: matrix is not unitary for the active form (residual " +
                        t.format(residual) + " at entry " + std::to_string(i / 3) + "," +
                        std::to_string(i % 3) + ")");
    }
    return GroupElement{&f, canonical_scale(t, raw)};
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    if (a.form != b.form) throw Error("mul: elements of different groups");
    return GroupElement{a.form, canonical_scale(a.form->tower(), mul3(a.m, b.m))};
}

GroupElement inverse(const GroupElement& a) {
    // The adjugate is the inverse up to the (nonzero) determinant factor,
    // which canonical scaling absorbs.
    return GroupElement{a.form, canonical_scale(a.form->tower(), adj3(a.m))};
}

GroupElement identity(const HermitianForm& f) {
    const FieldTower& t = f.tower();
    Fe z = t.zero(), o = t.one();
    return GroupElement{&f, {o, z, z, z, o, z, z, z, o}};
}

bool is_identity(const GroupElement& a) {
    return a.m == identity(*a.form).m;
}

int64_t projective_order(const GroupElement& a) {
    const int64_t q = a.form->tower().q();
    const int64_t bound = 8 * q * q + 16;
    GroupElement cur = a;
    for (int64_t k = 1; k <= bound; ++k) {
        if (is_identity(cur)) return k;
        cur = mul(cur, a);
    }
    throw InternalInconsistency("projective order exceeds bound " + std::to_string(bound));
}

bool is_special(const GroupElement& a) {
    return a.form->tower().is_cube_fq2(det3(a.m));
}

Subgroup::Subgroup(const HermitianForm* form, std::string label)
    : form_(form), label_(std::move(label)) {}

std::string Subgroup::pack(const GroupElement& e) const {
    const FieldTower& t = form_->tower();
    const int per = t.deg() * t.pack_bytes_per_coeff();
    std::string key(static_cast<size_t>(per) * 9, '\0');
    for (int i = 0; i < 9; ++i)
        t.pack(e.m[i], reinterpret_cast<uint8_t*>(key.data()) + static_cast<size_t>(i) * per);
    return key;
}

GroupElement Subgroup::element(int64_t i) const {
    const FieldTower& t = form_->tower();
    const int per = t.deg() * t.pack_bytes_per_coeff();
    const std::string& key = elems_.at(static_cast<size_t>(i));
    GroupElement e;
    e.form = form_;
    for (int k = 0; k < 9; ++k)
        e.m[k] = t.unpack(reinterpret_cast<const uint8_t*>(key.data()) + static_cast<size_t>(k) * per);
    return e;
}

bool Subgroup::contains(const GroupElement& e) const {
    std::string key = pack(e);
    for (const std::string& k : elems_)
        if (k == key) return true;
    return false;
}

Subgroup closure(const HermitianForm& f, const std::vector<GroupElement>& gens, int64_t cap,
                 std::string label) {
    Subgroup g(&f, std::move(label));
    g.gens_ = gens;
    std::unordered_set<std::string_view> seen;
    auto push = [&](const GroupElement& e) -> bool {
        std::string key = g.pack(e);
        if (seen.contains(std::string_view(key))) return false;
        g.elems_.push_back(std::move(key));
        // Heap buffers of non-SSO strings survive vector reallocation, so
        // views into the stored keys stay valid.
        seen.insert(std::string_view(g.elems_.back()));
        return true;
    };
    push(identity(f));
    for (size_t head = 0; head < g.elems_.size(); ++head) {
        GroupElement e = g.element(static_cast<int64_t>(head));
        for (const GroupElement& gen : gens) {
            GroupElement prod = mul(e, gen);
            if (push(prod) && static_cast<int64_t>(g.elems_.size()) > cap)
                throw CapExceeded(cap, static_cast<int64_t>(g.elems_.size()));
        }
    }
    return g;
}

GroupOrders group_orders(int64_t q) {
    if (q < 2) throw Error("group_orders: q must be >= 2");
    if (q > 200) throw Error("group_orders: q = " + std::to_string(q) + " beyond the supported range");
    int64_t pgu = q * q * q * (q * q * q + 1) * (q * q - 1);
    int64_t idx = std::gcd<int64_t>(3, q + 1);
    return GroupOrders{pgu, pgu / idx, idx};
}

std::vector<std::pair<std::string, int64_t>> maximal_orders(int64_t q) {
    std::vector<std::pair<std::string, int64_t>> out;
    out.emplace_back("m1_curve_point_stab", q * q * q * (q * q - 1));
    out.emplace_back("m2_polar_point_stab", q * (q + 1) * (q + 1) * (q - 1));
    out.emplace_back("m3_triangle_stab", 6 * (q + 1) * (q + 1));
    out.emplace_back("m4_singer_normalizer", 3 * (q * q - q + 1));
    if ((q + 1) % 3 == 0) out.emplace_back("psu", group_orders(q).psu);
    return out;
}

std::string format_element(const GroupElement& e) {
    const FieldTower& t = e.form->tower();
    std::string s;
    for (int i = 0; i < 9; ++i) {
        if (i) s += ';';
        s += t.format(e.m[i]);
    }
    return s;
}

GroupElement parse_element(const HermitianForm& f, const std::string& s) {
    const FieldTower& t = f.tower();
    std::stringstream ss(s);
    std::string tok;
    std::vector<Fe> parts;
    while (std::getline(ss, tok, ';')) parts.push_back(t.parse(tok));
    if (parts.size() != 9) throw Error("parse_element: expected nine ';'-separated entries");
    Mat3 m;
    for (int i = 0; i < 9; ++i) m[i] = parts[i];
    return make_element(f, m);
}

}  // namespace hq
