#include "hq/fields.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>

namespace hq {

namespace {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// --- raw polynomial helpers over F_p used only during tower construction ---
// (coefficients low degree first, no implicit monic normalization)

using Poly = std::vector<int64_t>;

void trim(Poly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, int64_t p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

// a mod f with f monic.
Poly pmod(Poly a, const Poly& f, int64_t p) {
    int d = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
        int64_t c = a[i] % p;
        if (c) {
            a[i] = 0;
            for (int j = 0; j < d; ++j) a[i - d + j] = ((a[i - d + j] - c * f[j]) % p + p) % p;
        } else {
            a[i] = 0;
        }
    }
    a.resize(std::max(d, 1));
    trim(a);
    return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    return pmod(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, int64_t e, const Poly& f, int64_t p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = pmulmod(r, base, f, p);
        e >>= 1;
        base = pmulmod(base, base, f, p);
    }
    return r;
}

Poly pgcd(Poly a, Poly b, int64_t p) {
    auto inv_mod = [p](int64_t v) {
        int64_t r = 1, base = ((v % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            e >>= 1;
            base = base * base % p;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!(b.size() == 1 && b[0] == 0)) {
        int64_t lead = inv_mod(b.back());
        Poly bm(b.size());
        for (size_t i = 0; i < b.size(); ++i) bm[i] = b[i] * lead % p;
        Poly r = (a.size() >= bm.size()) ? pmod(a, bm, p) : a;
        a = bm;
        b = r;
        trim(b);
    }
    return a;
}

// Distinct-degree style irreducibility test for monic f of degree d:
// irreducible iff it has no factor of degree <= d/2.
bool is_irreducible(const Poly& f, int64_t p) {
    int d = static_cast<int>(f.size()) - 1;
    if (f[0] == 0) return false;  // root 0
    int64_t at1 = 0;
    for (int64_t c : f) at1 = (at1 + c) % p;
    if (at1 == 0) return false;  // root 1
    Poly h{0, 1};                // X
    for (int k = 1; k <= d / 2; ++k) {
        h = ppowmod(h, p, f, p);  // h = X^{p^k} mod f
        Poly g = h;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        trim(g);
        if (g.size() == 1 && g[0] == 0) return false;  // all roots in F_{p^k}, k < d
        if (pgcd(f, g, p).size() > 1) return false;
    }
    return true;
}

}  // namespace

FieldTower FieldTower::build(int64_t p, int n, int degree_cap) {
    if (!is_prime(p)) throw Error("field tower: p = " + std::to_string(p) + " is not prime");
    // Keeps q^2 = p^{2n} (n <= 4 under the default cap) comfortably inside
    // int64 and keeps element enumeration feasible.
    if (p > 1000) throw Error("field tower: p too large (limit 1000)");
    if (n < 1) throw Error("field tower: n must be >= 1");
    if (degree_cap > kMaxDeg) degree_cap = kMaxDeg;
    int d = 6 * n;
    if (d > degree_cap)
        throw Error("field tower: degree 6n = " + std::to_string(d) +
                    " exceeds the degree cap " + std::to_string(degree_cap));

    // Lexicographically least monic irreducible: odometer over the tuple
    // (c_0, c_1, ..., c_{d-1}) with c_0 the most significant position.
    // c_0 = 0 never yields an irreducible (X divides f), so start at c_0 = 1.
    std::vector<int64_t> c(d, 0);
    c[0] = 1;
    Poly f(d + 1, 0);
    f[d] = 1;
    for (;;) {
        for (int i = 0; i < d; ++i) f[i] = c[i];
        if (is_irreducible(f, p)) break;
        int i = d - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw InternalInconsistency("no irreducible polynomial found");
        ++c[i];
    }

    FieldTower t;
    t.p_ = p;
    t.n_ = n;
    t.deg_ = d;
    t.q_ = 1;
    for (int i = 0; i < n; ++i) {
        t.q_ *= p;
        if (t.q_ > (int64_t{1} << 31)) throw Error("field tower: q^2 = p^{2n} overflows");
    }
    t.q2_ = t.q_ * t.q_;
    t.mod_.resize(d + 1);
    for (int i = 0; i <= d; ++i) t.mod_[i] = static_cast<int32_t>(f[i]);

    // red_ rows: X^{d+i} mod f for i in [0, d-2].
    t.red_.assign(static_cast<size_t>(d - 1) * d, 0);
    Poly cur(d, 0);  // X^d mod f = -(c_0..c_{d-1})
    for (int j = 0; j < d; ++j) cur[j] = ((-f[j]) % p + p) % p;
    for (int i = 0; i <= d - 2; ++i) {
        for (int j = 0; j < d; ++j) t.red_[static_cast<size_t>(i) * d + j] = static_cast<int32_t>(cur[j]);
        // multiply by X and reduce once
        Poly nxt(d, 0);
        int64_t top = cur[d - 1];
        for (int j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top)
            for (int j = 0; j < d; ++j) nxt[j] = ((nxt[j] - top * f[j]) % p + p) % p;
        cur = nxt;
    }

    // frob_ rows: (X^i)^p mod f.
    t.frob_.assign(static_cast<size_t>(d) * d, 0);
    Poly xp = ppowmod(Poly{0, 1}, p, f, p);
    Poly pw{1};
    for (int i = 0; i < d; ++i) {
        for (size_t j = 0; j < pw.size(); ++j) t.frob_[static_cast<size_t>(i) * d + j] = static_cast<int32_t>(pw[j]);
        pw = pmulmod(pw, xp, f, p);
    }
    return t;
}

void FieldTower::check(const Fe& a, const char* op) const {
    if (a.tw == nullptr) throw Error(std::string(op) + ": uninitialized field element");
    if (!same_field(*a.tw))
        throw Error(std::string(op) + ": mixed field towers (p=" + std::to_string(a.tw->p_) +
                    ",n=" + std::to_string(a.tw->n_) + " vs p=" + std::to_string(p_) +
                    ",n=" + std::to_string(n_) + ")");
}

Fe FieldTower::zero() const {
    Fe r;
    r.tw = this;
    return r;
}

Fe FieldTower::one() const { return from_int(1); }

Fe FieldTower::x() const {
    Fe r = zero();
    r.c[1] = 1;
    return r;
}

Fe FieldTower::from_int(int64_t v) const {
    Fe r = zero();
    r.c[0] = static_cast<int32_t>(((v % p_) + p_) % p_);
    return r;
}

Fe FieldTower::from_coeffs(const std::vector<int64_t>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > deg_)
        throw Error("from_coeffs: " + std::to_string(coeffs.size()) +
                    " coefficients exceed field degree " + std::to_string(deg_));
    Fe r = zero();
    for (size_t i = 0; i < coeffs.size(); ++i)
        r.c[i] = static_cast<int32_t>(((coeffs[i] % p_) + p_) % p_);
    return r;
}

Fe FieldTower::add(const Fe& a, const Fe& b) const {
    check(a, "add");
    check(b, "add");
    Fe r = zero();
    for (int i = 0; i < deg_; ++i) {
        int32_t v = a.c[i] + b.c[i];
        r.c[i] = v >= p_ ? v - static_cast<int32_t>(p_) : v;
    }
    return r;
}

Fe FieldTower::sub(const Fe& a, const Fe& b) const {
    check(a, "sub");
    check(b, "sub");
    Fe r = zero();
    for (int i = 0; i < deg_; ++i) {
        int32_t v = a.c[i] - b.c[i];
        r.c[i] = v < 0 ? v + static_cast<int32_t>(p_) : v;
    }
    return r;
}

Fe FieldTower::neg(const Fe& a) const {
    check(a, "neg");
    Fe r = zero();
    for (int i = 0; i < deg_; ++i) r.c[i] = a.c[i] ? static_cast<int32_t>(p_) - a.c[i] : 0;
    return r;
}

Fe FieldTower::mul(const Fe& a, const Fe& b) const {
    check(a, "mul");
    check(b, "mul");
    int64_t acc[2 * kMaxDeg - 1] = {0};
    for (int i = 0; i < deg_; ++i) {
        int64_t ai = a.c[i];
        if (!ai) continue;
        for (int j = 0; j < deg_; ++j) acc[i + j] += ai * b.c[j];
    }
    Fe r = zero();
    int64_t out[kMaxDeg];
    for (int j = 0; j < deg_; ++j) out[j] = acc[j] % p_;
    for (int i = deg_; i <= 2 * deg_ - 2; ++i) {
        int64_t c = acc[i] % p_;
        if (!c) continue;
        const int32_t* row = &red_[static_cast<size_t>(i - deg_) * deg_];
        for (int j = 0; j < deg_; ++j) out[j] += c * row[j];
    }
    for (int j = 0; j < deg_; ++j) r.c[j] = static_cast<int32_t>(out[j] % p_);
    return r;
}

Fe FieldTower::inv(const Fe& a) const {
    check(a, "inv");
    if (a.is_zero()) throw Error("inv: division by zero");
    // Extended Euclid over F_p[X] between the modulus and a.
    auto inv_mod = [this](int64_t v) {
        int64_t r = 1, base = ((v % p_) + p_) % p_, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            e >>= 1;
            base = base * base % p_;
        }
        return r;
    };
    Poly r0(mod_.begin(), mod_.end());
    Poly r1(a.c.begin(), a.c.begin() + deg_);
    trim(r1);
    Poly s0{0}, s1{1};  // s tracks the Bezout coefficient of a
    while (!(r1.size() == 1 && r1[0] == 0)) {
        // quotient of r0 by r1 (classic long division)
        Poly q(std::max<size_t>(r0.size() - r1.size() + 1, 1), 0);
        Poly rem = r0;
        int64_t lead_inv = inv_mod(r1.back());
        for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(r1.size()) - 1; --i) {
            int64_t c = rem[i] % p_;
            if (!c) continue;
            int64_t qc = c * lead_inv % p_;
            q[i - (r1.size() - 1)] = qc;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[i - (r1.size() - 1) + j] = ((rem[i - (r1.size() - 1) + j] - qc * r1[j]) % p_ + p_) % p_;
        }
        trim(rem);
        Poly s2 = pmul(q, s1, p_);
        // s0 - s2
        Poly sn(std::max(s0.size(), s2.size()), 0);
        for (size_t i = 0; i < sn.size(); ++i) {
            int64_t v0 = i < s0.size() ? s0[i] : 0;
            int64_t v2 = i < s2.size() ? s2[i] : 0;
            sn[i] = ((v0 - v2) % p_ + p_) % p_;
        }
        trim(sn);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = sn;
    }
    // r0 = gcd (a nonzero constant since the modulus is irreducible)
    if (r0.size() != 1 || r0[0] == 0) throw InternalInconsistency("inv: modulus not irreducible?");
    int64_t scale = inv_mod(r0[0]);
    Fe out = zero();
    for (size_t i = 0; i < s0.size() && i < static_cast<size_t>(deg_); ++i)
        out.c[i] = static_cast<int32_t>(s0[i] * scale % p_);
    return out;
}

Fe FieldTower::div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }

Fe FieldTower::pow(const Fe& a, int64_t e) const {
    check(a, "pow");
    if (e < 0) throw Error("pow: negative exponent (invert first)");
    Fe r = one();
    Fe base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        base = mul(base, base);
    }
    return r;
}

Fe FieldTower::frobenius(const Fe& a, int64_t k) const {
    check(a, "frobenius");
    if (k < 0) throw Error("frobenius: negative power");
    k %= deg_;
    Fe cur = a;
    for (int64_t t = 0; t < k; ++t) {
        int64_t out[kMaxDeg] = {0};
        for (int i = 0; i < deg_; ++i) {
            int64_t ai = cur.c[i];
            if (!ai) continue;
            const int32_t* row = &frob_[static_cast<size_t>(i) * deg_];
            for (int j = 0; j < deg_; ++j) out[j] += ai * row[j];
        }
        for (int j = 0; j < deg_; ++j) cur.c[j] = static_cast<int32_t>(out[j] % p_);
    }
    return cur;
}

bool FieldTower::in_subfield(const Fe& a, int d) const {
    check(a, "in_subfield");
    if (d < 1 || deg_ % d != 0)
        throw Error("in_subfield: d = " + std::to_string(d) + " does not divide 6n = " +
                    std::to_string(deg_));
    return frobenius(a, d) == a;
}

bool FieldTower::is_cube_fq2(const Fe& a) const {
    check(a, "is_cube_fq2");
    if (a.is_zero()) throw Error("is_cube_fq2: zero input");
    if (!in_fq2(a)) throw Error("is_cube_fq2: element outside F_{q^2}");
    int64_t g = (q2_ - 1) % 3 == 0 ? 3 : 1;
    return pow(a, (q2_ - 1) / g) == one();
}

std::vector<Fe> FieldTower::subfield_basis(int d) const {
    if (d < 1 || deg_ % d != 0)
        throw Error("subfield_basis: d = " + std::to_string(d) + " does not divide 6n");
    // F_{p^d} = kernel of (Frob^d - id) acting F_p-linearly on the big field.
    // Build the matrix column-by-column from images of the power basis.
    int D = deg_;
    std::vector<int64_t> m(static_cast<size_t>(D) * D, 0);  // m[r*D+c]: row r, col c
    for (int col = 0; col < D; ++col) {
        Fe e = zero();
        e.c[col] = 1;
        Fe img = frobenius(e, d);
        for (int row = 0; row < D; ++row) {
            int64_t v = img.c[row] - (row == col ? 1 : 0);
            m[static_cast<size_t>(row) * D + col] = ((v % p_) + p_) % p_;
        }
    }
    // Gaussian elimination to reduced row echelon form.
    auto inv_mod = [this](int64_t v) {
        int64_t r = 1, base = ((v % p_) + p_) % p_, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            e >>= 1;
            base = base * base % p_;
        }
        return r;
    };
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < D && rank < D; ++col) {
        int sel = -1;
        for (int row = rank; row < D; ++row)
            if (m[static_cast<size_t>(row) * D + col]) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < D; ++j)
            std::swap(m[static_cast<size_t>(sel) * D + j], m[static_cast<size_t>(rank) * D + j]);
        int64_t s = inv_mod(m[static_cast<size_t>(rank) * D + col]);
        for (int j = 0; j < D; ++j)
            m[static_cast<size_t>(rank) * D + j] = m[static_cast<size_t>(rank) * D + j] * s % p_;
        for (int row = 0; row < D; ++row) {
            if (row == rank) continue;
            int64_t f = m[static_cast<size_t>(row) * D + col];
            if (!f) continue;
            for (int j = 0; j < D; ++j)
                m[static_cast<size_t>(row) * D + j] =
                    ((m[static_cast<size_t>(row) * D + j] - f * m[static_cast<size_t>(rank) * D + j]) % p_ + p_) % p_;
        }
        pivot_col.push_back(col);
        ++rank;
    }
    // Kernel basis: one vector per free column.
    std::vector<Fe> basis;
    std::vector<bool> is_pivot(D, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int col = 0; col < D; ++col) {
        if (is_pivot[col]) continue;
        Fe v = zero();
        v.c[col] = 1;
        for (int r = 0; r < rank; ++r) {
            int64_t coeff = m[static_cast<size_t>(r) * D + col];
            if (coeff) v.c[pivot_col[r]] = static_cast<int32_t>(((-coeff) % p_ + p_) % p_);
        }
        basis.push_back(v);
    }
    if (static_cast<int>(basis.size()) != d)
        throw InternalInconsistency("subfield kernel has dimension " + std::to_string(basis.size()) +
                                    ", expected " + std::to_string(d));
    return basis;
}

std::vector<Fe> FieldTower::subfield_elements(int d) const {
    std::vector<Fe> basis = subfield_basis(d);
    // Enumerate all F_p-combinations with an odometer (last index fastest).
    int64_t count = 1;
    for (int i = 0; i < d; ++i) {
        if (count > (int64_t{1} << 42) / p_)
            throw Error("subfield_elements: subfield too large to enumerate");
        count *= p_;
    }
    std::vector<Fe> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<int64_t> digits(d, 0);
    for (int64_t k = 0; k < count; ++k) {
        Fe e = zero();
        for (int i = 0; i < d; ++i) {
            if (!digits[i]) continue;
            for (int j = 0; j < deg_; ++j)
                e.c[j] = static_cast<int32_t>((e.c[j] + digits[i] * basis[i].c[j]) % p_);
        }
        out.push_back(e);
        int i = d - 1;
        while (i >= 0 && digits[i] == p_ - 1) digits[i--] = 0;
        if (i >= 0) ++digits[i];
    }
    return out;
}

std::string FieldTower::format(const Fe& a) const {
    check(a, "format");
    int top = deg_ - 1;
    while (top > 0 && a.c[top] == 0) --top;
    std::string s;
    for (int i = 0; i <= top; ++i) {
        if (i) s += ',';
        s += std::to_string(a.c[i]);
    }
    return s;
}

Fe FieldTower::parse(const std::string& s) const {
    if (s.empty()) throw Error("parse: empty field element");
    std::vector<int64_t> coeffs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int64_t v;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw Error("parse: bad coefficient '" + tok + "'");
        }
        if (pos != tok.size()) throw Error("parse: bad coefficient '" + tok + "'");
        coeffs.push_back(v);
    }
    if (static_cast<int>(coeffs.size()) > deg_)
        throw Error("parse: too many coefficients for degree-" + std::to_string(deg_) + " field");
    return from_coeffs(coeffs);
}

void FieldTower::pack(const Fe& a, uint8_t* out) const {
    if (p_ <= 256) {
        for (int i = 0; i < deg_; ++i) out[i] = static_cast<uint8_t>(a.c[i]);
    } else {
        for (int i = 0; i < deg_; ++i) {
            out[2 * i] = static_cast<uint8_t>(a.c[i] & 0xff);
            out[2 * i + 1] = static_cast<uint8_t>((a.c[i] >> 8) & 0xff);
        }
    }
}

Fe FieldTower::unpack(const uint8_t* in) const {
    Fe r = zero();
    if (p_ <= 256) {
        for (int i = 0; i < deg_; ++i) r.c[i] = in[i];
    } else {
        for (int i = 0; i < deg_; ++i)
            r.c[i] = static_cast<int32_t>(in[2 * i]) | (static_cast<int32_t>(in[2 * i + 1]) << 8);
    }
    return r;
}

bool operator==(const Fe& a, const Fe& b) {
    if (a.tw == nullptr || b.tw == nullptr) throw Error("==: uninitialized field element");
    if (!a.tw->same_field(*b.tw)) throw Error("==: mixed field towers");
    return a.c == b.c;
}

Fe operator+(const Fe& a, const Fe& b) {
    if (!a.tw) throw Error("+: uninitialized field element");
    return a.tw->add(a, b);
}

Fe operator-(const Fe& a, const Fe& b) {
    if (!a.tw) throw Error("-: uninitialized field element");
    return a.tw->sub(a, b);
}

Fe operator*(const Fe& a, const Fe& b) {
    if (!a.tw) throw Error("*: uninitialized field element");
    return a.tw->mul(a, b);
}

Fe operator-(const Fe& a) {
    if (!a.tw) throw Error("-: uninitialized field element");
    return a.tw->neg(a);
}

}  // namespace hq
