#include "hq/classify.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hq/error.hpp"
#include "hq/mat3.hpp"

namespace hq {

namespace {

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over the tower, for the degree-3 eigenvalue
// problem.  Coefficients are stored low degree first; the zero polynomial is
// the empty vector and every other polynomial has a nonzero leading entry.
// ---------------------------------------------------------------------------

using Poly = std::vector<Fe>;

Poly trimmed(Poly a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

int pdeg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly padd(const FieldTower& t, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), t.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = t.add(r[i], a[i]);
        if (i < b.size()) r[i] = t.add(r[i], b[i]);
    }
    return trimmed(std::move(r));
}

Poly psub(const FieldTower& t, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), t.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = t.add(r[i], a[i]);
        if (i < b.size()) r[i] = t.sub(r[i], b[i]);
    }
    return trimmed(std::move(r));
}

Poly pmul(const FieldTower& t, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, t.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = t.add(r[i + j], t.mul(a[i], b[j]));
    return trimmed(std::move(r));
}

// Remainder of a modulo f; when quot is non-null it receives the quotient.
Poly pdivmod(const FieldTower& t, Poly a, const Poly& f, Poly* quot = nullptr) {
    if (f.empty()) throw InternalInconsistency("polynomial division by zero");
    a = trimmed(std::move(a));
    int df = pdeg(f);
    if (quot) quot->assign(pdeg(a) >= df ? static_cast<size_t>(pdeg(a) - df + 1) : 0, t.zero());
    Fe lead_inv = t.inv(f.back());
    while (pdeg(a) >= df) {
        int k = pdeg(a) - df;
        Fe c = t.mul(a.back(), lead_inv);
        if (quot) (*quot)[k] = c;
        for (int i = 0; i <= df; ++i) a[k + i] = t.sub(a[k + i], t.mul(c, f[i]));
        a = trimmed(std::move(a));
    }
    if (quot) *quot = trimmed(std::move(*quot));
    return a;
}

Poly pmod(const FieldTower& t, Poly a, const Poly& f) { return pdivmod(t, std::move(a), f); }

Poly monic(const FieldTower& t, Poly a) {
    if (a.empty()) return a;
    Fe s = t.inv(a.back());
    for (Fe& c : a) c = t.mul(c, s);
    return a;
}

Poly pgcd(const FieldTower& t, Poly a, Poly b) {
    a = trimmed(std::move(a));
    b = trimmed(std::move(b));
    while (!b.empty()) {
        Poly r = pmod(t, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(t, std::move(a));
}

Poly pmulmod(const FieldTower& t, const Poly& a, const Poly& b, const Poly& f) {
    return pmod(t, pmul(t, a, b), f);
}

Poly ppowmod(const FieldTower& t, Poly a, int64_t e, const Poly& f) {
    Poly r{t.one()};
    a = pmod(t, std::move(a), f);
    while (e > 0) {
        if (e & 1) r = pmulmod(t, r, a, f);
        a = pmulmod(t, a, a, f);
        e >>= 1;
    }
    return r;
}

Fe peval(const FieldTower& t, const Poly& a, const Fe& x) {
    Fe r = t.zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = t.add(t.mul(r, x), *it);
    return r;
}

Poly pderiv(const FieldTower& t, const Poly& a) {
    Poly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(t.mul(a[i], t.from_int(static_cast<int64_t>(i))));
    return trimmed(std::move(r));
}

// X^{p^k} mod f, via k successive p-th powers; exponents never exceed p, so
// nothing here needs integers beyond int64 even though p^k itself would.
Poly frob_power_x(const FieldTower& t, const Poly& f, int k) {
    Poly s = pmod(t, Poly{t.zero(), t.one()}, f);
    for (int i = 0; i < k; ++i) s = ppowmod(t, std::move(s), t.p(), f);
    return s;
}

// j-th element of the deterministic shift sequence: the field element whose
// coefficient vector is the base-p digit expansion of j.
Fe shift_element(const FieldTower& t, int64_t j) {
    std::vector<int64_t> digits;
    int64_t p = t.p();
    while (j > 0) {
        digits.push_back(j % p);
        j /= p;
    }
    if (static_cast<int>(digits.size()) > t.deg())
        throw InternalInconsistency("root splitter: shift sequence left the field");
    return t.from_coeffs(digits);
}

// Splits a monic squarefree polynomial that is known to factor into distinct
// linear factors over the tower's full field, appending its roots to out.
//
// char 2: for a ranging over an F_2-basis, gcd(f, sum_i (aX)^{2^i}) collects
// the roots whose absolute trace of a*root is 0; trace-form nondegeneracy
// guarantees a separating basis element for any two distinct roots, so this
// terminates deterministically.
//
// char odd: quadratic-character split with the deterministic shift sequence.
// chi(root + delta) is evaluated as (prod_i (X+delta)^{p^i})^{(p-1)/2} — the
// norm down to F_p raised to (p-1)/2 — keeping every exponent within int64.
// Each shift separates any fixed pair of roots for about half of all delta;
// the budget of 512 canonical shifts is astronomically beyond need, and
// exhausting it aborts rather than degrading.
void split_into_roots(const FieldTower& t, const Poly& f, std::vector<Fe>& out) {
    if (f.empty()) throw InternalInconsistency("root splitter: zero polynomial");
    if (pdeg(f) == 0) return;
    if (pdeg(f) == 1) {
        out.push_back(t.neg(f[0]));  // monic: X + c
        return;
    }
    Poly g;
    if (t.p() == 2) {
        for (const Fe& a : t.subfield_basis(t.deg())) {
            Poly s = pmod(t, Poly{t.zero(), a}, f);
            Poly tr;
            for (int i = 0; i < t.deg(); ++i) {
                tr = padd(t, tr, s);
                s = pmulmod(t, s, s, f);
            }
            Poly cand = pgcd(t, f, tr);
            if (pdeg(cand) > 0 && pdeg(cand) < pdeg(f)) {
                g = std::move(cand);
                break;
            }
        }
        if (g.empty())
            throw InternalInconsistency("root splitter: no separating trace form in char 2");
    } else {
        for (int64_t j = 0;; ++j) {
            if (j >= 512)
                throw InternalInconsistency("root splitter: shift budget exhausted in odd char");
            Fe delta = shift_element(t, j);
            Poly u{delta, t.one()};
            Poly direct = pgcd(t, f, u);
            if (pdeg(direct) > 0 && pdeg(direct) < pdeg(f)) {
                g = std::move(direct);
                break;
            }
            Poly s = pmod(t, u, f);
            Poly norm = s;
            for (int i = 1; i < t.deg(); ++i) {
                s = ppowmod(t, std::move(s), t.p(), f);
                norm = pmulmod(t, norm, s, f);
            }
            Poly chi = ppowmod(t, std::move(norm), (t.p() - 1) / 2, f);
            Poly cand = pgcd(t, f, psub(t, chi, Poly{t.one()}));
            if (pdeg(cand) > 0 && pdeg(cand) < pdeg(f)) {
                g = std::move(cand);
                break;
            }
        }
    }
    Poly rest;
    Poly rem = pdivmod(t, f, g, &rest);
    if (!rem.empty()) throw InternalInconsistency("root splitter: factor does not divide");
    split_into_roots(t, g, out);
    split_into_roots(t, monic(t, std::move(rest)), out);
}

}  // namespace

const char* type_name(ElementType t) {
    switch (t) {
        case ElementType::A: return "A";
        case ElementType::B1: return "B1";
        case ElementType::B2: return "B2";
        case ElementType::B3: return "B3";
        case ElementType::C: return "C";
        case ElementType::D: return "D";
        case ElementType::E: return "E";
    }
    throw Error("type_name: invalid element type");
}

int64_t type_contribution(ElementType t, int64_t q) {
    switch (t) {
        case ElementType::A: return q + 1;
        case ElementType::B1: return 0;
        case ElementType::B2: return 2;
        case ElementType::B3: return 3;
        case ElementType::C: return q + 2;
        case ElementType::D: return 2;
        case ElementType::E: return 1;
    }
    throw Error("type_contribution: invalid element type");
}

Classifier::Classifier(const HermitianForm& form) : form_(&form) {}

std::string Classifier::charpoly_key(const std::array<Fe, 3>& cp) const {
    const FieldTower& t = form_->tower();
    size_t stride = static_cast<size_t>(t.deg()) * t.pack_bytes_per_coeff();
    std::string key(3 * stride, '\0');
    for (int i = 0; i < 3; ++i)
        t.pack(cp[i], reinterpret_cast<uint8_t*>(key.data()) + i * stride);
    return key;
}

// Roots with multiplicities of X^3 + c2 X^2 + c1 X + c0 over F_{q^6}.
// Repeated roots come out of gcd(f, f') coefficient algebra; squarefree
// cubics are first tested for F_{q^2}-rationality via gcd(f, X^{q^2} - X)
// (a unitary element's spectrum is either fully rational or an irreducible
// Galois triple — anything else aborts), then split deterministically.
const Classifier::EigenData& Classifier::eigen_data(const std::array<Fe, 3>& cp,
                                                    const std::string& key) {
    auto hit = eigen_cache_.find(key);
    if (hit != eigen_cache_.end()) return hit->second;

    const FieldTower& t = form_->tower();
    Poly f{cp[0], cp[1], cp[2], t.one()};
    EigenData ed;
    auto push = [&](const Fe& r, int m) {
        if (!peval(t, f, r).is_zero())
            throw InternalInconsistency("eigenvalue extraction produced a non-root");
        ed.roots.push_back(r);
        ed.mult.push_back(m);
    };
    auto linear_sq = [&](const Fe& r) {  // (X - r)^2
        return pmul(t, Poly{t.neg(r), t.one()}, Poly{t.neg(r), t.one()});
    };

    Poly df = pderiv(t, f);
    if (df.empty()) {
        // Only in char 3, with f = X^3 + c0 = (X - lambda)^3; the cube root
        // is one Frobenius twist since x -> x^3 is bijective.
        Fe lam = t.frobenius(t.neg(cp[0]), t.deg() - 1);
        push(lam, 3);
    } else {
        Poly d0 = pgcd(t, f, df);
        if (pdeg(d0) == 0) {
            // Squarefree: three distinct eigenvalues.
            Poly xq2 = frob_power_x(t, f, 2 * t.n());
            Poly g2 = pgcd(t, f, psub(t, xq2, Poly{t.zero(), t.one()}));
            if (pdeg(g2) != 3 && pdeg(g2) != 0)
                throw InternalInconsistency(
                    "characteristic polynomial has a quadratic irreducible factor over F_{q^2}, "
                    "impossible for a unitary element");
            std::vector<Fe> roots;
            split_into_roots(t, f, roots);
            if (roots.size() != 3)
                throw InternalInconsistency("squarefree cubic did not yield three roots");
            for (const Fe& r : roots) push(r, 1);
        } else if (pdeg(d0) == 1) {
            // Exactly one double root.
            Fe lam = t.neg(d0[0]);
            Poly rest;
            Poly rem = pdivmod(t, f, linear_sq(lam), &rest);
            if (!rem.empty() || pdeg(rest) != 1)
                throw InternalInconsistency("double-root division failed");
            Fe mu = t.neg(rest[0]);
            if (mu == lam) throw InternalInconsistency("triple root escaped the derivative filter");
            push(lam, 2);
            push(mu, 1);
        } else {
            // pdeg(d0) == 2: d0 = (X - lambda)^2, covering the triple root in
            // char != 3 and the char-2 double root (where f' itself is a square).
            Fe lam = t.p() == 2 ? t.frobenius(d0[0], t.deg() - 1)  // square root
                                : t.neg(t.mul(d0[1], t.inv(t.from_int(2))));
            if (!psub(t, d0, linear_sq(lam)).empty())
                throw InternalInconsistency("repeated-root factor is not a perfect square");
            Poly rest;
            Poly rem = pdivmod(t, f, d0, &rest);
            if (!rem.empty() || pdeg(rest) != 1)
                throw InternalInconsistency("repeated-root division failed");
            Fe mu = t.neg(rest[0]);
            if (mu == lam) {
                push(lam, 3);
            } else {
                push(lam, 2);
                push(mu, 1);
            }
        }
    }

    int total = 0;
    for (int m : ed.mult) total += m;
    if (total != 3) throw InternalInconsistency("eigenvalue multiplicities do not sum to 3");
    return eigen_cache_.emplace(key, std::move(ed)).first->second;
}

Classifier::Analysis Classifier::analyze(const GroupElement& e) {
    if (e.form != form_)
        throw Error("classify: element does not belong to this classifier's Hermitian form");
    if (is_identity(e)) throw Error("classify: the identity element has no type");

    const FieldTower& t = form_->tower();
    const int64_t p = t.p();
    const int64_t q = t.q();

    std::array<Fe, 3> cp = charpoly3(t, e.m);
    std::string cpkey = charpoly_key(cp);
    const EigenData& ed = eigen_data(cp, cpkey);

    FixedStructure fs;
    fs.eigenvalues = ed.roots;
    fs.alg_mult = ed.mult;

    std::vector<std::vector<Vec3>> spaces;
    int dim_sum = 0;
    std::string shape;
    for (const Fe& lam : ed.roots) {
        Mat3 a = e.m;
        a[0] = t.sub(a[0], lam);
        a[4] = t.sub(a[4], lam);
        a[8] = t.sub(a[8], lam);
        std::vector<Vec3> ker = kernel3(t, a);
        if (ker.empty()) throw InternalInconsistency("eigenvalue with an empty eigenspace");
        fs.geom_dim.push_back(static_cast<int>(ker.size()));
        dim_sum += static_cast<int>(ker.size());
        shape += static_cast<char>('0' + ker.size());
        spaces.push_back(std::move(ker));
    }
    if (dim_sum > 3) throw InternalInconsistency("eigenspace dimensions exceed 3");

    // The projective order is determined by the spectrum together with the
    // eigenspace shape, so it can share the charpoly cache line.
    int64_t ord;
    {
        std::string okey = cpkey + shape;
        auto it = order_cache_.find(okey);
        if (it != order_cache_.end()) {
            ord = it->second;
        } else {
            ord = projective_order(e);
            order_cache_.emplace(std::move(okey), ord);
        }
    }
    const bool wild = ord % p == 0;

    auto require = [&](bool cond, const char* what) {
        if (!cond) throw InternalInconsistency(std::string("element taxonomy violated: ") + what);
    };
    auto point_info = [&](const Vec3& v) {
        FixedPointInfo info{make_point(t, v[0], v[1], v[2]), Rationality::Fq2, false};
        info.level = rationality_level(t, info.point);
        info.on_curve = on_curve(*form_, info.point);
        return info;
    };
    auto line_of_plane = [&](const std::vector<Vec3>& basis) {
        Vec3 d = cross3(basis[0], basis[1]);
        return make_line(t, d[0], d[1], d[2]);
    };

    ElementType type;
    if (ed.roots.size() == 3) {
        require(!wild, "diagonalizable element with order divisible by p");
        int rational_roots = 0;
        for (const Fe& lam : ed.roots) rational_roots += t.in_fq2(lam) ? 1 : 0;
        for (const auto& sp : spaces) fs.points.push_back(point_info(sp[0]));
        int on = 0;
        for (const auto& pi : fs.points) on += pi.on_curve ? 1 : 0;
        if (rational_roots == 3) {
            for (const auto& pi : fs.points)
                require(pi.level == Rationality::Fq2, "rational eigenvalue with non-rational fixed point");
            if (on == 0) {
                require((q + 1) % ord == 0, "type B1 order must divide q+1");
                for (int i = 0; i < 3; ++i) {
                    Vec3 d = cross3(fs.points[(i + 1) % 3].point.v, fs.points[(i + 2) % 3].point.v);
                    require(polar_line(*form_, fs.points[i].point) == make_line(t, d[0], d[1], d[2]),
                            "type B1 triangle must be self-polar");
                }
                type = ElementType::B1;
            } else if (on == 2) {
                require((q * q - 1) % ord == 0 && (q + 1) % ord != 0,
                        "type B2 order must divide q^2-1 but not q+1");
                type = ElementType::B2;
            } else {
                throw InternalInconsistency(
                    "rational fixed triangle with an impossible curve-membership count");
            }
        } else if (rational_roots == 0) {
            require(on == 3, "non-rational fixed triangle must lie on the curve");
            for (const auto& pi : fs.points)
                require(pi.level == Rationality::Fq6, "non-rational eigenvalue with rational fixed point");
            require((q * q - q + 1) % ord == 0, "type B3 order must divide q^2-q+1");
            type = ElementType::B3;
        } else {
            throw InternalInconsistency("mixed-rationality eigenvalue triple");
        }
    } else if (ed.roots.size() == 2) {
        int i2 = ed.mult[0] == 2 ? 0 : 1;  // index of the repeated eigenvalue
        int i1 = 1 - i2;
        require(fs.geom_dim[i1] == 1, "simple eigenvalue with a 2-dimensional eigenspace");
        for (const Fe& lam : ed.roots)
            require(t.in_fq2(lam), "repeated-spectrum element with non-rational eigenvalue");
        if (fs.geom_dim[i2] == 2) {
            require(!wild, "homology with order divisible by p");
            require((q + 1) % ord == 0, "type A order must divide q+1");
            FixedPointInfo center = point_info(spaces[i1][0]);
            ProjLine axis = line_of_plane(spaces[i2]);
            require(!center.on_curve, "homology center must be off the curve");
            require(center.level == Rationality::Fq2, "homology center must be rational");
            require(polar_line(*form_, center.point) == axis,
                    "homology axis must be the polar of its center");
            fs.points.push_back(center);
            fs.axis = axis;
            type = ElementType::A;
        } else {
            require(wild, "non-diagonalizable element with order coprime to p");
            require(ord != p && !(p == 2 && ord == 4), "type E order must not be p or 4");
            require(ord % (p * p) != 0, "type E order must not be divisible by p^2");
            FixedPointInfo a = point_info(spaces[0][0]);
            FixedPointInfo b = point_info(spaces[1][0]);
            require(a.level == Rationality::Fq2 && b.level == Rationality::Fq2,
                    "type E fixed points must be rational");
            require((a.on_curve ? 1 : 0) + (b.on_curve ? 1 : 0) == 1,
                    "type E fixes one curve point and one off-curve point");
            fs.points.push_back(a);
            fs.points.push_back(b);
            type = ElementType::E;
        }
    } else {
        require(wild, "non-scalar element with a single eigenvalue must be wild");
        require(t.in_fq2(ed.roots[0]), "repeated eigenvalue must be rational");
        Fe lam = ed.roots[0];
        Mat3 a = e.m;
        a[0] = t.sub(a[0], lam);
        a[4] = t.sub(a[4], lam);
        a[8] = t.sub(a[8], lam);
        if (fs.geom_dim[0] == 2) {
            require(ord == p, "elation order must equal p");
            ProjLine axis = line_of_plane(spaces[0]);
            // Center = the rank-1 image of (M - lambda I): any nonzero column.
            Vec3 center_v{t.zero(), t.zero(), t.zero()};
            for (int col = 0; col < 3; ++col) {
                center_v = {a[col], a[3 + col], a[6 + col]};
                if (!center_v[0].is_zero() || !center_v[1].is_zero() || !center_v[2].is_zero()) break;
            }
            FixedPointInfo center = point_info(center_v);
            require(center.on_curve, "elation center must lie on the curve");
            require(center.level == Rationality::Fq2, "elation center must be rational");
            require(incident(center.point, axis), "elation center must lie on its axis");
            require(polar_line(*form_, center.point) == axis,
                    "elation axis must be the tangent at its center");
            fs.points.push_back(center);
            fs.axis = axis;
            type = ElementType::C;
        } else if (fs.geom_dim[0] == 1) {
            require((ord == p && p != 2) || (p == 2 && ord == 4),
                    "type D order must be p (odd characteristic) or 4 (characteristic 2)");
            FixedPointInfo fp = point_info(spaces[0][0]);
            require(fp.on_curve, "type D fixed point must lie on the curve");
            require(fp.level == Rationality::Fq2, "type D fixed point must be rational");
            std::vector<Vec3> lker = kernel3(t, transpose3(a));
            require(lker.size() == 1, "Jordan-[3] element must fix a unique line");
            ProjLine l = make_line(t, lker[0][0], lker[0][1], lker[0][2]);
            require(polar_line(*form_, fp.point) == l,
                    "type D fixed line must be the tangent at the fixed point");
            fs.points.push_back(fp);
            type = ElementType::D;
        } else {
            throw InternalInconsistency("scalar non-identity matrix escaped canonicalization");
        }
    }

    return Analysis{std::move(fs), type, ord};
}

FixedStructure Classifier::fixed_points(const GroupElement& e) { return analyze(e).fs; }

ElementType Classifier::element_type(const GroupElement& e) { return analyze(e).type; }

RamRecord Classifier::ram_contribution(const GroupElement& e) {
    Analysis a = analyze(e);
    return RamRecord{a.type, a.order, type_contribution(a.type, form_->tower().q())};
}

int64_t Classifier::line_count(const ProjLine& l) {
    const FieldTower& t = form_->tower();
    size_t stride = static_cast<size_t>(t.deg()) * t.pack_bytes_per_coeff();
    std::string key(3 * stride, '\0');
    for (int i = 0; i < 3; ++i)
        t.pack(l.v[i], reinterpret_cast<uint8_t*>(key.data()) + i * stride);
    auto it = line_cache_.find(key);
    if (it != line_cache_.end()) return it->second;
    int64_t c = line_curve_count(*form_, l);
    line_cache_.emplace(std::move(key), c);
    return c;
}

int64_t Classifier::tame_oracle(const GroupElement& e) {
    Analysis a = analyze(e);
    if (a.order % form_->tower().p() == 0)
        throw Error("tame oracle: element is wild (order divisible by the characteristic)");
    int64_t count = 0;
    for (const auto& pi : a.fs.points) count += pi.on_curve ? 1 : 0;
    if (a.fs.axis) count += line_count(*a.fs.axis);
    return count;
}

}  // namespace hq
