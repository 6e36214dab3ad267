#pragma once

// Exact 3x3 linear algebra over the field tower.  Everything the toolkit
// does with matrices fits in adjugates, determinants, characteristic
// polynomials and kernels of 3x3 matrices, so these are hand-rolled rather
// than pulled from a numeric linear-algebra library.

#include <array>
#include <optional>
#include <vector>

#include "hq/fields.hpp"

namespace hq {

using Vec3 = std::array<Fe, 3>;
using Mat3 = std::array<Fe, 9>;  // row-major

inline Fe det3(const Mat3& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Adjugate: adj(M) * M = det(M) * I.  Projectively this is the inverse.
inline Mat3 adj3(const Mat3& m) {
    Mat3 a;
    a[0] = m[4] * m[8] - m[5] * m[7];
    a[1] = m[2] * m[7] - m[1] * m[8];
    a[2] = m[1] * m[5] - m[2] * m[4];
    a[3] = m[5] * m[6] - m[3] * m[8];
    a[4] = m[0] * m[8] - m[2] * m[6];
    a[5] = m[2] * m[3] - m[0] * m[5];
    a[6] = m[3] * m[7] - m[4] * m[6];
    a[7] = m[1] * m[6] - m[0] * m[7];
    a[8] = m[0] * m[4] - m[1] * m[3];
    return a;
}

inline Mat3 mul3(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
    return r;
}

inline Mat3 transpose3(const Mat3& m) {
    return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
}

inline Vec3 apply3(const Mat3& m, const Vec3& v) {
    return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
            m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

// Entrywise x -> x^{p^k}.
inline Mat3 frob3(const FieldTower& t, const Mat3& m, int64_t k) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r[i] = t.frobenius(m[i], k);
    return r;
}

inline Mat3 scale3(const FieldTower& t, const Mat3& m, const Fe& s) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r[i] = t.mul(m[i], s);
    return r;
}

// Characteristic polynomial det(X*I - M) = X^3 + c2 X^2 + c1 X + c0,
// returned as (c0, c1, c2).
inline std::array<Fe, 3> charpoly3(const FieldTower& t, const Mat3& m) {
    Fe tr = m[0] + m[4] + m[8];
    // Sum of principal 2x2 minors.
    Fe s = (m[0] * m[4] - m[1] * m[3]) + (m[0] * m[8] - m[2] * m[6]) + (m[4] * m[8] - m[5] * m[7]);
    Fe d = det3(m);
    return {t.neg(d), s, t.neg(tr)};
}

// Basis of the kernel of m (possibly empty).  Deterministic pivoting:
// first usable column, rows in order.
inline std::vector<Vec3> kernel3(const FieldTower& t, const Mat3& m) {
    Mat3 a = m;
    int pivot_row[3] = {-1, -1, -1};  // per column
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int sel = -1;
        for (int row = rank; row < 3; ++row)
            if (!a[3 * row + col].is_zero()) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < 3; ++j) std::swap(a[3 * sel + j], a[3 * rank + j]);
        Fe s = t.inv(a[3 * rank + col]);
        for (int j = 0; j < 3; ++j) a[3 * rank + j] = a[3 * rank + j] * s;
        for (int row = 0; row < 3; ++row) {
            if (row == rank) continue;
            Fe f = a[3 * row + col];
            if (f.is_zero()) continue;
            for (int j = 0; j < 3; ++j) a[3 * row + j] = a[3 * row + j] - f * a[3 * rank + j];
        }
        pivot_row[col] = rank;
        ++rank;
    }
    std::vector<Vec3> basis;
    for (int col = 0; col < 3; ++col) {
        if (pivot_row[col] >= 0) continue;
        Vec3 v{t.zero(), t.zero(), t.zero()};
        v[col] = t.one();
        for (int c2 = 0; c2 < 3; ++c2)
            if (pivot_row[c2] >= 0) v[c2] = t.neg(a[3 * pivot_row[c2] + col]);
        basis.push_back(v);
    }
    return basis;
}

// Cross product: dual coordinates of the line through two points, or the
// point of intersection of two lines.
inline Vec3 cross3(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

}  // namespace hq
