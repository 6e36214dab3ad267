#pragma once

// The Hermitian curve H_q inside PG(2, q^2) and its unitary polarity.
//
// A Hermitian curve is the zero locus of P^T B P^(q) where B is a
// nonsingular matrix with B^T = B^(q) (entrywise q-th power).  Three Gram
// matrices are used by the subgroup catalog:
//   fermat      X^{q+1} + Y^{q+1} + Z^{q+1} = 0          (B = I)
//   norm_trace  X^q Z + X Z^q = Y^{q+1}                  (two rational
//               points swapped into play; the model whose upper-triangular
//               stabilizer is written down by the generator catalog)
//   conic       2Y^2 - 2XZ polarized; all entries in F_q, so the symmetric-
//               square embedding of PGL(2, q) lands in its unitary group
// All three define projectively equivalent curves with q^3 + 1 rational
// points; which one is active is a property of the construction in use.

#include <cstdint>
#include <string>
#include <vector>

#include "hq/fields.hpp"
#include "hq/mat3.hpp"

namespace hq {

// Projective point, canonicalized so the last nonzero coordinate is 1.
struct ProjPoint {
    Vec3 v;
};

// Projective line in dual coordinates, same canonicalization.
struct ProjLine {
    Vec3 v;
};

bool operator==(const ProjPoint& a, const ProjPoint& b);
bool operator==(const ProjLine& a, const ProjLine& b);

// Scales so the last nonzero coordinate equals 1.  Errors on the zero vector.
Vec3 canonicalize(const FieldTower& t, const Vec3& v);
ProjPoint make_point(const FieldTower& t, const Fe& x, const Fe& y, const Fe& z);
ProjLine make_line(const FieldTower& t, const Fe& u, const Fe& v, const Fe& w);

enum class Rationality { Fq2, Fq6 };

class HermitianForm {
  public:
    static HermitianForm fermat(const FieldTower& t);
    static HermitianForm norm_trace(const FieldTower& t);
    static HermitianForm conic(const FieldTower& t);  // errors when p = 2
    // Validates: entries in F_{q^2}, B^T = B^(q), det != 0.
    static HermitianForm custom(const FieldTower& t, const Mat3& gram, std::string name = "custom");

    const FieldTower& tower() const { return *tw_; }
    const Mat3& gram() const { return b_; }
    const std::string& name() const { return name_; }

  private:
    HermitianForm(const FieldTower* t, Mat3 b, std::string name)
        : tw_(t), b_(std::move(b)), name_(std::move(name)) {}
    const FieldTower* tw_;
    Mat3 b_;
    std::string name_;
};

// P^T B P^(q); zero exactly on the curve.  Defined for coordinates in any
// subfield of the tower (the curve over F_{q^6} is the relevant closure for
// every fixed-point question in this toolkit).
Fe hermitian_eval(const HermitianForm& f, const ProjPoint& p);
bool on_curve(const HermitianForm& f, const ProjPoint& p);

// All q^3 + 1 points of H_q(F_{q^2}), in a deterministic order.
std::vector<ProjPoint> curve_points_fq2(const HermitianForm& f);

// The unitary polarity.  polar_line(P) passes through P iff P is on the
// curve (then it is the tangent there); pole inverts polar_line.
ProjLine polar_line(const HermitianForm& f, const ProjPoint& p);
ProjPoint pole(const HermitianForm& f, const ProjLine& l);

bool incident(const ProjPoint& p, const ProjLine& l);

// The q^2 + 1 F_{q^2}-rational points on l.
std::vector<ProjPoint> line_points_fq2(const FieldTower& t, const ProjLine& l);

// Curve points on l over F_{q^6}, by scanning the q^6 + 1 points of the
// line.  This is the one permitted brute-force scan in the toolkit (it
// backs the tame ramification oracle); everything else goes through
// eigenspaces.
std::vector<ProjPoint> line_curve_points(const HermitianForm& f, const ProjLine& l);
int64_t line_curve_count(const HermitianForm& f, const ProjLine& l);

// Fq2 when every coordinate of the canonical representative lies in
// F_{q^2}, else Fq6.
Rationality rationality_level(const FieldTower& t, const ProjPoint& p);

// Serialization: three field elements joined by ';', e.g. "1,2;0;1".
std::string format_point(const FieldTower& t, const ProjPoint& p);
ProjPoint parse_point(const FieldTower& t, const std::string& s);
std::string format_line(const FieldTower& t, const ProjLine& l);
ProjLine parse_line(const FieldTower& t, const std::string& s);

}  // namespace hq
