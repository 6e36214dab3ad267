#pragma once

// Projective unitary group machinery: elements of PGU(3, q) as canonically
// scaled 3x3 matrices over F_{q^2}, deterministic breadth-first subgroup
// closure, and the handful of order formulas the census work checks
// against.
//
// An element is stored as the unique scalar multiple of its matrix whose
// first nonzero entry (row-major) equals 1, so equality, hashing and
// serialization are all plain coefficient comparisons.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hq/geometry.hpp"

namespace hq {

struct GroupElement {
    const HermitianForm* form = nullptr;
    Mat3 m;
};

bool operator==(const GroupElement& a, const GroupElement& b);
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

// Validates entries (in F_{q^2}), nonsingularity, and the unitary condition
// M^T B M^(q) = lambda B for some nonzero lambda; canonicalizes the scale.
// Errors carry the offending residual entry.
GroupElement make_element(const HermitianForm& f, const Mat3& raw);

// Group operations (closed, so no re-validation).
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
bool is_identity(const GroupElement& a);
GroupElement identity(const HermitianForm& f);

// Least k >= 1 with sigma^k scalar.
int64_t projective_order(const GroupElement& a);

// Whether sigma lies in PSU(3, q): det of any matrix representative is a
// cube in F_{q^2}* (well defined projectively: rescaling multiplies the
// determinant by a cube).
bool is_special(const GroupElement& a);

// Enumerated subgroup.  Elements are kept as packed byte keys in BFS
// discovery order (deterministic for a fixed generator list).
class Subgroup {
  public:
    Subgroup(const HermitianForm* form, std::string label);

    const HermitianForm& form() const { return *form_; }
    const std::string& label() const { return label_; }
    int64_t order() const { return static_cast<int64_t>(elems_.size()); }
    GroupElement element(int64_t i) const;  // unpack element #i
    const std::vector<GroupElement>& generators() const { return gens_; }

    std::string pack(const GroupElement& e) const;
    bool contains(const GroupElement& e) const;

  private:
    friend Subgroup closure(const HermitianForm&, const std::vector<GroupElement>&, int64_t,
                            std::string);
    const HermitianForm* form_;
    std::string label_;
    std::vector<GroupElement> gens_;
    std::vector<std::string> elems_;  // packed canonical matrices, BFS order
};

// Breadth-first closure of the generator set.  Throws CapExceeded when more
// than `cap` elements appear.  The default cap matches the documented
// enumeration budget.
Subgroup closure(const HermitianForm& f, const std::vector<GroupElement>& gens,
                 int64_t cap = 2'000'000, std::string label = "");

// |PGU(3,q)|, |PSU(3,q)| and the index gcd(3, q+1).
struct GroupOrders {
    int64_t pgu;
    int64_t psu;
    int64_t index;
};
GroupOrders group_orders(int64_t q);

// Orders of the maximal-subgroup families of PSU(3, q) that fix a point or
// triangle, plus (when 3 | q+1) the special subgroup of PGU itself:
//   m1 = q^3 (q^2 - 1)        stabilizer of a rational curve point
//   m2 = q (q+1)^2 (q-1)      stabilizer of an off-curve point
//   m3 = 6 (q+1)^2            stabilizer of a self-polar triangle
//   m4 = 3 (q^2 - q + 1)      normalizer of a Singer cycle
std::vector<std::pair<std::string, int64_t>> maximal_orders(int64_t q);

// Serialization of a single element: nine field entries joined by ';',
// row-major, canonical scaling.
std::string format_element(const GroupElement& e);
GroupElement parse_element(const HermitianForm& f, const std::string& s);

}  // namespace hq
