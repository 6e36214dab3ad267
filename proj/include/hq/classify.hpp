#pragma once

// Element-type taxonomy of PGU(3,q).  Every nontrivial element acts on the
// plane with one of seven fixed-point configurations, and the configuration
// alone determines the element's contribution i(sigma) to the degree of the
// different divisor of any quotient map it takes part in:
//
//   A   homology: pointwise-fixed chord (axis) + isolated off-curve center,
//       ord | (q+1)                                        i = q+1
//   B1  self-polar triangle of rational off-curve vertices, ord | (q+1)
//                                                           i = 0
//   B2  rational triangle, one vertex off / two on the curve,
//       ord | (q^2-1), ord not | (q+1)                      i = 2
//   B3  triangle with vertices in PG(2,q^6) \ PG(2,q^2), all on the curve,
//       ord | (q^2-q+1)                                     i = 3
//   C   elation: pointwise-fixed tangent + center on the curve, ord = p
//                                                           i = q+2
//   D   single fixed point on the curve, ord = p (p odd) or ord = 4 (p = 2)
//                                                           i = 2
//   E   two rational fixed points, one on / one off the curve; p | ord,
//       ord != p, ord != 4                                  i = 1
//
// The type is decided from the eigenstructure of the canonical matrix:
// tame elements (p coprime to the order) are diagonalizable and split by
// the rationality and curve membership of their eigenvector points; wild
// elements have a repeated eigenvalue and split by Jordan shape
// ([2,1] -> C, [3] -> D, block-plus-point -> E).  Every decision is
// cross-checked against the order-divisibility and incidence constraints
// of the type; any violation aborts with an internal-consistency failure
// instead of guessing.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hq/group.hpp"

namespace hq {

enum class ElementType { A, B1, B2, B3, C, D, E };

// "A", "B1", ..., "E".
const char* type_name(ElementType t);

// The contribution i(sigma) of an element of the given type:
// A -> q+1, B1 -> 0, B2 -> 2, B3 -> 3, C -> q+2, D -> 2, E -> 1.
int64_t type_contribution(ElementType t, int64_t q);

struct FixedPointInfo {
    ProjPoint point;
    Rationality level;  // Fq2 when the point lies in PG(2, q^2)
    bool on_curve;
};

// The full fixed-point configuration of one element.
struct FixedStructure {
    std::vector<Fe> eigenvalues;       // distinct eigenvalues of the canonical matrix
    std::vector<int> alg_mult;         // algebraic multiplicities, aligned
    std::vector<int> geom_dim;         // eigenspace dimensions, aligned
    std::vector<FixedPointInfo> points;  // distinguished fixed points: triangle
                                         // vertices, homology/elation center,
                                         // or the points of a wild element
    std::optional<ProjLine> axis;  // pointwise-fixed line, when an eigenspace
                                   // is 2-dimensional (types A and C)
};

struct RamRecord {
    ElementType type;
    int64_t order;  // projective order
    int64_t i;      // contribution to the different degree
};

// Classification engine with per-instance memoization (eigenvalues per
// characteristic polynomial, curve counts per line).  Not thread-safe; give
// each worker thread its own instance — results are deterministic and
// instance-independent.
class Classifier {
  public:
    explicit Classifier(const HermitianForm& form);

    const HermitianForm& form() const { return *form_; }

    // Eigenvalues, eigenspaces and fixed points.  Errors on the identity.
    FixedStructure fixed_points(const GroupElement& e);

    // The taxonomy type.  Errors on the identity.
    ElementType element_type(const GroupElement& e);

    // Type, projective order and contribution i.  Errors on the identity.
    RamRecord ram_contribution(const GroupElement& e);

    // Independent check of i for tame elements: the number of fixed points
    // lying on the curve over F_{q^6}, counted from the fixed structure
    // (isolated points tested for membership, a pointwise-fixed line scanned
    // for its curve points).  Errors on wild input, where the count and the
    // contribution differ.
    int64_t tame_oracle(const GroupElement& e);

  private:
    struct EigenData {
        std::vector<Fe> roots;  // distinct
        std::vector<int> mult;  // aligned, sums to 3
    };
    struct Analysis {
        FixedStructure fs;
        ElementType type;
        int64_t order;
    };

    const EigenData& eigen_data(const std::array<Fe, 3>& charpoly, const std::string& key);
    std::string charpoly_key(const std::array<Fe, 3>& charpoly) const;
    Analysis analyze(const GroupElement& e);
    int64_t line_count(const ProjLine& l);

    const HermitianForm* form_;
    std::unordered_map<std::string, EigenData> eigen_cache_;
    std::unordered_map<std::string, int64_t> order_cache_;  // charpoly key + shape
    std::unordered_map<std::string, int64_t> line_cache_;
};

}  // namespace hq
