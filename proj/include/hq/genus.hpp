#pragma once

// Riemann-Hurwitz genus computation for enumerated subgroups.
//
// For G acting on the Hermitian curve, the degree of the different divisor
// is Delta = sum of i(sigma) over the nontrivial elements, and
//
//     g(H_q/G) = 1 + ((q^2 - q - 2) - Delta) / (2|G|).
//
// The genus is kept as an exact rational with an integrality flag rather
// than asserted integral: a non-integer result is a loud diagnostic for a
// misclassified element or an inapplicable construction, never a rounding.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hq/classify.hpp"
#include "hq/group.hpp"
#include "hq/rational.hpp"

namespace hq {

// Per-class element counts of a subgroup, keyed (projective order, type).
// Closed-form censuses aggregate over orders and carry 0 in the order slot.
struct TypeCensus {
    std::map<std::pair<int64_t, ElementType>, int64_t> counts;
    int64_t group_order = 0;

    int64_t total() const;                 // sum of all counts (|G| - 1 when complete)
    int64_t by_type(ElementType t) const;  // sum over orders
};

// Classifies every nontrivial element.  jobs >= 1 sets the number of worker
// threads; the result is identical for every thread count (contiguous
// ranges, per-thread classifiers, merge into one sorted map).
TypeCensus census(const Subgroup& g, int jobs = 1);

struct GenusRow {
    int64_t order;
    ElementType type;
    int64_t count;
    int64_t i;         // contribution of one element of this class
    int64_t subtotal;  // count * i
};

struct GenusReport {
    std::string label;
    int64_t q = 0;
    int64_t group_order = 0;
    std::vector<GenusRow> rows;  // sorted by (order, type)
    int64_t delta = 0;           // sum of subtotals
    BigRational genus;           // exact: 1 + (q^2 - q - 2 - delta) / (2 |G|)
    bool integral = false;
    bool negative = false;  // integral and below zero: impossible for a real quotient
};

// Assembles the Riemann-Hurwitz report from an existing census; q and the
// contribution table come from the form's tower.
GenusReport genus_from_census(const HermitianForm& f, const std::string& label,
                              const TypeCensus& c);

// census + genus_from_census in one step.
GenusReport quotient_genus(const Subgroup& g, int jobs = 1);

// Closed-form census of PSU(3, qbar) as an automorphism group of H_qbar,
// from the point-by-point counting arguments (elations per curve point,
// homologies per outer point, torus elements per chord, Singer triangles,
// elation-homology products, and the type-B1 remainder, which is checked
// against its printed closed form q^3(q-1)(q^2-q+1)(q^2-q+4)/18).
// Requires 3 | (qbar + 1); counts aggregate over orders (order slot 0).
TypeCensus expected_census_psu(int64_t qbar);

}  // namespace hq
