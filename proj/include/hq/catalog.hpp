#pragma once

// Ready-made generator sets for the subgroup families whose quotient genera
// this toolkit studies: the full projective unitary group and its special
// subgroup in the norm-trace model, their subfield copies, the Hessian
// tower of orders 216/72/36 in the Fermat model, and the symmetric-square
// image of PGL(2, qbar) / PSL(2, qbar) stabilizing a conic.  Small
// exceptional groups (A5, A6) are located inside those closures by a
// deterministic generator search.
//
// A Construction owns its field tower and Hermitian form via shared_ptr, so
// the GroupElements it hands out stay valid for as long as any copy of the
// Construction (or the RealizedGroup wrapping it) is alive.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hq/group.hpp"

namespace hq {

struct Construction {
    std::shared_ptr<const FieldTower> tower;
    std::shared_ptr<const HermitianForm> form;
    std::vector<GroupElement> gens;
    std::string label;
};

// Norm-trace model generators for PGU(3, q) (special_only: PSU(3, q)):
// one unipotent translation per F_p-basis element of F_{q^2}, the central
// translation, a diagonal torus generator (cubed for the special group),
// and the X<->Z involution.
Construction full_group_generators(int64_t p, int n, bool special_only);

// Same generator shapes with parameters drawn from F_{qbar^2}, giving the
// embedded copy of PGU(3, qbar) (or PSU(3, qbar)) inside PGU(3, q).
// Requires qbar = p^k with k | n and n/k odd (the embedding is unitary only
// for odd-degree steps); qbar = q degenerates to the full group.
Construction subfield_generators(int64_t p, int n, int64_t qbar, bool special_only);

// Fermat-model generators of the Hessian subgroup of order 216 (classical
// cube-root-of-unity diagonal, coordinate cycle, Fourier matrix, and one
// extra diagonal that completes the order-216 group).  Requires p odd and
// 3 | (q+1).
Construction hessian_generators(int64_t p, int n);

// Generator subsets for the order-216 / 72 / 36 members of the Hessian
// tower (`order` selects which).  The order-72 and order-36 closures are
// cross-checked in tests against extract_subgroup and the is_special
// filter on the order-216 closure.
Construction hessian_variant_generators(int64_t p, int n, int order);

// Symmetric-square embedding of a nonsingular 2x2 matrix over F_q into the
// unitary group of the conic-adapted form:
//   [[a,b],[c,d]] -> [[a^2, ab, b^2], [2ac, ad+bc, 2bd], [c^2, cd, d^2]].
// A group homomorphism; requires the conic form (p odd) and entries of A
// in F_q.
GroupElement conic_embedding(const HermitianForm& conic_form, const std::array<Fe, 4>& a);

// Conic-model generators for the image of PGL(2, qbar) (special_only:
// PSL(2, qbar)): transvections over an F_p-basis of F_qbar, plus a
// diagonal torus generator for the full PGL.  Requires p odd, qbar = p^k
// with k | n.
Construction conic_group_generators(int64_t p, int n, int64_t qbar, bool special_only);

// Reads a JSON generator file: {"p":, "n":, "form": [9 field elements],
// "generators": [[9 field elements], ...]}, entries serialized as
// comma-separated base-p coefficient lists, matrices row-major.
Construction load_generator_file(const std::string& path);

// Deterministic search for a subgroup of the given order inside an
// enumerated group: tries single generators, then pairs, then triples, in
// BFS index order, keeping candidates whose projective order divides the
// target.  With forbid_cyclic_normal, candidates containing a nontrivial
// normal cyclic subgroup are rejected (this pins down A5 and the order-36
// Hessian member among same-order subgroups).  Errors when nothing fits.
Subgroup extract_subgroup(const Subgroup& g, int64_t order, bool forbid_cyclic_normal,
                          const std::string& label = "");

// A parsed --group tag: family plus optional ':'-separated parameter, e.g.
// "subfield-pgu:2", "conic-psl:9", "user-file:gens.json".
struct SubgroupSpec {
    std::string family;
    std::string param;

    static SubgroupSpec parse(const std::string& tag);
    std::string str() const;
};

struct RealizedGroup {
    Construction con;  // owns the tower and form the subgroup points into
    Subgroup sub;
};

// Builds the construction named by the spec at ambient q = p^n and closes
// it (extraction-backed families close a host group first).  Verifies the
// closure order against the family's formula where one is known.
RealizedGroup realize(int64_t p, int n, const SubgroupSpec& spec, int64_t cap = 2'000'000);

// Family tags realizable at q = p^n, in a fixed report order.
std::vector<std::string> applicable_specs(int64_t p, int n);

// Factors a prime power q = p^n (errors when q is not one).
std::pair<int64_t, int> factor_prime_power(int64_t q);

}  // namespace hq
