#pragma once

// Finite-field tower F_p < F_q < F_{q^2} < F_{q^6} (q = p^n), realized inside
// the single extension F_{p^{6n}} = F_p[X]/(f).  Working in one big field
// makes subfield membership, Frobenius twists and conjugation cheap
// coefficient-level operations instead of cross-field conversions.
//
// The modulus f is the lexicographically least monic irreducible polynomial
// of degree 6n over F_p, comparing coefficients from degree 0 upward, so two
// towers built with the same (p, n) are bit-identical and every serialized
// element means the same thing across runs.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hq/error.hpp"

namespace hq {

// Compiled ceiling on the extension degree 6n.  The runtime default cap is
// 18 (n <= 3); a few slots of headroom are left for experiments.
inline constexpr int kMaxDeg = 24;

class FieldTower;

// Element of F_{p^{6n}}: coefficient vector of its residue mod the tower
// modulus, low degree first, entries reduced into [0, p).
struct Fe {
    const FieldTower* tw = nullptr;
    std::array<int32_t, kMaxDeg> c{};

    bool is_zero() const {
        for (int32_t v : c)
            if (v != 0) return false;
        return true;
    }
};

bool operator==(const Fe& a, const Fe& b);
inline bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
Fe operator+(const Fe& a, const Fe& b);
Fe operator-(const Fe& a, const Fe& b);
Fe operator*(const Fe& a, const Fe& b);
Fe operator-(const Fe& a);

class FieldTower {
  public:
    // Builds the tower for q = p^n.  Errors: p not prime (or out of range),
    // n < 1, or 6n exceeding the degree cap.
    static FieldTower build(int64_t p, int n, int degree_cap = 18);

    int64_t p() const { return p_; }
    int n() const { return n_; }
    int deg() const { return deg_; }    // 6n
    int64_t q() const { return q_; }    // p^n
    int64_t q2() const { return q2_; }  // p^{2n} = |F_{q^2}|
    const std::vector<int32_t>& modulus() const { return mod_; }

    Fe zero() const;
    Fe one() const;
    Fe x() const;  // residue class of X
    // Prime-field constant v mod p (accepts any int64, negatives allowed).
    Fe from_int(int64_t v) const;
    // Coefficients low degree first, length <= 6n; reduced mod p.
    Fe from_coeffs(const std::vector<int64_t>& coeffs) const;

    Fe add(const Fe& a, const Fe& b) const;
    Fe sub(const Fe& a, const Fe& b) const;
    Fe neg(const Fe& a) const;
    Fe mul(const Fe& a, const Fe& b) const;
    Fe inv(const Fe& a) const;  // extended Euclid; error on zero
    Fe div(const Fe& a, const Fe& b) const;
    Fe pow(const Fe& a, int64_t e) const;  // e >= 0; 0^0 = 1

    // x -> x^{p^k}.  k may be any non-negative integer (reduced mod 6n).
    Fe frobenius(const Fe& a, int64_t k = 1) const;
    // x -> x^q, the conjugation of the unitary geometry.
    Fe conj(const Fe& a) const { return frobenius(a, n_); }

    // Is x in the subfield F_{p^d}?  Errors unless d divides 6n.
    bool in_subfield(const Fe& a, int d) const;
    bool in_fq(const Fe& a) const { return in_subfield(a, n_); }
    bool in_fq2(const Fe& a) const { return in_subfield(a, 2 * n_); }

    // Is x a cube in F_{q^2}*?  Errors on zero or on x outside F_{q^2}.
    bool is_cube_fq2(const Fe& a) const;

    // Deterministic F_p-basis of the subfield F_{p^d} (d vectors).
    // Errors unless d divides 6n.
    std::vector<Fe> subfield_basis(int d) const;

    // All p^d elements of F_{p^d}, in a deterministic order.
    // Errors unless d divides 6n.
    std::vector<Fe> subfield_elements(int d) const;

    // Serialization: comma-separated coefficients, low degree first,
    // trailing zeros trimmed ("0" for the zero element), e.g. "1,0,2".
    std::string format(const Fe& a) const;
    Fe parse(const std::string& s) const;

    bool same_field(const FieldTower& o) const { return p_ == o.p_ && n_ == o.n_; }

    // Bytes needed per coefficient when packing elements into flat keys.
    int pack_bytes_per_coeff() const { return p_ <= 256 ? 1 : 2; }
    void pack(const Fe& a, uint8_t* out) const;  // writes deg()*bpc bytes
    Fe unpack(const uint8_t* in) const;

  private:
    FieldTower() = default;

    void check(const Fe& a, const char* op) const;

    int64_t p_ = 0;
    int n_ = 0;
    int deg_ = 0;
    int64_t q_ = 0;
    int64_t q2_ = 0;
    std::vector<int32_t> mod_;   // monic modulus, length deg+1
    std::vector<int32_t> red_;   // rows: X^{deg+i} mod f, i in [0, deg-2]
    std::vector<int32_t> frob_;  // rows: (X^i)^p mod f, i in [0, deg-1]
};

}  // namespace hq
