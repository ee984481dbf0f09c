#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modiso/arith.hpp"
#include "modiso/invariants.hpp"

namespace modiso {

/// Normal form b1^x1 b2^x2 a^z.
struct GroupElement {
  BigInt x1;
  BigInt x2;
  BigInt z;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& g, const GroupElement& h) {
    if (g.x1 != h.x1) return g.x1 < h.x1;
    if (g.x2 != h.x2) return g.x2 < h.x2;
    return g.z < h.z;
  }
};

/// "x1:x2:z"
std::string to_string(const GroupElement& g);
std::ostream& operator<<(std::ostream& os, const GroupElement& g);
GroupElement parse_element(std::string_view text);

/// The group with invariant list `inv`, or its quotient by (Γ')^{p^j} when
/// m_eff = j < m. All arithmetic is exact.
class PGroup {
 public:
  /// Throws InvalidList if `inv` does not validate.
  explicit PGroup(const InvariantList& inv, std::optional<unsigned> m_eff = std::nullopt);

  const InvariantList& inv() const { return inv_; }
  const DerivedConstants& consts() const { return consts_; }
  unsigned p() const { return inv_.p; }
  unsigned m_eff() const { return m_eff_; }
  bool is_quotient() const { return m_eff_ < inv_.m; }
  unsigned order_exponent() const { return inv_.n1 + inv_.n2 + m_eff_; }
  BigInt order() const { return ipow(inv_.p, order_exponent()); }

  const BigInt& mod_a() const { return pa_; }  // p^{m_eff}
  const BigInt& mod_b1() const { return pn1_; }
  const BigInt& mod_b2() const { return pn2_; }
  /// r_i reduced modulo p^{m_eff}.
  const BigInt& r1() const { return r1_; }
  const BigInt& r2() const { return r2_; }
  /// z-exponents of b_i^{p^{n_i}}, reduced modulo p^{m_eff}.
  const BigInt& wrap1() const { return wrap1_; }
  const BigInt& wrap2() const { return wrap2_; }

  /// Group descriptor: the list, with "/p^j" appended for quotients.
  std::string descriptor() const;

  GroupElement identity() const { return {0, 0, 0}; }
  GroupElement a() const { return {0, 0, 1 % pa_}; }
  GroupElement b1() const { return {1, 0, 0}; }
  GroupElement b2() const { return {0, 1, 0}; }
  GroupElement make(const BigInt& x1, const BigInt& x2, const BigInt& z) const;
  bool contains(const GroupElement& g) const;

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  /// Letter-by-letter collection. Throws ResourceCap when h spells more
  /// than `max_letters` letters.
  GroupElement rewriting_multiply(const GroupElement& g, const GroupElement& h,
                                  std::size_t max_letters = 1u << 22) const;
  GroupElement power(const GroupElement& g, const BigInt& n) const;
  GroupElement inverse(const GroupElement& g) const;
  /// g^-1 h^-1 g h
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const;
  /// h^-1 g h
  GroupElement conjugate(const GroupElement& g, const GroupElement& h) const;
  PrimePower element_order(const GroupElement& g) const;

  /// Central element c generating Z(Γ) together with b1^{p^m}, b2^{p^m}.
  GroupElement central_c() const;
  /// Generators a, d, e of N_Γ.
  GroupElement element_d() const;
  GroupElement element_e() const;

  PGroup quotient_mod_derived_power(unsigned j) const;

 private:
  InvariantList inv_;
  DerivedConstants consts_;
  unsigned m_eff_;
  BigInt pa_, pn1_, pn2_, r1_, r2_, wrap1_, wrap2_;
};

/// Parses "p,m,n1,n2,o1,o2,o1p,o2p,u1,u2" with an optional "/p^j" suffix.
PGroup parse_group_descriptor(std::string_view text);

}  // namespace modiso
