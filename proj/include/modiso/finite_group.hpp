#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modiso/pgroup.hpp"

namespace modiso {

using Elem = std::uint32_t;

/// Default bound on materialized group orders.
inline constexpr std::size_t kDefaultElementCap = 6561;

/// Subset of a FiniteGroup closed under products, with its generators.
struct Subgroup {
  std::vector<Elem> gens;
  std::vector<Elem> elements;  // ascending
  std::vector<char> mask;      // indexed by element

  std::size_t size() const { return elements.size(); }
  bool contains(Elem g) const { return mask[g] != 0; }
  bool is_trivial() const { return elements.size() == 1; }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask == b.mask; }
};

/// A p-group stored by its full multiplication table.
class FiniteGroup {
 public:
  /// Elements of `g` indexed by (x1 p^{n2} + x2) p^{m_eff} + z, identity 0.
  /// Throws ResourceCap when the order exceeds `cap`.
  static FiniteGroup from_pgroup(const PGroup& g, std::size_t cap = kDefaultElementCap);

  /// The same group with element i renamed to the old element perm[i].
  FiniteGroup relabeled(const std::vector<Elem>& perm) const;

  /// Generic construction from a table; `table[i * n + j]` is i*j.
  FiniteGroup(unsigned p, std::size_t n, std::vector<std::uint16_t> table, Elem identity, std::vector<Elem> gens);

  unsigned p() const { return p_; }
  std::size_t size() const { return n_; }
  unsigned order_exponent() const;
  Elem identity() const { return identity_; }
  const std::vector<Elem>& generators() const { return gens_; }

  Elem mul(Elem g, Elem h) const { return table_[static_cast<std::size_t>(g) * n_ + h]; }
  Elem inv(Elem g) const { return inv_[g]; }
  Elem pow(Elem g, std::uint64_t n) const;
  Elem commutator(Elem g, Elem h) const { return mul(mul(inv_[g], inv_[h]), mul(g, h)); }
  Elem conjugate(Elem g, Elem h) const { return mul(mul(inv_[h], g), h); }
  std::uint64_t order_of(Elem g) const;

  /// Present when built from a PGroup.
  const std::optional<PGroup>& source() const { return source_; }
  GroupElement element(Elem i) const;
  Elem index_of(const GroupElement& g) const;

  // Subgroups
  Subgroup closure(const std::vector<Elem>& gens) const;
  Subgroup normal_closure(const std::vector<Elem>& gens) const;
  Subgroup whole() const;
  Subgroup trivial() const;
  Subgroup join(const Subgroup& a, const Subgroup& b) const;
  Subgroup intersection(const Subgroup& a, const Subgroup& b) const;
  /// [A, B] for normal A and B.
  Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) const;
  /// Subgroup generated by all h^{p^j}, h in H.
  Subgroup power_subgroup(const Subgroup& h, unsigned j) const;
  /// <g : g^{p^n} in N>
  Subgroup omega(unsigned n, const Subgroup& normal) const;
  Subgroup center() const;
  Subgroup centralizer(const std::vector<Elem>& set) const;
  bool is_normal(const Subgroup& h) const;
  std::vector<std::vector<Elem>> conjugacy_classes() const;

  /// Lower central series G = γ_1, γ_2, ..., ending with the trivial group.
  std::vector<Subgroup> lower_central_series() const;
  /// γ_1 = G, γ_{i+1} = [γ_i, N], up to `count` terms or triviality.
  std::vector<Subgroup> relative_lower_central_series(const Subgroup& normal, std::size_t count) const;
  /// D_1 = G, ..., ending with the trivial group (Lazard's recursion).
  std::vector<Subgroup> jennings_series() const;

  /// Quotient by a normal subgroup and the projection (element -> coset index).
  std::pair<FiniteGroup, std::vector<Elem>> quotient(const Subgroup& normal) const;
  /// H as a group in its own right and the embedding (local index -> element).
  std::pair<FiniteGroup, std::vector<Elem>> as_group(const Subgroup& h) const;

 private:
  FiniteGroup() = default;
  void finish();

  unsigned p_ = 0;
  std::size_t n_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
  std::vector<Elem> gens_;
  std::optional<PGroup> source_;
  std::vector<Elem> label_;    // element -> normal-form index, empty when identical
  std::vector<Elem> unlabel_;
};

/// Jennings set: elements with their weights, ordered by weight.
struct JenningsSet {
  std::vector<Elem> elements;
  std::vector<unsigned> weights;
};

/// A Jennings set of G picking elements in the order given by `priority`
/// (all elements ascending when empty).
JenningsSet jennings_set(const FiniteGroup& g, const std::vector<Elem>& priority = {});

/// A Jennings set S of G such that S ∩ N is a Jennings set of N (N normal).
/// Built by recursion on central subgroups of order p contained in N.
JenningsSet jennings_set_compatible(const FiniteGroup& g, const Subgroup& normal,
                                    const std::vector<Elem>& priority = {});

/// True when `set` is a Jennings set of H (H = G when `h` is null).
bool is_jennings_set(const FiniteGroup& g, const JenningsSet& set, const Subgroup* h = nullptr);

}  // namespace modiso
