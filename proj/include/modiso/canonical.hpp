#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "modiso/algebra.hpp"
#include "modiso/finite_group.hpp"
#include "modiso/pgroup.hpp"

namespace modiso {

struct CanonicalOptions {
  std::size_t element_cap = kDefaultElementCap;
  std::size_t algebra_cap = kDefaultAlgebraCap;
  /// Shuffle the element enumeration with this seed.
  std::optional<std::uint64_t> relabel_seed;
  /// Shuffle the priority used to pick the Jennings set.
  std::optional<std::uint64_t> jennings_seed;
  /// Use c^j as spanning central element (p must not divide j).
  unsigned central_power = 1;
  /// Representative-independence samples per map (0 disables).
  unsigned check_samples = 0;
  std::uint64_t seed = 1;
};

/// A group together with its algebra and cached ideals.
class CanonicalContext {
 public:
  explicit CanonicalContext(const PGroup& g, CanonicalOptions opts = {});
  CanonicalContext(const CanonicalContext&) = delete;

  const PGroup& pgroup() const { return pg_; }
  const FiniteGroup& group() const { return *g_; }
  const GroupAlgebra& algebra() const { return *A_; }
  const CanonicalOptions& options() const { return opts_; }
  std::mt19937_64& rng() { return rng_; }

  Elem elem(const GroupElement& x) const { return g_->index_of(x); }
  Vec aug(const GroupElement& x) const { return A_->aug(elem(x)); }
  Subgroup subgroup(const std::vector<GroupElement>& gens) const;

  /// I(Γ)^n, with I^0 = kΓ.
  const Subspace& aug_power(unsigned n);
  /// Z(I(Γ))
  const Subspace& center_aug();
  /// I(Γ':Γ)
  const Subspace& derived_ideal();
  /// I(Γ') I(Γ)
  const Subspace& derived_times_aug();
  /// I(Γ')^{p^{m-1}} kΓ / I(Γ')^{p^{m-1}} I(Γ), spanned by a^{p^{m-1}} - 1.
  std::shared_ptr<const Subquotient> target();
  Vec target_generator() const;
  /// c^j for the configured j.
  GroupElement central_element() const;
  /// Largest weight of a nonzero Jennings monomial.
  unsigned max_weight() const { return jd_->max_weight; }

  /// Subspace or subquotient stored under `key`, built on first use.
  const Subspace& cached(const std::string& key, const std::function<Subspace()>& make);
  std::shared_ptr<const Subquotient> quotient(const std::string& key, const std::function<Subspace()>& top,
                                              const std::function<Subspace()>& bottom);

 private:
  PGroup pg_;
  CanonicalOptions opts_;
  std::unique_ptr<FiniteGroup> g_;
  std::unique_ptr<GroupAlgebra> A_;
  std::mt19937_64 rng_;
  std::optional<JenningsData> jd_;
  std::map<unsigned, Subspace> powers_;
  std::optional<Subspace> center_, derived_, derived_aug_;
  std::shared_ptr<const Subquotient> target_;
  std::map<std::string, Subspace> cache_;
  std::map<std::string, std::shared_ptr<const Subquotient>> quotients_;
};

/// Map between subquotients given by a rule on representatives.
struct QuotientMap {
  enum class Kind { Projection, Power, Composite };
  std::string name;
  Kind kind = Kind::Projection;
  std::shared_ptr<const Subquotient> domain;
  std::shared_ptr<const Subquotient> codomain;
  unsigned power = 0;  // x -> x^{p^power} for power maps
  std::function<Vec(const Vec&)> rule;

  /// Representative of the image; throws PipelineDegenerate outside the codomain.
  Vec apply(const Vec& rep) const;
  /// Codomain coordinates of the image.
  std::vector<std::uint8_t> coords(const Vec& rep) const;
  /// Columns: images of the domain basis in codomain coordinates.
  std::vector<std::vector<std::uint8_t>> matrix() const;
  /// Dimension of the image.
  std::size_t rank() const;
  /// Throws WellDefinednessViolation when representatives of one class
  /// disagree, or when a power map fails additivity on a sample.
  void check(std::mt19937_64& rng, unsigned samples) const;
};

/// g ∘ f on representatives; f's codomain must equal g's domain.
QuotientMap compose(const QuotientMap& g, const QuotientMap& f);

/// x with Σ x_i cols[i] = target, or nothing. `unique` reports independence of cols.
std::optional<std::vector<std::uint8_t>> solve_combination(unsigned p, const std::vector<std::vector<std::uint8_t>>& cols,
                                                           const std::vector<std::uint8_t>& target,
                                                           bool* unique = nullptr);

/// s with v ≡ s·gen in the subquotient; PipelineDegenerate if gen ≡ 0 or v is not a multiple.
unsigned scalar_on_line(const Subquotient& q, const Vec& v, const Vec& gen);

// Maps

/// I(N:G)/I(N)I(G) -> I(N)^{p^n}kG / J^{p^n}(N,G), x -> x^{p^n}.
QuotientMap lambda_map(CanonicalContext& ctx, const Subgroup& n, unsigned k);
/// I(Γ':Γ)/I(Γ')I(Γ) -> (I(Γ':Γ)+I^3)/I^3. NotApplicable without the standing assumptions.
QuotientMap delta_iso(CanonicalContext& ctx);
/// Preimage representative under Δ of a class of (Z(I)+I(Γ':Γ)+I^3)/I^3.
Vec delta_inverse(CanonicalContext& ctx, const Vec& rep);
/// (Z(I)+I^{p^m})/I^{p^m} -> (Z(I)+I^3)/I^3
QuotientMap zeta1(CanonicalContext& ctx);
/// (Z(I)+I^{p^m})/I^{p^m} -> (Z(I)+I^{p^{m-o}+1}+I(Γ':Γ)) / (I^{p^{m-o}+1}+I(Γ':Γ))
QuotientMap zeta2(CanonicalContext& ctx);
/// (Z(I)+I^{p^m})/I^{p^m} -> (Z(I)+I^{p^{m-o2}+1}+I(M:Γ)) / (I^{p^{m-o2}+1}+I(M:Γ))
QuotientMap zeta3(CanonicalContext& ctx);
/// (Z(I)+I^{p^m})/I^{p^m} -> (Z(I)+I^{p^{n+m}}+B)/(I^{p^{n+m}}+B), B = I(Γ')^{p^{m-1}}I(Γ), w -> w^{p^n}
QuotientMap upsilon(CanonicalContext& ctx, unsigned n);
/// Projection of the target line into the codomain of Υ^{m-t-1}.
QuotientMap omega_map(CanonicalContext& ctx, unsigned t);
/// (I(C_Γ(Γ'):Γ)+I^2)/I^2
std::shared_ptr<const Subquotient> centralizer_line(CanonicalContext& ctx);

/// Coordinate in the target line of Λ_{Γ'}^{m-1} Δ^{-1} ζ^1 (w).
unsigned reference_scalar(CanonicalContext& ctx, const Vec& w);

/// ℓ = n_t + o'_t - 2
unsigned ell_value(const InvariantList& l);

// Extraction pipelines. Each returns a scalar in F_p.

/// δ·u_t mod p (t = 1 if o1 = 0, else 2).
unsigned extract_u_case1(const PGroup& g, CanonicalOptions opts = {});
/// -δ·u_1 mod p when o1 o2 != 0 and n1+o1' > n2+o2'.
unsigned extract_u1_unequal(const PGroup& g, CanonicalOptions opts = {});
/// -δ·u_1 mod p when o1 o2 > 0 and n1+o1' = n2+o2' = 2m-o1.
unsigned extract_u1_special(const PGroup& g, CanonicalOptions opts = {});
/// v with u_1 = -1 + v p^t (part 1) or u_2 = 1 + v p^t (part 2), modulo p.
unsigned extract_higher(const PGroup& g, unsigned t, unsigned part, CanonicalOptions opts = {});

enum class Pipeline { Case1, Unequal, Special, Higher };

/// The scalar a pipeline should return, computed from the invariants alone:
/// δ u_t, -δ u1, -δ u1, and (u1+1)/p^t or (u2-1)/p^t, all mod p.
unsigned predicted_scalar(const InvariantList& l, Pipeline which, unsigned t = 1, unsigned part = 2);

/// Hypothesis checks for the pipelines.
bool case1_applies(const InvariantList& l);
bool unequal_applies(const InvariantList& l);
bool special_applies(const InvariantList& l);
bool higher_applies(const InvariantList& l, unsigned t, unsigned part);

// Group-level identities behind the last three pipelines.

/// (δ u2 + 1) p^{m+o2-o1-1} ≡ 0 mod p^m
bool congruence_delta_holds(const InvariantList& l);
/// c^{p^{n1+o1'-1-m+o2}} = a^{-δ u1 p^{m-1}}
bool power_of_c_holds(const PGroup& g);
/// n1+o1'-1 = 2m-o1-1 >= 2m-o2+n2-n1 = 2m-o2-o2'+o1' >= 2m-o2-o2' >= m-o2
bool inequality_chain_holds(const InvariantList& l);
/// c b1^{δ p^{m-o2}} lies in M_Γ, so ζ³ sends c-1 to -δ(b1^{p^{m-o2}}-1).
bool zeta3_display_holds(const PGroup& g);
/// (b1^{p^{m-o2}} a)^{p^{m-t-1}} = a^{v p^{m-1}} (part 1) or (b2^{-p^{m-o1}} a)^{p^{m-t-1}} = a^{-v p^{m-1}} (part 2).
bool upsilon_display_holds(const PGroup& g, unsigned t, unsigned part);

// Valid lists with m <= max_m meeting a pipeline's hypotheses, at most a few per
// prefix and `limit` in total.

std::vector<InvariantList> special_lists(unsigned p, unsigned max_m, std::size_t limit);
std::vector<InvariantList> unequal_lists(unsigned p, unsigned max_m, std::size_t limit);
std::vector<InvariantList> higher_lists(unsigned p, unsigned max_m, unsigned t, unsigned part, std::size_t limit);

}  // namespace modiso
