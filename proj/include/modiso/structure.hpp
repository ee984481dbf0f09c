#pragma once

#include <vector>

#include "modiso/finite_group.hpp"
#include "modiso/pgroup.hpp"

namespace modiso {

enum class Mode { Formula, Bruteforce };

// Closed-form generator lists. These never materialize a subgroup.

/// Generator of γ_n(Γ) = <a^{p^{(n-2)(m-o)}}>, empty when trivial.
std::vector<GroupElement> gamma_generators(const PGroup& g, unsigned n);
/// b1^{p^m}, b2^{p^m} and the central element c.
std::vector<GroupElement> center_generators(const PGroup& g);
/// Exponent of Z(Γ) from the closed-form generators; valid at any order.
PrimePower center_exponent(const PGroup& g);
/// b1^{p^j}, b2^{p^j}, a^{p^j}
std::vector<GroupElement> power_subgroup_generators(const PGroup& g, unsigned j);
/// D_n as the product of γ_i^{p^j} over i p^j >= n.
std::vector<GroupElement> dimension_subgroup_generators(const PGroup& g, unsigned n);
/// N_Γ = <a, d, e>
std::vector<GroupElement> n_gamma_generators(const PGroup& g);
/// M_Γ = <b1^{p^{n1-n2+m-o1}}, b2^{p^{m-o1}}, a>
std::vector<GroupElement> m_gamma_generators(const PGroup& g);
/// Three-case closed form of q.
unsigned q_formula(const InvariantList& inv);

// Materialized versions on the table-backed group.

Subgroup subgroup_of(const FiniteGroup& g, const std::vector<GroupElement>& gens);
/// <a>
Subgroup derived_subgroup(const FiniteGroup& g);
Subgroup gamma(const FiniteGroup& g, unsigned n, Mode mode);
Subgroup center(const FiniteGroup& g, Mode mode);
Subgroup dimension_subgroup(const FiniteGroup& g, unsigned n, Mode mode);
/// Γ^{p^j}: closure of the three generator powers (formula) or of all p^j-th powers.
Subgroup power_subgroup(const FiniteGroup& g, unsigned j, Mode mode);
unsigned q_value(const FiniteGroup& g, Mode mode);
/// N_Γ as an Ω-subgroup (bruteforce) or <a, d, e> (formula).
Subgroup n_gamma(const FiniteGroup& g, Mode mode);
/// M_Γ = Ω_{n2-m+o1}(Γ:Γ') (bruteforce) or its generator form (formula).
Subgroup m_gamma(const FiniteGroup& g, Mode mode);
Subgroup centralizer_of_derived(const FiniteGroup& g);

}  // namespace modiso
