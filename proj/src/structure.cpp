#include "modiso/structure.hpp"

#include <algorithm>

#include "modiso/errors.hpp"

namespace modiso {

namespace {

const PGroup& source_of(const FiniteGroup& g) {
  if (!g.source()) throw std::logic_error("operation needs a group built from an invariant list");
  return *g.source();
}

unsigned ceil_log(unsigned p, unsigned n) {
  unsigned j = 0;
  unsigned long long q = 1;
  while (q < n) {
    q *= p;
    ++j;
  }
  return j;
}

}  // namespace

std::vector<GroupElement> gamma_generators(const PGroup& g, unsigned n) {
  if (n < 2) throw std::invalid_argument("gamma needs n >= 2");
  const InvariantList& l = g.inv();
  const unsigned long long e = static_cast<unsigned long long>(n - 2) * (l.m - std::max(l.o1, l.o2));
  if (e >= g.m_eff()) return {};
  return {g.power(g.a(), ipow(l.p, static_cast<unsigned>(e)))};
}

std::vector<GroupElement> center_generators(const PGroup& g) {
  const BigInt pm = ipow(g.p(), g.inv().m);
  return {g.power(g.b1(), pm), g.power(g.b2(), pm), g.central_c()};
}

PrimePower center_exponent(const PGroup& g) {
  unsigned k = 0;
  for (const auto& x : center_generators(g)) k = std::max(k, g.element_order(x).k());
  return PrimePower(g.p(), k);
}

std::vector<GroupElement> power_subgroup_generators(const PGroup& g, unsigned j) {
  const BigInt q = ipow(g.p(), j);
  return {g.power(g.b1(), q), g.power(g.b2(), q), g.power(g.a(), q)};
}

std::vector<GroupElement> dimension_subgroup_generators(const PGroup& g, unsigned n) {
  if (n < 1) throw std::invalid_argument("dimension subgroup needs n >= 1");
  const InvariantList& l = g.inv();
  const unsigned p = l.p;
  const unsigned j0 = ceil_log(p, n);
  std::vector<GroupElement> gens{g.power(g.b1(), ipow(p, j0)), g.power(g.b2(), ipow(p, j0))};
  // smallest e with a^{p^e} in some γ_i^{p^j}, i >= 1, i p^j >= n
  unsigned long long best = j0;
  const unsigned long long step = l.m - std::max(l.o1, l.o2);
  for (unsigned i = 2; i <= std::max(2u, n); ++i) {
    const unsigned j = ceil_log(p, (n + i - 1) / i);
    best = std::min(best, (i - 2) * step + j);
  }
  if (best < g.m_eff()) gens.push_back(g.power(g.a(), ipow(p, static_cast<unsigned>(best))));
  return gens;
}

std::vector<GroupElement> n_gamma_generators(const PGroup& g) { return {g.a(), g.element_d(), g.element_e()}; }

std::vector<GroupElement> m_gamma_generators(const PGroup& g) {
  const InvariantList& l = g.inv();
  return {g.power(g.b1(), ipow(l.p, l.n1 - l.n2 + l.m - l.o1)), g.power(g.b2(), ipow(l.p, l.m - l.o1)), g.a()};
}

unsigned q_formula(const InvariantList& l) {
  if (l.o1p == 0 && l.o2p == 0) return l.m;
  if (l.o1p == 0) return l.n2 + l.o2p;
  return std::max(l.n1 + l.o1p, l.n2 + l.o2p);
}

Subgroup subgroup_of(const FiniteGroup& g, const std::vector<GroupElement>& gens) {
  std::vector<Elem> idx;
  for (const auto& x : gens) idx.push_back(g.index_of(x));
  return g.closure(idx);
}

Subgroup derived_subgroup(const FiniteGroup& g) { return subgroup_of(g, {source_of(g).a()}); }

Subgroup gamma(const FiniteGroup& g, unsigned n, Mode mode) {
  if (n < 2) throw std::invalid_argument("gamma needs n >= 2");
  if (mode == Mode::Formula) return subgroup_of(g, gamma_generators(source_of(g), n));
  Subgroup cur = g.whole();
  const Subgroup all = cur;
  for (unsigned i = 2; i <= n && !cur.is_trivial(); ++i) cur = g.commutator_subgroup(cur, all);
  return cur;
}

Subgroup center(const FiniteGroup& g, Mode mode) {
  if (mode == Mode::Formula) return subgroup_of(g, center_generators(source_of(g)));
  return g.center();
}

Subgroup dimension_subgroup(const FiniteGroup& g, unsigned n, Mode mode) {
  if (n < 1) throw std::invalid_argument("dimension subgroup needs n >= 1");
  if (mode == Mode::Formula) return subgroup_of(g, dimension_subgroup_generators(source_of(g), n));
  const std::vector<Subgroup> d = g.jennings_series();
  return n <= d.size() ? d[n - 1] : d.back();
}

Subgroup power_subgroup(const FiniteGroup& g, unsigned j, Mode mode) {
  if (mode == Mode::Formula) return subgroup_of(g, power_subgroup_generators(source_of(g), j));
  return g.power_subgroup(g.whole(), j);
}

unsigned q_value(const FiniteGroup& g, Mode mode) {
  const PGroup& pg = source_of(g);
  if (mode == Mode::Formula) return q_formula(pg.inv());
  const Subgroup derived = derived_subgroup(g);
  const Subgroup omega1 = g.omega(1, g.trivial());
  const Subgroup low = g.intersection(omega1, derived);
  const std::vector<Subgroup> d = g.jennings_series();
  unsigned long long pn = 1;
  for (unsigned n = 0;; ++n, pn *= g.p()) {
    if (pn > d.size()) return n;
    if (g.intersection(low, d[pn - 1]).is_trivial()) return n;
  }
}

Subgroup n_gamma(const FiniteGroup& g, Mode mode) {
  const PGroup& pg = source_of(g);
  if (mode == Mode::Formula) return subgroup_of(g, n_gamma_generators(pg));
  const InvariantList& l = pg.inv();
  const unsigned o = std::max(l.o1, l.o2);
  const Subgroup derived = derived_subgroup(g);
  if (l.o1 == 0 || (l.o2 == 0 && l.o1p >= l.o2p)) return g.omega(l.m - o - 1, g.join(g.center(), derived));
  return g.omega(l.n2 - 1, derived);
}

Subgroup m_gamma(const FiniteGroup& g, Mode mode) {
  const PGroup& pg = source_of(g);
  const InvariantList& l = pg.inv();
  if (l.n2 + l.o1 < l.m) throw NotApplicable("M_Γ needs n2 - m + o1 >= 0");
  if (mode == Mode::Formula) return subgroup_of(g, m_gamma_generators(pg));
  return g.omega(l.n2 - l.m + l.o1, derived_subgroup(g));
}

Subgroup centralizer_of_derived(const FiniteGroup& g) { return g.centralizer({g.index_of(source_of(g).a())}); }

}  // namespace modiso
