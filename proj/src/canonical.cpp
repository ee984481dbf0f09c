#include "modiso/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "modiso/errors.hpp"
#include "modiso/structure.hpp"

namespace modiso {

namespace {

/// min(p^e, cap) without overflow.
unsigned clamped_power(unsigned p, unsigned e, unsigned cap) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= p;
    if (v >= cap) return cap;
  }
  return static_cast<unsigned>(v);
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t c) { return c == 0; });
}

/// x^{p^k}, stopping early at zero.
Vec power_pk(const GroupAlgebra& A, Vec x, unsigned k) {
  for (unsigned i = 0; i < k && !is_zero(x); ++i) x = A.pow(x, BigInt(A.p()));
  return x;
}

Vec random_element(const Subspace& s, std::mt19937_64& rng) {
  Vec v(s.ambient(), 0);
  std::uniform_int_distribution<unsigned> coef(0, s.p() - 1);
  for (const Vec& row : s.rows()) axpy(v, row, coef(rng), s.p());
  return v;
}

std::string subgroup_key(const Subgroup& n) {
  std::string key;
  for (Elem g : n.gens) key += std::to_string(g) + ",";
  return key;
}

const Subspace& center_space(CanonicalContext& ctx) { return ctx.center_aug(); }

/// (Z(I) + I^{p^m}) / I^{p^m}
std::shared_ptr<const Subquotient> central_quotient(CanonicalContext& ctx) {
  const unsigned pm = clamped_power(ctx.pgroup().p(), ctx.pgroup().inv().m, ctx.max_weight() + 1);
  return ctx.quotient(
      "Zc", [&] { return center_space(ctx).sum(ctx.aug_power(pm)); }, [&] { return ctx.aug_power(pm); });
}

unsigned divide(unsigned num, unsigned den, unsigned p) {
  if (den % p == 0) throw PipelineDegenerate("reference map vanishes on the central element");
  return num * inverse_mod_prime(den, p) % p;
}

void require_assumptions(const PGroup& g) {
  if (g.is_quotient()) throw NotApplicable("pipelines need the full group, not a quotient");
  if (!reduction_flags(g.inv()).assumptions_hold) throw NotApplicable("standing assumptions fail");
}

void run_checks(CanonicalContext& ctx, const std::vector<const QuotientMap*>& maps) {
  const unsigned samples = ctx.options().check_samples;
  if (samples == 0) return;
  for (const QuotientMap* f : maps) f->check(ctx.rng(), samples);
}

}  // namespace

// Context

CanonicalContext::CanonicalContext(const PGroup& g, CanonicalOptions opts)
    : pg_(g), opts_(opts), rng_(opts.seed) {
  g_ = std::make_unique<FiniteGroup>(FiniteGroup::from_pgroup(pg_, opts_.element_cap));
  if (opts_.relabel_seed) {
    std::vector<Elem> perm(g_->size());
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::mt19937_64 shuffle_rng(*opts_.relabel_seed);
    std::shuffle(perm.begin(), perm.end(), shuffle_rng);
    g_ = std::make_unique<FiniteGroup>(g_->relabeled(perm));
  }
  A_ = std::make_unique<GroupAlgebra>(*g_, opts_.algebra_cap);
  std::vector<Elem> priority;
  if (opts_.jennings_seed) {
    priority.resize(g_->size());
    std::iota(priority.begin(), priority.end(), Elem{0});
    std::mt19937_64 shuffle_rng(*opts_.jennings_seed);
    std::shuffle(priority.begin(), priority.end(), shuffle_rng);
  }
  jd_ = jennings_data(*A_, jennings_set(*g_, priority));
}

Subgroup CanonicalContext::subgroup(const std::vector<GroupElement>& gens) const { return subgroup_of(*g_, gens); }

const Subspace& CanonicalContext::aug_power(unsigned n) {
  n = std::min(n, jd_->max_weight + 1);
  auto it = powers_.find(n);
  if (it != powers_.end()) return it->second;
  Subspace s = n == 0 ? Subspace::full(pg_.p(), A_->dim()) : monomial_span(*A_, *jd_, n);
  return powers_.emplace(n, std::move(s)).first->second;
}

const Subspace& CanonicalContext::center_aug() {
  if (!center_) center_ = center_of_augmentation(*A_);
  return *center_;
}

const Subspace& CanonicalContext::derived_ideal() {
  if (!derived_) derived_ = ideal_of(*A_, derived_subgroup(*g_));
  return *derived_;
}

const Subspace& CanonicalContext::derived_times_aug() {
  if (!derived_aug_) derived_aug_ = relative_power_times_aug(*A_, derived_subgroup(*g_), 1);
  return *derived_aug_;
}

std::shared_ptr<const Subquotient> CanonicalContext::target() {
  if (!target_) {
    const Subgroup l = subgroup({pg_.power(pg_.a(), ipow(pg_.p(), pg_.inv().m - 1))});
    target_ = std::make_shared<Subquotient>(ideal_of(*A_, l), relative_power_times_aug(*A_, l, 1));
  }
  return target_;
}

Vec CanonicalContext::target_generator() const {
  return aug(pg_.power(pg_.a(), ipow(pg_.p(), pg_.inv().m - 1)));
}

GroupElement CanonicalContext::central_element() const {
  if (opts_.central_power % pg_.p() == 0) throw std::invalid_argument("central power must be prime to p");
  return pg_.power(pg_.central_c(), BigInt(opts_.central_power));
}

const Subspace& CanonicalContext::cached(const std::string& key, const std::function<Subspace()>& make) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Subspace s = make();
  return cache_.emplace(key, std::move(s)).first->second;
}

std::shared_ptr<const Subquotient> CanonicalContext::quotient(const std::string& key,
                                                              const std::function<Subspace()>& top,
                                                              const std::function<Subspace()>& bottom) {
  auto it = quotients_.find(key);
  if (it != quotients_.end()) return it->second;
  auto q = std::make_shared<const Subquotient>(top(), bottom());
  quotients_.emplace(key, q);
  return q;
}

// Maps

Vec QuotientMap::apply(const Vec& rep) const {
  Vec y = rule(rep);
  if (!codomain->top().contains(y)) throw PipelineDegenerate(name + ": image leaves the codomain");
  return y;
}

std::vector<std::uint8_t> QuotientMap::coords(const Vec& rep) const { return codomain->coordinates(apply(rep)); }

std::vector<std::vector<std::uint8_t>> QuotientMap::matrix() const {
  std::vector<std::vector<std::uint8_t>> cols;
  for (const Vec& b : domain->basis()) cols.push_back(coords(b));
  return cols;
}

std::size_t QuotientMap::rank() const {
  return Subspace::span(codomain->top().p(), codomain->dim(), matrix()).dim();
}

void QuotientMap::check(std::mt19937_64& rng, unsigned samples) const {
  const unsigned p = domain->top().p();
  for (unsigned s = 0; s < samples; ++s) {
    Vec v = random_element(domain->top(), rng);
    Vec w = v;
    axpy(w, random_element(domain->bottom(), rng), 1, p);
    if (coords(v) != coords(w)) throw WellDefinednessViolation(name + ": representatives disagree");
    if (kind == Kind::Power) {
      Vec u = random_element(domain->top(), rng);
      Vec sum = v;
      axpy(sum, u, 1, p);
      auto cs = coords(sum);
      auto cv = coords(v);
      auto cu = coords(u);
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i] != (cv[i] + cu[i]) % p) throw WellDefinednessViolation(name + ": not additive");
    }
  }
}

QuotientMap compose(const QuotientMap& g, const QuotientMap& f) {
  if (!g.domain->top().contains(f.codomain->top()) || !g.domain->bottom().contains(f.codomain->bottom()))
    throw std::invalid_argument("compose: codomain of " + f.name + " does not map into " + g.name);
  QuotientMap h;
  h.name = g.name + "∘" + f.name;
  h.kind = QuotientMap::Kind::Composite;
  h.domain = f.domain;
  h.codomain = g.codomain;
  h.rule = [gr = g.rule, fr = f.rule](const Vec& x) { return gr(fr(x)); };
  return h;
}

std::optional<std::vector<std::uint8_t>> solve_combination(unsigned p,
                                                           const std::vector<std::vector<std::uint8_t>>& cols,
                                                           const std::vector<std::uint8_t>& target, bool* unique) {
  const std::size_t len = target.size();
  for (const auto& c : cols)
    if (c.size() != len) throw DimensionMismatch("solve_combination: column length");
  if (unique) *unique = kernel_of(p, len, cols).dim() == 0;
  std::vector<Vec> images = cols;
  images.push_back(target);
  const Subspace k = kernel_of(p, len, images);
  for (const Vec& row : k.rows()) {
    const unsigned last = row.back();
    if (last == 0) continue;
    // row·(cols, target) = 0, so x = -row / last.
    const unsigned f = (p - inverse_mod_prime(last, p)) % p;
    std::vector<std::uint8_t> x(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) x[i] = static_cast<std::uint8_t>(row[i] * f % p);
    return x;
  }
  return std::nullopt;
}

unsigned scalar_on_line(const Subquotient& q, const Vec& v, const Vec& gen) {
  std::vector<std::uint8_t> cv, cg;
  try {
    cv = q.coordinates(v);
    cg = q.coordinates(gen);
  } catch (const std::invalid_argument& e) {
    throw PipelineDegenerate(std::string("scalar_on_line: ") + e.what());
  }
  const unsigned p = q.top().p();
  auto it = std::find_if(cg.begin(), cg.end(), [](std::uint8_t c) { return c != 0; });
  if (it == cg.end()) throw PipelineDegenerate("scalar_on_line: generator is zero in the quotient");
  const std::size_t i = static_cast<std::size_t>(it - cg.begin());
  const unsigned s = cv[i] * inverse_mod_prime(cg[i], p) % p;
  for (std::size_t j = 0; j < cg.size(); ++j)
    if (cv[j] != s * cg[j] % p) throw PipelineDegenerate("scalar_on_line: vector is off the line");
  return s;
}

QuotientMap lambda_map(CanonicalContext& ctx, const Subgroup& n, unsigned k) {
  const GroupAlgebra& A = ctx.algebra();
  const unsigned pk = clamped_power(A.p(), k, ctx.max_weight() + 1);
  const std::string key = subgroup_key(n);
  QuotientMap f;
  f.name = "Λ^" + std::to_string(k);
  f.kind = QuotientMap::Kind::Power;
  f.power = k;
  f.domain = ctx.quotient(
      "IN:" + key, [&] { return ideal_of(A, n); }, [&] { return relative_power_times_aug(A, n, 1); });
  f.codomain = ctx.quotient(
      "Jp:" + key + std::to_string(pk), [&] { return relative_power_kg(A, n, pk); },
      [&] { return relative_ideal(A, n, pk, IdealMode::Series); });
  f.rule = [&A, k](const Vec& x) { return power_pk(A, x, k); };
  return f;
}

QuotientMap delta_iso(CanonicalContext& ctx) {
  require_assumptions(ctx.pgroup());
  QuotientMap f;
  f.name = "Δ";
  f.domain = ctx.quotient(
      "Delta.dom", [&] { return ctx.derived_ideal(); }, [&] { return ctx.derived_times_aug(); });
  f.codomain = ctx.quotient(
      "Delta.cod", [&] { return ctx.derived_ideal().sum(ctx.aug_power(3)); }, [&] { return ctx.aug_power(3); });
  f.rule = [](const Vec& x) { return x; };
  return f;
}

Vec delta_inverse(CanonicalContext& ctx, const Vec& rep) {
  const QuotientMap d = delta_iso(ctx);
  if (d.domain->dim() != 1 || d.codomain->dim() != 1) throw PipelineDegenerate("Δ is not between lines");
  const Vec& d0 = d.domain->basis()[0];
  const unsigned s = scalar_on_line(*d.codomain, rep, d.apply(d0));
  return ctx.algebra().scale(s, d0);
}

QuotientMap zeta1(CanonicalContext& ctx) {
  QuotientMap f;
  f.name = "ζ1";
  f.domain = central_quotient(ctx);
  f.codomain = ctx.quotient(
      "zeta1.cod", [&] { return center_space(ctx).sum(ctx.aug_power(3)); }, [&] { return ctx.aug_power(3); });
  f.rule = [](const Vec& x) { return x; };
  return f;
}

QuotientMap zeta2(CanonicalContext& ctx) {
  const InvariantList& l = ctx.pgroup().inv();
  const unsigned k = clamped_power(l.p, l.m - std::max(l.o1, l.o2), ctx.max_weight()) + 1;
  QuotientMap f;
  f.name = "ζ2";
  f.domain = central_quotient(ctx);
  auto bottom = [&ctx, k] { return ctx.aug_power(k).sum(ctx.derived_ideal()); };
  f.codomain = ctx.quotient(
      "zeta2.cod", [&] { return center_space(ctx).sum(bottom()); }, bottom);
  f.rule = [](const Vec& x) { return x; };
  return f;
}

QuotientMap zeta3(CanonicalContext& ctx) {
  const InvariantList& l = ctx.pgroup().inv();
  const unsigned k = clamped_power(l.p, l.m - l.o2, ctx.max_weight()) + 1;
  QuotientMap f;
  f.name = "ζ3";
  f.domain = central_quotient(ctx);
  auto bottom = [&ctx, k] {
    return ctx.aug_power(k).sum(ctx.cached("IM", [&] {
      return ideal_of(ctx.algebra(), m_gamma(ctx.group(), Mode::Bruteforce));
    }));
  };
  f.codomain = ctx.quotient(
      "zeta3.cod", [&] { return center_space(ctx).sum(bottom()); }, bottom);
  f.rule = [](const Vec& x) { return x; };
  return f;
}

QuotientMap upsilon(CanonicalContext& ctx, unsigned n) {
  const InvariantList& l = ctx.pgroup().inv();
  const unsigned k = clamped_power(l.p, n + l.m, ctx.max_weight() + 1);
  const GroupAlgebra& A = ctx.algebra();
  QuotientMap f;
  f.name = "Υ^" + std::to_string(n);
  f.kind = QuotientMap::Kind::Power;
  f.power = n;
  f.domain = central_quotient(ctx);
  auto bottom = [&ctx, k] { return ctx.aug_power(k).sum(ctx.target()->bottom()); };
  f.codomain = ctx.quotient(
      "Upsilon:" + std::to_string(n), [&] { return center_space(ctx).sum(bottom()); }, bottom);
  f.rule = [&A, n](const Vec& x) { return power_pk(A, x, n); };
  return f;
}

QuotientMap omega_map(CanonicalContext& ctx, unsigned t) {
  const unsigned m = ctx.pgroup().inv().m;
  if (t + 1 > m) throw NotApplicable("ω needs t <= m - 1");
  QuotientMap f;
  f.name = "ω";
  f.domain = ctx.target();
  f.codomain = upsilon(ctx, m - t - 1).codomain;
  f.rule = [](const Vec& x) { return x; };
  return f;
}

std::shared_ptr<const Subquotient> centralizer_line(CanonicalContext& ctx) {
  return ctx.quotient(
      "C",
      [&] { return ideal_of(ctx.algebra(), centralizer_of_derived(ctx.group())).sum(ctx.aug_power(2)); },
      [&] { return ctx.aug_power(2); });
}

unsigned reference_scalar(CanonicalContext& ctx, const Vec& w) {
  const QuotientMap z1 = zeta1(ctx);
  const Vec d = delta_inverse(ctx, z1.apply(w));
  const QuotientMap lam = lambda_map(ctx, derived_subgroup(ctx.group()), ctx.pgroup().inv().m - 1);
  run_checks(ctx, {&z1, &lam});
  return scalar_on_line(*lam.codomain, lam.apply(d), ctx.target_generator());
}

unsigned ell_value(const InvariantList& l) {
  const int v = l.o1 == 0 ? static_cast<int>(l.n1 + l.o1p) - 2 : static_cast<int>(l.n2 + l.o2p) - 2;
  return static_cast<unsigned>(std::max(v, 0));
}

unsigned predicted_scalar(const InvariantList& l, Pipeline which, unsigned t, unsigned part) {
  const unsigned p = l.p;
  const BigInt delta = derive_constants(l).delta;
  switch (which) {
    case Pipeline::Case1:
      return static_cast<unsigned>(mod(delta * (l.o1 == 0 ? l.u1 : l.u2), p));
    case Pipeline::Unequal:
    case Pipeline::Special:
      return static_cast<unsigned>(mod(-delta * l.u1, p));
    case Pipeline::Higher: {
      const BigInt pt = ipow(p, t);
      const BigInt diff = part == 1 ? BigInt(l.u1) + 1 : BigInt(l.u2) - 1;
      if (mod(diff, pt) != 0) throw NotApplicable("u is not congruent to its base value mod p^t");
      return static_cast<unsigned>(mod(diff / pt, p));
    }
  }
  return 0;
}

// Hypotheses

bool case1_applies(const InvariantList& l) {
  if (!reduction_flags(l).assumptions_hold) return false;
  const DerivedConstants k = derive_constants(l);
  return (l.o1 == 0 ? k.a1 : k.a2) > 0;
}

bool unequal_applies(const InvariantList& l) {
  if (!reduction_flags(l).assumptions_hold) return false;
  return l.o1 > 0 && l.o2 > 0 && l.n1 + l.o1p > l.n2 + l.o2p && derive_constants(l).a1 > 0;
}

bool special_applies(const InvariantList& l) {
  if (!reduction_flags(l).assumptions_hold) return false;
  if (l.o1 == 0 || l.o2 == 0) return false;
  if (l.n1 + l.o1p != 2 * l.m - l.o1 || l.n2 + l.o2p != 2 * l.m - l.o1) return false;
  const unsigned e = l.o1 + 1 > l.o2 ? l.o1 + 1 - l.o2 : 0;
  if (mod(BigInt(l.u2 - 1), ipow(l.p, e)) != 0) return false;
  return derive_constants(l).a1 > 0;
}

bool higher_applies(const InvariantList& l, unsigned t, unsigned part) {
  if (part != 1 && part != 2) throw std::invalid_argument("part must be 1 or 2");
  if (!reduction_flags(l).assumptions_hold || t == 0) return false;
  const int q = static_cast<int>(q_formula(l));
  if (static_cast<int>(t) > 2 * static_cast<int>(l.m) - 1 - q) return false;
  const DerivedConstants k = derive_constants(l);
  const BigInt pt = ipow(l.p, t);
  if (part == 1) {
    if (l.o1 != 0 || static_cast<int>(l.n1) != 2 * static_cast<int>(l.m) - static_cast<int>(l.o2 + l.o1p))
      return false;
    return mod(BigInt(l.u1 + 1), pt) == 0 && static_cast<int>(t) < k.a1;
  }
  if (l.o2 != 0 || static_cast<int>(l.n2) != 2 * static_cast<int>(l.m) - static_cast<int>(l.o1 + l.o2p))
    return false;
  return mod(BigInt(l.u2 - 1), pt) == 0 && static_cast<int>(t) < k.a2;
}

// Pipelines

unsigned extract_u_case1(const PGroup& g, CanonicalOptions opts) {
  require_assumptions(g);
  if (!case1_applies(g.inv())) throw NotApplicable("case-1 extraction needs a_t > 0");
  const InvariantList& l = g.inv();
  const unsigned p = l.p;
  CanonicalContext ctx(g, opts);
  const GroupAlgebra& A = ctx.algebra();

  const Subgroup n = n_gamma(ctx.group(), Mode::Bruteforce);
  if (!(n == n_gamma(ctx.group(), Mode::Formula))) throw PipelineDegenerate("N_Γ disagrees with <a, d, e>");
  const QuotientMap lam = lambda_map(ctx, n, ell_value(l));
  const auto target = ctx.target();
  if (!lam.codomain->top().contains(target->top()) || !lam.codomain->bottom().contains(target->bottom()))
    throw PipelineDegenerate("target line does not project into the codomain of Λ_N");

  const Subquotient calN(lam.domain->top().intersect(ctx.aug_power(p)).sum(lam.domain->bottom()),
                         lam.domain->bottom());
  const Vec tgen = ctx.target_generator();
  std::vector<std::uint8_t> top;
  for (const Vec& b : calN.basis()) top.push_back(static_cast<std::uint8_t>(scalar_on_line(*lam.codomain, lam.apply(b), tgen)));

  const auto calC = centralizer_line(ctx);
  if (calC->dim() != 1) throw PipelineDegenerate("centralizer line is not one-dimensional");
  const Vec& c0 = calC->basis()[0];
  const Subspace& ip1 = ctx.aug_power(p + 1);
  const Subquotient eta(lam.domain->top().sum(ip1), ctx.derived_ideal().sum(ip1));
  const Vec c0p = power_pk(A, c0, 1);
  std::vector<std::uint8_t> nu;
  for (const Vec& b : calN.basis()) nu.push_back(static_cast<std::uint8_t>(scalar_on_line(eta, b, c0p)));

  const auto mu = solve_combination(p, {nu}, top);
  if (!mu) throw PipelineDegenerate("no map μ makes the triangle commute");

  const QuotientMap z2 = zeta2(ctx);
  const Vec w = ctx.aug(ctx.central_element());
  const unsigned y = scalar_on_line(*z2.codomain, z2.apply(w), power_pk(A, c0, l.m - std::max(l.o1, l.o2)));
  run_checks(ctx, {&lam, &z2});
  return divide((*mu)[0] * y % p, reference_scalar(ctx, w), p);
}

unsigned extract_u1_unequal(const PGroup& g, CanonicalOptions opts) {
  require_assumptions(g);
  if (!unequal_applies(g.inv())) throw NotApplicable("unequal extraction hypotheses fail");
  const InvariantList& l = g.inv();
  const unsigned p = l.p;
  CanonicalContext ctx(g, opts);
  const GroupAlgebra& A = ctx.algebra();
  if (!(m_gamma(ctx.group(), Mode::Bruteforce) == m_gamma(ctx.group(), Mode::Formula)))
    throw PipelineDegenerate("M_Γ disagrees with its generator form");

  const unsigned cap = ctx.max_weight() + 1;
  const unsigned e = l.n1 + l.o1p - 1;
  const unsigned big = clamped_power(p, e, cap);
  const Subquotient frattini(ctx.aug_power(1), ctx.aug_power(2));
  const Subquotient layer(ctx.aug_power(big), ctx.aug_power(big + 1));

  const unsigned k = clamped_power(p, l.m - l.o2, cap);
  const QuotientMap z3 = zeta3(ctx);
  const Subquotient w3(z3.codomain->top().sum(ctx.aug_power(k)), z3.codomain->bottom());

  const Vec tgen = ctx.target_generator();
  std::vector<std::uint8_t> lam, hat;
  std::optional<Vec> g3;
  std::vector<Vec> hat_images;
  for (const Vec& x : frattini.basis()) {
    lam.push_back(static_cast<std::uint8_t>(scalar_on_line(layer, power_pk(A, x, e), tgen)));
    hat_images.push_back(power_pk(A, x, l.m - l.o2));
    if (!g3 && !w3.is_zero(hat_images.back())) g3 = hat_images.back();
  }
  if (!g3) throw PipelineDegenerate("Λ̂ vanishes");
  for (const Vec& h : hat_images) hat.push_back(static_cast<std::uint8_t>(scalar_on_line(w3, h, *g3)));
  const auto mu = solve_combination(p, {hat}, lam);
  if (!mu) throw PipelineDegenerate("no map μ makes the triangle commute");

  const Vec w = ctx.aug(ctx.central_element());
  const unsigned s = scalar_on_line(w3, z3.apply(w), *g3);
  run_checks(ctx, {&z3});
  return divide((*mu)[0] * s % p, reference_scalar(ctx, w), p);
}

namespace {

unsigned upsilon_scalar(CanonicalContext& ctx, unsigned n, const Vec& line) {
  const QuotientMap u = upsilon(ctx, n);
  const Vec w = ctx.aug(ctx.central_element());
  const unsigned x = scalar_on_line(*u.codomain, u.apply(w), line);
  run_checks(ctx, {&u});
  return divide(x, reference_scalar(ctx, w), ctx.pgroup().p());
}

}  // namespace

unsigned extract_u1_special(const PGroup& g, CanonicalOptions opts) {
  require_assumptions(g);
  if (!special_applies(g.inv())) throw NotApplicable("special extraction hypotheses fail");
  const InvariantList& l = g.inv();
  CanonicalContext ctx(g, opts);
  return upsilon_scalar(ctx, l.n1 + l.o1p + l.o2 - l.m - 1, ctx.target_generator());
}

unsigned extract_higher(const PGroup& g, unsigned t, unsigned part, CanonicalOptions opts) {
  require_assumptions(g);
  if (!higher_applies(g.inv(), t, part)) throw NotApplicable("higher-power extraction hypotheses fail");
  const unsigned p = g.p();
  CanonicalContext ctx(g, opts);
  const QuotientMap om = omega_map(ctx, t);
  const unsigned x = upsilon_scalar(ctx, g.inv().m - t - 1, om.apply(ctx.target_generator()));
  return part == 1 ? x : (p - x) % p;
}

// Group-level identities

bool congruence_delta_holds(const InvariantList& l) {
  const int e = static_cast<int>(l.m + l.o2) - static_cast<int>(l.o1) - 1;
  if (e < 0) return false;
  const DerivedConstants k = derive_constants(l);
  return mod((k.delta * l.u2 + 1) * ipow(l.p, static_cast<unsigned>(e)), ipow(l.p, l.m)) == 0;
}

bool power_of_c_holds(const PGroup& g) {
  const InvariantList& l = g.inv();
  const int e = static_cast<int>(l.n1 + l.o1p + l.o2) - 1 - static_cast<int>(l.m);
  if (e < 0) return false;
  const GroupElement lhs = g.power(g.central_c(), ipow(l.p, static_cast<unsigned>(e)));
  const BigInt z = -g.consts().delta * l.u1 * ipow(l.p, l.m - 1);
  return lhs == g.power(g.a(), z);
}

bool inequality_chain_holds(const InvariantList& l) {
  const int m = static_cast<int>(l.m), n1 = static_cast<int>(l.n1), n2 = static_cast<int>(l.n2);
  const int o1 = static_cast<int>(l.o1), o2 = static_cast<int>(l.o2);
  const int o1p = static_cast<int>(l.o1p), o2p = static_cast<int>(l.o2p);
  return n1 + o1p - 1 == 2 * m - o1 - 1 && 2 * m - o1 - 1 >= 2 * m - o2 + n2 - n1 &&
         2 * m - o2 + n2 - n1 == 2 * m - o2 - o2p + o1p && 2 * m - o2 - o2p + o1p >= 2 * m - o2 - o2p &&
         2 * m - o2 - o2p >= m - o2;
}

bool zeta3_display_holds(const PGroup& g) {
  const InvariantList& l = g.inv();
  if (l.n2 + l.o1 < l.m || l.o2 > l.m) return false;
  const unsigned k1 = std::min(l.n1 - l.n2 + l.m - l.o1, l.n1);
  const unsigned k2 = std::min(l.m - l.o1, l.n2);
  const BigInt shift = g.consts().delta * ipow(l.p, l.m - l.o2);
  const GroupElement x = g.multiply(g.central_c(), g.power(g.b1(), shift));
  const bool in_m = mod(x.x1, ipow(l.p, k1)) == 0 && mod(x.x2, ipow(l.p, k2)) == 0;
  // b1^{p^{m-o2}} itself must stay outside M_Γ.
  return in_m && l.m - l.o2 < k1;
}

bool upsilon_display_holds(const PGroup& g, unsigned t, unsigned part) {
  const InvariantList& l = g.inv();
  if (t + 1 > l.m) return false;
  const BigInt pt = ipow(l.p, t);
  const BigInt e = ipow(l.p, l.m - t - 1);
  const BigInt top = ipow(l.p, l.m - 1);
  if (part == 1) {
    if (mod(BigInt(l.u1 + 1), pt) != 0) return false;
    const BigInt v = (l.u1 + 1) / pt;
    const GroupElement base = g.multiply(g.power(g.b1(), ipow(l.p, l.m - l.o2)), g.a());
    return g.power(base, e) == g.power(g.a(), v * top);
  }
  if (mod(BigInt(l.u2 - 1), pt) != 0) return false;
  const BigInt v = (l.u2 - 1) / pt;
  const GroupElement base = g.multiply(g.power(g.b2(), -ipow(l.p, l.m - l.o1)), g.a());
  return g.power(base, e) == g.power(g.a(), -v * top);
}

// List generators

namespace {

using Pred = std::function<bool(const InvariantList&)>;
using Candidates = std::function<std::vector<std::int64_t>(unsigned p, int a)>;

std::vector<std::int64_t> small_units(unsigned p, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t u = 1; u <= bound; ++u)
    if (u % p != 0) out.push_back(u);
  return out;
}

std::int64_t capped_pow(unsigned p, int a, std::int64_t cap) {
  std::int64_t v = 1;
  for (int i = 0; i < a && v < cap; ++i) v *= p;
  return std::min(v, cap);
}

std::vector<InvariantList> scan_lists(unsigned p, unsigned max_m, std::size_t limit, const Pred& prefix_ok,
                                      const Candidates& u1s, const Candidates& u2s, const Pred& accept) {
  constexpr std::size_t kPerPrefix = 3;
  std::vector<InvariantList> out;
  for (unsigned m = 2; m <= max_m; ++m)
    for (unsigned n1 = 1; n1 <= 2 * m; ++n1)
      for (unsigned n2 = 1; n2 <= n1; ++n2)
        for (unsigned o1 = 0; o1 < m; ++o1)
          for (unsigned o2 = 0; o2 < m; ++o2)
            for (unsigned o1p = 0; o1p + o1 <= m; ++o1p)
              for (unsigned o2p = 0; o2p + o2 <= m; ++o2p) {
                InvariantList l{p, m, n1, n2, o1, o2, o1p, o2p, 1, 1};
                if (!prefix_ok(l)) continue;
                const DerivedConstants k = derive_constants(l);
                if (k.a1 < 0 || k.a2 < 0) continue;
                std::size_t taken = 0;
                for (std::int64_t u1 : u1s(p, k.a1)) {
                  for (std::int64_t u2 : u2s(p, k.a2)) {
                    l.u1 = u1;
                    l.u2 = u2;
                    if (!is_valid(l) || !accept(l)) continue;
                    out.push_back(l);
                    if (out.size() >= limit) return out;
                    if (++taken >= kPerPrefix) break;
                  }
                  if (taken >= kPerPrefix) break;
                }
              }
  return out;
}

}  // namespace

std::vector<InvariantList> special_lists(unsigned p, unsigned max_m, std::size_t limit) {
  const auto prefix = [](const InvariantList& l) {
    return l.o1 > 0 && l.o2 > 0 && l.o1 != l.o2 && l.n1 + l.o1p == 2 * l.m - l.o1 &&
           l.n2 + l.o2p == 2 * l.m - l.o1;
  };
  const auto units = [](unsigned q, int a) { return small_units(q, capped_pow(q, a, q * q)); };
  const auto units2 = [](unsigned q, int a) { return small_units(q, 2 * capped_pow(q, a, q * q)); };
  return scan_lists(p, max_m, limit, prefix, units, units2, special_applies);
}

std::vector<InvariantList> unequal_lists(unsigned p, unsigned max_m, std::size_t limit) {
  const auto prefix = [](const InvariantList& l) {
    return l.o1 > 0 && l.o2 > 0 && l.o1 != l.o2 && l.n1 + l.o1p > l.n2 + l.o2p;
  };
  const auto units = [](unsigned q, int a) { return small_units(q, capped_pow(q, a, q * q)); };
  const auto units2 = [](unsigned q, int a) { return small_units(q, 2 * capped_pow(q, a, q * q)); };
  return scan_lists(p, max_m, limit, prefix, units, units2, unequal_applies);
}

std::vector<InvariantList> higher_lists(unsigned p, unsigned max_m, unsigned t, unsigned part, std::size_t limit) {
  const auto prefix = [part](const InvariantList& l) {
    if (part == 1) return l.o1 == 0 && l.o2 > 0 && l.n1 + l.o2 + l.o1p == 2 * l.m;
    return l.o2 == 0 && l.o1 > 0 && l.n2 + l.o1 + l.o2p == 2 * l.m;
  };
  // u ≡ ∓1 mod p^t with a few choices of the next digit.
  const auto congruent = [t](int sign) {
    return [t, sign](unsigned q, int a) {
      std::vector<std::int64_t> out;
      const std::int64_t pt = capped_pow(q, static_cast<int>(t), INT64_MAX);
      const std::int64_t bound = 2 * capped_pow(q, a, INT64_MAX / 4);
      for (std::int64_t v = 0; v < static_cast<std::int64_t>(q); ++v) {
        const std::int64_t u = sign + v * pt;
        if (u >= 1 && u <= bound) out.push_back(u);
      }
      return out;
    };
  };
  const auto units = [](unsigned q, int a) { return small_units(q, 2 * capped_pow(q, a, q * q)); };
  const auto accept = [t, part](const InvariantList& l) { return higher_applies(l, t, part); };
  if (part == 1) return scan_lists(p, max_m, limit, prefix, congruent(-1), units, accept);
  return scan_lists(p, max_m, limit, prefix, units, congruent(1), accept);
}

}  // namespace modiso
