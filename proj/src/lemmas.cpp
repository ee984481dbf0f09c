#include "modiso/lemmas.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "modiso/canonical.hpp"
#include "modiso/errors.hpp"
#include "modiso/finite_group.hpp"
#include "modiso/pgroup.hpp"
#include "modiso/structure.hpp"

namespace modiso {

namespace {

struct Env {
  InvariantList l;
  PGroup pg;
  FiniteGroup g;
  const LemmaOptions& opts;
  std::optional<GroupAlgebra> alg;
  std::optional<Subgroup> ng;
  std::optional<std::vector<Subgroup>> series;
  std::map<unsigned, Subspace> powers;
  std::vector<Subspace> j_ng;  // J^k(N_Γ, Γ), index k - 1

  Env(const InvariantList& list, const LemmaOptions& o)
      : l(list), pg(list), g(FiniteGroup::from_pgroup(pg, o.element_cap)), opts(o) {}

  const GroupAlgebra& A() {
    if (!alg) alg.emplace(g, opts.algebra_cap);
    return *alg;
  }
  const Subgroup& n_gamma_sub() {
    if (!ng) ng = n_gamma(g, Mode::Formula);
    return *ng;
  }
  const std::vector<Subgroup>& jennings() {
    if (!series) series = g.jennings_series();
    return *series;
  }
  unsigned length() { return static_cast<unsigned>(jennings().size()); }
  const Subspace& aug_power(unsigned n) {
    auto it = powers.find(n);
    if (it == powers.end()) it = powers.emplace(n, augmentation_power(A(), n)).first;
    return it->second;
  }
  /// J^k(N_Γ, Γ) by the defining recursion.
  const Subspace& j_power(unsigned k) {
    const Subgroup& n = n_gamma_sub();
    if (j_ng.empty()) j_ng.push_back(relative_power_times_aug(A(), n, 1));
    while (j_ng.size() < k) {
      const Subspace& x = j_ng.back();
      j_ng.push_back(left_aug_product(A(), n.gens, x).sum(right_aug_product(A(), x, n.gens)));
    }
    return j_ng[k - 1];
  }
};

struct Checker {
  LemmaCheck& out;
  template <class F>
  void expect(bool ok, F&& what) {
    ++out.assertions;
    if (!ok && out.outcome != LemmaCheck::Outcome::Fail) {
      out.outcome = LemmaCheck::Outcome::Fail;
      out.detail = what();
    }
  }
};

struct SkipSuite {
  std::string why;
};

using SuiteFn = std::function<void(Env&, Checker&)>;

std::string num(std::size_t x) { return std::to_string(x); }

/// D_k(N) as a subgroup of G.
Subgroup dimension_subgroup_of(const FiniteGroup& g, const Subgroup& n, unsigned k) {
  auto [h, emb] = g.as_group(n);
  const auto series = h.jennings_series();
  const Subgroup& d = k <= series.size() ? series[k - 1] : series.back();
  std::vector<Elem> gens;
  for (Elem x : d.elements) gens.push_back(emb[x]);
  return g.closure(gens);
}

unsigned series_length(const FiniteGroup& g, const Subgroup& n) {
  return static_cast<unsigned>(g.as_group(n).first.jennings_series().size());
}

void require_assumptions(const Env& e) {
  if (!reduction_flags(e.l).assumptions_hold) throw SkipSuite{"standing assumptions fail"};
}

bool at_positive(const InvariantList& l) {
  const DerivedConstants k = derive_constants(l);
  return (l.o1 == 0 ? k.a1 : k.a2) > 0;
}

std::vector<std::pair<std::string, Subgroup>> named_normals(Env& e) {
  return {{"derived", derived_subgroup(e.g)}, {"N", e.n_gamma_sub()}};
}

void class_cosets(Env& e, Checker& c) {
  const FiniteGroup& g = e.g;
  const Subgroup derived = derived_subgroup(g);
  std::size_t total = 0;
  for (const auto& cls : g.conjugacy_classes()) {
    total += cls.size();
    const Elem h = cls.front();
    std::vector<Elem> k;
    for (Elem x : cls) k.push_back(g.mul(g.inv(h), x));
    std::sort(k.begin(), k.end());
    const Subgroup ks = g.closure(k);
    c.expect(ks.elements == k, [&] { return "class of " + to_string(g.element(h)) + " is not a coset"; });
    c.expect(std::all_of(k.begin(), k.end(), [&](Elem x) { return derived.contains(x); }),
             [&] { return "class of " + to_string(g.element(h)) + " leaves its coset of the derived subgroup"; });
  }
  c.expect(total == g.size(), [] { return std::string("classes do not partition the group"); });
}

void power_dimension(Env& e, Checker& c) {
  const auto& d = e.jennings();
  std::size_t pn = 1;
  for (unsigned n = 0; pn <= d.size() + 1; ++n, pn *= e.l.p) {
    const Subgroup& dn = pn <= d.size() ? d[pn - 1] : d.back();
    const Subgroup brute = e.g.power_subgroup(e.g.whole(), n);
    c.expect(dn == brute, [&] { return "D_" + num(pn) + " differs from the p^" + num(n) + " powers"; });
    c.expect(brute == power_subgroup(e.g, n, Mode::Formula),
             [&] { return "power subgroup " + num(n) + " differs from its generator form"; });
  }
}

void jennings(Env& e, Checker& c) {
  const FiniteGroup& g = e.g;
  const JenningsSet s = jennings_set(g);
  c.expect(is_jennings_set(g, s), [] { return std::string("Jennings set rejected"); });
  c.expect(s.elements.size() == g.order_exponent(), [] { return std::string("Jennings set has the wrong size"); });
  const auto& d = e.jennings();
  for (unsigned n = 1; n <= e.length() + 1; ++n) {
    const Subgroup& lazard = n <= d.size() ? d[n - 1] : d.back();
    c.expect(lazard == dimension_subgroup(g, n, Mode::Formula), [&] { return "D_" + num(n) + " formula mismatch"; });
    c.expect(lazard == dimension_subgroup_algebra(e.A(), n), [&] { return "D_" + num(n) + " algebra mismatch"; });
  }
  auto normals = named_normals(e);
  normals.emplace_back("center", g.center());
  for (const auto& [name, n] : normals) {
    const JenningsSet cs = jennings_set_compatible(g, n);
    c.expect(is_jennings_set(g, cs) && is_jennings_set(g, cs, &n),
             [&] { return "compatible Jennings set fails for " + name; });
  }
  for (const auto& [name, n] : named_normals(e)) {
    const Subspace in = ideal_of(e.A(), n);
    for (unsigned k = 1; k <= e.length() + 1; ++k) {
      const Subgroup& dk = k <= d.size() ? d[k - 1] : d.back();
      c.expect(group_points(e.A(), e.aug_power(k).sum(in)) == g.join(dk, n),
               [&] { return "points of I^" + num(k) + " + I(" + name + ":G) differ from D_" + num(k) + " " + name; });
    }
  }
}

void algebra_center(Env& e, Checker& c) {
  const GroupAlgebra& A = e.A();
  const auto classes = e.g.conjugacy_classes();
  const Subspace z = center_of_algebra(A);
  c.expect(z.dim() == classes.size(), [&] { return "dim Z(kG) = " + num(z.dim()) + ", classes " + num(classes.size()); });
  c.expect(z == commutant(A), [] { return std::string("class sums do not span the commutant"); });
  const Subgroup zg = e.g.center();
  std::size_t big = 0;
  for (const auto& cls : classes) big += cls.size() > 1;
  const Subspace za = center_of_augmentation(A);
  c.expect(za.dim() == zg.size() - 1 + big,
           [&] { return "dim Z(I) = " + num(za.dim()) + ", expected " + num(zg.size() - 1 + big); });
  c.expect(za == z.intersect(e.aug_power(1)), [] { return std::string("Z(I) differs from Z(kG) ∩ I"); });
}

void class_sum_depth(Env& e, Checker& c) {
  require_assumptions(e);
  const unsigned depth = (e.l.p - 1) * static_cast<unsigned>(ipow(e.l.p, e.l.m));
  const Subspace& deep = e.aug_power(depth);
  for (const auto& cls : e.g.conjugacy_classes())
    if (cls.size() > 1)
      c.expect(deep.contains(e.A().class_sum(cls)),
               [&] { return "class sum of " + to_string(e.g.element(cls.front())) + " not in I^" + num(depth); });
}

void relative_ideal_identities(Env& e, Checker& c) {
  const GroupAlgebra& A = e.A();
  const FiniteGroup& g = e.g;
  auto normals = named_normals(e);
  normals.emplace_back("G", g.whole());
  for (const auto& [name, n] : normals) {
    const auto gam = g.relative_lower_central_series(n, 4);
    for (unsigned k = 1; k <= 4; ++k) {
      const Subspace rec = relative_ideal(A, n, k, IdealMode::Recursive);
      c.expect(rec == relative_ideal(A, n, k, IdealMode::Closed),
               [&] { return "J^" + num(k) + "(" + name + ") closed form differs from the recursion"; });
      Subspace series(A.p(), A.dim());
      for (unsigned i = 1; i <= k && i <= gam.size(); ++i)
        series = series.sum(relative_power_times_ideal(A, n, k + 1 - i, gam[i - 1]));
      c.expect(rec == series, [&] { return "J^" + num(k) + "(" + name + ") differs from the series sum"; });
      c.expect(rec.contains(relative_power_times_aug(A, n, k)) && relative_power_kg(A, n, k).contains(rec),
               [&] { return "J^" + num(k) + "(" + name + ") escapes its sandwich"; });
    }
  }
  for (const auto& [ln, l] : normals)
    for (const auto& [nn, n] : normals) {
      const Subspace inl = relative_power_times_ideal(A, n, 1, l);
      const Subspace lhs = relative_power_times_ideal(A, l, 1, n).sum(inl);
      const Subspace rhs = ideal_of(A, g.commutator_subgroup(l, n)).sum(inl);
      c.expect(lhs == rhs, [&] { return "commutator identity fails for (" + ln + ", " + nn + ")"; });
    }
  normals.emplace_back("center", g.center());
  for (const auto& [name, n] : normals) {
    const auto gam = g.relative_lower_central_series(n, 8);
    bool inside = true;
    for (unsigned i = 2; i <= gam.size(); ++i)
      inside = inside && g.intersection(gam[i - 1], dimension_subgroup_of(g, n, i)) == gam[i - 1];
    const bool powers = gam.size() < 2 || g.intersection(gam[1], g.power_subgroup(n, 1)) == gam[1];
    c.expect(!powers || inside, [&] { return "[G," + name + "] inside its p-th powers but the series escapes D_i"; });
    if (!inside) continue;
    for (unsigned k = 1; k <= 4; ++k)
      c.expect(relative_ideal(A, n, k, IdealMode::Recursive) == relative_power_times_aug(A, n, k),
               [&] { return "J^" + num(k) + "(" + name + ") differs from I(N)^k I(G)"; });
  }
}

void relative_ideal_ngamma(Env& e, Checker& c) {
  require_assumptions(e);
  const Subgroup& n = e.n_gamma_sub();
  const unsigned bound = static_cast<unsigned>(ipow(e.l.p, ell_value(e.l)));
  for (unsigned k = 1; k <= bound; ++k) {
    const Subspace& j = e.j_power(k);
    c.expect(j == relative_power_times_aug(e.A(), n, k), [&] { return "J^" + num(k) + "(N) differs from I(N)^k I(G)"; });
    if (j.dim() == 0) break;
  }
}

void relative_ideal_points(Env& e, Checker& c) {
  require_assumptions(e);
  if (!at_positive(e.l)) throw SkipSuite{"a_t = 0"};
  const unsigned k = static_cast<unsigned>(ipow(e.l.p, ell_value(e.l)));
  const Subgroup pts = group_points(e.A(), e.j_power(k));
  c.expect(pts.is_trivial(), [&] { return "G ∩ (1 + J^" + num(k) + "(N)) has order " + num(pts.size()); });
}

void dimension_intersections(Env& e, Checker& c) {
  const GroupAlgebra& A = e.A();
  const FiniteGroup& g = e.g;
  const auto& d = e.jennings();
  for (const auto& [name, n] : named_normals(e)) {
    const unsigned len = series_length(g, n);
    std::vector<Subgroup> dn;
    for (unsigned k = 1; k <= len + 1; ++k) dn.push_back(dimension_subgroup_of(g, n, k));
    for (unsigned k = 1; k <= len; ++k) {
      const Subspace left = relative_power_times_aug(A, n, k);
      const Subspace right = aug_times_relative_power(A, n, k);
      c.expect(group_points(A, left) == dn[k] && group_points(A, right) == dn[k],
               [&] { return "points of I(" + name + ")^" + num(k) + " I(G) differ from D_" + num(k + 1); });
      for (unsigned a = 1; a <= e.length() + 1; ++a) {
        const Subgroup want = g.join(a <= d.size() ? d[a - 1] : d.back(), dn[k]);
        const Subspace& ia = e.aug_power(a);
        c.expect(group_points(A, ia.sum(left)) == want && group_points(A, ia.sum(right)) == want, [&] {
          return "points of I^" + num(a) + " + I(" + name + ")^" + num(k) + " I(G) differ from D_" + num(a) + " D_" +
                 num(k + 1);
        });
      }
    }
  }
}

struct Entry {
  LemmaSuite info;
  SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {{"class-cosets", "every conjugacy class is a coset of a subgroup of the derived subgroup"}, class_cosets},
      {{"power-dimension", "D_{p^n} equals the subgroup of p^n-th powers"}, power_dimension},
      {{"jennings",
        "Jennings sets, D_n by three methods, compatible sets, points of I^n + I(N)kG"},
       jennings},
      {{"algebra-center", "dim Z(kG) = number of classes; Z(I) = I(Z) + non-central class sums"}, algebra_center},
      {{"class-sum-depth", "non-central class sums lie in I^{(p-1)p^m}"}, class_sum_depth},
      {{"relative-ideal-identities",
        "J^n recursion = closed form = series over the relative lower central series; sandwich; commutator "
        "identity; J^n = I(N)^n I(G) when the relative series sits in the dimension series"},
       relative_ideal_identities},
      {{"relative-ideal-n", "J^n(N, G) = I(N)^n I(G) for n <= p^l"}, relative_ideal_ngamma},
      {{"relative-ideal-points", "G meets 1 + J^{p^l}(N, G) trivially (needs a_t > 0)"}, relative_ideal_points},
      {{"dimension-intersections",
        "G ∩ (1 + I(N)^k I(G)) = D_{k+1}(N) and G ∩ (1 + I^n + I(N)^k I(G)) = D_n(G) D_{k+1}(N), both sides"},
       dimension_intersections},
  };
  return r;
}

std::vector<const Entry*> selected(const LemmaOptions& opts) {
  std::vector<const Entry*> out;
  for (const Entry& e : registry())
    if (opts.suites.empty() || std::find(opts.suites.begin(), opts.suites.end(), e.info.name) != opts.suites.end())
      out.push_back(&e);
  for (const std::string& s : opts.suites)
    if (std::none_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.info.name == s; }))
      throw std::invalid_argument("unknown lemma suite: " + s);
  return out;
}

}  // namespace

const std::vector<LemmaSuite>& lemma_suites() {
  static const std::vector<LemmaSuite> s = [] {
    std::vector<LemmaSuite> v;
    for (const Entry& e : registry()) v.push_back(e.info);
    return v;
  }();
  return s;
}

std::string to_string(LemmaCheck::Outcome o) {
  switch (o) {
    case LemmaCheck::Outcome::Pass:
      return "pass";
    case LemmaCheck::Outcome::Fail:
      return "FAIL";
    case LemmaCheck::Outcome::Skipped:
      return "skip";
  }
  return "?";
}

std::vector<LemmaCheck> verify_group(const InvariantList& l, const LemmaOptions& opts) {
  const auto suites = selected(opts);
  Env env(l, opts);
  std::vector<LemmaCheck> out;
  for (const Entry* s : suites) {
    LemmaCheck r;
    r.suite = s->info.name;
    r.group = l;
    Checker c{r};
    try {
      s->fn(env, c);
    } catch (const SkipSuite& skip) {
      r.outcome = LemmaCheck::Outcome::Skipped;
      r.detail = skip.why;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t LemmaReport::count(LemmaCheck::Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [o](const LemmaCheck& c) { return c.outcome == o; }));
}

LemmaReport verify_lemmas(unsigned p, unsigned max_order_exp, const LemmaOptions& opts) {
  selected(opts);
  LemmaReport r;
  r.p = p;
  r.max_order_exp = max_order_exp;
  std::vector<InvariantList> lists;
  for (unsigned e = 3; e <= max_order_exp; ++e)
    for_each_list(p, e, [&](const InvariantList& l) { lists.push_back(l); });
  r.groups = lists.size();

  // Large groups first so the tail stays short.
  std::vector<std::size_t> order(lists.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lists[a].m + lists[a].n1 + lists[a].n2 > lists[b].m + lists[b].n1 + lists[b].n2;
  });
  std::vector<std::vector<LemmaCheck>> results(lists.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < lists.size() && !failed; i = next++) {
      try {
        results[order[i]] = verify_group(lists[order[i]], opts);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(lists.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (auto& res : results)
    for (auto& c : res) r.checks.push_back(std::move(c));
  return r;
}

void to_json(nlohmann::json& j, const LemmaReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json x = {{"suite", c.suite}, {"group", to_string(c.group)}, {"outcome", to_string(c.outcome)},
                        {"assertions", c.assertions}};
    if (!c.detail.empty()) x["detail"] = c.detail;
    checks.push_back(std::move(x));
  }
  j = {{"p", r.p},
       {"max_order_exp", r.max_order_exp},
       {"groups", r.groups},
       {"passed", r.count(LemmaCheck::Outcome::Pass)},
       {"failed", r.count(LemmaCheck::Outcome::Fail)},
       {"skipped", r.count(LemmaCheck::Outcome::Skipped)},
       {"checks", checks}};
}

}  // namespace modiso
