// One pass/fail line per acceptance criterion. `acceptance --criterion N` runs a single one.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "modiso/arith.hpp"
#include "modiso/canonical.hpp"
#include "modiso/errors.hpp"
#include "modiso/finite_group.hpp"
#include "modiso/invariants.hpp"
#include "modiso/lemmas.hpp"
#include "modiso/mip.hpp"
#include "modiso/pgroup.hpp"
#include "modiso/structure.hpp"

using namespace modiso;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<InvariantList> lists_up_to(unsigned p, unsigned max_e) {
  std::vector<InvariantList> out;
  for (unsigned e = 3; e <= max_e; ++e)
    for (const auto& l : enumerate(p, e)) out.push_back(l);
  return out;
}

std::string str(std::size_t x) { return std::to_string(x); }

// Criterion 1: isomorphism search by generator pairs.

/// Exponents of the defining relations of G, read off its multiplication table.
struct Relations {
  std::uint64_t ord_a, ord_b1, ord_b2;
  std::uint64_t conj1, conj2;  // a^{b_i} = a^{conj_i}
  std::uint64_t pn1, pn2;      // p^{n_i}
  std::uint64_t pow1, pow2;    // b_i^{p^{n_i}} = a^{pow_i}
};

std::uint64_t log_in(const FiniteGroup& g, Elem base, Elem target) {
  Elem x = g.identity();
  for (std::uint64_t e = 0;; ++e) {
    if (x == target) return e;
    x = g.mul(x, base);
    if (x == g.identity()) throw std::logic_error("element outside the cyclic subgroup");
  }
}

Relations read_relations(const PGroup& pg, const FiniteGroup& g) {
  const InvariantList& l = pg.inv();
  const Elem b1 = g.index_of(pg.b1());
  const Elem b2 = g.index_of(pg.b2());
  const Elem a = g.commutator(b2, b1);
  Relations r;
  r.ord_a = g.order_of(a);
  r.ord_b1 = g.order_of(b1);
  r.ord_b2 = g.order_of(b2);
  r.conj1 = log_in(g, a, g.conjugate(a, b1));
  r.conj2 = log_in(g, a, g.conjugate(a, b2));
  r.pn1 = static_cast<std::uint64_t>(ipow(l.p, l.n1));
  r.pn2 = static_cast<std::uint64_t>(ipow(l.p, l.n2));
  r.pow1 = log_in(g, a, g.pow(b1, r.pn1));
  r.pow2 = log_in(g, a, g.pow(b2, r.pn2));
  return r;
}

/// True when some generating pair of H satisfies the relations of G. Since |G| = |H| and G is
/// given by these relations, such a pair is the image of (b1, b2) under an isomorphism.
/// b1's image is taken up to conjugacy.
bool isomorphic(const Relations& r, const FiniteGroup& h) {
  if (r.ord_a == 0) return false;
  std::vector<std::uint64_t> order(h.size());
  for (Elem x = 0; x < h.size(); ++x) order[x] = h.order_of(x);
  std::vector<Elem> xs, ys;
  for (const auto& cls : h.conjugacy_classes())
    if (order[cls.front()] == r.ord_b1) xs.push_back(cls.front());
  for (Elem y = 0; y < h.size(); ++y)
    if (order[y] == r.ord_b2) ys.push_back(y);
  for (Elem x : xs) {
    const Elem xp = h.pow(x, r.pn1);
    for (Elem y : ys) {
      const Elem a = h.commutator(y, x);
      if (order[a] != r.ord_a) continue;
      if (h.conjugate(a, x) != h.pow(a, r.conj1) || h.conjugate(a, y) != h.pow(a, r.conj2)) continue;
      if (xp != h.pow(a, r.pow1) || h.pow(y, r.pn2) != h.pow(a, r.pow2)) continue;
      if (h.closure({x, y}).size() == h.size()) return true;
    }
  }
  return false;
}

Outcome criterion1() {
  Outcome o;
  std::size_t groups = 0, pairs = 0, clashes = 0;
  std::mt19937_64 rng(11);
  for (unsigned e = 3; e <= 6; ++e) {
    const auto lists = enumerate(3, e);
    std::vector<PGroup> pgs;
    std::vector<FiniteGroup> gs;
    std::vector<Relations> rels;
    for (const auto& l : lists) {
      pgs.emplace_back(l);
      gs.push_back(FiniteGroup::from_pgroup(pgs.back()));
      rels.push_back(read_relations(pgs.back(), gs.back()));
      if (gs.back().size() != ipow(3, e)) {
        o.pass = false;
        o.detail += "wrong order for " + to_string(l) + "; ";
      }
    }
    groups += lists.size();
    for (std::size_t i = 0; i < lists.size(); ++i) {
      // the search must find the identity map on a relabeled copy
      std::vector<Elem> perm(gs[i].size());
      std::iota(perm.begin() + 1, perm.end(), Elem{1});
      std::shuffle(perm.begin() + 1, perm.end(), rng);
      if (!isomorphic(rels[i], gs[i].relabeled(perm))) {
        o.pass = false;
        o.detail += "search misses a relabeled copy of " + to_string(lists[i]) + "; ";
      }
      for (std::size_t j = 0; j < lists.size(); ++j) {
        if (i == j) continue;
        if (j > i) ++pairs;
        if (isomorphic(rels[i], gs[j])) {
          ++clashes;
          o.pass = false;
          o.detail += to_string(lists[i]) + " ~ " + to_string(lists[j]) + "; ";
        }
      }
    }
  }
  o.detail += str(groups) + " groups, " + str(pairs) + " pairs of equal order searched both ways, " + str(clashes) +
              " isomorphisms found";
  return o;
}

// Criterion 2: group axioms and relations.

std::vector<GroupElement> all_elements(const PGroup& g) {
  std::vector<GroupElement> out;
  for (BigInt x1 = 0; x1 < g.mod_b1(); ++x1)
    for (BigInt x2 = 0; x2 < g.mod_b2(); ++x2)
      for (BigInt z = 0; z < g.mod_a(); ++z) out.push_back({x1, x2, z});
  return out;
}

Outcome criterion2() {
  Outcome o;
  auto fail = [&o](const std::string& s) {
    if (o.pass) o.detail = s + "; ";
    o.pass = false;
  };
  std::size_t exhaustive = 0, randomized = 0;
  std::mt19937_64 rng(7);
  for (const auto& l : lists_up_to(3, 7)) {
    const PGroup g(l);
    const auto& c = g.consts();
    if (g.commutator(g.b2(), g.b1()) != g.a()) fail("[b2,b1] != a for " + to_string(l));
    if (g.conjugate(g.a(), g.b1()) != g.power(g.a(), c.r1)) fail("a^b1 != a^r1 for " + to_string(l));
    if (g.conjugate(g.a(), g.b2()) != g.power(g.a(), c.r2)) fail("a^b2 != a^r2 for " + to_string(l));
    const GroupElement w1{0, 0, mod(l.u1 * ipow(3, l.m - l.o1p), g.mod_a())};
    const GroupElement w2{0, 0, mod(l.u2 * ipow(3, l.m - l.o2p), g.mod_a())};
    if (g.power(g.b1(), ipow(3, l.n1)) != w1) fail("b1^{p^n1} wrong for " + to_string(l));
    if (g.power(g.b2(), ipow(3, l.n2)) != w2) fail("b2^{p^n2} wrong for " + to_string(l));
    const auto elems = all_elements(g);
    if (elems.size() != g.order()) fail("element count for " + to_string(l));
    if (l.order_exponent() <= 4) {
      ++exhaustive;
      for (const auto& x : elems) {
        if (g.multiply(x, g.identity()) != x || g.multiply(g.identity(), x) != x ||
            g.multiply(x, g.inverse(x)) != g.identity())
          fail("identity or inverse law fails in " + to_string(l));
        for (const auto& y : elems) {
          const GroupElement xy = g.multiply(x, y);
          for (const auto& z : elems)
            if (g.multiply(xy, z) != g.multiply(x, g.multiply(y, z))) fail("associativity fails in " + to_string(l));
        }
      }
    }
    ++randomized;
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 100000; ++i) {
      const auto& x = elems[pick(rng)];
      const auto& y = elems[pick(rng)];
      const auto& z = elems[pick(rng)];
      if (g.multiply(g.multiply(x, y), z) != g.multiply(x, g.multiply(y, z))) {
        fail("associativity fails in " + to_string(l));
        break;
      }
    }
  }
  o.detail += str(exhaustive) + " groups exhaustive (order <= 3^4), " + str(randomized) +
              " groups with 10^5 random triples and all relations (order <= 3^7)";
  return o;
}

// Criterion 3: closed forms against brute force.

/// δ by direct summation of r2^i.
BigInt delta_by_summation(const InvariantList& l, const BigInt& r2) {
  const BigInt pm = ipow(l.p, l.m);
  const BigInt step = ipow(l.p, l.m - l.o1);
  const BigInt target = mod(-step, pm);
  BigInt sum = 0, power = 1;
  for (BigInt i = 1; i <= ipow(l.p, l.o1) * step; ++i) {
    sum = (sum + power) % pm;
    power = power * r2 % pm;
    if (i % step == 0 && sum == target) return i / step;
  }
  return 0;
}

Outcome criterion3() {
  Outcome o;
  auto fail = [&o](const std::string& s) {
    if (o.pass) o.detail = s + "; ";
    o.pass = false;
  };
  std::size_t n = 0;
  for (const auto& l : lists_up_to(3, 7)) {
    ++n;
    const PGroup pg(l);
    const FiniteGroup g = FiniteGroup::from_pgroup(pg);
    const std::string name = to_string(l);
    const auto lcs = g.lower_central_series();
    for (unsigned i = 2; i <= lcs.size() + 1; ++i)
      if (gamma(g, i, Mode::Formula) != lcs[std::min<std::size_t>(i, lcs.size()) - 1])
        fail("gamma_" + str(i) + " of " + name);
    if (center(g, Mode::Formula) != g.center()) fail("center of " + name);
    const DerivedConstants k = derive_constants(l);
    const BigInt brute_delta = delta_by_summation(l, k.r2);
    if (k.delta != brute_delta) fail("delta of " + name);
    if (q_formula(l) != q_value(g, Mode::Bruteforce)) fail("q of " + name);
    const auto d = g.jennings_series();
    std::size_t pn = 1;
    for (unsigned j = 0; pn <= d.size() + 1; ++j, pn *= 3)
      if (d[std::min(pn, d.size()) - 1] != g.power_subgroup(g.whole(), j)) fail("D_{p^" + str(j) + "} of " + name);
  }
  o.detail += str(n) + " groups of order <= 3^7: gamma_n, center, delta, q, D_{p^n} = powers";
  return o;
}

// Criterion 4: lemma suites.

Outcome criterion4() {
  Outcome o;
  LemmaOptions opts;
  opts.threads = std::max(1u, std::thread::hardware_concurrency());
  const LemmaReport r = verify_lemmas(3, 6, opts);
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;  // pass, skip
  for (const auto& c : r.checks) {
    if (c.outcome == LemmaCheck::Outcome::Fail) {
      if (o.pass) o.detail = c.suite + " fails on " + to_string(c.group) + ": " + c.detail + "; ";
      o.pass = false;
    }
    auto& [pass, skip] = per_suite[c.suite];
    pass += c.outcome == LemmaCheck::Outcome::Pass;
    skip += c.outcome == LemmaCheck::Outcome::Skipped;
  }
  o.detail += str(r.groups) + " groups of order <= 3^6;";
  for (const auto& [suite, counts] : per_suite)
    o.detail += " " + suite + " " + str(counts.first) + (counts.second ? "/" + str(counts.second) + " skipped" : "");
  return o;
}

// Criterion 5: extraction.

/// x with the centering element central, searched over 1 <= x <= p^m.
unsigned centering_unit(const PGroup& g) {
  const InvariantList& l = g.inv();
  const BigInt pm = ipow(l.p, l.m);
  for (BigInt x = 1; x <= pm; ++x) {
    const GroupElement c =
        l.o1 == 0 ? g.multiply(g.power(g.b1(), x * ipow(l.p, l.m - l.o2)), g.a())
                  : g.multiply(g.multiply(g.power(g.b1(), -x * ipow(l.p, l.m - l.o2)),
                                          g.power(g.b2(), x * ipow(l.p, l.m - l.o1))),
                               g.a());
    if (g.commutator(c, g.b1()) == g.identity() && g.commutator(c, g.b2()) == g.identity())
      return static_cast<unsigned>(mod(x, l.p));
  }
  throw std::logic_error("no central centering element");
}

Outcome criterion5() {
  Outcome o;
  auto fail = [&o](const std::string& s) {
    if (o.pass) o.detail = s + "; ";
    o.pass = false;
  };
  std::size_t case1 = 0;
  for (const auto& l : lists_up_to(3, 7)) {
    if (!case1_applies(l)) continue;
    ++case1;
    const PGroup g(l);
    const unsigned want = static_cast<unsigned>(mod(BigInt(centering_unit(g)) * (l.o1 == 0 ? l.u1 : l.u2), 3));
    CanonicalOptions opts;
    opts.check_samples = 3;
    const unsigned got = extract_u_case1(g, opts);
    if (got != want) fail("case 1 on " + to_string(l) + " gives " + str(got) + ", expected " + str(want));
  }
  if (case1 == 0) fail("no case-1 lists");
  std::size_t special = 0, unequal = 0, higher = 0;
  for (unsigned p : {3u, 5u}) {
    for (const auto& l : special_lists(p, 7, 60)) {
      ++special;
      const PGroup g(l);
      if (!congruence_delta_holds(l) || !inequality_chain_holds(l) || !power_of_c_holds(g) || !zeta3_display_holds(g))
        fail("special identities fail on " + to_string(l));
    }
    for (const auto& l : unequal_lists(p, 7, 60)) {
      ++unequal;
      if (!zeta3_display_holds(PGroup(l))) fail("zeta3 display fails on " + to_string(l));
    }
    for (unsigned part : {1u, 2u})
      for (unsigned t : {1u, 2u})
        for (const auto& l : higher_lists(p, 7, t, part, 40)) {
          ++higher;
          if (!upsilon_display_holds(PGroup(l), t, part)) fail("upsilon display fails on " + to_string(l));
        }
  }
  if (special < 50 || unequal < 50) fail("fewer than 50 qualifying lists");
  o.detail += "case 1 exact on " + str(case1) + " lists of order <= 3^7; group identities on " + str(special) +
              " special, " + str(unequal) + " unequal, " + str(higher) + " higher-power lists (p in {3,5}, m <= 7)";
  return o;
}

// Criterion 6: census.

Outcome criterion6() {
  Outcome o;
  for (unsigned p : {3u, 5u, 7u}) {
    for (unsigned e = 3; e <= 11; ++e) {
      const CensusReport r = census(p, e);
      if (!r.families.empty()) {
        o.pass = false;
        o.detail += str(r.families.size()) + " families at " + str(p) + "^" + str(e) + "; ";
      }
    }
    const CensusReport r = census(p, 12);
    bool shape = r.families.size() == p - 2;
    std::set<std::int64_t> u1s;
    for (const auto& f : r.families) {
      shape = shape && f.members.size() == p && prefix_string(f.prefix) == prefix_string(InvariantList{
                                                                             p, 4, 4, 4, 0, 2, 2, 2, 0, 0});
      for (const auto& [u1, u2] : f.members) {
        shape = shape && u2 == 1;
        u1s.insert(u1);
      }
    }
    if (!shape) {
      o.pass = false;
      o.detail += "unexpected families at " + str(p) + "^12; ";
    }
    o.detail += str(p) + "^12: " + str(r.families.size()) + " families of " +
                str(r.families.empty() ? 0 : r.families.front().members.size()) + "; ";
  }
  o.detail += "nothing unresolved below order p^12";
  return o;
}

// Criterion 7: center exponents of a pair with equal invariants up to u2.

Outcome criterion7() {
  const InvariantList g = parse_invariant_list("3,4,5,3,2,1,1,3,1,1");
  const InvariantList h = parse_invariant_list("3,4,5,3,2,1,1,3,1,4");
  const PrimePower eg = center_exponent(PGroup(g));
  const PrimePower eh = center_exponent(PGroup(h));
  Outcome o;
  o.pass = eg.k() == 2 && eh.k() == 3;
  std::ostringstream s;
  s << "expected 3^2 for " << to_string(g) << " and 3^3 for " << to_string(h) << "; observed " << eg << " and "
    << eh;
  o.detail = s.str();
  return o;
}

// Criterion 8: the open pair.

Outcome criterion8() {
  const InvariantList a = parse_invariant_list("3,5,7,5,2,1,1,3,1,2");
  const InvariantList b = parse_invariant_list("3,5,7,5,2,1,1,3,2,2");
  const PairVerdict v = decide_pair(a, b);
  Outcome o;
  o.pass = v.status == PairVerdict::Status::Unresolved;
  o.detail = "decide_pair returns " + to_string(v.status);
  return o;
}

struct Criterion {
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"classification is bijective at order <= 3^6", criterion1},
      {"group axioms and presentation relations", criterion2},
      {"closed forms match brute force at order <= 3^7", criterion3},
      {"lemma suites at order <= 3^6", criterion4},
      {"extraction and group identities", criterion5},
      {"census of unresolved families", criterion6},
      {"center exponents of the u2 = 1, 4 pair", criterion7},
      {"the open pair stays unresolved", criterion8},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].title << " ("
              << o.detail << "; " << t.str() << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
