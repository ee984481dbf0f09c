#include <algorithm>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "modiso/canonical.hpp"
#include "modiso/errors.hpp"
#include "modiso/structure.hpp"

using namespace modiso;

namespace {

std::vector<InvariantList> case1_up_to(unsigned max_e) {
  std::vector<InvariantList> out;
  for (unsigned e = 3; e <= max_e; ++e)
    for (const auto& l : enumerate(3, e))
      if (case1_applies(l)) out.push_back(l);
  return out;
}

std::vector<InvariantList> assumption_lists_up_to(unsigned max_e) {
  std::vector<InvariantList> out;
  for (unsigned e = 3; e <= max_e; ++e)
    for (const auto& l : enumerate(3, e))
      if (reduction_flags(l).assumptions_hold) out.push_back(l);
  return out;
}

// Least x making the centering element central, found by search: b1^{x p^{m-o2}} a
// when o1 = 0, b1^{-x p^{m-o2}} b2^{x p^{m-o1}} a otherwise.
unsigned centering_unit(const PGroup& g) {
  const InvariantList& l = g.inv();
  const BigInt pm = ipow(l.p, l.m);
  for (BigInt x = 1; x < pm; ++x) {
    if (x % l.p == 0) continue;
    const GroupElement c =
        l.o1 == 0 ? g.multiply(g.power(g.b1(), x * ipow(l.p, l.m - l.o2)), g.a())
                  : g.multiply(g.multiply(g.power(g.b1(), -x * ipow(l.p, l.m - l.o2)),
                                          g.power(g.b2(), x * ipow(l.p, l.m - l.o1))),
                               g.a());
    if (g.commutator(c, g.b1()) == g.identity() && g.commutator(c, g.b2()) == g.identity())
      return static_cast<unsigned>(x % l.p);
  }
  ADD_FAILURE() << "no centering unit for " << to_string(l);
  return 0;
}

unsigned expected_case1(const PGroup& g) {
  const InvariantList& l = g.inv();
  const std::int64_t ut = l.o1 == 0 ? l.u1 : l.u2;
  return static_cast<unsigned>(centering_unit(g) * (ut % l.p) % l.p);
}

}  // namespace

TEST(LinearHelpers, SolveCombination) {
  bool unique = false;
  auto x = solve_combination(5, {{1, 0, 2}, {0, 1, 1}}, {3, 4, 0}, &unique);
  ASSERT_TRUE(x);
  EXPECT_TRUE(unique);
  EXPECT_EQ(*x, (std::vector<std::uint8_t>{3, 4}));
  EXPECT_FALSE(solve_combination(5, {{1, 0, 2}}, {0, 1, 0}));
  x = solve_combination(3, {{1, 1}, {2, 2}}, {1, 1}, &unique);
  ASSERT_TRUE(x);
  EXPECT_FALSE(unique);
  EXPECT_EQ(((*x)[0] + 2 * (*x)[1]) % 3, 1u);
}

TEST(LinearHelpers, ScalarOnLine) {
  const Subspace top = Subspace::span(3, 3, {{1, 0, 0}, {0, 1, 0}});
  const Subspace bottom = Subspace::span(3, 3, {{0, 1, 0}});
  const Subquotient q(top, bottom);
  EXPECT_EQ(scalar_on_line(q, {2, 1, 0}, {1, 2, 0}), 2u);
  EXPECT_THROW(scalar_on_line(q, {1, 0, 0}, {0, 1, 0}), PipelineDegenerate);
  EXPECT_THROW(scalar_on_line(q, {0, 0, 1}, {1, 0, 0}), PipelineDegenerate);
}

TEST(CanonicalMaps, DeltaIsBetweenLines) {
  for (const auto& l : assumption_lists_up_to(6)) {
    SCOPED_TRACE(to_string(l));
    PGroup g(l);
    CanonicalContext ctx(g);
    const QuotientMap d = delta_iso(ctx);
    EXPECT_EQ(d.domain->dim(), 1u);
    EXPECT_EQ(d.codomain->dim(), 1u);
    EXPECT_EQ(d.rank(), 1u);
    EXPECT_FALSE(ctx.aug_power(3).contains(ctx.aug(g.a())));
  }
}

TEST(CanonicalMaps, DeltaNeedsAssumptions) {
  const auto lists = enumerate(3, 4);
  auto it = std::find_if(lists.begin(), lists.end(),
                         [](const InvariantList& l) { return !reduction_flags(l).assumptions_hold; });
  ASSERT_NE(it, lists.end());
  PGroup g(*it);
  CanonicalContext ctx(g);
  EXPECT_THROW(delta_iso(ctx), NotApplicable);
  EXPECT_THROW(extract_u_case1(g), NotApplicable);
}

TEST(CanonicalMaps, ZetaImages) {
  for (const auto& l : assumption_lists_up_to(6)) {
    SCOPED_TRACE(to_string(l));
    PGroup g(l);
    CanonicalContext ctx(g);
    const Vec w = ctx.aug(g.central_c());
    const QuotientMap z1 = zeta1(ctx);
    EXPECT_EQ(z1.rank(), 1u);
    EXPECT_EQ(scalar_on_line(*z1.codomain, z1.apply(w), ctx.aug(g.a())), 1u);
    // Im ζ1 = Im Δ inside I/I^3.
    EXPECT_EQ(ctx.center_aug().sum(ctx.aug_power(3)), ctx.derived_ideal().sum(ctx.aug_power(3)));

    const QuotientMap z2 = zeta2(ctx);
    EXPECT_EQ(z2.codomain->dim(), 1u);
    const unsigned o = std::max(l.o1, l.o2);
    const GroupElement b = l.o1 == 0 ? g.power(g.b1(), ipow(3, l.m - o)) : g.power(g.b2(), ipow(3, l.m - o));
    const unsigned expected = l.o1 == 0 ? 1u : centering_unit(g);  // c = b1^{p^{m-o2}} a when o1 = 0
    EXPECT_EQ(scalar_on_line(*z2.codomain, z2.apply(w), ctx.aug(b)), expected);
  }
}

TEST(CanonicalMaps, CentralizerLineAndLambdaTilde) {
  for (const auto& l : assumption_lists_up_to(6)) {
    SCOPED_TRACE(to_string(l));
    PGroup g(l);
    CanonicalContext ctx(g);
    const auto c = centralizer_line(ctx);
    ASSERT_EQ(c->dim(), 1u);
    const GroupElement bt = l.o1 == 0 ? g.b1() : g.b2();
    EXPECT_FALSE(c->is_zero(ctx.aug(bt)));
    const unsigned bound = l.o1 == 0 ? l.n1 : l.n2;
    for (unsigned n = 0; n < bound; ++n) {
      const unsigned w = static_cast<unsigned>(ipow(3, n));
      const Vec x = ctx.algebra().pow(c->basis()[0], ipow(3, n));
      EXPECT_FALSE(ctx.aug_power(w + 1).contains(x)) << "n=" << n;
    }
    // π ∘ Λ̃^{m-o} is onto the ζ2 line.
    const Vec y = ctx.algebra().pow(c->basis()[0], ipow(3, l.m - std::max(l.o1, l.o2)));
    EXPECT_FALSE(zeta2(ctx).codomain->is_zero(y));
  }
}

TEST(CanonicalMaps, LambdaOnNGammaHitsTheTargetLine) {
  for (const auto& l : case1_up_to(6)) {
    SCOPED_TRACE(to_string(l));
    PGroup g(l);
    CanonicalContext ctx(g);
    const Subgroup n = n_gamma(ctx.group(), Mode::Bruteforce);
    const QuotientMap lam = lambda_map(ctx, n, ell_value(l));
    const Vec tgen = ctx.target_generator();
    const std::int64_t ut = l.o1 == 0 ? l.u1 : l.u2;
    EXPECT_EQ(scalar_on_line(*lam.codomain, lam.apply(ctx.aug(g.element_d())), tgen), ut % 3);
    EXPECT_EQ(scalar_on_line(*lam.codomain, lam.apply(ctx.aug(g.element_e())), tgen), 0u);
    const auto zero = lam.coords(ctx.algebra().zero());
    EXPECT_TRUE(std::all_of(zero.begin(), zero.end(), [](auto v) { return v == 0; }));
  }
}

TEST(CanonicalMaps, FullGroupLambdaIsTheClassicalMap) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,2,1"));
  CanonicalContext ctx(g);
  const QuotientMap lam = lambda_map(ctx, ctx.group().whole(), 1);
  EXPECT_EQ(lam.domain->top(), ctx.aug_power(1));
  EXPECT_EQ(lam.domain->bottom(), ctx.aug_power(2));
  EXPECT_EQ(lam.codomain->top(), ctx.aug_power(3));
  EXPECT_EQ(lam.codomain->bottom(), ctx.aug_power(4));
}

TEST(CanonicalMaps, RepresentativeIndependence) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,2,1"));
  CanonicalContext ctx(g);
  std::mt19937_64 rng(7);
  const Subgroup n = n_gamma(ctx.group(), Mode::Bruteforce);
  const Subgroup d = derived_subgroup(ctx.group());
  for (const QuotientMap& f : {zeta1(ctx), zeta2(ctx), delta_iso(ctx), upsilon(ctx, 0), upsilon(ctx, 1),
                               omega_map(ctx, 1), lambda_map(ctx, n, 1), lambda_map(ctx, n, ell_value(g.inv())),
                               lambda_map(ctx, d, 1), lambda_map(ctx, ctx.group().whole(), 1)}) {
    SCOPED_TRACE(f.name);
    EXPECT_NO_THROW(f.check(rng, 100));
  }
}

TEST(CanonicalMaps, UpsilonZeroIsProjection) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,1,1"));
  CanonicalContext ctx(g);
  const QuotientMap u = upsilon(ctx, 0);
  const Vec w = ctx.aug(g.central_c());
  EXPECT_EQ(u.apply(w), w);
}

TEST(CanonicalMaps, CheckCatchesBrokenMaps) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,1,1"));
  CanonicalContext ctx(g);
  QuotientMap f;
  f.name = "broken";
  // I/I^2 -> I/I^3 by the identity on representatives.
  f.domain = std::make_shared<Subquotient>(ctx.aug_power(1), ctx.aug_power(2));
  f.codomain = std::make_shared<Subquotient>(ctx.aug_power(1), ctx.aug_power(3));
  f.rule = [](const Vec& x) { return x; };
  std::mt19937_64 rng(3);
  EXPECT_THROW(f.check(rng, 50), WellDefinednessViolation);
}

TEST(Extraction, Case1Examples) {
  EXPECT_EQ(extract_u_case1(PGroup(parse_invariant_list("3,2,2,2,0,1,1,1,2,1"))), 2u);
  EXPECT_EQ(extract_u_case1(PGroup(parse_invariant_list("3,2,2,2,0,1,1,1,1,1"))), 1u);
  PGroup g(parse_invariant_list("3,2,3,2,1,0,0,1,1,2"));
  EXPECT_EQ(extract_u_case1(g), expected_case1(g));
}

TEST(Extraction, PredictionMatchesCenteringSearch) {
  std::size_t n = 0;
  for (unsigned p : {3u, 5u})
    for (unsigned e = 3; e <= 8; ++e)
      for (const auto& l : enumerate(p, e)) {
        if (!case1_applies(l)) continue;
        ++n;
        EXPECT_EQ(predicted_scalar(l, Pipeline::Case1), expected_case1(PGroup(l))) << to_string(l);
      }
  EXPECT_GT(n, 20u);
  InvariantList l = parse_invariant_list("3,3,3,2,2,0,1,2,1,7");
  EXPECT_EQ(predicted_scalar(l, Pipeline::Higher, 1, 2), 2u);
  l.u2 = 5;
  EXPECT_THROW(predicted_scalar(l, Pipeline::Higher, 1, 2), NotApplicable);
}

TEST(Extraction, Case1MatchesConstruction) {
  const auto lists = case1_up_to(6);
  EXPECT_FALSE(lists.empty());
  for (const auto& l : lists) {
    SCOPED_TRACE(to_string(l));
    PGroup g(l);
    CanonicalOptions opts;
    opts.check_samples = 5;
    EXPECT_EQ(extract_u_case1(g, opts), expected_case1(g));
  }
}

TEST(Extraction, Case1ChoiceIndependence) {
  for (const char* text : {"3,2,2,2,0,1,1,1,2,1", "3,2,2,2,0,1,1,1,1,1"}) {
    SCOPED_TRACE(text);
    PGroup g(parse_invariant_list(text));
    const unsigned base = extract_u_case1(g);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      CanonicalOptions a;
      a.relabel_seed = seed;
      EXPECT_EQ(extract_u_case1(g, a), base);
      CanonicalOptions b;
      b.jennings_seed = seed;
      EXPECT_EQ(extract_u_case1(g, b), base);
    }
    CanonicalOptions c;
    c.central_power = 2;
    EXPECT_EQ(extract_u_case1(g, c), base);
  }
}

TEST(Extraction, HypothesesAreEnforced) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,2,1"));
  EXPECT_THROW(extract_u1_unequal(g), NotApplicable);
  EXPECT_THROW(extract_u1_special(g), NotApplicable);
  EXPECT_THROW(extract_higher(g, 1, 1), NotApplicable);
  EXPECT_THROW(extract_higher(g, 1, 3), std::invalid_argument);
  EXPECT_THROW(extract_u_case1(g.quotient_mod_derived_power(1)), NotApplicable);
}

TEST(Extraction, ReferenceScalarIsLinearInTheCentralElement) {
  PGroup g(parse_invariant_list("3,2,2,2,0,1,1,1,2,1"));
  CanonicalContext ctx(g);
  const unsigned r1 = reference_scalar(ctx, ctx.aug(g.central_c()));
  const unsigned r2 = reference_scalar(ctx, ctx.aug(g.power(g.central_c(), 2)));
  EXPECT_NE(r1, 0u);
  EXPECT_EQ(r2, 2 * r1 % 3);
}

// Opt-in: needs an algebra of dimension 3^8.
TEST(Extraction, HigherPowerPartTwoLarge) {
  if (!std::getenv("MODISO_LARGE_TESTS")) GTEST_SKIP() << "set MODISO_LARGE_TESTS to run";
  CanonicalOptions opts;
  opts.element_cap = opts.algebra_cap = 6561;
  for (std::int64_t u2 : {1, 4, 7}) {
    InvariantList l = parse_invariant_list("3,3,3,2,2,0,1,2,1,1");
    l.u2 = u2;
    SCOPED_TRACE(to_string(l));
    EXPECT_EQ(extract_higher(PGroup(l), 1, 2, opts), static_cast<unsigned>((u2 - 1) / 3 % 3));
  }
}

TEST(GroupIdentities, SpecialLists) {
  std::vector<InvariantList> all;
  for (unsigned p : {3u, 5u})
    for (const auto& l : special_lists(p, 7, 60)) all.push_back(l);
  EXPECT_GE(all.size(), 50u);
  for (const auto& l : all) {
    SCOPED_TRACE(to_string(l));
    ASSERT_TRUE(is_valid(l));
    EXPECT_TRUE(l.o1 > 0 && l.o2 > 0 && l.n1 + l.o1p == 2 * l.m - l.o1 && l.n2 + l.o2p == 2 * l.m - l.o1);
    EXPECT_TRUE(congruence_delta_holds(l));
    EXPECT_TRUE(inequality_chain_holds(l));
    EXPECT_TRUE(power_of_c_holds(PGroup(l)));
  }
}

TEST(GroupIdentities, UnequalLists) {
  std::vector<InvariantList> all;
  for (unsigned p : {3u, 5u})
    for (const auto& l : unequal_lists(p, 7, 60)) all.push_back(l);
  EXPECT_GE(all.size(), 50u);
  for (const auto& l : all) {
    SCOPED_TRACE(to_string(l));
    ASSERT_TRUE(is_valid(l));
    EXPECT_TRUE(zeta3_display_holds(PGroup(l)));
  }
}

TEST(GroupIdentities, HigherPowerLists) {
  for (unsigned part : {1u, 2u}) {
    std::size_t count = 0;
    for (unsigned p : {3u, 5u})
      for (unsigned t : {1u, 2u})
        for (const auto& l : higher_lists(p, 7, t, part, 40)) {
          SCOPED_TRACE(to_string(l));
          ++count;
          EXPECT_TRUE(upsilon_display_holds(PGroup(l), t, part));
        }
    EXPECT_GE(count, 20u) << "part " << part;
  }
}

TEST(GroupIdentities, FailOffHypotheses) {
  const InvariantList l = parse_invariant_list("3,2,2,2,0,1,1,1,2,1");
  EXPECT_FALSE(special_applies(l));
  EXPECT_FALSE(unequal_applies(l));
  EXPECT_FALSE(inequality_chain_holds(l));
}
