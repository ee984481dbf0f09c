#include <set>

#include <gtest/gtest.h>

#include "modiso/errors.hpp"
#include "modiso/invariants.hpp"

using namespace modiso;

namespace {

InvariantList L(const char* text) { return parse_invariant_list(text); }

bool has_tag(const ValidationReport& r, const std::string& tag) {
  for (const auto& v : r.violations)
    if (v.tag == tag) return true;
  return false;
}

long long ipow_ll(long long b, unsigned e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

// Independent filter: every tuple with o_i <= m, u1 <= p^{o1'}, u2 <= 2 p^{o2'}
// (a_i <= o_i' always), checked by validate alone.
std::vector<InvariantList> brute_force_lists(unsigned p, unsigned e) {
  std::vector<InvariantList> out;
  InvariantList l;
  l.p = p;
  for (unsigned m = 1; m <= e; ++m)
    for (unsigned n1 = 1; n1 <= e; ++n1)
      for (unsigned n2 = 1; n2 <= e; ++n2) {
        if (m + n1 + n2 != e) continue;
        for (unsigned o1 = 0; o1 <= m; ++o1)
          for (unsigned o2 = 0; o2 <= m; ++o2)
            for (unsigned o1p = 0; o1p <= m; ++o1p)
              for (unsigned o2p = 0; o2p <= m; ++o2p)
                for (long long u1 = 1; u1 <= ipow_ll(p, o1p); ++u1)
                  for (long long u2 = 1; u2 <= 2 * ipow_ll(p, o2p); ++u2) {
                    l = InvariantList{p, m, n1, n2, o1, o2, o1p, o2p, u1, u2};
                    if (validate(l).valid) out.push_back(l);
                  }
      }
  return out;
}

}  // namespace

TEST(Invariants, ParseAndFormat) {
  const InvariantList l = L("3,2,2,2,0,1,1,1,2,1");
  EXPECT_EQ(l.p, 3u);
  EXPECT_EQ(l.u1, 2);
  EXPECT_EQ(to_string(l), "3,2,2,2,0,1,1,1,2,1");
  EXPECT_THROW(L("3,2"), ParseError);
  EXPECT_THROW(L("3,2,2,2,0,1,1,1,2,x"), ParseError);
  EXPECT_THROW(L("3,2,2,2,0,1,1,1,2, 1"), ParseError);
  EXPECT_THROW(L("3,2,2,2,0,1,1,1,2,1,"), ParseError);
}

TEST(Invariants, JsonRoundTrip) {
  const InvariantList l = L("3,5,7,5,2,1,1,3,1,2");
  nlohmann::json j = l;
  EXPECT_EQ(j["o2p"], 3);
  EXPECT_EQ(j.get<InvariantList>(), l);
  EXPECT_THROW((nlohmann::json{{"p", 3}}.get<InvariantList>()), ParseError);
}

TEST(Invariants, DeriveConstants) {
  const DerivedConstants c = derive_constants(L("3,2,2,2,0,1,1,1,2,1"));
  EXPECT_EQ(c.r1, 1);
  EXPECT_EQ(c.r2, 4);
  EXPECT_EQ(c.o, 1u);
  EXPECT_EQ(c.delta, 1);
  EXPECT_EQ(c.order, 729);
  EXPECT_EQ(c.a1, 1);
  EXPECT_EQ(c.a2, 0);

  const DerivedConstants d = derive_constants(L("3,2,3,2,1,0,0,1,1,2"));
  EXPECT_EQ(d.r1, 4);
  EXPECT_EQ(d.r2, 64 % 9);

  for (const auto& l : enumerate(5, 9))
    if (l.o2 > l.o1) EXPECT_EQ(derive_constants(l).r2, mod(1 + ipow(5, l.m - l.o2), ipow(5, l.m)));
}

TEST(Invariants, ValidateExamples) {
  EXPECT_TRUE(validate(L("3,2,2,2,0,1,1,1,2,1")).valid);
  EXPECT_TRUE(validate(L("3,1,1,1,0,0,0,0,1,1")).valid);
  const ValidationReport bad = validate(L("3,5,7,5,1,1,2,1,1,3"));
  EXPECT_FALSE(bad.valid);
  EXPECT_TRUE(has_tag(bad, "IIIa"));
  EXPECT_TRUE(has_tag(bad, "IIIb"));
  EXPECT_TRUE(has_tag(bad, "IIIc"));
  // several clauses at once
  const ValidationReport many = validate(L("4,2,1,2,0,0,0,0,4,1"));
  EXPECT_TRUE(has_tag(many, "I"));
  EXPECT_TRUE(has_tag(many, "II"));
  EXPECT_GE(many.violations.size(), 3u);
}

TEST(Invariants, RemarkListsUnderAdoptedParsing) {
  EXPECT_TRUE(validate(L("3,5,7,5,2,1,1,3,1,2")).valid);
  EXPECT_TRUE(validate(L("3,5,7,5,2,1,1,3,2,2")).valid);
}

TEST(Invariants, EnumerateSmall) {
  const auto lists = enumerate(3, 3);
  ASSERT_EQ(lists.size(), 2u);
  EXPECT_EQ(lists[0], L("3,1,1,1,0,0,0,0,1,1"));
  EXPECT_EQ(lists[1], L("3,1,1,1,0,0,1,1,1,1"));
  EXPECT_TRUE(enumerate(3, 2).empty());
  EXPECT_TRUE(enumerate(5, 1).empty());
}

TEST(Invariants, EnumerateContainsExceptionalFamily) {
  std::set<InvariantList> all;
  for_each_list(3, 12, [&](const InvariantList& l) { all.insert(l); });
  for (long long u1 : {1, 2, 4, 5, 7, 8}) {
    InvariantList l{3, 4, 4, 4, 0, 2, 2, 2, u1, 1};
    EXPECT_TRUE(all.count(l)) << to_string(l);
  }
  EXPECT_FALSE(all.count(InvariantList{3, 4, 4, 4, 0, 2, 2, 2, 10, 1}));
}

TEST(Invariants, EnumerateMatchesBruteForce) {
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned max_e = p == 3 ? 7 : (p == 5 ? 5 : 5);
    for (unsigned e = 1; e <= max_e; ++e) {
      const auto fast = enumerate(p, e);
      auto brute = brute_force_lists(p, e);
      std::sort(brute.begin(), brute.end());
      ASSERT_EQ(fast, brute) << "p=" << p << " e=" << e;
    }
  }
}

TEST(Invariants, EnumerationIsSortedAndValid) {
  for (unsigned p : {3u, 5u, 7u})
    for (unsigned e = 3; e <= 12; ++e) {
      const auto lists = enumerate(p, e);
      ASSERT_TRUE(std::is_sorted(lists.begin(), lists.end()));
      ASSERT_TRUE(std::adjacent_find(lists.begin(), lists.end()) == lists.end());
      for (const auto& l : lists) {
        ASSERT_EQ(l.order_exponent(), e);
        // n1 = m forces o1 o2 = 0
        if (l.n1 == l.m) ASSERT_EQ(l.o1 * l.o2, 0u) << to_string(l);
        // either V/VI(a) ranges or the VI(b) exception
        const DerivedConstants c = derive_constants(l);
        const long long p2 = ipow_ll(p, c.a2);
        if (l.u2 > p2) {
          ASSERT_TRUE(l.o1 * l.o2 != 0 && l.u2 <= 2 * p2 && (l.u1 - 1) % p == 0 && c.a1 > 0 &&
                      l.n1 + l.o1p == l.n2 + l.o2p)
              << to_string(l);
        }
        ASSERT_LE(l.u1, ipow_ll(p, c.a1));
      }
    }
}

TEST(Invariants, ReductionFlags) {
  EXPECT_TRUE(reduction_flags(L("3,1,1,1,0,0,0,0,1,1")).metacyclic);
  EXPECT_TRUE(reduction_flags(L("3,2,2,2,0,1,1,1,2,1")).assumptions_hold);
  EXPECT_FALSE(reduction_flags(L("3,2,2,2,0,1,1,1,2,1")).metacyclic);
  for (const auto& l : enumerate(3, 8))
    if (l.o1p == l.m && l.o2p == l.m) EXPECT_TRUE(reduction_flags(l).class_at_most_2);
}
