#include <random>

#include <gtest/gtest.h>

#include "modiso/arith.hpp"
#include "modiso/errors.hpp"
#include "modiso/invariants.hpp"

using namespace modiso;

namespace {

BigInt naive_ese(const BigInt& s, long n, const BigInt& m) {
  BigInt sum = 0, term = 1;
  for (long i = 0; i < n; ++i) {
    sum = (sum + term) % m;
    term = term * s % m;
  }
  return sum;
}

BigInt naive_pow(const BigInt& s, long n, const BigInt& m) {
  BigInt r = 1 % m;
  for (long i = 0; i < n; ++i) r = r * s % m;
  return r;
}

}  // namespace

TEST(Arith, EseSmallCases) {
  EXPECT_EQ(ese(7, 0, 27), 0);
  EXPECT_EQ(ese(1, 100, 27), 100 % 27);
  EXPECT_EQ(ese(4, 3, 27), 21);
  EXPECT_EQ(ese(4, 3, PrimePower(3, 3)), 21);
}

TEST(Arith, EseMatchesNaiveSum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned p = std::array<unsigned, 3>{3, 5, 7}[rng() % 3];
    const BigInt m = ipow(p, 1 + rng() % 5);
    const BigInt s = BigInt(rng() % 100000);
    const long n = static_cast<long>(rng() % 10001);
    ASSERT_EQ(ese(s, n, m), naive_ese(s, n, m)) << s << " " << n << " " << m;
  }
}

TEST(Arith, EseWithUnitNotInvertibleDifference) {
  // s = 1 mod p, so (s^n - 1)/(s - 1) cannot be computed by modular division.
  for (long n = 0; n < 300; ++n) ASSERT_EQ(ese(10, n, 243), naive_ese(10, n, 243));
}

TEST(Arith, EseHugeLength) {
  // S_s^{2n} = S_s^n (1 + s^n)
  const BigInt n = ipow(3, 80) + 12345;
  const BigInt m = ipow(5, 9);
  EXPECT_EQ(ese(6, 2 * n, m), ese(6, n, m) * (1 + modpow(6, n, m)) % m);
  EXPECT_EQ(ese(6, 2 * n + 1, m), (ese(6, 2 * n, m) + modpow(6, 2 * n, m)) % m);
}

TEST(Arith, Modpow) {
  EXPECT_EQ(modpow(12, 0, 243), 1);
  EXPECT_EQ(modpow(10, 3, 243), naive_pow(10, 3, 243));
  EXPECT_EQ(modpow(10, 3, 243), 28);
  EXPECT_EQ(modpow(28, 8, 243), naive_pow(28, 8, 243));
  EXPECT_EQ(modpow(28, 8, 243), 217);
  EXPECT_EQ(modpow(-2, 3, 27), 19);
}

TEST(Arith, Valuation) {
  EXPECT_FALSE(valuation(0, 3).has_value());
  EXPECT_EQ(valuation(9, 3), 2u);
  EXPECT_EQ(valuation(-250, 5), 3u);
  EXPECT_EQ(valuation(7, 3), 0u);
}

TEST(Arith, PrimePower) {
  EXPECT_EQ(PrimePower(3, 4).value(), 81);
  EXPECT_THROW(PrimePower(2, 3), std::invalid_argument);
  EXPECT_THROW(PrimePower(9, 1), std::invalid_argument);
}

TEST(Arith, SolveDeltaExamples) {
  EXPECT_EQ(solve_delta(3, 4, 0, 10), 1);
  // brute force: delta in 1..9 with S_10^{3 delta} = -3 mod 27
  BigInt brute = 0;
  for (long d = 1; d <= 9 && brute == 0; ++d)
    if (naive_ese(10, 3 * d, 27) == 24) brute = d;
  EXPECT_EQ(brute, 8);
  EXPECT_EQ(solve_delta(3, 3, 2, 10), brute);
}

TEST(Arith, SolveDeltaNoSolutionSignals) {
  // r2 = 1 mod 27 with o1 = 0 : S = 27 = 0 but target is -27 = 0, fine; break it with o1 > m.
  EXPECT_THROW(solve_delta(3, 2, 3, 1), NoSolution);
}

TEST(Arith, SolveDeltaPropertiesOverValidLists) {
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned max_e = p == 3 ? 14 : (p == 5 ? 12 : 11);
    for (unsigned e = 3; e <= max_e; ++e) {
      for_each_list(p, e, [&](const InvariantList& l) {
        const DerivedConstants c = derive_constants(l);
        const BigInt pm = ipow(p, l.m);
        const BigInt step = ipow(p, l.m - l.o1);
        ASSERT_GE(c.delta, 1);
        ASSERT_LE(c.delta, ipow(p, l.o1));
        ASSERT_EQ(ese(c.r2, c.delta * step, pm), mod(-step, pm)) << to_string(l);
        ASSERT_NE(c.delta % p, 0) << to_string(l);
        if (l.o1 > l.o2 && l.o2 > 0) {
          const BigInt q = ipow(p, l.o1 + 1 - l.o2);
          ASSERT_EQ(mod(c.delta + 1, q), 0) << to_string(l);
        }
        if (l.o1 == 0) ASSERT_EQ(c.delta, 1);
      });
    }
  }
}

TEST(Arith, ValuationOfR2MinusOne) {
  for (unsigned e = 3; e <= 10; ++e)
    for_each_list(3, e, [](const InvariantList& l) {
      const DerivedConstants c = derive_constants(l);
      // r2 is a residue mod p^m, so o2 = 0 shows up as r2 - 1 = 0 (valuation >= m).
      const auto v = valuation(c.r2 - 1, 3);
      if (l.o2 == 0) {
        ASSERT_FALSE(v.has_value()) << to_string(l);
      } else {
        ASSERT_TRUE(v.has_value());
        ASSERT_EQ(*v, l.m - l.o2) << to_string(l);
      }
    });
}
