#include <gtest/gtest.h>

#include <random>

#include "chromalg/ring/exact_poly_ring.hpp"
#include "chromalg/ring/finite_algebra.hpp"
#include "chromalg/series/eval.hpp"
#include "chromalg/series/truncated_series.hpp"

using namespace chromalg;

namespace {

using ZN = TruncatedSeries<ModularRing>;
using ZS = TruncatedSeries<IntegerRing>;

template <class R>
TruncatedSeries<R> uni(R ring, int cap, std::vector<typename R::value_type> c, bool poly = true) {
  return TruncatedSeries<R>::from_coefficients(ring, "x", cap, c, poly);
}

template <class R, class Gen>
TruncatedSeries<R> random_series(const R& ring, const std::vector<std::string>& vars, int cap, int max_deg,
                                 Gen& gen, bool zero_constant = false) {
  TruncatedSeries<R> s(ring, vars, cap);
  std::vector<Exponent> exps;
  Exponent e(vars.size(), 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t k, int left) {
    if (k == vars.size()) {
      exps.push_back(e);
      return;
    }
    for (int t = 0; t <= left; ++t) {
      e[k] = t;
      walk(k + 1, left - t);
    }
    e[k] = 0;
  };
  walk(0, max_deg);
  for (const auto& x : exps) {
    if (zero_constant && TruncatedSeries<R>::degree_of(x) == 0) continue;
    if (gen() % 3 == 0) continue;
    s.set(x, ring.from_integer(Integer(int(gen() % 19) - 9)));
  }
  return s;
}

// Dense univariate product mod n, truncated: an independent oracle.
std::vector<Integer> dense_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, int cap, int n) {
  std::vector<Integer> out(cap + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (int(i + j) <= cap) out[i + j] = mod_floor(out[i + j] + a[i] * b[j], n);
  return out;
}

template <class R>
void expect_same(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  EXPECT_TRUE(a.equals(b)) << a.to_string() << "  vs  " << b.to_string();
}

}  // namespace

TEST(Series, ArithmeticExamples) {
  ModularRing Z4(4);
  auto a = uni(Z4, 4, {1, 3, 0, 2});
  expect_same(a + ZN::zero(Z4, {"x"}, 4), a);
  auto x1 = ZN::variable(Z4, {"x"}, 0, 1);
  EXPECT_TRUE((x1 * x1).is_zero());
  EXPECT_FALSE((x1 * x1).is_polynomial());
  auto one_plus_x = uni(Z4, 2, {1, 1});
  expect_same(one_plus_x * one_plus_x, uni(Z4, 2, {1, 2, 1}));
}

TEST(Series, MultiplicationMatchesDenseOracle) {
  std::mt19937_64 gen(1);
  for (int n : {4, 7, 27}) {
    ModularRing R(n);
    for (int trial = 0; trial < 100; ++trial) {
      int cap = 1 + int(gen() % 9);
      std::vector<Integer> a(1 + gen() % 8), b(1 + gen() % 8);
      for (auto& v : a) v = int(gen() % n);
      for (auto& v : b) v = int(gen() % n);
      auto prod = uni(R, cap, a) * uni(R, cap, b);
      auto want = dense_mul(a, b, cap, n);
      for (int k = 0; k <= cap; ++k) EXPECT_EQ(prod.coefficient(k), want[k]);
    }
  }
}

TEST(Series, RingAxiomsRandomTriples) {
  std::mt19937_64 gen(2);
  auto run = [&](auto ring) {
    using R = decltype(ring);
    std::vector<std::string> vars{"x", "y"};
    for (int trial = 0; trial < 500; ++trial) {
      auto a = random_series(ring, vars, 4, 4, gen), b = random_series(ring, vars, 4, 4, gen),
           c = random_series(ring, vars, 4, 4, gen);
      auto zero = TruncatedSeries<R>::zero(ring, vars, 4);
      auto one = TruncatedSeries<R>::one(ring, vars, 4);
      ASSERT_TRUE(((a + b) + c).equals(a + (b + c)));
      ASSERT_TRUE((a + b).equals(b + a));
      ASSERT_TRUE((a + zero).equals(a));
      ASSERT_TRUE((a - a).equals(zero));
      ASSERT_TRUE(((a * b) * c).equals(a * (b * c)));
      ASSERT_TRUE((a * b).equals(b * a));
      ASSERT_TRUE((a * one).equals(a));
      ASSERT_TRUE((a * (b + c)).equals(a * b + a * c));
    }
  };
  run(ModularRing(4));
  run(ModularRing(7));
  run(IntegerRing{});
  run(RationalField{});
}

TEST(Series, SubstituteExamples) {
  IntegerRing Z;
  auto x = ZS::variable(Z, {"x"}, 0, 5);
  auto y = ZS::variable(Z, {"y"}, 0, 5);
  expect_same(substitute_named(x, std::map<std::string, ZS>{{"x", y}}), y);
  auto f = uni(Z, 3, {0, 0, 1});
  auto g = uni(Z, 3, {0, 1, 1});
  expect_same(substitute(f, {g}), uni(Z, 3, {0, 0, 1, 2}));
  try {
    substitute(f, {uni(Z, 3, {1, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonzeroConstantTerm);
  }
}

TEST(Series, SubstituteIsAssociative) {
  std::mt19937_64 gen(3);
  for (auto ring : {ModularRing(8), ModularRing(5), ModularRing(1000003)}) {
    for (int trial = 0; trial < 60; ++trial) {
      auto f = random_series(ring, {"x"}, 6, 3, gen);
      auto g = random_series(ring, {"x"}, 6, 3, gen, true);
      auto h = random_series(ring, {"x"}, 6, 3, gen, true);
      auto lhs = substitute(substitute(f, {g}), {h});
      auto rhs = substitute(f, {substitute(g, {h})});
      ASSERT_TRUE(lhs.equals(rhs)) << lhs.to_string() << " | " << rhs.to_string();
      // bivariate outer series
      auto F = random_series(ring, {"a", "b"}, 6, 3, gen);
      auto g2 = random_series(ring, {"x"}, 6, 3, gen, true);
      auto l2 = substitute(substitute(F, {g, g2}), {h});
      auto r2 = substitute(F, {substitute(g, {h}), substitute(g2, {h})});
      ASSERT_TRUE(l2.equals(r2));
    }
  }
}

TEST(Series, ReversionExamples) {
  IntegerRing Z;
  expect_same(reversion(uni(Z, 5, {0, 1})), uni(Z, 5, {0, 1}));
  expect_same(reversion(uni(Z, 3, {0, 1, 1})), uni(Z, 3, {0, 1, -1, 2}));
  try {
    reversion(uni(Z, 3, {0, 2, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitLinearTerm);
  }
}

TEST(Series, ReversionOfLogarithmIsExponential) {
  RationalField Q;
  const int cap = 10;
  std::vector<Rational> log(cap + 1, 0);
  for (int k = 1; k <= cap; ++k) log[k] = Rational(k % 2 ? 1 : -1, k);
  auto l = uni(Q, cap, log, false);
  auto e = reversion(l);
  // oracle: exp(x) - 1 = sum x^k / k!
  Integer fact = 1;
  for (int k = 1; k <= cap; ++k) {
    fact *= k;
    EXPECT_EQ(e.coefficient(k), Rational(1, fact));
  }
  auto x = RationalSeries::variable(Q, {"x"}, 0, cap);
  EXPECT_TRUE(substitute(l, {e}).agrees_up_to(x, cap));
  EXPECT_TRUE(substitute(e, {l}).agrees_up_to(x, cap));
}

TEST(Series, ReversionBothOrdersRandom) {
  std::mt19937_64 gen(4);
  for (auto ring : {ModularRing(9), ModularRing(16), ModularRing(101)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const int cap = 8;
      auto f = random_series(ring, {"x"}, cap, cap, gen, true);
      f.set(Exponent{1}, ring.from_integer(1 + 2 * int(gen() % 4)));  // odd, prime to 9 and 16 unless 3 | it
      if (!ring.inverse(f.coefficient(1))) continue;
      auto g = reversion(f);
      auto x = ZN::variable(ring, {"x"}, 0, cap);
      ASSERT_TRUE(substitute(f, {g}).agrees_up_to(x, cap));
      ASSERT_TRUE(substitute(g, {f}).agrees_up_to(x, cap));
    }
  }
}

TEST(Series, EvalExamples) {
  auto F2 = FiniteAlgebra::from_presentation(2, {"x"}, {{0, 0, 1}});
  auto x = F2.generator(0);
  ModularRing M2(2);
  auto id = ZN::variable(M2, {"x"}, 0, 4);
  EXPECT_EQ(eval_at(id, {x}, F2), x);
  auto sq = uni(M2, 4, {0, 0, 1});
  EXPECT_TRUE(eval_at(sq, {x}, F2).is_zero());

  auto R = FiniteAlgebra::from_presentation(4, {"x"}, {{0, 2, 1}});
  ModularRing Z4(4);
  auto f = uni(Z4, 3, {0, 2, 1});  // (1+x)^2 - 1
  EXPECT_TRUE(eval_at(f, {R.generator(0)}, R).is_zero());
}

TEST(Series, EvalErrors) {
  ModularRing Z4(4);
  auto R = FiniteAlgebra::from_presentation(4, {"x"}, {{0, 3, 1}});  // x idempotent
  auto trunc = uni(Z4, 3, {0, 1, 1, 1}, false);
  try {
    eval_at(trunc, {R.generator(0)}, R);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonNilpotentArgument);
  }
  auto N = FiniteAlgebra::from_presentation(4, {"x"}, {{0, 0, 0, 0, 0, 1}});
  try {
    eval_at(trunc, {N.generator(0)}, N);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapTooSmall);
  }
  auto ok = uni(Z4, 4, {0, 1, 1, 1, 1}, false);
  EXPECT_NO_THROW(eval_at(ok, {N.generator(0)}, N));
}

TEST(Series, EvalIsRingHomomorphism) {
  std::mt19937_64 gen(5);
  ModularRing Z4(4);
  auto R = FiniteAlgebra::from_presentation(4, {"x", "y"}, {{0, 2, 1}, {0, 0, 2, 1}});
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_series(Z4, {"a", "b"}, 12, 3, gen);
    auto g = random_series(Z4, {"a", "b"}, 12, 3, gen);
    std::vector<RingElement> args{R.element({Integer(gen() % 4), 1, 0, 0, 0, 0}),
                                  R.element({0, Integer(gen() % 4), 1, 3, 0, 1})};
    EXPECT_EQ(eval_at(f * g, args, R), eval_at(f, args, R) * eval_at(g, args, R));
    EXPECT_EQ(eval_at(f + g, args, R), eval_at(f, args, R) + eval_at(g, args, R));
  }
  // truncated series at nilpotent arguments
  auto N = FiniteAlgebra::from_presentation(2, {"x"}, {{0, 0, 0, 0, 1}});
  ModularRing F2(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_series(F2, {"a"}, 5, 5, gen);
    auto g = random_series(F2, {"a"}, 5, 5, gen);
    f.mark_truncated();
    g.mark_truncated();
    std::vector<RingElement> args{N.element({0, 1, Integer(gen() % 2), Integer(gen() % 2)})};
    EXPECT_EQ(eval_at(f * g, args, N), eval_at(f, args, N) * eval_at(g, args, N));
  }
}

TEST(Series, EvalIntoExactRing) {
  IntegerRing Z;
  ExactPolyRing E({"x"}, {{0, 2, 1}});
  auto f = uni(Z, 2, {0, 2, 1});
  EXPECT_TRUE(eval_at(f, {E.generator(0)}, E).is_zero());
}

TEST(Series, MismatchedVariables) {
  IntegerRing Z;
  auto a = ZS::variable(Z, {"x"}, 0, 3);
  auto b = ZS::variable(Z, {"y"}, 0, 3);
  try {
    auto c = a + b;
    (void)c;
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
    EXPECT_EQ(e.module(), "series");
  }
}
