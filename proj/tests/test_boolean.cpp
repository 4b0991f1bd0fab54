#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cdsynth/boolean.hpp"
#include "cdsynth/error.hpp"
#include "oracles/brute.hpp"

using namespace cdsynth;

namespace {

RealFunction random_real(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> table(std::size_t{1} << n);
  for (auto& v : table) v = u(rng);
  return RealFunction(n, std::move(table));
}

void expect_matches_dense(const SparsePolynomial& p, const std::vector<double>& dense, double tol) {
  for (std::size_t s = 0; s < dense.size(); ++s) {
    EXPECT_NEAR(p.coefficient(static_cast<Mask>(s)), dense[s], tol) << "S=" << s;
    if (std::fabs(dense[s]) < kCoefficientCutoff) {
      EXPECT_FALSE(p.terms().contains(static_cast<Mask>(s)));
    }
  }
}

}  // namespace

TEST(Conventions, VariableZeroIsMostSignificant) {
  EXPECT_EQ(variable_bit(3, 0), 0b100U);
  EXPECT_EQ(variable_bit(3, 2), 0b001U);
  EXPECT_EQ(mask_variables(4, 0b1010), (std::vector<int>{0, 2}));
  const auto x0 = BooleanFunction::from(2, [](Mask x) { return (x >> 1) & 1U; });
  EXPECT_TRUE(x0(0b10));
  EXPECT_FALSE(x0(0b01));
}

TEST(Construction, RejectsBadTables) {
  EXPECT_THROW(BooleanFunction(2, {0, 1, 1}), Error);
  EXPECT_THROW(BooleanFunction(1, {0, 2}), Error);
  EXPECT_THROW(BooleanFunction(0, {0}), Error);
  EXPECT_THROW(RealFunction(1, {0.0, std::nan("")}), Error);
  EXPECT_THROW(RealFunction(25, {}), Error);
}

TEST(Fourier, Examples) {
  const auto a = fourier_transform(and_function(2).to_real());
  EXPECT_EQ(a.size(), 4U);
  EXPECT_DOUBLE_EQ(a.coefficient(0b00), 0.25);
  EXPECT_DOUBLE_EQ(a.coefficient(0b10), -0.25);
  EXPECT_DOUBLE_EQ(a.coefficient(0b01), -0.25);
  EXPECT_DOUBLE_EQ(a.coefficient(0b11), 0.25);
  EXPECT_TRUE(fourier_transform(BooleanFunction(2, {0, 0, 0, 0}).to_real()).empty());
  const auto p = fourier_transform(parity_function(3).to_real());
  EXPECT_EQ(p.size(), 2U);
  EXPECT_DOUBLE_EQ(p.coefficient(0), 0.5);
  EXPECT_DOUBLE_EQ(p.coefficient(0b111), -0.5);
}

TEST(Fourier, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 8; ++n) {
    const auto f = random_real(n, rng);
    expect_matches_dense(fourier_transform(f), oracle::fourier(oracle::real_table(f)), 1e-12);
  }
}

TEST(Mobius, Examples) {
  const auto o = mobius_transform(or_function(2).to_real());
  EXPECT_EQ(o.size(), 3U);
  EXPECT_DOUBLE_EQ(o.coefficient(0b10), 1.0);
  EXPECT_DOUBLE_EQ(o.coefficient(0b01), 1.0);
  EXPECT_DOUBLE_EQ(o.coefficient(0b11), -1.0);
  const auto c = mobius_transform(RealFunction(2, {1.5, 1.5, 1.5, 1.5}));
  EXPECT_EQ(c.size(), 1U);
  EXPECT_DOUBLE_EQ(c.coefficient(0), 1.5);
  const auto proj = mobius_transform(BooleanFunction(2, {0, 0, 1, 1}).to_real());
  EXPECT_EQ(proj.size(), 1U);
  EXPECT_DOUBLE_EQ(proj.coefficient(0b10), 1.0);
}

TEST(Mobius, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 8; ++n) {
    const auto f = random_real(n, rng);
    expect_matches_dense(mobius_transform(f), oracle::mobius(oracle::real_table(f)), 1e-9);
  }
}

TEST(Anf, Examples) {
  const auto maj = anf_transform(majority_function(3));
  EXPECT_EQ(maj.size(), 3U);
  for (Mask s : {0b110U, 0b101U, 0b011U}) EXPECT_EQ(maj.coefficient(s), 1.0);
  const auto par = anf_transform(parity_function(4));
  EXPECT_EQ(par.size(), 4U);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(par.coefficient(variable_bit(4, i)), 1.0);
  const auto conj = anf_transform(and_function(5));
  EXPECT_EQ(conj.size(), 1U);
  EXPECT_EQ(conj.coefficient(0b11111), 1.0);
}

TEST(Anf, IsMobiusModTwo) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto f = oracle::random_boolean(n, rng);
      const auto m = oracle::mobius(oracle::real_table(f));
      const auto anf = anf_transform(f);
      for (std::size_t s = 0; s < m.size(); ++s) {
        const long bit = std::labs(std::lround(m[s])) % 2;
        EXPECT_EQ(anf.coefficient(static_cast<Mask>(s)), static_cast<double>(bit)) << "n=" << n << " S=" << s;
      }
      for (const auto& [s, c] : anf.terms()) EXPECT_EQ(c, 1.0);
    }
  }
}

TEST(RoundTrip, ExactUpToTen) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 10; ++n) {
    const auto f = oracle::random_boolean(n, rng);
    const auto real = f.to_real();
    const auto g = random_real(n, rng);
    const auto back_fourier = evaluate_all(fourier_transform(g));
    const auto back_mobius = evaluate_all(mobius_transform(g));
    const auto back_anf = evaluate_all(anf_transform(f));
    const auto back_bool = evaluate_all(fourier_transform(real));
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      ASSERT_NEAR(back_fourier(x), g(x), 1e-12);
      ASSERT_NEAR(back_mobius(x), g(x), 1e-12);
      ASSERT_EQ(back_anf(x), real(x));
      ASSERT_NEAR(back_bool(x), real(x), 1e-12);
    }
    // Pointwise evaluation agrees with the fast path.
    const auto p = fourier_transform(g);
    for (Mask x = 0; x < std::min<Mask>(Mask{1} << n, 64); ++x) ASSERT_NEAR(evaluate(p, x), g(x), 1e-12);
  }
}

TEST(Evaluate, Examples) {
  SparsePolynomial p(2, Basis::FourierPM1);
  p.set(0, 0.5);
  p.set(0b11, -0.5);
  EXPECT_DOUBLE_EQ(evaluate(p, 0b01), 1.0);
  SparsePolynomial z(2, Basis::ZeroOne);
  z.set(0b10, 1.0);
  EXPECT_DOUBLE_EQ(evaluate(z, 0b10), 1.0);
  SparsePolynomial b(3, Basis::F2);
  b.set(0b111, 1.0);
  EXPECT_DOUBLE_EQ(evaluate(b, 0b111), 1.0);
  EXPECT_THROW(evaluate(b, 0b1000), Error);
}

TEST(SparsePolynomial, DropsDust) {
  SparsePolynomial p(3, Basis::ZeroOne);
  p.set(1, 1e-13);
  EXPECT_TRUE(p.empty());
  p.set(1, 0.5);
  p.set(1, 0.0);
  EXPECT_TRUE(p.empty());
}

TEST(Parseval, RandomRealFunctions) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 8;
    const auto f = random_real(n, rng);
    double spectrum = 0.0;
    const auto spectrum_poly = fourier_transform(f);
    for (const auto& [s, c] : spectrum_poly.terms()) spectrum += c * c;
    double energy = 0.0;
    for (double v : f.table()) energy += v * v;
    EXPECT_NEAR(spectrum, energy / static_cast<double>(f.size()), 1e-10);
  }
}

TEST(Degree, ZeroOneMatchesFourier) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 8;
    const auto f = oracle::random_boolean(n, rng);
    EXPECT_EQ(support_stats(mobius_transform(f.to_real()), 1).degree,
              support_stats(fourier_transform(f.to_real()), 1).degree);
  }
}

TEST(Selection, ClosedForm) {
  for (int n : {2, 4}) {
    const int logn = log2_exact(n);
    const auto p = fourier_transform(selection_function(n).to_real());
    for (Mask s = 0; s < (Mask{1} << (n + logn)); ++s) {
      const Mask data = s >> logn;
      const Mask T = s & ((Mask{1} << logn) - 1);
      double want = 0.0;
      if (s == 0) {
        want = 0.5;
      } else if (std::popcount(data) == 1) {
        const int k = n - 1 - std::countr_zero(data);
        want = -((std::popcount(static_cast<Mask>(k) & T) & 1) ? -1.0 : 1.0) / (2.0 * n);
      }
      EXPECT_NEAR(p.coefficient(s), want, 1e-12) << "n=" << n << " S=" << s;
      EXPECT_EQ(p.terms().contains(s), want != 0.0);
    }
  }
}

TEST(SupportStats, Examples) {
  const auto sel = support_stats(fourier_transform(selection_function(4).to_real()), 1);
  int above0 = 0;
  for (Mask s : sel.support) above0 += s != 0;
  EXPECT_EQ(above0, 16);
  EXPECT_EQ(sel.support_above.size(), 12U);
  EXPECT_EQ(sel.degree, 3);

  const auto empty = support_stats(SparsePolynomial(3, Basis::FourierPM1), 1);
  EXPECT_TRUE(empty.support.empty());
  EXPECT_EQ(empty.degree, 0);
  EXPECT_EQ(empty.one_norm, 0.0);
  EXPECT_EQ(empty.union_above, 0U);

  SparsePolynomial parity(3, Basis::FourierPM1);
  parity.set(0b111, 1.0);
  const auto ps = support_stats(parity, 1);
  EXPECT_EQ(ps.degree, 3);
  EXPECT_DOUBLE_EQ(ps.one_norm, 1.0);
  EXPECT_EQ(ps.union_above, 0b111U);
  EXPECT_EQ(ps.support_at.size(), 0U);
}

TEST(Junta, Examples) {
  const int n = 4;
  const auto sel = junta_structure(selection_function(n).to_real(), (Mask{1} << (n + 2)) - 1 - 0b11);
  EXPECT_EQ(sel.t, 2);
  EXPECT_EQ(sel.r, 1);
  for (Mask z = 0; z < 4; ++z) EXPECT_EQ(sel.per_restriction[z], variable_bit(n + 2, static_cast<int>(z)));

  const auto flat = junta_structure(BooleanFunction(3, std::vector<std::uint8_t>(8, 1)).to_real(), 0b110);
  EXPECT_EQ(flat.r, 0);
  for (Mask rel : flat.per_restriction) EXPECT_EQ(rel, 0U);

  const auto par = junta_structure(parity_function(3).to_real(), 0b110);
  EXPECT_EQ(par.r, 2);
  for (Mask rel : par.per_restriction) EXPECT_EQ(rel, 0b110U);
}

TEST(Junta, FlipPropertyExhaustive) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n) {
    // A function that ignores its last variable when the first is 0.
    const auto g = oracle::random_boolean(n, rng);
    const auto f = BooleanFunction::from(n, [&](Mask x) {
      return g(((x & variable_bit(n, 0)) == 0) ? (x & ~Mask{1}) : x);
    });
    const Mask full = (Mask{1} << n) - 1;
    const Mask J = n > 1 ? full & ~variable_bit(n, 0) : full;
    const auto js = junta_structure(f.to_real(), J);
    for (Mask z = 0; z < (Mask{1} << js.t); ++z) {
      const Mask base = js.restriction_input(z);
      ASSERT_EQ(js.per_restriction[z] & ~J, 0U);
      for (Mask y = 0; y <= J; ++y) {
        if (y & ~J) continue;
        const Mask x = base | y;
        for (int i = 0; i < n; ++i) {
          const Mask bit = variable_bit(n, i);
          if (!(J & bit) || (js.per_restriction[z] & bit)) continue;
          ASSERT_EQ(f(x), f(x ^ bit)) << "n=" << n << " z=" << z << " i=" << i;
        }
      }
      if (n > 1 && z == 0) {
        EXPECT_EQ(js.per_restriction[z] & Mask{1}, 0U);
      }
    }
  }
}

TEST(ApproxSparse, ExactTailWhenBoundExceedsSparsity) {
  const auto a = approx_sparse(parity_function(3).to_real(), 0.1, 1, 1);
  EXPECT_TRUE(a.exact_tail);
  EXPECT_EQ(a.poly.size(), 1U);
  EXPECT_DOUBLE_EQ(a.poly.coefficient(0b111), -0.5);
  EXPECT_EQ(a.max_error, 0.0);

  const auto lin = approx_sparse(BooleanFunction(2, {0, 0, 1, 1}).to_real(), 0.1, 1, 1);
  EXPECT_TRUE(lin.poly.empty());
  EXPECT_EQ(lin.max_error, 0.0);
  EXPECT_THROW(approx_sparse(parity_function(2).to_real(), 0.0, 1, 1), Error);
}

TEST(ApproxSparse, SampledApproximationIsVerified) {
  std::mt19937_64 rng(8);
  int sampled = 0;
  for (int rep = 0; rep < 10; ++rep) {
    // The n = 8 cases are one dominant character plus small noise, so sampling beats the exact tail.
    const int n = rep < 5 ? 4 : 8;
    const auto noise = random_real(n, rng);
    const auto f = rep < 5 ? noise : RealFunction(n, [&] {
      std::vector<double> t(std::size_t{1} << n);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = ((std::popcount(x) & 1) ? -1.0 : 1.0) + 0.005 * noise(static_cast<Mask>(x));
      return t;
    }());
    const double eps = rep < 5 ? 0.3 : 0.5;
    const auto a = approx_sparse(f, eps, 1, 100 + rep);
    SparsePolynomial tail(n, Basis::FourierPM1);
    const auto full = fourier_transform(f);
    for (const auto& [s, c] : full.terms()) {
      if (mask_size(s) > 1) tail.set(s, c);
    }
    const auto want = evaluate_all(tail);
    const auto got = evaluate_all(a.poly);
    double err = 0.0;
    for (Mask x = 0; x < (Mask{1} << n); ++x) err = std::max(err, std::fabs(want(x) - got(x)));
    EXPECT_LT(err, eps);
    EXPECT_NEAR(err, a.max_error, 1e-12);
    for (const auto& [s, c] : a.poly.terms()) EXPECT_GT(mask_size(s), 1);
    sampled += a.exact_tail ? 0 : 1;
  }
  EXPECT_GT(sampled, 0);
}

TEST(Builtins, Definitions) {
  EXPECT_EQ(exact_function(3, 2)(0b110), true);
  EXPECT_EQ(exact_function(3, 2)(0b111), false);
  EXPECT_EQ(threshold_function(3, 2)(0b111), true);
  EXPECT_EQ(threshold_function(3, 2)(0b100), false);
  EXPECT_EQ(selection_function(2)(0b01'0), false);  // data 01, address 0 -> x_0 = 0
  EXPECT_EQ(selection_function(2)(0b01'1), true);
  EXPECT_THROW(selection_function(3), Error);
  EXPECT_THROW(log2_exact(6), Error);
  EXPECT_EQ(log2_exact(8), 3);
}

TEST(Parsing, BooleanAndReal) {
  const auto b = parse_truth_table("n=2\n0110\n");
  ASSERT_TRUE(std::holds_alternative<BooleanFunction>(b));
  EXPECT_EQ(std::get<BooleanFunction>(b), parity_function(2));
  const auto r = parse_truth_table("n=1\n0.25\n-1.5\n");
  ASSERT_TRUE(std::holds_alternative<RealFunction>(r));
  EXPECT_DOUBLE_EQ(std::get<RealFunction>(r)(1), -1.5);
}

TEST(Parsing, ErrorsCarryLocation) {
  auto line_of = [](std::string_view text) {
    try {
      parse_truth_table(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("m=2\n0110\n"), 1);
  EXPECT_EQ(line_of("n=x\n0110\n"), 1);
  EXPECT_EQ(line_of("n=2\n01a0\n"), 2);
  EXPECT_EQ(line_of("n=2\n0.1\n0.2\n"), 3);
  EXPECT_EQ(line_of("n=1\n0.5\nabc\n"), 3);
}
