#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdsynth/error.hpp"
#include "cdsynth/unitary.hpp"
#include "oracles/brute.hpp"

using namespace cdsynth;

namespace {

using M2 = std::array<Complex, 4>;

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Complex cis(double theta) { return std::polar(1.0, std::numbers::pi * theta); }

// e^{i pi a} Z(b) H Z(c) H Z(d) multiplied out entry by entry.
M2 recompose_by_hand(const ZDecomp& d) {
  const double r = 1.0 / std::sqrt(2.0);
  const M2 h{r, r, r, -r};
  auto z = [](double t) { return M2{1.0, 0.0, 0.0, cis(t)}; };
  M2 m = mul(mul(mul(mul(z(d.beta), h), z(d.gamma)), h), z(d.delta));
  for (auto& e : m) e *= cis(d.alpha);
  return m;
}

// Largest singular value from the larger eigenvalue of the Hermitian M^dagger M.
double largest_singular_value(const M2& m) {
  const M2 adj{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  const M2 g = mul(adj, m);
  const double trace = g[0].real() + g[3].real();
  const double det = (g[0] * g[3] - g[1] * g[2]).real();
  const double disc = std::max(0.0, trace * trace / 4.0 - det);
  return std::sqrt(std::max(0.0, trace / 2.0 + std::sqrt(disc)));
}

double entry_distance(const M2& a, const M2& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

M2 diff(const Unitary2& a, const Unitary2& b) {
  M2 out;
  for (int i = 0; i < 4; ++i) out[i] = a.entries()[i] - b.entries()[i];
  return out;
}

Unitary2 random_u(std::mt19937_64& rng) { return oracle::random_unitary(1, rng)(0); }

}  // namespace

TEST(ReduceAngle, RangeAndTies) {
  EXPECT_DOUBLE_EQ(reduce_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(reduce_angle(1.0), 1.0);
  EXPECT_DOUBLE_EQ(reduce_angle(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(reduce_angle(3.0), 1.0);
  EXPECT_NEAR(reduce_angle(2.5), 0.5, 1e-15);
  EXPECT_NEAR(reduce_angle(-2.5), -0.5, 1e-15);
  EXPECT_NEAR(reduce_angle(1.75), -0.25, 1e-15);
}

TEST(Unitary2, RejectsNonUnitary) {
  EXPECT_THROW(Unitary2(M2{1.0, 1.0, 0.0, 1.0}), Error);
  EXPECT_THROW(Unitary2(M2{2.0, 0.0, 0.0, 0.5}), Error);
  EXPECT_NO_THROW(Unitary2(M2{0.0, 1.0, 1.0, 0.0}));
}

TEST(Unitary2, Algebra) {
  const auto h = Unitary2::hadamard();
  EXPECT_LT(entry_distance((h * h).entries(), Unitary2::identity().entries()), 1e-15);
  const auto x = Unitary2::pauli_x();
  EXPECT_LT(entry_distance((h * Unitary2::phase(1.0) * h).entries(), x.entries()), 1e-15);
  std::mt19937_64 rng(3);
  const auto u = random_u(rng);
  EXPECT_LT(entry_distance((u * u.adjoint()).entries(), Unitary2::identity().entries()), 1e-12);
}

TEST(ZDecompose, Examples) {
  const auto id = z_decompose(Unitary2::identity());
  EXPECT_EQ(id.alpha, 0.0);
  EXPECT_EQ(id.beta, 0.0);
  EXPECT_EQ(id.gamma, 0.0);
  EXPECT_EQ(id.delta, 0.0);

  const auto x = z_decompose(Unitary2::pauli_x());
  EXPECT_NEAR(x.alpha, 0.0, 1e-12);
  EXPECT_NEAR(x.beta, 0.0, 1e-12);
  EXPECT_NEAR(x.gamma, 1.0, 1e-12);
  EXPECT_NEAR(x.delta, 0.0, 1e-12);

  const auto h = z_decompose(Unitary2::hadamard());
  EXPECT_LE(spectral_distance(z_recompose(h), Unitary2::hadamard()), 1e-10);

  // Diagonal branch: all phase in beta and alpha.
  const auto s = z_decompose(Unitary2::phase(0.5));
  EXPECT_NEAR(s.beta, 0.5, 1e-12);
  EXPECT_EQ(s.gamma, 0.0);
  EXPECT_EQ(s.delta, 0.0);
}

TEST(ZRecompose, Examples) {
  EXPECT_LT(entry_distance(z_recompose({0, 0, 1, 0}).entries(), Unitary2::pauli_x().entries()), 1e-15);
  EXPECT_LT(entry_distance(z_recompose({0, 1, 0, 0}).entries(), M2{1.0, 0.0, 0.0, -1.0}), 1e-15);
  EXPECT_LT(entry_distance(z_recompose({0.5, 0, 0, 0}).entries(), M2{Complex(0, 1), 0.0, 0.0, Complex(0, 1)}), 1e-15);
}

TEST(ZDecompose, RoundTripThousandRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto u = random_u(rng);
    const auto d = z_decompose(u);
    for (double a : {d.alpha, d.beta, d.gamma, d.delta}) {
      ASSERT_GE(a, -1.0);
      ASSERT_LE(a, 1.0);
    }
    ASSERT_LE(largest_singular_value(diff(z_recompose(d), u)), 1e-10);
    ASSERT_LT(entry_distance(recompose_by_hand(d), u.entries()), 1e-10);
    // Pure function: a second call is bitwise identical.
    const auto again = z_decompose(u);
    ASSERT_EQ(d.alpha, again.alpha);
    ASSERT_EQ(d.beta, again.beta);
    ASSERT_EQ(d.gamma, again.gamma);
    ASSERT_EQ(d.delta, again.delta);
  }
}

TEST(ZDecompose, AntiDiagonalAndEdgeCases) {
  for (double phi : {0.0, 0.3, -0.7, 1.0}) {
    const Unitary2 u(M2{0.0, cis(phi), cis(0.25), 0.0});
    const auto d = z_decompose(u);
    EXPECT_EQ(d.delta, 0.0);
    EXPECT_LE(spectral_distance(z_recompose(d), u), 1e-10);
  }
  for (double phi : {0.0, 1.0, -1.0, 0.999999999}) {
    const Unitary2 u(M2{cis(phi), 0.0, 0.0, cis(-phi)});
    EXPECT_LE(spectral_distance(z_recompose(z_decompose(u)), u), 1e-10);
  }
}

TEST(SpectralDistance, Examples) {
  std::mt19937_64 rng(12);
  const auto u = random_u(rng);
  EXPECT_NEAR(spectral_distance(u, u), 0.0, 1e-15);
  EXPECT_NEAR(spectral_distance(Unitary2::identity(), Unitary2::pauli_x()), 2.0, 1e-12);
  for (double theta : {0.1, 0.5, 1.0, -0.3}) {
    EXPECT_NEAR(spectral_distance(Unitary2::identity(), Unitary2::phase(theta)),
                2.0 * std::fabs(std::sin(std::numbers::pi * theta / 2.0)), 1e-12);
  }
}

TEST(SpectralDistance, MatchesEigenvalueOracle) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_u(rng);
    const auto v = random_u(rng);
    EXPECT_NEAR(spectral_distance(u, v), largest_singular_value(diff(u, v)), 1e-9);
  }
}

TEST(DecomposeFunction, IdentityAndFinLift) {
  const UnitaryFunction id(2, std::vector<Unitary2>(4, Unitary2::identity()));
  const auto t = decompose_function(id);
  for (int c = 0; c < 4; ++c) {
    for (double v : t.component(c).table()) EXPECT_EQ(v, 0.0);
  }
  const auto g = majority_function(3);
  const auto lift = decompose_function(UnitaryFunction::from_boolean(g));
  for (Mask x = 0; x < 8; ++x) {
    EXPECT_NEAR(lift.alpha(x), 0.0, 1e-12);
    EXPECT_NEAR(lift.beta(x), 0.0, 1e-12);
    EXPECT_NEAR(lift.delta(x), 0.0, 1e-12);
    EXPECT_NEAR(lift.gamma(x), g(x) ? 1.0 : 0.0, 1e-12);
  }
}

TEST(DecomposeFunction, RandomRecomposesPointwise) {
  std::mt19937_64 rng(14);
  const auto f = oracle::random_unitary(3, rng);
  const auto t = decompose_function(f);
  for (Mask x = 0; x < 8; ++x) {
    const ZDecomp d{t.alpha(x), t.beta(x), t.gamma(x), t.delta(x)};
    EXPECT_LE(spectral_distance(z_recompose(d), f(x)), 1e-10);
  }
}

TEST(UnitaryJunta, DetectsRelevantVariables) {
  // f(x0, x1) = Z(x1 / 2): x0 is irrelevant everywhere.
  std::vector<Unitary2> table;
  for (Mask x = 0; x < 4; ++x) table.push_back(Unitary2::phase((x & 1U) ? 0.5 : 0.0));
  const UnitaryFunction f(2, std::move(table));
  const auto js = junta_structure(f, 0b11);
  EXPECT_EQ(js.r, 1);
  EXPECT_EQ(js.per_restriction[0], 0b01U);
}

TEST(ParseUnitaryFunction, BothRowFormats) {
  const auto f = parse_unitary_function("n=1\n1 0 0 0 0 0 1 0\n0 0 1 0 1 0 0 0\n");
  EXPECT_LT(entry_distance(f(0).entries(), Unitary2::identity().entries()), 1e-15);
  EXPECT_LT(entry_distance(f(1).entries(), Unitary2::pauli_x().entries()), 1e-15);
  const auto g = parse_unitary_function("n=1\n0 0 0 0\n0 0 1 0\n");
  EXPECT_LT(entry_distance(g(1).entries(), Unitary2::pauli_x().entries()), 1e-12);
}

TEST(ParseUnitaryFunction, Errors) {
  auto line_of = [](std::string_view text) {
    try {
      parse_unitary_function(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("k=1\n"), 1);
  EXPECT_EQ(line_of("n=1\n1 0 0\n0 0 0 0\n"), 2);
  EXPECT_EQ(line_of("n=1\n0 0 0 0\n2 0 0 0 0 0 1 0\n"), 3);
  EXPECT_EQ(line_of("n=1\n0 0 0 x\n0 0 0 0\n"), 2);
  EXPECT_GT(line_of("n=2\n0 0 0 0\n"), 0);
}
