#include <gtest/gtest.h>

#include "focal/albert.hpp"
#include "focal/gauss_map.hpp"

using namespace focal;

namespace {

struct Albert : ::testing::Test {
  Rng rng{27};
  PrimeField F{random_prime(rng)};
  PolyProgram f = albert_cubic_program();

  std::vector<Fp> random_point() {
    std::vector<Fp> x(27);
    for (auto& v : x) v = F.random(rng);
    return x;
  }
};

}  // namespace

TEST_F(Albert, OctonionNormIsMultiplicative) {
  for (int t = 0; t < 20; ++t) {
    Octonion u{}, v{};
    for (auto& c : u.c) c = F.random(rng);
    for (auto& c : v.c) c = F.random(rng);
    EXPECT_EQ((u * v).norm(), u.norm() * v.norm());
    EXPECT_EQ((u * v).conj(), v.conj() * u.conj());
  }
}

TEST_F(Albert, CubicIsHomogeneous) {
  EXPECT_EQ(f.arity(), 27u);
  EXPECT_EQ(f.degree(), 3u);
  EXPECT_TRUE(check_homogeneous(f, F, rng));
}

TEST_F(Albert, DiagonalNorm) {
  std::vector<Fp> x(27, F.zero());
  x[0] = F(2);
  x[1] = F(3);
  x[2] = F(7);
  EXPECT_EQ(f.eval(x), F(42));
}

TEST_F(Albert, OffDiagonalTerms) {
  std::vector<Fp> x(27, F.zero());
  x[0] = F(5);
  x[albert_x] = F(2);
  x[albert_x + 3] = F(1);
  // a n(x) only
  EXPECT_EQ(f.eval(x), F(-25));
  // x = y = z = 1 gives a b c - a - b - c + 2
  std::vector<Fp> y(27, F.zero());
  y[0] = F(1);
  y[1] = F(1);
  y[2] = F(1);
  y[albert_x] = y[albert_y] = y[albert_z] = F(1);
  EXPECT_EQ(f.eval(y), F(0));
}

TEST_F(Albert, AdjointLiesOnSingularLocus) {
  auto spec = albert_cubic();
  for (int t = 0; t < 3; ++t) {
    auto w = sample_point(spec, F, rng);
    ASSERT_TRUE(f.eval(w.coords).is_zero());
    auto g = grad<Fp>(f, std::span<const Fp>(w.coords));
    EXPECT_FALSE(std::all_of(g.begin(), g.end(), [](const Fp& v) { return v.is_zero(); }));
    auto y = albert_adjoint(f, w.coords);
    auto gy = grad<Fp>(f, std::span<const Fp>(y));
    for (auto& v : gy) EXPECT_TRUE(v.is_zero());
  }
}

TEST_F(Albert, GeneralPointIsSmooth) {
  auto x = random_point();
  auto g = grad<Fp>(f, std::span<const Fp>(x));
  EXPECT_FALSE(std::all_of(g.begin(), g.end(), [](const Fp& v) { return v.is_zero(); }));
}

TEST_F(Albert, SingularLocusDimension) {
  EXPECT_EQ(albert_singular_dim(albert_cubic(), F, rng), 16u);
}

TEST_F(Albert, GaussRank) {
  auto spec = albert_cubic();
  auto w = sample_point(spec, F, rng);
  auto fib = gauss_fiber(spec, tangent_space(spec, w.coords), F, rng);
  EXPECT_EQ(fib.r, 16u);
  EXPECT_EQ(fib.k, 9u);
}
