#include <gtest/gtest.h>

#include "focal/hyperband.hpp"

using namespace focal;

struct HyperbandTest : ::testing::Test {
  Rng rng{314};
  PrimeField F{random_prime(rng)};
};

TEST_F(HyperbandTest, CentreLineContainsPredictor) {
  auto fam = hyperband_family(F, rng);
  EXPECT_EQ(rank(fam.chart.center), 2u);
  Matrix<Fp> x(0, 7, F.zero());
  x.append_row(fam.predictor);
  EXPECT_TRUE(row_space_contains(fam.chart.center, x));
  EXPECT_EQ(rank(fam.band.tangent_plus_image()), 4u);
  EXPECT_EQ(fam.chart.r(), 4u);
}

TEST_F(HyperbandTest, SingleFocusOfMultiplicityFour) {
  auto fam = hyperband_family(F, rng);
  auto full = characteristic_matrix(fam.chart);
  EXPECT_EQ(full.rows, 4u);
  EXPECT_EQ(full.cols, 5u);
  auto m = reduce_to_image_span(full);
  ASSERT_TRUE(m);
  EXPECT_TRUE(m->square());

  auto prof = focal_profile(*m, F, rng);
  ASSERT_EQ(prof.consensus.entries.size(), 1u);
  EXPECT_EQ(prof.consensus.entries[0].multiplicity, 4u);
  EXPECT_EQ(prof.consensus.entries[0].degree, 1u);

  // The non-square gcd of maximal minors gives the same divisor.
  auto gprof = focal_profile(full, F, rng, 3);
  EXPECT_EQ(gprof.consensus, prof.consensus);

  auto t = coordinates_in<Fp>(fam.chart.center, std::span<const Fp>(fam.predictor));
  ASSERT_TRUE(t);
  EXPECT_EQ(char_kernel_at_point(*m, *t), 2u);
  EXPECT_EQ(char_kernel_at_point(*m, rng.vector(F, 2)), 0u);

  // The root of the linear factor on the first line is the predictor.
  auto& [a, b] = prof.lines[0];
  const auto& f = prof.consensus.factors[0];
  Fp s = -f.coeff(0) * f.coeff(1).inv();
  auto focus = detail::line_point(a, b, s);
  Matrix<Fp> pair(0, 2, F.zero());
  pair.append_row(focus);
  pair.append_row(*t);
  EXPECT_EQ(rank(pair), 1u);
}

TEST_F(HyperbandTest, Dimensions) {
  auto fam = hyperband_family(F, rng);
  EXPECT_EQ(swept_dimension(fam.chart, F, rng), 5u);
  EXPECT_EQ(base_surface_dimension(fam.band), 2u);
}
