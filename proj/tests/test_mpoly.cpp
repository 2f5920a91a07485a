#include <gtest/gtest.h>

#include "focal/poly_program.hpp"
#include "focal/sparse_poly.hpp"
#include "focal/unipoly.hpp"

using namespace focal;

namespace {

std::vector<Fp> vec(u64 p, std::vector<i64> xs) {
  std::vector<Fp> v;
  for (auto x : xs) v.push_back(Fp::from_int(x, p));
  return v;
}

// det [[x0, x1], [x1, x2]]
PolyProgram sym2_det() {
  PolyProgram f(3);
  auto x0 = f.var(0), x1 = f.var(1), x2 = f.var(2);
  f.det(2, {x0, x1, x1, x2});
  return f;
}

// A random-ish cubic built from sums and products.
PolyProgram sample_cubic() {
  PolyProgram f(3);
  auto x0 = f.var(0), x1 = f.var(1), x2 = f.var(2);
  auto a = f.product({x0, x1, x2});
  auto b = f.power(x0, 3);
  auto c = f.product({f.constant(5), x1, x1, x2});
  f.sum({{1, a}, {-2, b}, {1, c}});
  return f;
}

// Cofactor expansion, used as an independent determinant oracle.
Fp det_cofactor(const Matrix<Fp>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Fp acc = zero_like(m(0, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<Fp> minor(n - 1, n - 1, zero_like(m(0, 0)));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    Fp term = m(0, j) * det_cofactor(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

SparsePoly random_sparse(const PrimeField& F, Rng& rng, std::size_t nvars, unsigned maxdeg) {
  SparsePoly q(nvars, F.prime());
  std::size_t terms = 1 + rng() % 6;
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent e(nvars, 0);
    unsigned d = static_cast<unsigned>(rng() % (maxdeg + 1));
    for (unsigned k = 0; k < d; ++k) ++e[rng() % nvars];
    q.add_term(e, rng.nonzero(F));
  }
  return q;
}

}  // namespace

TEST(PolyProgram, EvalExamples) {
  const u64 p = 101;
  EXPECT_EQ(sym2_det().eval(vec(p, {1, 0, 1})), Fp(1, p));

  PolyProgram pf(6);
  std::vector<NodeId> up;
  for (std::size_t i = 0; i < 6; ++i) up.push_back(pf.var(i));
  pf.pfaffian(4, up);
  // Standard symplectic form: a01 = 1, a23 = 1.
  EXPECT_EQ(pf.eval(vec(p, {1, 0, 0, 0, 0, 1})), Fp(1, p));
  // ag - be + cd
  EXPECT_EQ(pf.eval(vec(p, {2, 3, 5, 7, 11, 13})), Fp::from_int(2 * 13 - 3 * 11 + 5 * 7, p));
  EXPECT_EQ(pf.degree(), 2u);
}

TEST(PolyProgram, Homogeneity) {
  Rng rng(2);
  PrimeField F(random_prime(rng));
  auto f = sample_cubic();
  EXPECT_EQ(f.degree(), 3u);
  auto x = rng.vector(F, 3);
  std::vector<Fp> x2 = x;
  for (auto& v : x2) v *= F(2);
  EXPECT_EQ(f.eval(x2), F(8) * f.eval(x));
  EXPECT_TRUE(check_homogeneous(f, F, rng));
}

TEST(PolyProgram, GradExamples) {
  const u64 p = 101;
  EXPECT_EQ(grad(sym2_det(), vec(p, {1, 0, 1})), vec(p, {1, 0, 1}));
  PolyProgram cube(3);
  cube.power(cube.var(0), 3);
  EXPECT_EQ(grad(cube, vec(p, {1, 1, 1})), vec(p, {3, 0, 0}));
}

TEST(PolyProgram, EulerIdentities) {
  Rng rng(4);
  PrimeField F(random_prime(rng));
  auto f = sample_cubic();
  for (int i = 0; i < 20; ++i) {
    auto x = rng.vector(F, 3);
    auto g = grad(f, x);
    EXPECT_EQ(dot<Fp>(g, x), F(3) * f.eval(x));
    auto hx = hess_vec(f, x, x);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(hx[j], F(2) * g[j]);
  }
}

TEST(PolyProgram, HessVecExamples) {
  const u64 p = 101;
  PolyProgram q(3);  // x0 x2 - x1^2
  auto x0 = q.var(0), x1 = q.var(1), x2 = q.var(2);
  q.sub(q.mul(x0, x2), q.mul(x1, x1));
  EXPECT_EQ(hess_vec(q, vec(p, {1, 0, 1}), vec(p, {0, 1, 0})), vec(p, {0, -2, 0}));

  PolyProgram lin(3);
  lin.sum({{2, lin.var(0)}, {-1, lin.var(2)}});
  EXPECT_EQ(hess_vec(lin, vec(p, {1, 2, 3}), vec(p, {4, 5, 6})), vec(p, {0, 0, 0}));

  // bilinear form agrees with hess_vec
  Rng rng(9);
  PrimeField F(random_prime(rng));
  auto f = sample_cubic();
  auto x = rng.vector(F, 3), v = rng.vector(F, 3), w = rng.vector(F, 3);
  EXPECT_EQ(hess_bilinear<Fp>(f, x, v, w), dot<Fp>(hess_vec(f, x, v), w));
}

TEST(PolyProgram, GradientMatchesSymbolic) {
  Rng rng(17);
  PrimeField F(random_prime(rng));
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t nv = 1 + rng() % 4;
    auto q = random_sparse(F, rng, nv, 5);
    auto prog = q.to_program();
    for (int k = 0; k < 10; ++k) {
      auto x = rng.vector(F, nv);
      EXPECT_EQ(prog.eval(x), q(x));
      EXPECT_EQ(grad(prog, x), q.gradient(x));
    }
  }
}

TEST(PolyProgram, DeterminantMatchesCofactor) {
  Rng rng(21);
  PrimeField F(random_prime(rng));
  for (std::size_t n = 1; n <= 4; ++n) {
    PolyProgram f(n * n);
    std::vector<NodeId> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(f.var(i));
    f.det(n, e);
    for (int k = 0; k < 10; ++k) {
      auto x = rng.vector(F, n * n);
      Matrix<Fp> m(n, n, F.zero());
      for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = x[i];
      EXPECT_EQ(f.eval(x), det_cofactor(m));
      EXPECT_EQ(det_division_free(m), det_cofactor(m));
    }
  }
}

TEST(PolyProgram, PfaffianSquaredIsDeterminant) {
  Rng rng(23);
  PrimeField F(random_prime(rng));
  for (std::size_t n : {2u, 4u, 6u, 8u}) {
    for (int k = 0; k < 10; ++k) {
      Matrix<Fp> a(n, n, F.zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          a(i, j) = rng.element(F);
          a(j, i) = -a(i, j);
        }
      Fp pf = pfaffian(a);
      EXPECT_EQ(pf * pf, determinant(a));
      EXPECT_EQ(pfaffian_division_free(a), pf);
    }
  }
}

TEST(PolyProgram, SingularMatricesOverDualRings) {
  // At a singular matrix, elimination over duals gets stuck; the
  // division-free fallback must still give exact derivatives.
  Rng rng(29);
  PrimeField F(random_prime(rng));
  PolyProgram f(9);
  std::vector<NodeId> e;
  for (std::size_t i = 0; i < 9; ++i) e.push_back(f.var(i));
  f.det(3, e);
  // rank-2 matrix u1 v1^T + u2 v2^T
  auto u1 = rng.vector(F, 3), v1 = rng.vector(F, 3), u2 = rng.vector(F, 3), v2 = rng.vector(F, 3);
  std::vector<Fp> x(9, F.zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x[i * 3 + j] = u1[i] * v1[j] + u2[i] * v2[j];
  EXPECT_TRUE(f.eval(x).is_zero());
  auto g = grad(f, x);
  // gradient of det is the cofactor matrix
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Matrix<Fp> m(2, 2, F.zero());
      for (std::size_t a = 0, r = 0; a < 3; ++a) {
        if (a == i) continue;
        for (std::size_t b = 0, c = 0; b < 3; ++b) {
          if (b == j) continue;
          m(r, c++) = x[a * 3 + b];
        }
        ++r;
      }
      Fp cof = det_cofactor(m);
      if ((i + j) % 2) cof = -cof;
      EXPECT_EQ(g[i * 3 + j], cof);
    }
}

TEST(UniPoly, SquarefreeProfileExamples) {
  const u64 p = 101;
  UniPoly t1 = UniPoly::linear(Fp::from_int(-1, p), Fp(1, p));
  UniPoly t2 = UniPoly::linear(Fp(2, p), Fp(1, p));
  auto prof = squarefree_profile(t1 * t1 * t2);
  ASSERT_EQ(prof.entries.size(), 2u);
  EXPECT_EQ(prof.entries[0], (ProfileEntry{2, 1}));
  EXPECT_EQ(prof.entries[1], (ProfileEntry{1, 1}));

  // t^2 + 2 is irreducible mod 101 (-2 is a non-residue since 101 = 5 mod 8).
  UniPoly q(p, vec(p, {2, 0, 1}));
  ASSERT_FALSE(sqrt_mod_p(Fp::from_int(-2, p)));
  auto prof3 = squarefree_profile(q.pow(3));
  ASSERT_EQ(prof3.entries.size(), 1u);
  EXPECT_EQ(prof3.entries[0], (ProfileEntry{3, 2}));

  UniPoly cubic = t1 * t2 * UniPoly::linear(Fp(5, p), Fp(1, p));
  auto prof1 = squarefree_profile(cubic);
  ASSERT_EQ(prof1.entries.size(), 1u);
  EXPECT_EQ(prof1.entries[0], (ProfileEntry{1, 3}));
}

TEST(UniPoly, CharTooSmall) {
  UniPoly f(3, vec(3, {1, 0, 0, 1}));
  try {
    squarefree_profile(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CharTooSmall);
  }
}

TEST(UniPoly, SquarefreeReconstruction) {
  Rng rng(31);
  PrimeField F(random_prime(rng));
  for (int trial = 0; trial < 100; ++trial) {
    UniPoly f = UniPoly::constant(rng.nonzero(F));
    std::size_t nf = 1 + rng() % 4;
    for (std::size_t i = 0; i < nf; ++i) {
      std::size_t d = 1 + rng() % 2;
      UniPoly g(F.prime(), rng.vector(F, d));
      g = g + UniPoly::monomial(F.one(), d);
      f = f * g.pow(1 + static_cast<unsigned>(rng() % 3));
    }
    auto prof = squarefree_profile(f);
    UniPoly r = UniPoly::constant(F.one());
    for (std::size_t i = 0; i < prof.factors.size(); ++i)
      r = r * prof.factors[i].pow(prof.entries[i].multiplicity);
    EXPECT_EQ(r, f.monic());
    EXPECT_EQ(prof.total(), static_cast<unsigned>(f.degree()));
    for (std::size_t i = 0; i < prof.factors.size(); ++i)
      for (std::size_t j = i + 1; j < prof.factors.size(); ++j)
        EXPECT_EQ(gcd(prof.factors[i], prof.factors[j]).degree(), 0);
  }
}

TEST(UniPoly, SqrtModP) {
  auto r = sqrt_mod_p(Fp(2, 7));
  ASSERT_TRUE(r);
  EXPECT_TRUE(*r == Fp(3, 7) || *r == Fp(4, 7));
  EXPECT_EQ(sqrt_mod_p(Fp(0, 7)), Fp(0, 7));
  EXPECT_FALSE(sqrt_mod_p(Fp(3, 7)));

  Rng rng(37);
  PrimeField F(random_prime(rng));
  for (int i = 0; i < 200; ++i) {
    Fp a = rng.element(F);
    auto s = sqrt_mod_p(a * a);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s * *s, a * a);
  }
}

TEST(UniPoly, RootsModP) {
  Rng rng(41);
  PrimeField F(random_prime(rng));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Fp> rs = rng.vector(F, 3);
    UniPoly f = UniPoly::constant(rng.nonzero(F));
    for (auto& r : rs) f = f * UniPoly::linear(-r, F.one());
    f = f * UniPoly(F.prime(), {F.one(), F.zero(), F.one()});  // maybe irreducible extra factor
    auto found = roots_mod_p(f, rng);
    for (auto& r : rs) EXPECT_NE(std::find(found.begin(), found.end(), r), found.end());
    for (auto& r : found) EXPECT_TRUE(f(r).is_zero());
  }
}

TEST(SparsePoly, QuadricRank) {
  const u64 p = 101;
  SparsePoly q(3, p);
  q.add_term({1, 0, 1}, Fp(1, p));
  q.add_term({0, 2, 0}, Fp::from_int(-1, p));
  EXPECT_EQ(quadric_rank(q), 3u);
  SparsePoly s(3, p);
  s.add_term({2, 0, 0}, Fp(1, p));
  EXPECT_EQ(quadric_rank(s), 1u);
}
