#pragma once

// A four-parameter family of lines in P^6 built from two random quadratic
// surfaces F = Q(P^2) and S = S(P^2): through each point x(u) = Q(u) of F,
// the lines inside the 3-space spanned by the tangent plane of F at x(u)
// and the corresponding point S(u).

#include <array>
#include <vector>

#include "focal/dual.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/focal_scheme.hpp"
#include "focal/linalg.hpp"
#include "focal/rng.hpp"

namespace focal {

/// Seven ternary quadrics, coefficients for u0^2, u0u1, u0u2, u1^2, u1u2, u2^2.
struct QuadraticMap {
  std::array<std::array<Fp, 6>, 7> coeff;

  static QuadraticMap random(const PrimeField& F, Rng& rng) {
    QuadraticMap q{};
    for (auto& row : q.coeff)
      for (auto& c : row) c = rng.element(F);
    return q;
  }

  /// Value at the affine point (1, u1, u2).
  template <class R>
  std::vector<R> operator()(const R& u1, const R& u2) const {
    const R one = one_like(u1);
    const std::array<R, 6> mono{one, u1, u2, u1 * u1, u1 * u2, u2 * u2};
    std::vector<R> out;
    for (auto& row : coeff) {
      R acc = zero_like(u1);
      for (std::size_t i = 0; i < 6; ++i) acc += embed<R>(row[i]) * mono[i];
      out.push_back(acc);
    }
    return out;
  }

  template <class R>
  std::vector<R> d1(const R& u1, const R& u2) const {
    const R one = one_like(u1);
    const R two = one + one;
    const std::array<R, 6> mono{zero_like(u1), one, zero_like(u1), two * u1, u2, zero_like(u1)};
    return linear(mono);
  }

  template <class R>
  std::vector<R> d2(const R& u1, const R& u2) const {
    const R one = one_like(u1);
    const R two = one + one;
    const std::array<R, 6> mono{zero_like(u1), zero_like(u1), one, zero_like(u1), u1, two * u2};
    return linear(mono);
  }

 private:
  template <class R>
  std::vector<R> linear(const std::array<R, 6>& mono) const {
    std::vector<R> out;
    for (auto& row : coeff) {
      R acc = zero_like(mono[0]);
      for (std::size_t i = 0; i < 6; ++i) acc += embed<R>(row[i]) * mono[i];
      out.push_back(acc);
    }
    return out;
  }
};

struct Hyperband {
  QuadraticMap q;
  QuadraticMap s;
  /// Direction weights: the line through x(u) has direction
  /// sum_i (c0 + s1 c1 + s2 c2)_i P_i(u) with P = (d1 Q, d2 Q, S).
  std::array<std::array<Fp, 3>, 3> c;
  /// Chart centre (u1, u2, s1, s2).
  std::array<Fp, 4> center;

  template <class R>
  Matrix<R> line(const std::array<R, 4>& p) const {
    auto x = q(p[0], p[1]);
    std::array<std::vector<R>, 3> dirs{q.d1(p[0], p[1]), q.d2(p[0], p[1]), s(p[0], p[1])};
    std::vector<R> d(7, zero_like(p[0]));
    for (std::size_t i = 0; i < 3; ++i) {
      R w = embed<R>(c[0][i]) + p[2] * embed<R>(c[1][i]) + p[3] * embed<R>(c[2][i]);
      for (std::size_t j = 0; j < 7; ++j) d[j] += w * dirs[i][j];
    }
    Matrix<R> m(0, 7, zero_like(p[0]));
    m.append_row(x);
    m.append_row(d);
    return m;
  }

  /// Span of the tangent plane of F at x(u) and S(u).
  Matrix<Fp> tangent_plus_image() const {
    Matrix<Fp> m(0, 7, center[0]);
    m.append_row(q(center[0], center[1]));
    m.append_row(q.d1(center[0], center[1]));
    m.append_row(q.d2(center[0], center[1]));
    m.append_row(s(center[0], center[1]));
    return m;
  }

  std::vector<Fp> predictor() const { return q(center[0], center[1]); }
};

struct HyperbandFamily {
  Hyperband band;
  FamilyChart chart;
  std::vector<Fp> predictor;
};

inline Hyperband random_hyperband(const PrimeField& F, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Hyperband h{QuadraticMap::random(F, rng), QuadraticMap::random(F, rng), {}, {}};
    for (auto& row : h.c)
      for (auto& v : row) v = rng.element(F);
    for (auto& v : h.center) v = rng.element(F);
    if (rank(h.tangent_plus_image()) != 4) continue;
    if (rank(h.line<Fp>(h.center)) != 2) continue;
    return h;
  }
  throw Error(ErrorKind::DegenerateSurface, "tangent plane and image point do not span a 3-space");
}

/// Chart of the line family at its centre, one deformation per parameter.
inline HyperbandFamily hyperband_family(const PrimeField& F, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    HyperbandFamily fam{random_hyperband(F, rng), {}, {}};
    const auto& h = fam.band;
    auto e0 = echelonize(h.line<Fp>(h.center));
    fam.chart.center = Matrix<Fp>(0, 7, F.zero());
    for (std::size_t i = 0; i < 2; ++i) fam.chart.center.append_row(e0.reduced.row(i));
    fam.chart.pivots = e0.pivots;
    fam.chart.directions = Matrix<Fp>(0, 7, F.zero());
    bool ok = true;
    for (std::size_t j = 0; j < 4 && ok; ++j) {
      std::array<DualScalar, 4> p;
      for (std::size_t i = 0; i < 4; ++i) p[i] = DualScalar(h.center[i], i == j ? F.one() : F.zero());
      auto e = echelonize(h.line<DualScalar>(p));
      if (!e.exact || e.pivots != fam.chart.pivots) {
        ok = false;
        break;
      }
      Matrix<Fp> b(2, 7, F.zero());
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t col = 0; col < 7; ++col) b(r, col) = e.reduced(r, col).slope();
      fam.chart.deformations.push_back(std::move(b));
    }
    if (!ok) continue;
    fam.predictor = h.predictor();
    return fam;
  }
  throw Error(ErrorKind::ChartFailed, "could not build the line family chart");
}

/// Dimension of the variety swept by the family: rank of the differential
/// of (parameters, point on the line) at a random point of the centre line,
/// minus one.
inline std::size_t swept_dimension(const FamilyChart& chart, const PrimeField& F, Rng& rng) {
  auto t = rng.vector(F, chart.center.rows());
  Matrix<Fp> span = chart.center;
  for (auto& b : chart.deformations) span.append_row(vec_mat<Fp>(std::span<const Fp>(t), b));
  return rank(span) - 1;
}

/// Dimension of F = Q(P^2) at the chart centre (Jacobian rank of the cone
/// map minus one).
inline std::size_t base_surface_dimension(const Hyperband& h) {
  Matrix<Fp> m(0, 7, h.center[0]);
  m.append_row(h.q(h.center[0], h.center[1]));
  m.append_row(h.q.d1(h.center[0], h.center[1]));
  m.append_row(h.q.d2(h.center[0], h.center[1]));
  return rank(m) - 1;
}

}  // namespace focal
