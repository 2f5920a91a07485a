#pragma once

// Cubic norm of the 27-dimensional exceptional Jordan algebra of 3x3
// Hermitian octonion matrices
//
//   [ a   z   y* ]
//   [ z*  b   x  ]
//   [ y   x*  c  ]
//
// with coordinates (a, b, c, x[8], y[8], z[8]). Octonions come from three
// Cayley-Dickson doublings of the integers; over a finite field this
// algebra is always split.

#include <array>
#include <map>
#include <vector>

#include "focal/field.hpp"
#include "focal/linalg.hpp"
#include "focal/poly_program.hpp"
#include "focal/rng.hpp"
#include "focal/varieties.hpp"

namespace focal {

namespace detail {

inline std::vector<i64> cd_conj(const std::vector<i64>& u) {
  std::vector<i64> out(u.size());
  out[0] = u[0];
  for (std::size_t i = 1; i < u.size(); ++i) out[i] = -u[i];
  return out;
}

/// Cayley-Dickson product (a, b)(c, d) = (ac - d* b, da + b c*) on integer
/// vectors of length 2^level.
inline std::vector<i64> cd_mul(const std::vector<i64>& u, const std::vector<i64>& v) {
  const std::size_t n = u.size();
  if (n == 1) return {u[0] * v[0]};
  const std::size_t h = n / 2;
  std::vector<i64> a(u.begin(), u.begin() + h), b(u.begin() + h, u.end());
  std::vector<i64> c(v.begin(), v.begin() + h), d(v.begin() + h, v.end());
  auto ac = cd_mul(a, c), db = cd_mul(cd_conj(d), b), da = cd_mul(d, a), bc = cd_mul(b, cd_conj(c));
  std::vector<i64> out(n);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = ac[i] - db[i];
    out[h + i] = da[i] + bc[i];
  }
  return out;
}

/// Structure constants: e_i e_j = mult[i][j].second * e_{mult[i][j].first}.
inline std::array<std::array<std::pair<std::size_t, i64>, 8>, 8> octonion_table() {
  std::array<std::array<std::pair<std::size_t, i64>, 8>, 8> t{};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::vector<i64> ei(8, 0), ej(8, 0);
      ei[i] = 1;
      ej[j] = 1;
      auto p = cd_mul(ei, ej);
      for (std::size_t k = 0; k < 8; ++k)
        if (p[k] != 0) t[i][j] = {k, p[k]};
    }
  return t;
}

}  // namespace detail

/// Octonion arithmetic over F_p with the integer structure constants.
struct Octonion {
  std::array<Fp, 8> c;

  friend Octonion operator*(const Octonion& u, const Octonion& v) {
    static const auto table = detail::octonion_table();
    Octonion out{};
    for (auto& x : out.c) x = u.c[0] - u.c[0];
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        auto [k, s] = table[i][j];
        Fp prod = u.c[i] * v.c[j];
        out.c[k] += s > 0 ? prod : -prod;
      }
    return out;
  }
  Octonion conj() const {
    Octonion out = *this;
    for (std::size_t i = 1; i < 8; ++i) out.c[i] = -out.c[i];
    return out;
  }
  Fp norm() const {
    Fp s = c[0] - c[0];
    for (auto& x : c) s += x * x;
    return s;
  }
  Fp re() const { return c[0]; }

  friend bool operator==(const Octonion&, const Octonion&) = default;
};

/// Coordinate layout: a, b, c, then x, y, z with 8 entries each.
inline constexpr std::size_t albert_x = 3, albert_y = 11, albert_z = 19;

/// N = abc - a n(x) - b n(y) - c n(z) + 2 Re((xy)z).
inline PolyProgram albert_cubic_program() {
  PolyProgram prog(27);
  std::vector<Term> terms;
  std::vector<NodeId> v(27);
  for (std::size_t i = 0; i < 27; ++i) v[i] = prog.var(i);
  terms.push_back({1, prog.product({v[0], v[1], v[2]})});
  const std::array<std::pair<std::size_t, std::size_t>, 3> diag_block{
      {{0, albert_x}, {1, albert_y}, {2, albert_z}}};
  for (auto [d, off] : diag_block) {
    std::vector<Term> sq;
    for (std::size_t i = 0; i < 8; ++i) sq.push_back({1, prog.power(v[off + i], 2)});
    terms.push_back({-1, prog.product({v[d], prog.sum(std::move(sq))})});
  }
  // Re((xy)z) = sum over i, j of s_ij x_i y_j z_k where e_i e_j = s_ij e_k and
  // Re(e_k e_l) is +1 for k = l = 0, -1 for k = l > 0.
  const auto table = detail::octonion_table();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      auto [k, s] = table[i][j];
      const i64 re = k == 0 ? 1 : -1;
      terms.push_back({2 * s * re, prog.product({v[albert_x + i], v[albert_y + j], v[albert_z + k]})});
    }
  prog.set_output(prog.sum(std::move(terms)));
  return prog;
}

/// Hypersurface spec of the cubic norm; its singular locus (the
/// 16-dimensional variety of rank-one elements) is detected through the
/// vanishing gradient.
inline VarietySpec albert_cubic() { return hypersurface_spec(albert_cubic_program(), "severi-16"); }

/// Adjoint of a point: the gradient reshaped so that, for a rank-two
/// element, it is a rank-one element (a point of the singular locus).
inline std::vector<Fp> albert_adjoint(const PolyProgram& f, std::span<const Fp> x) {
  auto g = grad<Fp>(f, x);
  const Fp half = Fp::from_int(2, x[0].modulus()).inv();
  for (std::size_t i = 3; i < g.size(); ++i) g[i] *= half;
  return g;
}

/// Dimension of the singular locus from adjoints of sampled points: the
/// partial derivatives cut it out, so its tangent space at y is the kernel
/// of the Hessian.
inline std::size_t albert_singular_dim(const VarietySpec& spec, const PrimeField& F, Rng& rng, int trials = 3) {
  const auto& f = spec.generators[0];
  std::map<std::size_t, int> votes;
  for (int t = 0; t < trials; ++t) {
    auto w = sample_point(spec, F, rng);
    auto y = albert_adjoint(f, w.coords);
    Matrix<Fp> hess(0, y.size(), F.zero());
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::vector<Fp> e(y.size(), F.zero());
      e[i] = F.one();
      hess.append_row(hess_vec<Fp>(f, std::span<const Fp>(y), std::span<const Fp>(e)));
    }
    votes[spec.ambient_dim - rank(hess)]++;
  }
  for (auto& [d, n] : votes)
    if (2 * n > trials) return d;
  throw Error(ErrorKind::InconsistentDim, "singular locus dimension trials disagree");
}

}  // namespace focal
