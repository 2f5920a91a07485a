#pragma once

// Embedded tangent spaces, Gauss fibres and Gauss rank at sampled points.
//
// The fibre through x is the kernel of the second fundamental form:
//   { v in T_x : v^T H(g_i)(x) w = 0 for every generator g_i, w in T_x }.
// Routines are templated on the coefficient ring and also run over dual numbers.

#include <optional>
#include <span>
#include <vector>

#include "focal/dual.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/linalg.hpp"
#include "focal/poly_program.hpp"
#include "focal/rng.hpp"
#include "focal/varieties.hpp"

namespace focal {

struct TangentFrame {
  std::vector<Fp> point;
  Matrix<Fp> jacobian;
  Matrix<Fp> tangent;  // canonical kernel basis of the Jacobian, n+1 rows
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;  // n
};

struct GaussFiber {
  Matrix<Fp> basis;  // reduced row-echelon, k+1 rows, contains the point
  std::vector<std::size_t> pivots;
  std::size_t k = 0;
  std::size_t r = 0;
  TangentFrame frame;
};

struct FiberCheckCounts {
  int on_variety = 10;
  int tangent_constancy = 5;
};

template <class R>
Matrix<R> jacobian_at(const VarietySpec& spec, std::span<const R> x) {
  Matrix<R> j(0, x.size(), zero_like(x[0]));
  for (auto& g : spec.generators) j.append_row(grad<R>(g, x));
  return j;
}

/// Canonical kernel basis of the Jacobian over R.
template <class R>
Matrix<R> tangent_basis(const VarietySpec& spec, std::span<const R> x) {
  Matrix<R> j = jacobian_at<R>(spec, x);
  if constexpr (std::is_same_v<R, Fp>)
    return rank_and_kernel(j).kernel;
  else
    return dual_rank_kernel(j);
}

inline TangentFrame tangent_space(const VarietySpec& spec, std::span<const Fp> x,
                                  std::optional<std::size_t> expected_dim = std::nullopt) {
  TangentFrame f;
  f.point.assign(x.begin(), x.end());
  f.ambient_dim = spec.ambient_dim;
  f.jacobian = jacobian_at<Fp>(spec, x);
  auto rk = rank_and_kernel(f.jacobian);
  f.tangent = std::move(rk.kernel);
  f.dim = f.tangent.rows() - 1;
  if (expected_dim && f.dim != *expected_dim)
    throw Error(ErrorKind::SingularSamplePoint,
                "tangent space has dimension " + std::to_string(f.dim) + ", expected " +
                    std::to_string(*expected_dim));
  for (auto& v : mat_vec<Fp>(f.jacobian, std::span<const Fp>(f.point)))
    if (!v.is_zero()) throw Error(ErrorKind::SingularSamplePoint, "sample point is not on the variety");
  return f;
}

inline TangentFrame tangent_space(const VarietySpec& spec, const std::vector<Fp>& x,
                                  std::optional<std::size_t> expected_dim = std::nullopt) {
  return tangent_space(spec, std::span<const Fp>(x), expected_dim);
}

/// Second fundamental form system: rows (generator i, tangent b), columns
/// tangent a, entry v_a^T H(g_i)(x) v_b.
template <class R>
Matrix<R> second_fundamental_system(const VarietySpec& spec, std::span<const R> x, const Matrix<R>& tangent) {
  const std::size_t m = tangent.rows();
  const R zero = zero_like(x[0]);
  Matrix<R> sys(spec.generators.size() * m, m, zero);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto& g = spec.generators[i];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        R h = hess_bilinear<R>(g, x, tangent.row(a), tangent.row(b));
        sys(i * m + b, a) = h;
        sys(i * m + a, b) = h;
      }
  }
  return sys;
}

/// Reduced row-echelon basis of the Gauss fibre through x over R.
template <class R>
Echelon<R> fiber_echelon(const VarietySpec& spec, std::span<const R> x, const Matrix<R>& tangent) {
  Matrix<R> sys = second_fundamental_system<R>(spec, x, tangent);
  Matrix<R> coeffs;
  if constexpr (std::is_same_v<R, Fp>)
    coeffs = rank_and_kernel(sys).kernel;
  else
    coeffs = dual_rank_kernel(sys);
  if (coeffs.rows() == 0) throw Error(ErrorKind::FiberVerificationFailed, "empty fibre");
  Matrix<R> fib = mat_mul(coeffs, tangent);
  auto e = echelonize(std::move(fib));
  if (!e.exact || e.rank() != coeffs.rows())
    throw Error(ErrorKind::DegeneratePivot, "fibre basis lost rank over the coefficient ring");
  Matrix<R> trimmed(0, e.reduced.cols(), zero_like(x[0]));
  for (std::size_t i = 0; i < e.rank(); ++i) trimmed.append_row(e.reduced.row(i));
  e.reduced = std::move(trimmed);
  return e;
}

/// Point of the linear space spanned by the rows of `basis` with
/// coefficients t.
inline std::vector<Fp> point_on(const Matrix<Fp>& basis, std::span<const Fp> t) {
  return vec_mat<Fp>(t, basis);
}

/// Checks that the fibre lies in X and that the tangent space is constant
/// along it, at random points.
inline void verify_fiber(const VarietySpec& spec, const GaussFiber& fib, const PrimeField& F, Rng& rng,
                         const FiberCheckCounts& counts = {}) {
  for (int s = 0; s < counts.on_variety; ++s) {
    auto y = point_on(fib.basis, rng.vector(F, fib.k + 1));
    for (auto& g : spec.generators)
      if (!g.eval(y).is_zero())
        throw Error(ErrorKind::FiberVerificationFailed, "fibre leaves the variety");
  }
  for (int s = 0; s < counts.tangent_constancy; ++s) {
    auto y = point_on(fib.basis, rng.vector(F, fib.k + 1));
    Matrix<Fp> ty = tangent_basis<Fp>(spec, std::span<const Fp>(y));
    if (!same_row_space(ty, fib.frame.tangent))
      throw Error(ErrorKind::FiberVerificationFailed, "tangent space not constant along the fibre");
  }
}

inline GaussFiber gauss_fiber(const VarietySpec& spec, const TangentFrame& frame, const PrimeField& F, Rng& rng,
                              const FiberCheckCounts& counts = {}) {
  GaussFiber fib;
  auto e = fiber_echelon<Fp>(spec, std::span<const Fp>(frame.point), frame.tangent);
  fib.basis = std::move(e.reduced);
  fib.pivots = std::move(e.pivots);
  fib.k = fib.basis.rows() - 1;
  fib.r = frame.dim - fib.k;
  fib.frame = frame;
  Matrix<Fp> single(0, frame.point.size(), F.zero());
  single.append_row(frame.point);
  if (!row_space_contains(fib.basis, single))
    throw Error(ErrorKind::FiberVerificationFailed, "fibre does not contain its base point");
  verify_fiber(spec, fib, F, rng, counts);
  return fib;
}

/// Rank of v -> H(f)(x) v modulo grad f(x), on the tangent space: the Gauss
/// rank of a hypersurface computed without forming the fibre.
inline std::size_t hypersurface_gauss_rank(const PolyProgram& f, const TangentFrame& frame) {
  const auto& x = frame.point;
  auto g = grad<Fp>(f, std::span<const Fp>(x));
  Matrix<Fp> images(0, x.size(), zero_like(x[0]));
  images.append_row(g);
  for (std::size_t a = 0; a < frame.tangent.rows(); ++a)
    images.append_row(hess_vec<Fp>(f, std::span<const Fp>(x), frame.tangent.row(a)));
  return rank(images) - 1;
}

/// Codimension of a rank-locus singular descriptor in X.
inline std::optional<std::size_t> fiber_codim_data(const VarietySpec& spec, std::size_t dim_x,
                                                   const PrimeField& F, Rng& rng) {
  if (!spec.singular) return std::nullopt;
  const VarietySpec& sing = *spec.singular;
  if (!sing.rank_locus) return std::nullopt;
  std::size_t dim_sing = variety_dim(sing, F, rng);
  return dim_x - dim_sing;
}

}  // namespace focal
