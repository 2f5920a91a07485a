#pragma once

// Characteristic matrices of first-order families of linear spaces, focal
// divisors on the centre fibre, their multiplicity structure, and recovery of
// the reduced focal form as an explicit polynomial.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "focal/dual.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/gauss_map.hpp"
#include "focal/linalg.hpp"
#include "focal/poly_program.hpp"
#include "focal/rng.hpp"
#include "focal/sparse_poly.hpp"
#include "focal/unipoly.hpp"
#include "focal/varieties.hpp"

namespace focal {

/// First-order family of (k+1)-dimensional linear spaces through the centre
/// rowspan(A): the j-th curve is rowspan(A + eps B_j).
struct FamilyChart {
  Matrix<Fp> center;
  std::vector<std::size_t> pivots;
  std::vector<Matrix<Fp>> deformations;
  /// Tangent directions w_j that generated the deformations (Gauss fibre
  /// families only).
  Matrix<Fp> directions;

  std::size_t k() const { return center.rows() - 1; }
  std::size_t r() const { return deformations.size(); }
};

/// r x s matrix of linear forms in t_0..t_k.
struct CharMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nvars = 0;
  /// Coefficient of t_a in entry (j, l) is coeff[(j * cols + l) * nvars + a].
  std::vector<Fp> coeff;

  bool square() const { return rows == cols; }
  Fp& at(std::size_t j, std::size_t l, std::size_t a) { return coeff[(j * cols + l) * nvars + a]; }
  const Fp& at(std::size_t j, std::size_t l, std::size_t a) const { return coeff[(j * cols + l) * nvars + a]; }

  template <class R>
  Matrix<R> eval(std::span<const R> t) const {
    Matrix<R> m(rows, cols, zero_like(t[0]));
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t l = 0; l < cols; ++l) {
        R acc = zero_like(t[0]);
        for (std::size_t a = 0; a < nvars; ++a) {
          const Fp& c = at(j, l, a);
          if (!c.is_zero()) acc += embed<R>(c) * t[a];
        }
        m(j, l) = acc;
      }
    return m;
  }
  Matrix<Fp> operator()(std::span<const Fp> t) const { return eval<Fp>(t); }
  Matrix<Fp> operator()(const std::vector<Fp>& t) const { return eval<Fp>(std::span<const Fp>(t)); }

  /// Coefficient matrix of t_a.
  Matrix<Fp> slice(std::size_t a) const {
    Matrix<Fp> m(rows, cols, coeff.front());
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t l = 0; l < cols; ++l) m(j, l) = at(j, l, a);
    return m;
  }
};

enum class Verdict { Pass, Fail, Skipped };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

struct BoundCheck {
  std::string name;
  Verdict verdict = Verdict::Skipped;
};

struct ContainmentResult {
  Verdict verdict = Verdict::Skipped;
  std::size_t points_checked = 0;
  std::size_t witnesses_checked = 0;
  std::string detail;
  std::vector<Fp> offending_point;
};

struct FocalProfile {
  /// Pattern shared by all lines; the factors are those of the first line.
  MultiplicityProfile consensus;
  unsigned degree = 0;
  /// Lines a + s b in fibre coordinates and the focal polynomial on each.
  std::vector<std::pair<std::vector<Fp>, std::vector<Fp>>> lines;
  std::vector<UniPoly> restrictions;
};

struct FocalReport {
  std::size_t ambient_dim = 0;
  std::size_t dim_x = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  std::optional<std::size_t> c;
  unsigned focal_degree = 0;
  MultiplicityProfile profile;
  unsigned mu = 0;
  unsigned reduced_degree = 0;
  std::optional<SparsePoly> reduced_form;
  std::string extraction_note;
  std::optional<std::size_t> quadric_rank;
  ContainmentResult containment;
  std::vector<BoundCheck> bounds;
  std::optional<std::size_t> focus_kernel_dim;
};

namespace detail {

inline std::vector<Fp> line_point(std::span<const Fp> a, std::span<const Fp> b, const Fp& s) {
  std::vector<Fp> y(a.size(), s);
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] + s * b[i];
  return y;
}

/// Restriction of a black-box polynomial of degree <= d to the line a + s b.
inline UniPoly restrict_to_line(const std::function<Fp(std::span<const Fp>)>& f, std::span<const Fp> a,
                                std::span<const Fp> b, unsigned d) {
  const u64 p = a[0].modulus();
  std::vector<std::pair<Fp, Fp>> pts;
  for (unsigned i = 0; i <= d; ++i) {
    Fp s = Fp::from_int(static_cast<i64>(i), p);
    auto y = line_point(a, b, s);
    pts.emplace_back(s, f(y));
  }
  return lagrange_interpolate(pts, d);
}

inline Fp det_fp(const Matrix<Fp>& m) { return *det_by_elimination(m); }

}  // namespace detail

/// Deforms the fibre through x along r random tangent directions, computing
/// each neighbouring fibre to first order over dual numbers.
inline FamilyChart fiber_family_chart(const VarietySpec& spec, const GaussFiber& fiber, const PrimeField& F,
                                      Rng& rng, int attempts = 16) {
  if (fiber.k == 0)
    throw Error(ErrorKind::NotDegenerate, "Gauss map is finite at the sample point (point fibres)");
  const auto& x = fiber.frame.point;
  const auto& tangent = fiber.frame.tangent;
  const std::size_t m = tangent.rows();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    FamilyChart chart;
    chart.center = fiber.basis;
    chart.pivots = fiber.pivots;
    chart.directions = Matrix<Fp>(0, x.size(), F.zero());
    for (std::size_t j = 0; j < fiber.r; ++j)
      chart.directions.append_row(vec_mat<Fp>(std::span<const Fp>(rng.vector(F, m)), tangent));
    Matrix<Fp> stacked = chart.center;
    for (std::size_t j = 0; j < fiber.r; ++j) stacked.append_row(chart.directions.row(j));
    if (rank(stacked) != m) continue;
    try {
      for (std::size_t j = 0; j < fiber.r; ++j) {
        std::vector<DualScalar> xe;
        xe.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xe.emplace_back(x[i], chart.directions(j, i));
        std::span<const DualScalar> xs(xe);
        auto te = tangent_basis<DualScalar>(spec, xs);
        if (te.rows() != m) throw Error(ErrorKind::DegeneratePivot, "tangent dimension jumps");
        auto e = fiber_echelon<DualScalar>(spec, xs, te);
        if (e.pivots != chart.pivots) throw Error(ErrorKind::DegeneratePivot, "fibre pivots moved");
        Matrix<Fp> b(e.reduced.rows(), e.reduced.cols(), F.zero());
        for (std::size_t r = 0; r < b.rows(); ++r)
          for (std::size_t c = 0; c < b.cols(); ++c) {
            if (e.reduced(r, c).unit() != chart.center(r, c))
              throw Error(ErrorKind::DegeneratePivot, "deformed fibre has a different centre");
            b(r, c) = e.reduced(r, c).slope();
          }
        chart.deformations.push_back(std::move(b));
      }
      return chart;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DegeneratePivot) throw;
    }
  }
  throw Error(ErrorKind::ChartFailed, "could not build a fibre family chart");
}

/// Characteristic matrix of a Gauss fibre family: coordinates of t.B_j in the
/// basis w_1..w_r of T_x / Lambda. Components outside T_x must vanish.
inline CharMatrix characteristic_matrix(const FamilyChart& chart, const TangentFrame& frame) {
  const std::size_t k1 = chart.center.rows(), r = chart.r();
  if (chart.directions.rows() != r)
    throw Error(ErrorKind::InvalidArgument, "Gauss characteristic matrix needs the chart directions");
  Matrix<Fp> basis = chart.center;
  for (std::size_t j = 0; j < r; ++j) basis.append_row(chart.directions.row(j));
  if (basis.rows() != frame.tangent.rows() || !same_row_space(basis, frame.tangent))
    throw Error(ErrorKind::NonVanishingTransversalComponent, "chart directions do not span the tangent space");
  CharMatrix m;
  m.rows = m.cols = r;
  m.nvars = k1;
  m.coeff.assign(r * r * k1, chart.center(0, 0) - chart.center(0, 0));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t a = 0; a < k1; ++a) {
      auto coords = coordinates_in<Fp>(basis, chart.deformations[j].row(a));
      if (!coords)
        throw Error(ErrorKind::NonVanishingTransversalComponent,
                    "deformation leaves the tangent space (direction " + std::to_string(j) + ")");
      for (std::size_t l = 0; l < r; ++l) m.at(j, l, a) = (*coords)[k1 + l];
    }
  return m;
}

/// Characteristic matrix of an arbitrary family: t.B_j modulo the centre,
/// in the coordinates of the non-pivot columns, r x (N - k).
inline CharMatrix characteristic_matrix(const FamilyChart& chart) {
  const auto& a = chart.center;
  const std::size_t k1 = a.rows(), ncols = a.cols(), r = chart.r();
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : chart.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  CharMatrix m;
  m.rows = r;
  m.cols = free_cols.size();
  m.nvars = k1;
  const Fp zero = a(0, 0) - a(0, 0);
  m.coeff.assign(m.rows * m.cols * k1, zero);
  for (std::size_t j = 0; j < r; ++j) {
    const auto& b = chart.deformations[j];
    for (std::size_t row = 0; row < k1; ++row)
      for (std::size_t l = 0; l < free_cols.size(); ++l) {
        const std::size_t c = free_cols[l];
        Fp v = b(row, c);
        for (std::size_t i = 0; i < k1; ++i) v -= b(row, chart.pivots[i]) * a(i, c);
        m.at(j, l, row) = v;
      }
  }
  return m;
}

/// When all entry coefficient vectors span an r-dimensional subspace of the
/// s columns, rewrites the matrix in a basis of that subspace (square).
inline std::optional<CharMatrix> reduce_to_image_span(const CharMatrix& m) {
  if (m.square()) return m;
  Matrix<Fp> vecs(0, m.cols, m.coeff.front());
  for (std::size_t j = 0; j < m.rows; ++j)
    for (std::size_t a = 0; a < m.nvars; ++a) {
      std::vector<Fp> v(m.cols, m.coeff.front());
      for (std::size_t l = 0; l < m.cols; ++l) v[l] = m.at(j, l, a);
      vecs.append_row(v);
    }
  auto e = echelonize(vecs);
  if (e.rank() != m.rows) return std::nullopt;
  CharMatrix sq;
  sq.rows = sq.cols = m.rows;
  sq.nvars = m.nvars;
  sq.coeff.assign(m.rows * m.rows * m.nvars, m.coeff.front() - m.coeff.front());
  // In reduced echelon form the coordinates of a span member are its
  // entries at the pivot columns.
  for (std::size_t j = 0; j < m.rows; ++j)
    for (std::size_t a = 0; a < m.nvars; ++a)
      for (std::size_t l = 0; l < m.rows; ++l) sq.at(j, l, a) = m.at(j, e.pivots[l], a);
  return sq;
}

/// Focal polynomial restricted to the line a + s b: det in the square case,
/// gcd of maximal minors otherwise.
inline UniPoly focal_on_line(const CharMatrix& m, std::span<const Fp> a, std::span<const Fp> b) {
  if (m.square()) {
    return detail::restrict_to_line([&](std::span<const Fp> t) { return detail::det_fp(m(t)); }, a, b,
                                    static_cast<unsigned>(m.rows));
  }
  std::vector<std::vector<std::size_t>> subsets;
  detail::combinations(m.cols, m.rows, subsets);
  const u64 p = a[0].modulus();
  UniPoly g(p);
  for (auto& cols : subsets) {
    auto minor = [&](std::span<const Fp> t) {
      Matrix<Fp> full = m(t);
      Matrix<Fp> sub(m.rows, m.rows, full(0, 0));
      for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t l = 0; l < m.rows; ++l) sub(i, l) = full(i, cols[l]);
      return detail::det_fp(sub);
    };
    g = gcd(g, detail::restrict_to_line(minor, a, b, static_cast<unsigned>(m.rows)));
  }
  return g;
}

/// Multiplicity profile of the focal divisor along random lines of the
/// fibre; all non-degenerate lines must agree.
inline FocalProfile focal_profile(const CharMatrix& m, const PrimeField& F, Rng& rng, int lines = 8,
                                  int resamples = 16) {
  FocalProfile out;
  std::optional<unsigned> expected;
  if (m.square()) expected = static_cast<unsigned>(m.rows);
  for (int line = 0; line < lines; ++line) {
    bool done = false;
    for (int attempt = 0; attempt < resamples && !done; ++attempt) {
      auto a = rng.vector(F, m.nvars), b = rng.vector(F, m.nvars);
      UniPoly g = focal_on_line(m, a, b);
      if (g.is_zero()) throw Error(ErrorKind::ChartFailed, "characteristic matrix drops rank everywhere");
      if (expected && static_cast<unsigned>(g.degree()) < *expected) continue;
      if (g.degree() == 0) {
        // No focal points on this line.
        MultiplicityProfile empty;
        if (!out.lines.empty() && !(out.consensus == empty))
          throw Error(ErrorKind::ProfileDisagreement, "a line without foci among lines with foci");
        if (out.lines.empty()) out.consensus = empty;
      } else {
        auto prof = squarefree_profile(g);
        if (!out.lines.empty() && !(prof == out.consensus))
          throw Error(ErrorKind::ProfileDisagreement, "line profiles disagree");
        if (out.lines.empty()) out.consensus = std::move(prof);
      }
      out.degree = static_cast<unsigned>(std::max(0, g.degree()));
      out.lines.emplace_back(std::move(a), std::move(b));
      out.restrictions.push_back(std::move(g));
      done = true;
    }
    if (!done) throw Error(ErrorKind::ChartFailed, "every sampled line drops degree");
  }
  return out;
}

/// Common multiplicity of a profile (the smallest one when mixed) and the
/// degree of the radical.
inline std::pair<unsigned, unsigned> multiplicity_and_reduced_degree(const MultiplicityProfile& prof) {
  if (prof.entries.empty()) return {0, 0};
  unsigned mu = prof.entries.back().multiplicity, red = 0;
  for (auto& e : prof.entries) red += e.degree;
  return {mu, red};
}

/// Value and gradient of det M at t (Jacobi's formula; M(t) must be
/// invertible).
inline std::optional<std::pair<Fp, std::vector<Fp>>> det_and_gradient(const CharMatrix& m,
                                                                       std::span<const Fp> t) {
  Matrix<Fp> mt = m(t);
  const std::size_t n = m.rows;
  Matrix<Fp> aug(n, 2 * n, mt(0, 0) - mt(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = mt(i, j);
    aug(i, n + i) = one_like(mt(0, 0));
  }
  auto e = echelonize(aug, n);
  if (e.rank() != n) return std::nullopt;
  Fp f = detail::det_fp(mt);
  std::vector<Fp> g(m.nvars, f - f);
  for (std::size_t a = 0; a < m.nvars; ++a) {
    Fp tr = f - f;
    // trace(M^{-1} M_a) = sum_{i,j} Minv(i,j) M_a(j,i)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Fp& c = m.at(j, i, a);
        if (!c.is_zero()) tr += e.reduced(i, n + j) * c;
      }
    g[a] = f * tr;
  }
  return std::pair{f, g};
}

struct ExtractionLimits {
  std::size_t max_unknowns = 2000;
  int verify_points = 10;
};

/// Recovers q with det M = c q^mu, q of the given degree, from the linear
/// conditions q grad f = mu f grad q at random points.
inline SparsePoly extract_reduced_power(const CharMatrix& m, unsigned mu, unsigned degree, const PrimeField& F,
                                        Rng& rng, const ExtractionLimits& limits = {}) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "extraction needs a square characteristic matrix");
  if (mu == 0 || degree == 0 || mu * degree != m.rows)
    throw Error(ErrorKind::ExtractionFailed, "multiplicity and degree do not factor the focal degree");
  if (F.prime() <= m.rows) throw Error(ErrorKind::CharTooSmall, "characteristic must exceed the focal degree");
  const std::size_t n = m.nvars;
  auto monos = monomials_of_degree(n, degree);
  const std::size_t u = monos.size();
  if (u > limits.max_unknowns)
    throw Error(ErrorKind::ExtractionFailed, "too many unknowns (" + std::to_string(u) + ")");
  const Fp fmu = F(static_cast<i64>(mu));
  Matrix<Fp> sys(0, u, F.zero());
  const std::size_t samples = (u + n - 1) / n + 4;
  std::size_t taken = 0, misses = 0;
  while (taken < samples) {
    auto t = rng.vector(F, n);
    bool zero_coord = false;
    for (auto& v : t) zero_coord = zero_coord || v.is_zero();
    auto fg = zero_coord ? std::nullopt : det_and_gradient(m, t);
    if (!fg) {
      if (++misses > 64) throw Error(ErrorKind::ExtractionFailed, "focal form vanishes at random points");
      continue;
    }
    auto& [f, grad_f] = *fg;
    std::vector<Fp> tinv(n, F.zero()), mv(u, F.zero());
    for (std::size_t a = 0; a < n; ++a) tinv[a] = t[a].inv();
    for (std::size_t c = 0; c < u; ++c) mv[c] = eval_monomial<Fp>(monos[c], std::span<const Fp>(t));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Fp> row(u, F.zero());
      for (std::size_t c = 0; c < u; ++c) {
        Fp dq = F(static_cast<i64>(monos[c][j])) * mv[c] * tinv[j];
        row[c] = mv[c] * grad_f[j] - fmu * f * dq;
      }
      sys.append_row(row);
    }
    ++taken;
  }
  auto rk = rank_and_kernel(sys);
  if (rk.kernel.rows() != 1)
    throw Error(ErrorKind::ExtractionFailed,
                "solution space has dimension " + std::to_string(rk.kernel.rows()) + ", expected 1");
  SparsePoly q(n, F.prime());
  for (std::size_t c = 0; c < u; ++c)
    if (!rk.kernel(0, c).is_zero()) q.add_term(monos[c], rk.kernel(0, c));
  // Normalise: leading coefficient (in monomial order) 1.
  q = q.terms().begin()->second.inv() * q;

  std::optional<Fp> scale;
  for (int i = 0; i < limits.verify_points; ++i) {
    auto t = rng.vector(F, n);
    Fp f = detail::det_fp(m(t));
    Fp qv = q(t).pow(mu);
    if (!scale) {
      if (qv.is_zero()) {
        --i;
        continue;
      }
      scale = f * qv.inv();
      if (scale->is_zero()) throw Error(ErrorKind::ExtractionFailed, "focal form vanishes identically");
    }
    if (f != *scale * qv) throw Error(ErrorKind::ExtractionFailed, "power identity fails at a random point");
  }
  return q;
}

/// Kernel dimension of M(t) acting on the family tangent space (rows).
inline std::size_t char_kernel_at_point(const CharMatrix& m, std::span<const Fp> t) {
  return m.rows - rank(m(t));
}

/// Whether y lies in the singular locus of X: the descriptor generators
/// vanish when a descriptor exists, otherwise the Jacobian rank drops below
/// the codimension.
inline bool in_singular_locus(const VarietySpec& spec, std::span<const Fp> y, std::size_t codim) {
  if (spec.singular) {
    for (auto& g : spec.singular->generators)
      if (!g.eval(y).is_zero()) return false;
    return true;
  }
  return rank(jacobian(spec, y)) < codim;
}

using FibrePredicate = std::function<Fp(std::span<const Fp>)>;
using LineRestriction = std::function<UniPoly(std::span<const Fp>, std::span<const Fp>)>;

/// Samples points of the focal divisor on random lines of the fibre and
/// checks they are singular points of X; checks that the witness summands
/// of x lie on the fibre and on the divisor.
inline ContainmentResult sing_containment(const VarietySpec& spec, const GaussFiber& fiber,
                                          const FibrePredicate& focal_value, const LineRestriction& on_line,
                                          const std::vector<std::vector<Fp>>& witnesses, const PrimeField& F,
                                          Rng& rng, std::size_t samples = 5) {
  ContainmentResult res;
  const std::size_t codim = spec.ambient_dim - fiber.frame.dim;
  const std::size_t n = fiber.k + 1;
  int attempts = 0;
  while (res.points_checked < samples) {
    if (++attempts > 256) {
      res.verdict = Verdict::Fail;
      res.detail = "no F_p-points found on the focal divisor";
      return res;
    }
    auto a = rng.vector(F, n), b = rng.vector(F, n);
    UniPoly g = on_line(a, b);
    if (g.is_zero() || g.degree() < 1) continue;
    auto roots = roots_mod_p(g, rng);
    for (auto& s : roots) {
      auto t = detail::line_point(a, b, s);
      auto y = point_on(fiber.basis, t);
      ++res.points_checked;
      if (!in_singular_locus(spec, y, codim)) {
        res.verdict = Verdict::Fail;
        res.detail = "focal point outside the singular locus";
        res.offending_point = y;
        return res;
      }
      if (res.points_checked >= samples) break;
    }
  }
  for (auto& w : witnesses) {
    auto t = coordinates_in<Fp>(fiber.basis, std::span<const Fp>(w));
    ++res.witnesses_checked;
    if (!t) {
      res.verdict = Verdict::Fail;
      res.detail = "witness summand not on the fibre";
      res.offending_point = w;
      return res;
    }
    if (!focal_value(*t).is_zero()) {
      res.verdict = Verdict::Fail;
      res.detail = "witness summand not on the focal divisor";
      res.offending_point = w;
      return res;
    }
  }
  res.verdict = Verdict::Pass;
  return res;
}

/// Containment with an extracted reduced form q.
inline ContainmentResult sing_containment(const VarietySpec& spec, const GaussFiber& fiber, const SparsePoly& q,
                                          const std::vector<std::vector<Fp>>& witnesses, const PrimeField& F,
                                          Rng& rng, std::size_t samples = 5) {
  const unsigned d = q.degree();
  return sing_containment(
      spec, fiber, [&](std::span<const Fp> t) { return q(t); },
      [&](std::span<const Fp> a, std::span<const Fp> b) {
        return detail::restrict_to_line([&](std::span<const Fp> t) { return q(t); }, a, b, d);
      },
      witnesses, F, rng, samples);
}

/// Containment using only the characteristic matrix (no explicit q): the
/// radical of the focal polynomial on each line supplies the points.
inline ContainmentResult sing_containment(const VarietySpec& spec, const GaussFiber& fiber, const CharMatrix& m,
                                          const std::vector<std::vector<Fp>>& witnesses, const PrimeField& F,
                                          Rng& rng, std::size_t samples = 5) {
  return sing_containment(
      spec, fiber, [&](std::span<const Fp> t) { return detail::det_fp(m(t)); },
      [&](std::span<const Fp> a, std::span<const Fp> b) {
        UniPoly g = focal_on_line(m, a, b);
        if (g.degree() < 1) return g;
        return squarefree_profile(g).radical(F.prime());
      },
      witnesses, F, rng, samples);
}

/// Bound checks relating mu, c and r.
inline std::vector<BoundCheck> check_bounds(const FocalReport& rep) {
  std::vector<BoundCheck> out;
  auto add = [&](std::string name, std::optional<bool> ok) {
    out.push_back({std::move(name), !ok ? Verdict::Skipped : (*ok ? Verdict::Pass : Verdict::Fail)});
  };
  const long mu = rep.mu, r = static_cast<long>(rep.r), red = rep.reduced_degree;
  std::optional<long> c;
  if (rep.c) c = static_cast<long>(*rep.c);
  add("mu_ge_c_minus_1", c ? std::optional<bool>(mu >= *c - 1) : std::nullopt);
  add("c_le_r_plus_1", c ? std::optional<bool>(*c <= r + 1) : std::nullopt);
  if (c && red > 1)
    add("nonlinear_c_le_half_r_plus_1", 2 * *c <= r + 2);
  else
    add("nonlinear_c_le_half_r_plus_1", std::nullopt);
  if (c && 2 * *c == r + 2)
    add("half_r_plus_1_pattern", (mu >= *c && red == 1) || (2 * mu == r && red == 2));
  else
    add("half_r_plus_1_pattern", std::nullopt);
  if (c && *c == r + 1)
    add("cone_when_c_eq_r_plus_1", red == 1);
  else
    add("cone_when_c_eq_r_plus_1", std::nullopt);
  return out;
}

/// Two characteristic matrices of the same fibre define proportional focal
/// forms.
inline bool focal_forms_proportional(const CharMatrix& m1, const CharMatrix& m2, const PrimeField& F, Rng& rng,
                                     int points = 5) {
  if (!m1.square() || !m2.square() || m1.nvars != m2.nvars) return false;
  std::optional<std::pair<Fp, Fp>> ref;
  for (int i = 0; i < points; ++i) {
    auto t = rng.vector(F, m1.nvars);
    Fp f1 = detail::det_fp(m1(t)), f2 = detail::det_fp(m2(t));
    if (!ref) {
      if (f1.is_zero() || f2.is_zero()) {
        --i;
        continue;
      }
      ref = std::pair{f1, f2};
      continue;
    }
    if (f1 * ref->second != f2 * ref->first) return false;
  }
  return true;
}

}  // namespace focal
