#pragma once

// Rank loci of symmetric, generic and skew matrices (the Scorza and
// Severi examples and their secant varieties), custom generator-presented
// varieties, point samplers and the Jacobian dimension oracle.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/linalg.hpp"
#include "focal/poly_program.hpp"
#include "focal/rng.hpp"
#include "focal/unipoly.hpp"

namespace focal {

enum class ShapeKind { Symmetric, Generic, Skew };

inline std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Symmetric: return "symmetric";
    case ShapeKind::Generic: return "generic";
    case ShapeKind::Skew: return "skew";
  }
  return "?";
}

/// Coordinates of a matrix space: symmetric and skew use the upper
/// triangle (with / without diagonal) row-major, generic uses all entries.
struct MatrixShape {
  ShapeKind kind = ShapeKind::Generic;
  std::size_t rows = 0;
  std::size_t cols = 0;

  static MatrixShape symmetric(std::size_t n) { return {ShapeKind::Symmetric, n, n}; }
  static MatrixShape generic(std::size_t r, std::size_t c) { return {ShapeKind::Generic, r, c}; }
  static MatrixShape skew(std::size_t n) { return {ShapeKind::Skew, n, n}; }

  std::size_t coord_count() const {
    switch (kind) {
      case ShapeKind::Symmetric: return rows * (rows + 1) / 2;
      case ShapeKind::Generic: return rows * cols;
      case ShapeKind::Skew: return rows * (rows - 1) / 2;
    }
    return 0;
  }
  std::size_t ambient_dim() const { return coord_count() - 1; }

  /// Coordinate index for entry (i, j) and its sign; nullopt on the skew
  /// diagonal.
  std::optional<std::pair<std::size_t, int>> coordinate(std::size_t i, std::size_t j) const {
    switch (kind) {
      case ShapeKind::Generic:
        return std::pair{i * cols + j, 1};
      case ShapeKind::Symmetric: {
        auto a = std::min(i, j), b = std::max(i, j);
        return std::pair{a * rows - a * (a - 1) / 2 + (b - a), 1};
      }
      case ShapeKind::Skew: {
        if (i == j) return std::nullopt;
        auto a = std::min(i, j), b = std::max(i, j);
        std::size_t idx = a * rows - a * (a + 1) / 2 + (b - a - 1);
        return std::pair{idx, i < j ? 1 : -1};
      }
    }
    return std::nullopt;
  }

  template <class R>
  Matrix<R> to_matrix(std::span<const R> x) const {
    Matrix<R> m(rows, cols, zero_like(x[0]));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (auto c = coordinate(i, j)) m(i, j) = c->second > 0 ? x[c->first] : -x[c->first];
    return m;
  }

  std::vector<Fp> from_matrix(const Matrix<Fp>& m) const {
    std::vector<Fp> x(coord_count(), zero_like(m(0, 0)));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (kind != ShapeKind::Generic && j < i) continue;
        if (auto c = coordinate(i, j)) x[c->first] = m(i, j);
      }
    return x;
  }

  friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

struct RankLocus {
  MatrixShape shape;
  std::size_t rank_bound = 0;
};

struct WitnessPoint {
  std::vector<Fp> coords;
  /// Summands (points of the base variety) adding up to coords.
  std::vector<std::vector<Fp>> witnesses;
};

/// A projective variety given by generators of its ideal, with an optional
/// rank-locus presentation and an optional singular-locus descriptor.
struct VarietySpec {
  std::string name;
  std::size_t ambient_dim = 0;  // N; coordinates x0..xN
  std::vector<PolyProgram> generators;
  std::optional<RankLocus> rank_locus;
  std::shared_ptr<const VarietySpec> singular;
  /// Integer points on the variety, used when no structural sampler exists.
  std::vector<std::vector<i64>> sample_points;

  std::size_t coord_count() const { return ambient_dim + 1; }
  bool is_hypersurface() const { return generators.size() == 1; }
};

namespace detail {

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

/// Node for matrix entry (i, j) in a program whose variables are the shape
/// coordinates; negated entries are cached.
class EntryNodes {
 public:
  EntryNodes(PolyProgram& prog, const MatrixShape& shape) : prog_(prog), shape_(shape) {}

  NodeId operator()(std::size_t i, std::size_t j) {
    auto c = shape_.coordinate(i, j);
    if (!c) return zero();
    auto key = std::pair{c->first, c->second};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    NodeId v = var(c->first);
    NodeId id = c->second > 0 ? v : prog_.neg(v);
    cache_[key] = id;
    return id;
  }

 private:
  NodeId var(std::size_t idx) {
    auto key = std::pair{idx, 2};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    return cache_[key] = prog_.var(idx);
  }
  NodeId zero() {
    if (!zero_) zero_ = prog_.constant(0);
    return *zero_;
  }

  PolyProgram& prog_;
  MatrixShape shape_;
  std::map<std::pair<std::size_t, int>, NodeId> cache_;
  std::optional<NodeId> zero_;
};

}  // namespace detail

/// Size of the minors (or sub-Pfaffians) cutting out rank <= bound.
inline std::size_t minor_order(const MatrixShape& shape, std::size_t rank_bound) {
  if (shape.kind == ShapeKind::Skew) return 2 * (rank_bound / 2) + 2;
  return rank_bound + 1;
}

/// All minors of order rank_bound+1 (or sub-Pfaffians for skew shapes) as
/// black-box programs. Symmetric minors are folded: (I, J) and (J, I) give
/// the same polynomial, so only I <= J is kept.
inline std::vector<PolyProgram> rank_locus_generators(const MatrixShape& shape, std::size_t rank_bound) {
  const std::size_t k = minor_order(shape, rank_bound);
  if (k > std::min(shape.rows, shape.cols))
    throw Error(ErrorKind::InvalidArgument, "rank bound leaves no minors: the locus is the whole space");
  std::vector<PolyProgram> gens;
  std::vector<std::vector<std::size_t>> row_sets, col_sets;
  detail::combinations(shape.rows, k, row_sets);
  detail::combinations(shape.cols, k, col_sets);

  if (shape.kind == ShapeKind::Skew) {
    for (auto& s : row_sets) {
      PolyProgram prog(shape.coord_count());
      detail::EntryNodes entry(prog, shape);
      std::vector<NodeId> upper;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) upper.push_back(entry(s[a], s[b]));
      prog.pfaffian(k, upper);
      gens.push_back(std::move(prog));
    }
    return gens;
  }
  for (std::size_t ri = 0; ri < row_sets.size(); ++ri)
    for (std::size_t ci = 0; ci < col_sets.size(); ++ci) {
      if (shape.kind == ShapeKind::Symmetric && ci < ri) continue;
      PolyProgram prog(shape.coord_count());
      detail::EntryNodes entry(prog, shape);
      std::vector<NodeId> e;
      for (auto i : row_sets[ri])
        for (auto j : col_sets[ci]) e.push_back(entry(i, j));
      prog.det(k, e);
      gens.push_back(std::move(prog));
    }
  return gens;
}

/// Variety of matrices of the given shape with rank <= rank_bound. The
/// singular-locus descriptor is the next smaller rank locus.
inline VarietySpec rank_locus_spec(const MatrixShape& shape, std::size_t rank_bound, std::string name = "") {
  VarietySpec spec;
  spec.name = name.empty() ? to_string(shape.kind) + "-rank" + std::to_string(rank_bound) : std::move(name);
  spec.ambient_dim = shape.ambient_dim();
  spec.generators = rank_locus_generators(shape, rank_bound);
  spec.rank_locus = RankLocus{shape, rank_bound};
  const std::size_t step = shape.kind == ShapeKind::Skew ? 2 : 1;
  if (rank_bound > step) {
    spec.singular = std::make_shared<const VarietySpec>(
        rank_locus_spec(shape, rank_bound - step, spec.name + "/sing"));
  }
  return spec;
}

inline VarietySpec hypersurface_spec(PolyProgram f, std::string name) {
  VarietySpec spec;
  spec.name = std::move(name);
  spec.ambient_dim = f.arity() - 1;
  spec.generators.push_back(std::move(f));
  return spec;
}

/// Effective rank of the sampled points for a rank locus.
inline std::size_t target_rank(const RankLocus& locus) {
  return locus.shape.kind == ShapeKind::Skew ? 2 * (locus.rank_bound / 2) : locus.rank_bound;
}

/// Random point of exact target rank, built from rank-one (symmetric:
/// v v^T, generic: u v^T) or rank-two skew (u v^T - v u^T) summands.
inline WitnessPoint sample_rank_point(const RankLocus& locus, const PrimeField& F, Rng& rng) {
  const auto& shape = locus.shape;
  const std::size_t want = target_rank(locus);
  if (want == 0) throw Error(ErrorKind::InvalidArgument, "rank bound must be at least 1");
  const std::size_t summands = shape.kind == ShapeKind::Skew ? want / 2 : want;
  for (int attempt = 0; attempt < 16; ++attempt) {
    WitnessPoint w;
    Matrix<Fp> total(shape.rows, shape.cols, F.zero());
    for (std::size_t s = 0; s < summands; ++s) {
      auto u = rng.vector(F, shape.rows);
      auto v = shape.kind == ShapeKind::Symmetric ? u : rng.vector(F, shape.cols);
      Matrix<Fp> m(shape.rows, shape.cols, F.zero());
      for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j) {
          m(i, j) = u[i] * v[j];
          if (shape.kind == ShapeKind::Skew) m(i, j) -= v[i] * u[j];
        }
      for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j) total(i, j) += m(i, j);
      w.witnesses.push_back(shape.from_matrix(m));
    }
    if (rank(total) != want) continue;
    w.coords = shape.from_matrix(total);
    return w;
  }
  throw Error(ErrorKind::RankDeficientSample, "could not sample a point of the target rank");
}

/// A random point on a hypersurface: intersect a random line with it.
inline WitnessPoint sample_hypersurface_point(const PolyProgram& f, const PrimeField& F, Rng& rng) {
  const unsigned d = f.degree();
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto a = rng.vector(F, f.arity()), b = rng.vector(F, f.arity());
    std::vector<std::pair<Fp, Fp>> pts;
    for (unsigned i = 0; i <= d; ++i) {
      Fp s = F(i);
      std::vector<Fp> y(a.size(), F.zero());
      for (std::size_t j = 0; j < a.size(); ++j) y[j] = a[j] + s * b[j];
      pts.emplace_back(s, f.eval(y));
    }
    UniPoly g = lagrange_interpolate(pts, d);
    if (g.is_zero()) continue;
    auto roots = roots_mod_p(g, rng);
    if (roots.empty()) continue;
    const Fp s = roots[rng() % roots.size()];
    WitnessPoint w;
    for (std::size_t j = 0; j < a.size(); ++j) w.coords.push_back(a[j] + s * b[j]);
    return w;
  }
  throw Error(ErrorKind::RankDeficientSample, "no F_p-point found on random lines");
}

/// General point of the top stratum: structural sampler when available,
/// line intersection for hypersurfaces, else user-supplied points.
inline WitnessPoint sample_point(const VarietySpec& spec, const PrimeField& F, Rng& rng) {
  if (spec.rank_locus) return sample_rank_point(*spec.rank_locus, F, rng);
  if (!spec.sample_points.empty()) {
    const auto& pt = spec.sample_points[rng() % spec.sample_points.size()];
    WitnessPoint w;
    for (auto c : pt) w.coords.push_back(F(c));
    return w;
  }
  if (spec.is_hypersurface()) return sample_hypersurface_point(spec.generators[0], F, rng);
  throw Error(ErrorKind::InvalidArgument, "no point sampler for " + spec.name);
}

inline Matrix<Fp> jacobian(const VarietySpec& spec, std::span<const Fp> x) {
  Matrix<Fp> j(0, x.size(), zero_like(x[0]));
  for (auto& g : spec.generators) j.append_row(grad<Fp>(g, x));
  return j;
}

/// N - rank(Jacobian) at general sampled points, by majority over trials.
inline std::size_t variety_dim(const VarietySpec& spec, const PrimeField& F, Rng& rng, int trials = 5) {
  std::map<std::size_t, int> votes;
  for (int t = 0; t < trials; ++t) {
    auto w = sample_point(spec, F, rng);
    votes[spec.ambient_dim - rank(jacobian(spec, w.coords))]++;
  }
  for (auto& [dim, count] : votes)
    if (2 * count > trials) return dim;
  throw Error(ErrorKind::InconsistentDim, "dimension trials disagree for " + spec.name);
}

}  // namespace focal
