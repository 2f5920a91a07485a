#pragma once

// Black-box polynomials: straight-line programs with determinant and
// Pfaffian nodes, evaluable over F_p and every nested dual ring.
//
// High-degree forms are never expanded. Derivatives come from evaluating
// the same program over dual numbers.

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "focal/dual.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/linalg.hpp"
#include "focal/rng.hpp"

namespace focal {

/// Determinant of a square matrix over any commutative ring, without
/// division: dynamic programming over the set of used columns, O(2^n n).
template <class R>
R det_division_free(const Matrix<R>& a) {
  const std::size_t n = a.rows();
  assert(n == a.cols() && n > 0 && n < 24);
  const std::size_t states = std::size_t{1} << n;
  std::vector<R> d(states, zero_like(a(0, 0)));
  d[0] = one_like(a(0, 0));
  for (std::size_t mask = 0; mask + 1 < states; ++mask) {
    if (is_zero(d[mask])) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      if (is_zero(a(row, j))) continue;
      R term = a(row, j) * d[mask];
      if (__builtin_popcountll(mask >> (j + 1)) & 1)
        d[mask | (std::size_t{1} << j)] -= term;
      else
        d[mask | (std::size_t{1} << j)] += term;
    }
  }
  return d[states - 1];
}

template <class R>
R determinant(const Matrix<R>& a) {
  if (auto d = det_by_elimination(a)) return *d;
  return det_division_free(a);
}

/// Pfaffian by skew-symmetric elimination (Schur complement of a 2x2
/// block). Returns nullopt if a dual-ring input has no unit pivot.
template <class R>
std::optional<R> pfaffian_by_elimination(Matrix<R> a) {
  std::size_t n = a.rows();
  assert(n == a.cols());
  R pf = one_like(a(0, 0));
  if (n % 2 == 1) return zero_like(pf);
  // Work on the trailing block [off, n).
  for (std::size_t off = 0; off < n; off += 2) {
    std::size_t piv = n;
    for (std::size_t j = off + 1; j < n; ++j)
      if (is_unit(a(off, j))) {
        piv = j;
        break;
      }
    if (piv == n) {
      for (std::size_t j = off + 1; j < n; ++j)
        if (!is_zero(a(off, j))) return std::nullopt;
      return zero_like(pf);
    }
    if (piv != off + 1) {
      // Simultaneous row/column swap negates the Pfaffian.
      a.swap_rows(piv, off + 1);
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, piv), a(i, off + 1));
      pf = -pf;
    }
    const R b = a(off, off + 1);
    pf *= b;
    const R binv = inverse(b);
    for (std::size_t i = off + 2; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) += (a(off + 1, i) * a(off, j) - a(off, i) * a(off + 1, j)) * binv;
        a(j, i) = -a(i, j);
      }
  }
  return pf;
}

/// Pfaffian by memoised expansion along the first remaining index,
/// division-free, O(2^n n).
template <class R>
R pfaffian_division_free(const Matrix<R>& a) {
  const std::size_t n = a.rows();
  assert(n == a.cols() && n < 24);
  if (n == 0) return R{};
  if (n % 2 == 1) return zero_like(a(0, 0));
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<R> memo(full + 1, zero_like(a(0, 0)));
  std::vector<char> done(full + 1, 0);
  memo[0] = one_like(a(0, 0));
  done[0] = 1;
  // Only sets obtained by removing pairs containing the current minimum are
  // reachable; evaluating by increasing popcount keeps recursion out.
  std::vector<std::size_t> order;
  order.push_back(full);
  std::vector<char> queued(full + 1, 0);
  queued[full] = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t s = order[k];
    if (s == 0) continue;
    std::size_t i = static_cast<std::size_t>(__builtin_ctzll(s));
    std::size_t rest = s & ~(std::size_t{1} << i);
    for (std::size_t t = rest; t; t &= t - 1) {
      std::size_t j = static_cast<std::size_t>(__builtin_ctzll(t));
      std::size_t sub = rest & ~(std::size_t{1} << j);
      if (!queued[sub]) {
        queued[sub] = 1;
        order.push_back(sub);
      }
    }
  }
  for (std::size_t k = order.size(); k-- > 0;) {
    std::size_t s = order[k];
    if (done[s]) continue;
    std::size_t i = static_cast<std::size_t>(__builtin_ctzll(s));
    std::size_t rest = s & ~(std::size_t{1} << i);
    R acc = zero_like(a(0, 0));
    bool negative = false;
    for (std::size_t t = rest; t; t &= t - 1) {
      std::size_t j = static_cast<std::size_t>(__builtin_ctzll(t));
      std::size_t sub = rest & ~(std::size_t{1} << j);
      if (!is_zero(a(i, j)) && !is_zero(memo[sub])) {
        R term = a(i, j) * memo[sub];
        if (negative)
          acc -= term;
        else
          acc += term;
      }
      negative = !negative;
    }
    memo[s] = acc;
    done[s] = 1;
  }
  return memo[full];
}

template <class R>
R pfaffian(const Matrix<R>& a) {
  if (auto pf = pfaffian_by_elimination(a)) return *pf;
  return pfaffian_division_free(a);
}

using NodeId = std::uint32_t;

enum class NodeKind { Variable, Constant, Sum, Product, Power, Determinant, Pfaffian };

struct Term {
  i64 coeff;
  NodeId node;
};

struct Node {
  NodeKind kind = NodeKind::Constant;
  std::size_t index = 0;      // Variable
  i64 constant = 0;           // Constant
  std::vector<Term> terms;    // Sum
  std::vector<NodeId> args;   // Product; Determinant (n*n row-major); Pfaffian (upper triangle)
  unsigned exponent = 0;      // Power
  std::size_t size = 0;       // Determinant / Pfaffian matrix size
  unsigned degree = 0;
};

/// A polynomial in `arity` homogeneous coordinates given as a DAG of
/// nodes. Nodes only reference earlier nodes; the last added node (or the
/// one set with set_output) is the value of the program.
class PolyProgram {
 public:
  PolyProgram() = default;
  explicit PolyProgram(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  unsigned degree() const { return nodes_.empty() ? 0 : nodes_[output_].degree; }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  NodeId output() const { return output_; }

  NodeId var(std::size_t i) {
    if (i >= arity_) throw Error(ErrorKind::ArityError, "variable index exceeds program arity");
    Node n;
    n.kind = NodeKind::Variable;
    n.index = i;
    n.degree = 1;
    return push(std::move(n));
  }

  NodeId constant(i64 c) {
    Node n;
    n.kind = NodeKind::Constant;
    n.constant = c;
    return push(std::move(n));
  }

  /// Integer linear combination.
  NodeId sum(std::vector<Term> terms) {
    Node n;
    n.kind = NodeKind::Sum;
    for (auto& t : terms) n.degree = std::max(n.degree, nodes_.at(t.node).degree);
    n.terms = std::move(terms);
    return push(std::move(n));
  }

  NodeId add(NodeId a, NodeId b) { return sum({{1, a}, {1, b}}); }
  NodeId sub(NodeId a, NodeId b) { return sum({{1, a}, {-1, b}}); }
  NodeId neg(NodeId a) { return sum({{-1, a}}); }

  NodeId product(std::vector<NodeId> args) {
    Node n;
    n.kind = NodeKind::Product;
    for (auto a : args) n.degree += nodes_.at(a).degree;
    n.args = std::move(args);
    return push(std::move(n));
  }

  NodeId mul(NodeId a, NodeId b) { return product({a, b}); }

  NodeId power(NodeId base, unsigned e) {
    Node n;
    n.kind = NodeKind::Power;
    n.args = {base};
    n.exponent = e;
    n.degree = nodes_.at(base).degree * e;
    return push(std::move(n));
  }

  /// Determinant of an n x n matrix of nodes given row-major.
  NodeId det(std::size_t size, std::vector<NodeId> entries) {
    assert(entries.size() == size * size);
    Node n;
    n.kind = NodeKind::Determinant;
    unsigned d = 0;
    for (auto e : entries) d = std::max(d, nodes_.at(e).degree);
    n.degree = d * static_cast<unsigned>(size);
    n.size = size;
    n.args = std::move(entries);
    return push(std::move(n));
  }

  /// Pfaffian of the skew matrix whose strict upper triangle is given
  /// row-major: (0,1),(0,2),...,(0,n-1),(1,2),...
  NodeId pfaffian(std::size_t size, std::vector<NodeId> upper) {
    assert(upper.size() == size * (size - 1) / 2);
    Node n;
    n.kind = NodeKind::Pfaffian;
    unsigned d = 0;
    for (auto e : upper) d = std::max(d, nodes_.at(e).degree);
    n.degree = d * static_cast<unsigned>(size / 2);
    n.size = size;
    n.args = std::move(upper);
    return push(std::move(n));
  }

  void set_output(NodeId id) {
    assert(id < nodes_.size());
    output_ = id;
  }

  template <class R>
  R eval(std::span<const R> x) const {
    assert(x.size() == arity_ && !x.empty() && !nodes_.empty());
    const R& proto = x[0];
    std::vector<R> val;
    val.reserve(output_ + 1);
    for (NodeId id = 0; id <= output_; ++id) {
      const Node& n = nodes_[id];
      switch (n.kind) {
        case NodeKind::Variable:
          val.push_back(x[n.index]);
          break;
        case NodeKind::Constant:
          val.push_back(from_int(proto, n.constant));
          break;
        case NodeKind::Sum: {
          R acc = zero_like(proto);
          for (auto& t : n.terms) {
            if (t.coeff == 1)
              acc += val[t.node];
            else if (t.coeff == -1)
              acc -= val[t.node];
            else
              acc += from_int(proto, t.coeff) * val[t.node];
          }
          val.push_back(acc);
          break;
        }
        case NodeKind::Product: {
          R acc = one_like(proto);
          for (auto a : n.args) acc *= val[a];
          val.push_back(acc);
          break;
        }
        case NodeKind::Power: {
          R acc = one_like(proto), b = val[n.args[0]];
          for (unsigned e = n.exponent; e; e >>= 1) {
            if (e & 1) acc *= b;
            b *= b;
          }
          val.push_back(acc);
          break;
        }
        case NodeKind::Determinant: {
          Matrix<R> m(n.size, n.size, zero_like(proto));
          for (std::size_t i = 0; i < n.size; ++i)
            for (std::size_t j = 0; j < n.size; ++j) m(i, j) = val[n.args[i * n.size + j]];
          val.push_back(determinant(m));
          break;
        }
        case NodeKind::Pfaffian: {
          Matrix<R> m(n.size, n.size, zero_like(proto));
          std::size_t k = 0;
          for (std::size_t i = 0; i < n.size; ++i)
            for (std::size_t j = i + 1; j < n.size; ++j) {
              m(i, j) = val[n.args[k++]];
              m(j, i) = -m(i, j);
            }
          val.push_back(focal::pfaffian(m));
          break;
        }
      }
    }
    return val[output_];
  }

  template <class R>
  R eval(const std::vector<R>& x) const {
    return eval<R>(std::span<const R>(x));
  }

 private:
  NodeId push(Node n) {
    nodes_.push_back(std::move(n));
    output_ = static_cast<NodeId>(nodes_.size() - 1);
    return output_;
  }

  std::size_t arity_ = 0;
  std::vector<Node> nodes_;
  NodeId output_ = 0;
};

/// Gradient by one dual-number pass per coordinate.
template <class R>
std::vector<R> grad(const PolyProgram& f, std::span<const R> x) {
  const std::size_t n = x.size();
  std::vector<Dual<R>> xd;
  xd.reserve(n);
  for (auto& xi : x) xd.emplace_back(xi, zero_like(xi));
  std::vector<R> g;
  g.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    xd[j] = Dual<R>(x[j], one_like(x[j]));
    g.push_back(f.eval<Dual<R>>(xd).slope());
    xd[j] = Dual<R>(x[j], zero_like(x[j]));
  }
  return g;
}

template <class R>
std::vector<R> grad(const PolyProgram& f, const std::vector<R>& x) {
  return grad<R>(f, std::span<const R>(x));
}

/// v^T H(f)(x) w from a single evaluation over Dual<Dual<R>>.
template <class R>
R hess_bilinear(const PolyProgram& f, std::span<const R> x, std::span<const R> v,
                std::span<const R> w) {
  using D2 = Dual<Dual<R>>;
  std::vector<D2> xd;
  xd.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const R z = zero_like(x[i]);
    xd.emplace_back(Dual<R>(x[i], v[i]), Dual<R>(w[i], z));
  }
  return f.eval<D2>(xd).slope().slope();
}

/// H(f)(x) v, one nested-dual pass per coordinate.
template <class R>
std::vector<R> hess_vec(const PolyProgram& f, std::span<const R> x, std::span<const R> v) {
  using D2 = Dual<Dual<R>>;
  const std::size_t n = x.size();
  std::vector<D2> xd;
  xd.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const R z = zero_like(x[i]);
    xd.emplace_back(Dual<R>(x[i], v[i]), Dual<R>(z, z));
  }
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const R z = zero_like(x[j]);
    xd[j] = D2(Dual<R>(x[j], v[j]), Dual<R>(one_like(x[j]), z));
    out.push_back(f.eval<D2>(xd).slope().slope());
    xd[j] = D2(Dual<R>(x[j], v[j]), Dual<R>(z, z));
  }
  return out;
}

template <class R>
std::vector<R> hess_vec(const PolyProgram& f, const std::vector<R>& x, const std::vector<R>& v) {
  return hess_vec<R>(f, std::span<const R>(x), std::span<const R>(v));
}

/// Randomised homogeneity check eval(l x) = l^deg eval(x).
inline bool check_homogeneous(const PolyProgram& f, const PrimeField& F, Rng& rng, int trials = 3) {
  for (int t = 0; t < trials; ++t) {
    auto x = rng.vector(F, f.arity());
    Fp lambda = rng.nonzero(F);
    std::vector<Fp> y = x;
    for (auto& yi : y) yi *= lambda;
    if (f.eval(y) != lambda.pow(f.degree()) * f.eval(x)) return false;
  }
  return true;
}

}  // namespace focal
