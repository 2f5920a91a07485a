#pragma once

// Explicit sparse multivariate polynomials over F_p. Used only for small
// objects such as reduced focal forms.

#include <cassert>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "focal/field.hpp"
#include "focal/linalg.hpp"
#include "focal/poly_program.hpp"

namespace focal {

using Exponent = std::vector<unsigned>;

/// All exponent vectors of total degree `degree` in `nvars` variables,
/// in lexicographically decreasing order.
inline std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Exponent> out;
  Exponent cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (nvars == 0) return out;
  rec(rec, 0, degree);
  return out;
}

template <class R>
R eval_monomial(const Exponent& e, std::span<const R> x) {
  R acc = one_like(x[0]);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (unsigned k = 0; k < e[i]; ++k) acc *= x[i];
  return acc;
}

class SparsePoly {
 public:
  SparsePoly(std::size_t nvars, u64 p) : nvars_(nvars), p_(p) {}

  std::size_t nvars() const { return nvars_; }
  u64 modulus() const { return p_; }
  const std::map<Exponent, Fp>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Fp& c) {
    assert(e.size() == nvars_);
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = degree();
    for (auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto k : e) s += k;
      if (s != d) return false;
    }
    return true;
  }

  template <class R>
  R eval(std::span<const R> x) const {
    assert(x.size() == nvars_);
    R acc = zero_like(x[0]);
    for (auto& [e, c] : terms_) acc += embed<R>(c) * eval_monomial<R>(e, x);
    return acc;
  }
  Fp operator()(std::span<const Fp> x) const { return eval<Fp>(x); }
  Fp operator()(const std::vector<Fp>& x) const { return eval<Fp>(std::span<const Fp>(x)); }

  SparsePoly derivative(std::size_t var) const {
    SparsePoly d(nvars_, p_);
    for (auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      --f[var];
      d.add_term(f, c * Fp::from_int(e[var], p_));
    }
    return d;
  }

  std::vector<Fp> gradient(std::span<const Fp> x) const {
    std::vector<Fp> g;
    for (std::size_t i = 0; i < nvars_; ++i) g.push_back(derivative(i).eval<Fp>(x));
    return g;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly s = a;
    for (auto& [e, c] : b.terms_) s.add_term(e, c);
    return s;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly s(a.nvars_, a.p_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        s.add_term(e, ca * cb);
      }
    return s;
  }
  friend SparsePoly operator*(const Fp& k, const SparsePoly& a) {
    SparsePoly s(a.nvars_, a.p_);
    for (auto& [e, c] : a.terms_) s.add_term(e, k * c);
    return s;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  /// Symmetric Gram matrix of a quadratic form: q(t) = t^T S t.
  Matrix<Fp> quadratic_form_matrix() const {
    const Fp half = Fp(2, p_).inv();
    Matrix<Fp> s(nvars_, nvars_, Fp(0, p_));
    for (auto& [e, c] : terms_) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
      assert(idx.size() == 2);
      if (idx[0] == idx[1]) {
        s(idx[0], idx[0]) += c;
      } else {
        s(idx[0], idx[1]) += c * half;
        s(idx[1], idx[0]) += c * half;
      }
    }
    return s;
  }

  /// Compiles to a black-box program (coefficients as residues).
  PolyProgram to_program() const {
    PolyProgram prog(nvars_);
    std::vector<NodeId> vars;
    for (std::size_t i = 0; i < nvars_; ++i) vars.push_back(prog.var(i));
    std::vector<Term> terms;
    for (auto& [e, c] : terms_) {
      std::vector<NodeId> factors{prog.constant(static_cast<i64>(c.value()))};
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] > 0) factors.push_back(e[i] == 1 ? vars[i] : prog.power(vars[i], e[i]));
      terms.push_back({1, prog.product(std::move(factors))});
    }
    if (terms.empty()) terms.push_back({1, prog.constant(0)});
    prog.sum(std::move(terms));
    return prog;
  }

  friend std::ostream& operator<<(std::ostream& os, const SparsePoly& q) {
    if (q.terms_.empty()) return os << "0";
    bool first = true;
    for (auto it = q.terms_.rbegin(); it != q.terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second.signed_value();
      for (std::size_t i = 0; i < q.nvars_; ++i) {
        if (it->first[i] == 0) continue;
        os << "*t" << i;
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os;
  }

 private:
  std::size_t nvars_;
  u64 p_;
  std::map<Exponent, Fp> terms_;
};

/// Rank of the symmetric matrix of a homogeneous quadratic (p odd).
inline std::size_t quadric_rank(const SparsePoly& q) {
  assert(q.is_homogeneous() && (q.is_zero() || q.degree() == 2));
  if (q.is_zero()) return 0;
  return rank(q.quadratic_form_matrix());
}

}  // namespace focal
