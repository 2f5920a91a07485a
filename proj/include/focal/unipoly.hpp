#pragma once

// Dense univariate polynomials over F_p: interpolation, gcd, squarefree
// decomposition and root finding.

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/rng.hpp"

namespace focal {

class UniPoly {
 public:
  explicit UniPoly(u64 p) : p_(p) {}
  UniPoly(u64 p, std::vector<Fp> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Fp& a) { return UniPoly(a.modulus(), {a}); }
  static UniPoly monomial(const Fp& a, std::size_t deg) {
    std::vector<Fp> c(deg + 1, zero_like(a));
    c[deg] = a;
    return UniPoly(a.modulus(), std::move(c));
  }
  static UniPoly linear(const Fp& c0, const Fp& c1) { return UniPoly(c0.modulus(), {c0, c1}); }

  u64 modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Fp>& coeffs() const { return c_; }
  Fp coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp(0, p_); }
  Fp leading() const { return c_.empty() ? Fp(0, p_) : c_.back(); }

  Fp operator()(const Fp& t) const {
    Fp acc(0, p_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    Fp li = leading().inv();
    std::vector<Fp> c = c_;
    for (auto& x : c) x *= li;
    return UniPoly(p_, std::move(c));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(p_);
    std::vector<Fp> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Fp::from_int(static_cast<i64>(i), p_));
    return UniPoly(p_, std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()), Fp(0, a.p_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(a.p_, std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()), Fp(0, a.p_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UniPoly(a.p_, std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.p_);
    std::vector<Fp> c(a.c_.size() + b.c_.size() - 1, Fp(0, a.p_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(a.p_, std::move(c));
  }
  friend UniPoly operator*(const Fp& s, const UniPoly& a) {
    std::vector<Fp> c = a.c_;
    for (auto& x : c) x *= s;
    return UniPoly(a.p_, std::move(c));
  }

  /// Quotient and remainder; divisor must be nonzero.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    assert(!b.is_zero());
    if (a.degree() < b.degree()) return {UniPoly(a.p_), a};
    std::vector<Fp> r = a.c_;
    std::vector<Fp> q(a.c_.size() - b.c_.size() + 1, Fp(0, a.p_));
    const Fp li = b.leading().inv();
    for (std::size_t i = q.size(); i-- > 0;) {
      Fp f = r[i + b.c_.size() - 1] * li;
      q[i] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] -= f * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {UniPoly(a.p_, std::move(q)), UniPoly(a.p_, std::move(r))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  UniPoly pow(unsigned e) const {
    UniPoly r = UniPoly::constant(Fp(1, p_));
    UniPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& a) {
    if (a.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i].is_zero()) continue;
      if (!first) os << " + ";
      os << a.c_[i].signed_value();
      if (i > 0) os << "*t^" << i;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  u64 p_;
  std::vector<Fp> c_;
};

/// Monic gcd (zero if both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
inline UniPoly powmod(const UniPoly& base, u64 e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(Fp(1, base.modulus())) % m;
  UniPoly b = base % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

/// Unique polynomial of degree <= degree_bound through the given points.
inline UniPoly lagrange_interpolate(const std::vector<std::pair<Fp, Fp>>& points,
                                    std::size_t degree_bound) {
  if (points.size() < degree_bound + 1)
    throw Error(ErrorKind::InvalidArgument, "interpolation needs degree_bound+1 points");
  const u64 p = points[0].first.modulus();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw Error(ErrorKind::DuplicateAbscissa, "repeated abscissa in interpolation data");

  // Newton divided differences, then expand the Newton form.
  const std::size_t n = points.size();
  std::vector<Fp> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

  UniPoly result(p);
  for (std::size_t i = n; i-- > 0;) {
    result = result * UniPoly::linear(-points[i].first, Fp(1, p)) + UniPoly::constant(dd[i]);
  }
  if (result.degree() > static_cast<int>(degree_bound))
    throw Error(ErrorKind::InvalidArgument, "interpolation data does not fit the degree bound");
  return result;
}

struct ProfileEntry {
  unsigned multiplicity = 0;
  unsigned degree = 0;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// Squarefree decomposition of a univariate polynomial, grouped by
/// multiplicity. `factors[i]` is the monic product of all irreducible
/// factors with multiplicity entries[i].multiplicity.
struct MultiplicityProfile {
  std::vector<ProfileEntry> entries;  // sorted by decreasing multiplicity
  std::vector<UniPoly> factors;

  unsigned total() const {
    unsigned t = 0;
    for (auto& e : entries) t += e.multiplicity * e.degree;
    return t;
  }
  /// Product of the distinct irreducible factors (the radical), monic.
  UniPoly radical(u64 p) const {
    UniPoly r = UniPoly::constant(Fp(1, p));
    for (auto& f : factors) r = r * f;
    return r;
  }
  bool pure() const { return entries.size() == 1; }
  friend bool operator==(const MultiplicityProfile& a, const MultiplicityProfile& b) {
    return a.entries == b.entries;
  }
};

/// Yun's squarefree decomposition. Requires p > deg.
inline MultiplicityProfile squarefree_profile(const UniPoly& f) {
  if (f.degree() < 1) throw Error(ErrorKind::InvalidArgument, "squarefree_profile needs deg >= 1");
  if (f.modulus() <= static_cast<u64>(f.degree()))
    throw Error(ErrorKind::CharTooSmall, "characteristic must exceed the degree");
  UniPoly fd = f.derivative();
  UniPoly a0 = gcd(f, fd);
  UniPoly b = f / a0;
  UniPoly c = fd / a0;
  UniPoly d = c - b.derivative();
  MultiplicityProfile prof;
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UniPoly a = gcd(b, d);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
    if (a.degree() > 0) {
      prof.entries.push_back({i, static_cast<unsigned>(a.degree())});
      prof.factors.push_back(a.monic());
    }
  }
  std::vector<std::size_t> order(prof.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) {
    return prof.entries[x].multiplicity > prof.entries[y].multiplicity;
  });
  MultiplicityProfile sorted;
  for (auto i : order) {
    sorted.entries.push_back(prof.entries[i]);
    sorted.factors.push_back(prof.factors[i]);
  }
  return sorted;
}

/// Tonelli-Shanks. nullopt when a is a non-residue.
inline std::optional<Fp> sqrt_mod_p(const Fp& a) {
  const u64 p = a.modulus();
  if (a.is_zero()) return a;
  if (a.pow((p - 1) / 2) != Fp(1, p)) return std::nullopt;
  if (p % 4 == 3) return a.pow((p + 1) / 4);
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp z(2, p);
  while (z.pow((p - 1) / 2) == Fp(1, p)) z += Fp(1, p);
  Fp c = z.pow(q);
  Fp x = a.pow((q + 1) / 2);
  Fp t = a.pow(q);
  unsigned m = s;
  while (t != Fp(1, p)) {
    unsigned i = 0;
    Fp t2 = t;
    while (t2 != Fp(1, p)) {
      t2 *= t2;
      ++i;
    }
    Fp b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  return x;
}

/// All distinct roots in F_p of a nonzero polynomial (Cantor-Zassenhaus
/// splitting of gcd(f, t^p - t)).
inline std::vector<Fp> roots_mod_p(const UniPoly& f, Rng& rng) {
  assert(!f.is_zero());
  const u64 p = f.modulus();
  std::vector<Fp> roots;
  if (f.degree() < 1) return roots;
  const UniPoly t = UniPoly::linear(Fp(0, p), Fp(1, p));
  UniPoly g = gcd(f, powmod(t, p, f.monic()) - t);
  std::vector<UniPoly> stack{g};
  PrimeField F(p);
  while (!stack.empty()) {
    UniPoly h = stack.back();
    stack.pop_back();
    if (h.degree() < 1) continue;
    if (h.degree() == 1) {
      roots.push_back(-h.coeff(0) / h.coeff(1));
      continue;
    }
    for (;;) {
      UniPoly shifted = UniPoly::linear(rng.element(F), Fp(1, p));
      UniPoly w = powmod(shifted, (p - 1) / 2, h) - UniPoly::constant(Fp(1, p));
      UniPoly d = gcd(h, w);
      if (d.degree() > 0 && d.degree() < h.degree()) {
        stack.push_back(d);
        stack.push_back(h / d);
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Fp& a, const Fp& b) { return a.value() < b.value(); });
  return roots;
}

}  // namespace focal
