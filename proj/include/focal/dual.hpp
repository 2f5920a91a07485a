#pragma once

// First-order dual numbers R[e]/(e^2) over an arbitrary commutative ring R.
// Nesting gives truncated multivariate Taylor arithmetic:
//   Dual<Fp>              value + first derivative
//   Dual<Dual<Fp>>        mixed second derivative in two directions
//   Dual<Dual<Dual<Fp>>>  third order, used for first-order deformations
//                         of second-order data

#include <ostream>

#include "focal/errors.hpp"
#include "focal/field.hpp"

namespace focal {

template <class R>
class Dual {
 public:
  using base_type = R;

  Dual() = default;
  Dual(R unit, R slope) : unit_(std::move(unit)), slope_(std::move(slope)) {}
  explicit Dual(const R& unit) : unit_(unit), slope_(zero_like(unit)) {}

  const R& unit() const { return unit_; }
  const R& slope() const { return slope_; }

  Dual& operator+=(const Dual& o) {
    unit_ += o.unit_;
    slope_ += o.slope_;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    unit_ -= o.unit_;
    slope_ -= o.slope_;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    slope_ = unit_ * o.slope_ + slope_ * o.unit_;
    unit_ *= o.unit_;
    return *this;
  }
  Dual& operator/=(const Dual& o) { return *this *= o.inv(); }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  Dual operator-() const { return Dual(-unit_, -slope_); }

  friend bool operator==(const Dual& a, const Dual& b) {
    return a.unit_ == b.unit_ && a.slope_ == b.slope_;
  }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

  /// Invertible iff the unit part is.
  Dual inv() const {
    if (!is_unit(unit_))
      throw Error(ErrorKind::DegeneratePivot, "dual number with non-invertible unit part");
    R ui = inverse(unit_);
    return Dual(ui, -(slope_ * ui * ui));
  }

  friend std::ostream& operator<<(std::ostream& os, const Dual& a) {
    return os << "(" << a.unit_ << " + " << a.slope_ << "e)";
  }

 private:
  R unit_{};
  R slope_{};
};

template <class R>
Dual<R> from_int(const Dual<R>& like, i64 n) {
  return Dual<R>(from_int(like.unit(), n), zero_like(like.unit()));
}
template <class R>
Dual<R> zero_like(const Dual<R>& like) {
  return Dual<R>(zero_like(like.unit()), zero_like(like.unit()));
}
template <class R>
Dual<R> one_like(const Dual<R>& like) {
  return Dual<R>(one_like(like.unit()), zero_like(like.unit()));
}
template <class R>
bool is_zero(const Dual<R>& a) {
  return is_zero(a.unit()) && is_zero(a.slope());
}
template <class R>
bool is_unit(const Dual<R>& a) {
  return is_unit(a.unit());
}
template <class R>
Dual<R> inverse(const Dual<R>& a) {
  return a.inv();
}
template <class R>
const Fp& residue(const Dual<R>& a) {
  return residue(a.unit());
}

using DualScalar = Dual<Fp>;

/// Embeds a base element as a constant of a (possibly nested) dual ring.
template <class Target, class Source>
Target embed(const Source& s) {
  if constexpr (std::is_same_v<Target, Source>) {
    return s;
  } else {
    using B = typename Target::base_type;
    B b = embed<B>(s);
    return Target(b, zero_like(b));
  }
}

}  // namespace focal
