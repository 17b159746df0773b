#pragma once

// Upper half-plane Moebius maps as determinant-1 matrices over ExtScalar,
// built from the two parabolic generator shapes and evaluated at the
// boundary points 0 and infinity.
//
// The matrix form is preferred over literal continued-fraction evaluation:
// for the full generator product (a b; c d), the gap x_{2N} - x_{2N-1}
// equals 1/(cd) by the determinant identity, so the height formula never
// subtracts nearly equal boundary abscissae.

#include <cstddef>

#include "stretchlab/ext_scalar.hpp"

namespace stretchlab {

struct MoebiusMap {
  ExtScalar a, b, c, d;  // z -> (az + b) / (cz + d)

  static MoebiusMap identity() {
    return {ExtScalar::one(), ExtScalar::zero(), ExtScalar::zero(), ExtScalar::one()};
  }

  // Diagnostic only; overflows outside native range.
  double det_native() const {
    return a.to_real() * d.to_real() - b.to_real() * c.to_real();
  }
};

struct BoundaryPoint {
  bool infinite = false;
  ExtScalar value;  // meaningful when !infinite; always >= 0 here

  static BoundaryPoint infinity() { return {true, {}}; }
  static BoundaryPoint finite(const ExtScalar& x) { return {false, x}; }
};

inline bool operator<(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.infinite) return false;
  if (q.infinite) return true;
  return p.value < q.value;
}

// z -> z + a
inline MoebiusMap parabolic_shift(const ExtScalar& a) {
  if (a.sign <= 0) throw DomainError("parabolic_shift: parameter must be positive");
  return {ExtScalar::one(), a, ExtScalar::zero(), ExtScalar::one()};
}

// z -> z / (abar z + 1), i.e. 1 / (abar + 1/z)
inline MoebiusMap parabolic_lower(const ExtScalar& abar) {
  if (abar.sign <= 0) throw DomainError("parabolic_lower: parameter must be positive");
  return {ExtScalar::one(), ExtScalar::zero(), abar, ExtScalar::one()};
}

// m1 after m2: the matrix of the composition is the product in the same
// order, so chains P1 o P2 o ... o Pj accumulate by right-multiplication.
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return {ext_add(ext_mul(m1.a, m2.a), ext_mul(m1.b, m2.c)),
          ext_add(ext_mul(m1.a, m2.b), ext_mul(m1.b, m2.d)),
          ext_add(ext_mul(m1.c, m2.a), ext_mul(m1.d, m2.c)),
          ext_add(ext_mul(m1.c, m2.b), ext_mul(m1.d, m2.d))};
}

inline BoundaryPoint apply(const MoebiusMap& m, const BoundaryPoint& p) {
  ExtScalar num, den;
  if (p.infinite) {
    num = m.a;
    den = m.c;
  } else {
    num = ext_add(ext_mul(m.a, p.value), m.b);
    den = ext_add(ext_mul(m.c, p.value), m.d);
  }
  if (den.is_zero()) {
    if (num.is_zero())
      throw IndeterminateError("apply: 0/0, matrix is not invertible");
    return BoundaryPoint::infinity();
  }
  return BoundaryPoint::finite(ext_div(num, den));
}

}  // namespace stretchlab
