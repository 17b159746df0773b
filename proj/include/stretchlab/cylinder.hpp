#pragma once

// Combinatorial model of one horocyclic-foliation cylinder: an even
// cyclic sequence of maximal bands (odd positions on the left boundary,
// even on the right), each band a list of cusp-arc lengths in (0, 1].
// From this data alone we get thickness evolution under stretch, closed
// leaf lengths and their minimum h*, the boundary abscissae x_j, the
// height h, the tronc,on-truncated height h', and the doubly-exponential
// asymptotic law.

#include <cstddef>
#include <string>
#include <vector>

#include "stretchlab/ext_scalar.hpp"
#include "stretchlab/moebius.hpp"

namespace stretchlab {

struct BandSpec {
  std::vector<double> arcs;  // each in (0, 1]; == 1 marks an unfoliated side

  int unit_count() const;
};

struct CylinderSpec {
  double width = 0.0;           // w at t = 0; weight of the core component
  std::vector<BandSpec> bands;  // B_1..B_2N, odd positions left, even right
  std::string core_id;

  // Throws InvariantError naming the violated invariant.
  void validate() const;
};

// Sum of arc lengths each raised to the power e^t; decreasing in t with
// limit the band's unit-arc count.
ExtScalar thickness(const BandSpec& band, double t);

// w(t) = e^t w
ExtScalar width_at(const CylinderSpec& cyl, double t);

struct SideSums {
  ExtScalar a_i;  // odd positions (left boundary)
  ExtScalar a_p;  // even positions (right boundary)
};
SideSums side_sums(const CylinderSpec& cyl, double t);

// Length of the closed leaf at distance d from the right boundary:
// a_p e^{-d} + a_i e^{-(w(t)-d)}.
ExtScalar leaf_length(const CylinderSpec& cyl, double t, const ExtScalar& d);

struct MinLeaf {
  ExtScalar d_star;
  ExtScalar h_star;
  bool interior = true;  // false when the critical point was clamped to [0, w(t)]
};
MinLeaf min_leaf(const CylinderSpec& cyl, double t);

// Full generator product P_1 ... P_2N at time t, bands rotated so the
// cut boundary precedes B_1. cut = 0 is the boundary between B_2N and B_1.
MoebiusMap generator_product(const CylinderSpec& cyl, double t, std::size_t cut = 0);

// Abscissae on the positive axis in nested convergent order:
// x_1 < x_3 < ... < x_{2N-1} < x_{2N} < ... < x_4 < x_2.
std::vector<BoundaryPoint> boundary_points(const CylinderSpec& cyl, double t,
                                           std::size_t cut = 0);

// Height h of the cut cylinder: cosh(h) - 1 = 2bc for the full generator
// product (a b; c d). Cancellation-free; equals the x-ratio formula.
double height(const CylinderSpec& cyl, double t, std::size_t cut = 0);

// ln h, stable when h underflows a double.
double log_height(const CylinderSpec& cyl, double t, std::size_t cut = 0);

// Best (largest) height lower bound over all cut choices.
double best_height(const CylinderSpec& cyl, double t);

// Keep only unit arcs, drop emptied bands, merge same-side neighbours.
CylinderSpec truncate(const CylinderSpec& cyl);

struct LengthBracket {
  double t = 0.0;
  double lower = 0.0;             // h(t)
  double upper = 0.0;             // h*(t)
  double crosscheck_lower = 0.0;  // h'(t), height of the truncated cylinder
};
LengthBracket bracket(const CylinderSpec& cyl, double t);

struct AsymptoticData {
  long long K = 1;  // product of the two sides' unit-arc counts
  double w = 0.0;
};
AsymptoticData asymptote(const CylinderSpec& cyl);

// 2 sqrt(K) e^{-e^t w / 2}
ExtScalar asymptotic_length(const AsymptoticData& a, double t);
double log_asymptotic_length(const AsymptoticData& a, double t);

struct MultiAsymptote {
  double w_min = 0.0;
  ExtScalar prefactor;  // 2 * sum over minimal-weight components of sqrt(K_j)
};
MultiAsymptote multi_asymptote(const std::vector<AsymptoticData>& items,
                               const std::vector<std::size_t>& selection);

}  // namespace stretchlab
