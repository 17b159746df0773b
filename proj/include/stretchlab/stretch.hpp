#pragma once

// Ray-level analysis on top of the cylinder model: delta coefficients
// between two rays, parallel/divergent classification with a witness
// reparameterization offset, one-sided Thurston-distance bounds, the
// asymmetry along a single ray, and transverse-curve length brackets.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stretchlab/cylinder.hpp"

namespace stretchlab {

struct RaySpec {
  std::string id;
  double offset = 0.0;  // ray evaluated at t + offset; effective weight e^offset w_j
  std::vector<CylinderSpec> cylinders;

  void validate() const;
  const CylinderSpec& component(const std::string& core_id) const;
  bool has_component(const std::string& core_id) const;
  double effective_weight(const std::string& core_id) const;
};

// delta_j(g, h) = (w_j(h) - w_j(g)) / 2, with effective weights.
double delta(const RaySpec& g, const RaySpec& h, const std::string& core_id);

enum class RayClass {
  same_direction,
  divergent_same_multicurve,
  divergent_different_multicurve,
};

struct DivergenceReport {
  std::vector<std::pair<std::string, double>> deltas;      // per shared core_id
  RayClass classification = RayClass::same_direction;
  std::optional<double> witness_u;
  std::optional<std::string> j0, j1;
  std::vector<std::pair<std::string, double>> prefactors;  // sqrt(K_j(h)/K_j(g))
};

DivergenceReport classify(const RaySpec& g, const RaySpec& h);

struct Reparam {
  double u = 0.0;
  std::string j0;  // e^u w_j0(h) < w_j0(g)
  std::string j1;  // e^u w_j1(h) > w_j1(g)
};

// Witness offset for divergence of two rays on the same multicurve with
// non-proportional weights; u is the midpoint of the admissible interval.
Reparam find_reparam(const RaySpec& g, const RaySpec& h);

// Rigorous lower bound on d_T(g_t, h_t): log of the best core-curve
// length ratio, lower bracket over upper bracket.
double ratio_bound(const RaySpec& g, const RaySpec& h, double t);

// Asymptotic form of the same bound, ln sqrt(K_j(h)/K_j(g)) - e^t delta_j.
double asymptotic_ratio_bound(const RaySpec& g, const RaySpec& h, double t);

struct AsymmetryBound {
  double forward = 0.0;         // d_T(h_t, h_{t+c}) = c, geodesic property
  double backward_lower = 0.0;  // lower bound on d_T(h_{t+c}, h_t)
};
AsymmetryBound asymmetry_bound(const RaySpec& ray, double t, double c);

struct TransverseCurveData {
  std::string id;
  std::map<std::string, int> crossings;  // core_id -> |alpha ^ lambda_j|
  std::map<std::string, int> turnings;   // core_id -> |alpha ^ rho_j|
};

// Length bracket for a transverse curve; the core-length upper bracket
// h* stands in for the uncomputable exact core length.
std::pair<ExtScalar, ExtScalar> transverse_bounds(const TransverseCurveData& curve,
                                                  const RaySpec& ray, double t);

enum class StumpRelation { subset_of_stump, crosses_stump, disjoint_from_stump };
enum class LengthClass { to_zero, to_infinity, bounded };

LengthClass asymptotic_class(StumpRelation rel);

}  // namespace stretchlab
