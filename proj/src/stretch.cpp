#include "stretchlab/stretch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace stretchlab {

namespace {

constexpr double kProportionalTol = 1e-12;

std::vector<std::string> shared_cores(const RaySpec& g, const RaySpec& h) {
  std::vector<std::string> out;
  for (const CylinderSpec& c : g.cylinders)
    if (h.has_component(c.core_id)) out.push_back(c.core_id);
  return out;
}

}  // namespace

void RaySpec::validate() const {
  if (cylinders.empty()) throw InvariantError("ray without cylinders");
  std::set<std::string> ids;
  for (const CylinderSpec& c : cylinders) {
    c.validate();
    if (!ids.insert(c.core_id).second)
      throw InvariantError("duplicate core_id");
  }
}

bool RaySpec::has_component(const std::string& core_id) const {
  for (const CylinderSpec& c : cylinders)
    if (c.core_id == core_id) return true;
  return false;
}

const CylinderSpec& RaySpec::component(const std::string& core_id) const {
  for (const CylinderSpec& c : cylinders)
    if (c.core_id == core_id) return c;
  throw UnknownComponent("no component with core_id '" + core_id + "'");
}

double RaySpec::effective_weight(const std::string& core_id) const {
  return std::exp(offset) * component(core_id).width;
}

double delta(const RaySpec& g, const RaySpec& h, const std::string& core_id) {
  return 0.5 * (h.effective_weight(core_id) - g.effective_weight(core_id));
}

Reparam find_reparam(const RaySpec& g, const RaySpec& h) {
  const std::vector<std::string> cores = shared_cores(g, h);
  if (cores.empty()) throw UnknownComponent("find_reparam: no shared components");
  Reparam out;
  double r_max = -std::numeric_limits<double>::infinity();
  double r_min = std::numeric_limits<double>::infinity();
  for (const std::string& j : cores) {
    const double r = std::log(g.effective_weight(j) / h.effective_weight(j));
    if (r > r_max) { r_max = r; out.j0 = j; }
    if (r < r_min) { r_min = r; out.j1 = j; }
  }
  if (r_max - r_min <= kProportionalTol)
    throw ProportionalWeights("find_reparam: weight vectors are proportional");
  out.u = 0.5 * (r_max + r_min);
  return out;
}

DivergenceReport classify(const RaySpec& g, const RaySpec& h) {
  DivergenceReport rep;
  const std::vector<std::string> shared = shared_cores(g, h);
  for (const std::string& j : shared) {
    rep.deltas.emplace_back(j, delta(g, h, j));
    const double kg = static_cast<double>(asymptote(g.component(j)).K);
    const double kh = static_cast<double>(asymptote(h.component(j)).K);
    rep.prefactors.emplace_back(j, std::sqrt(kh / kg));
  }
  const bool same_cores = shared.size() == g.cylinders.size() &&
                          shared.size() == h.cylinders.size();
  if (!same_cores) {
    rep.classification = RayClass::divergent_different_multicurve;
    return rep;
  }
  try {
    const Reparam rp = find_reparam(g, h);
    rep.classification = RayClass::divergent_same_multicurve;
    rep.witness_u = rp.u;
    rep.j0 = rp.j0;
    rep.j1 = rp.j1;
  } catch (const ProportionalWeights&) {
    rep.classification = RayClass::same_direction;
  }
  return rep;
}

double ratio_bound(const RaySpec& g, const RaySpec& h, double t) {
  const std::vector<std::string> cores = shared_cores(g, h);
  if (cores.empty()) throw UnknownComponent("ratio_bound: no shared components");
  double best = -std::numeric_limits<double>::infinity();
  for (const std::string& j : cores) {
    const double log_lower_h = log_height(h.component(j), t + h.offset);
    const double log_upper_g = min_leaf(g.component(j), t + g.offset).h_star.logmag;
    best = std::max(best, log_lower_h - log_upper_g);
  }
  return best;
}

double asymptotic_ratio_bound(const RaySpec& g, const RaySpec& h, double t) {
  const std::vector<std::string> cores = shared_cores(g, h);
  if (cores.empty()) throw UnknownComponent("asymptotic_ratio_bound: no shared components");
  double best = -std::numeric_limits<double>::infinity();
  for (const std::string& j : cores) {
    const double kg = static_cast<double>(asymptote(g.component(j)).K);
    const double kh = static_cast<double>(asymptote(h.component(j)).K);
    best = std::max(best, 0.5 * std::log(kh / kg) - std::exp(t) * delta(g, h, j));
  }
  return best;
}

AsymmetryBound asymmetry_bound(const RaySpec& ray, double t, double c) {
  if (!(c > 0.0)) throw DomainError("asymmetry_bound: c must be positive");
  RaySpec shifted = ray;
  shifted.offset += c;
  AsymmetryBound out;
  out.forward = c;  // stretch lines are geodesics
  out.backward_lower = ratio_bound(shifted, ray, t);
  return out;
}

std::pair<ExtScalar, ExtScalar> transverse_bounds(const TransverseCurveData& curve,
                                                  const RaySpec& ray, double t) {
  ExtScalar lower, turning;
  for (const auto& [core_id, n] : curve.crossings) {
    if (n < 0) throw DomainError("transverse_bounds: negative crossing count");
    if (n == 0) continue;
    const ExtScalar wt = width_at(ray.component(core_id), t + ray.offset);
    lower = ext_add(lower, ext_mul(ExtScalar::from_real(n), wt));
  }
  for (const auto& [core_id, m] : curve.turnings) {
    if (m < 0) throw DomainError("transverse_bounds: negative turning count");
    if (m == 0) continue;
    const ExtScalar h_star = min_leaf(ray.component(core_id), t + ray.offset).h_star;
    turning = ext_add(turning, ext_mul(ExtScalar::from_real(m), h_star));
  }
  return {lower, ext_add(lower, turning)};
}

LengthClass asymptotic_class(StumpRelation rel) {
  switch (rel) {
    case StumpRelation::subset_of_stump: return LengthClass::to_zero;
    case StumpRelation::crosses_stump: return LengthClass::to_infinity;
    case StumpRelation::disjoint_from_stump: return LengthClass::bounded;
  }
  throw DomainError("asymptotic_class: invalid relation");
}

}  // namespace stretchlab
