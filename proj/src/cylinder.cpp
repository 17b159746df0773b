#include "stretchlab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stretchlab {

namespace {

ExtScalar pos_from_log(double lm) {
  if (std::isinf(lm) && lm < 0) return ExtScalar::zero();
  return ExtScalar::from_log(lm);
}

// exp(logmag) saturated to the largest finite double, so that log-domain
// subtraction of w(t) stays finite even when w(t) itself overflows.
double finite_exp(double lm) {
  const double v = std::exp(lm);
  return std::isinf(v) ? std::numeric_limits<double>::max() : v;
}

}  // namespace

int BandSpec::unit_count() const {
  return static_cast<int>(std::count(arcs.begin(), arcs.end(), 1.0));
}

void CylinderSpec::validate() const {
  if (!(width > 0.0)) throw InvariantError("width not positive");
  if (bands.size() < 2) throw InvariantError("fewer than 2 bands");
  if (bands.size() % 2 != 0) throw InvariantError("band count odd");
  for (const BandSpec& band : bands) {
    if (band.arcs.empty()) throw InvariantError("empty band");
    for (double arc : band.arcs) {
      if (!(arc > 0.0)) throw InvariantError("arc length not positive");
      if (arc > 1.0) throw InvariantError("arc length > 1");
    }
  }
  int left_units = 0, right_units = 0;
  for (std::size_t i = 0; i < bands.size(); ++i)
    (i % 2 == 0 ? left_units : right_units) += bands[i].unit_count();
  if (left_units == 0 || right_units == 0)
    throw InvariantError("side without unit arc");
}

ExtScalar thickness(const BandSpec& band, double t) {
  const double e_t = std::exp(t);
  ExtScalar sum;
  for (double arc : band.arcs) sum = ext_add(sum, ext_pow(arc, e_t));
  return sum;
}

ExtScalar width_at(const CylinderSpec& cyl, double t) {
  return ExtScalar::from_log(t + std::log(cyl.width));
}

SideSums side_sums(const CylinderSpec& cyl, double t) {
  SideSums s;
  for (std::size_t i = 0; i < cyl.bands.size(); ++i) {
    ExtScalar th = thickness(cyl.bands[i], t);
    if (i % 2 == 0)
      s.a_i = ext_add(s.a_i, th);
    else
      s.a_p = ext_add(s.a_p, th);
  }
  return s;
}

ExtScalar leaf_length(const CylinderSpec& cyl, double t, const ExtScalar& d) {
  if (d.sign < 0) throw DomainError("leaf_length: d negative");
  const ExtScalar wt = width_at(cyl, t);
  const double wt_v = finite_exp(wt.logmag);
  const double d_v = std::min(finite_exp(d.logmag), std::numeric_limits<double>::max());
  if (d.sign > 0 && d.logmag > wt.logmag + kCancelTol)
    throw DomainError("leaf_length: d exceeds w(t)");
  const SideSums s = side_sums(cyl, t);
  const ExtScalar right = ext_mul(s.a_p, pos_from_log(-(d.sign > 0 ? d_v : 0.0)));
  const ExtScalar left = ext_mul(s.a_i, pos_from_log(-(wt_v - (d.sign > 0 ? d_v : 0.0))));
  return ext_add(right, left);
}

MinLeaf min_leaf(const CylinderSpec& cyl, double t) {
  const ExtScalar wt = width_at(cyl, t);
  const SideSums s = side_sums(cyl, t);
  // unconstrained minimiser: d = w(t)/2 + (1/2) ln(a_p / a_i)
  const double delta = 0.5 * (s.a_p.logmag - s.a_i.logmag);
  const double half_wt_log = wt.logmag - std::numbers::ln2_v<double>;
  const double r = delta * std::exp(-half_wt_log);  // delta / (w(t)/2)
  MinLeaf out;
  if (r <= -1.0) {
    out.interior = false;
    out.d_star = ExtScalar::zero();
    out.h_star = leaf_length(cyl, t, out.d_star);
  } else if (r >= 1.0) {
    out.interior = false;
    out.d_star = wt;
    out.h_star = leaf_length(cyl, t, out.d_star);
  } else {
    out.interior = true;
    out.d_star = pos_from_log(half_wt_log + std::log1p(r));
    // h* = 2 sqrt(a_p a_i) e^{-w(t)/2}
    out.h_star = pos_from_log(std::numbers::ln2_v<double> +
                              0.5 * (s.a_p.logmag + s.a_i.logmag) -
                              finite_exp(half_wt_log));
  }
  return out;
}

MoebiusMap generator_product(const CylinderSpec& cyl, double t, std::size_t cut) {
  const std::size_t n = cyl.bands.size();
  const double wt_v = finite_exp(width_at(cyl, t).logmag);
  MoebiusMap m = MoebiusMap::identity();
  for (std::size_t i = 0; i < n; ++i) {
    const ExtScalar th = thickness(cyl.bands[(cut + i) % n], t);
    const MoebiusMap gen = (i % 2 == 0)
                               ? parabolic_shift(th)
                               : parabolic_lower(ExtScalar::from_log(th.logmag - wt_v));
    m = compose(m, gen);
  }
  return m;
}

std::vector<BoundaryPoint> boundary_points(const CylinderSpec& cyl, double t,
                                           std::size_t cut) {
  const std::size_t n = cyl.bands.size();
  const double wt_v = finite_exp(width_at(cyl, t).logmag);
  std::vector<BoundaryPoint> pts;
  pts.reserve(n);
  MoebiusMap m = MoebiusMap::identity();
  for (std::size_t i = 0; i < n; ++i) {
    const ExtScalar th = thickness(cyl.bands[(cut + i) % n], t);
    const MoebiusMap gen = (i % 2 == 0)
                               ? parabolic_shift(th)
                               : parabolic_lower(ExtScalar::from_log(th.logmag - wt_v));
    m = compose(m, gen);
    // x_{2j-1} = P_1...P_{2j-1}(0), x_{2j} = P_1...P_{2j}(inf)
    pts.push_back(apply(m, i % 2 == 0 ? BoundaryPoint::finite(ExtScalar::zero())
                                      : BoundaryPoint::infinity()));
  }
  return pts;
}

double height(const CylinderSpec& cyl, double t, std::size_t cut) {
  const MoebiusMap m = generator_product(cyl, t, cut);
  return acosh1p(ext_mul(ExtScalar::from_real(2.0), ext_mul(m.b, m.c)));
}

double log_height(const CylinderSpec& cyl, double t, std::size_t cut) {
  const MoebiusMap m = generator_product(cyl, t, cut);
  return log_acosh1p(ext_mul(ExtScalar::from_real(2.0), ext_mul(m.b, m.c)));
}

double best_height(const CylinderSpec& cyl, double t) {
  double best = 0.0;
  for (std::size_t cut = 0; cut < cyl.bands.size(); ++cut)
    best = std::max(best, height(cyl, t, cut));
  return best;
}

CylinderSpec truncate(const CylinderSpec& cyl) {
  struct Survivor {
    bool left;
    std::vector<double> arcs;
  };
  std::vector<Survivor> kept;
  for (std::size_t i = 0; i < cyl.bands.size(); ++i) {
    std::vector<double> units(cyl.bands[i].unit_count(), 1.0);
    if (!units.empty()) kept.push_back({i % 2 == 0, std::move(units)});
  }
  bool has_left = false, has_right = false;
  for (const Survivor& s : kept) (s.left ? has_left : has_right) = true;
  if (!has_left || !has_right)
    throw InvalidCylinder("truncate: side without unit arc");

  // Merge cyclically adjacent survivors on the same side. Start the walk
  // at a side change so runs never wrap around the seam.
  const std::size_t n = kept.size();
  std::size_t start = 0;
  while (kept[start].left == kept[(start + n - 1) % n].left) ++start;
  std::vector<Survivor> merged;
  for (std::size_t k = 0; k < n; ++k) {
    Survivor& s = kept[(start + k) % n];
    if (!merged.empty() && merged.back().left == s.left)
      merged.back().arcs.insert(merged.back().arcs.end(), s.arcs.begin(), s.arcs.end());
    else
      merged.push_back(std::move(s));
  }
  // Odd (1-based) positions must sit on the left boundary.
  if (!merged.front().left)
    std::rotate(merged.begin(), merged.end() - 1, merged.end());

  CylinderSpec out;
  out.width = cyl.width;
  out.core_id = cyl.core_id;
  for (Survivor& s : merged) out.bands.push_back({std::move(s.arcs)});
  return out;
}

LengthBracket bracket(const CylinderSpec& cyl, double t) {
  LengthBracket b;
  b.t = t;
  b.lower = height(cyl, t);
  b.upper = min_leaf(cyl, t).h_star.to_real();
  b.crosscheck_lower = height(truncate(cyl), t);
  return b;
}

AsymptoticData asymptote(const CylinderSpec& cyl) {
  long long left = 0, right = 0;
  for (std::size_t i = 0; i < cyl.bands.size(); ++i)
    (i % 2 == 0 ? left : right) += cyl.bands[i].unit_count();
  return {left * right, cyl.width};
}

double log_asymptotic_length(const AsymptoticData& a, double t) {
  return std::numbers::ln2_v<double> + 0.5 * std::log(static_cast<double>(a.K)) -
         0.5 * std::exp(t) * a.w;
}

ExtScalar asymptotic_length(const AsymptoticData& a, double t) {
  return pos_from_log(log_asymptotic_length(a, t));
}

MultiAsymptote multi_asymptote(const std::vector<AsymptoticData>& items,
                               const std::vector<std::size_t>& selection) {
  if (selection.empty()) throw EmptySelection("multi_asymptote: empty selection");
  double w_min = std::numeric_limits<double>::infinity();
  for (std::size_t j : selection) w_min = std::min(w_min, items.at(j).w);
  double sum = 0.0;
  for (std::size_t j : selection) {
    const AsymptoticData& a = items.at(j);
    if (a.w <= w_min * (1.0 + 1e-12))
      sum += std::sqrt(static_cast<double>(a.K));
  }
  return {w_min, ExtScalar::from_real(2.0 * sum)};
}

}  // namespace stretchlab
