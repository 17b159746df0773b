#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "stretchlab/stretch.hpp"

using namespace stretchlab;

namespace {

CylinderSpec unit_cylinder(const std::string& core, double width) {
  CylinderSpec cyl;
  cyl.core_id = core;
  cyl.width = width;
  cyl.bands = {{std::vector<double>{1.0}}, {std::vector<double>{1.0}}};
  return cyl;
}

RaySpec make_ray(const std::string& id, std::vector<double> weights, double offset = 0.0) {
  RaySpec ray;
  ray.id = id;
  ray.offset = offset;
  for (std::size_t j = 0; j < weights.size(); ++j)
    ray.cylinders.push_back(unit_cylinder("l" + std::to_string(j + 1), weights[j]));
  return ray;
}

}  // namespace

TEST_CASE("delta") {
  const RaySpec g = make_ray("g", {1.0, 2.0});
  CHECK(delta(g, g, "l1") == 0.0);
  CHECK(delta(g, g, "l2") == 0.0);

  // same ray shifted forward by c: every delta is w_j (1 - e^c)/2 < 0
  const double c = 0.8;
  RaySpec shifted = g;
  shifted.offset = c;
  CHECK(delta(shifted, g, "l1") == doctest::Approx(1.0 * (1.0 - std::exp(c)) / 2.0));
  CHECK(delta(shifted, g, "l2") == doctest::Approx(2.0 * (1.0 - std::exp(c)) / 2.0));

  const RaySpec h = make_ray("h", {3.0, 2.0});
  CHECK(delta(g, h, "l1") == doctest::Approx(1.0));
  CHECK_THROWS_AS(delta(g, h, "nope"), UnknownComponent);
}

TEST_CASE("classify") {
  const RaySpec g = make_ray("g", {1.0, 1.0});
  CHECK(classify(g, g).classification == RayClass::same_direction);

  // proportional weights define the same projective class
  const RaySpec doubled = make_ray("h", {2.0, 2.0});
  CHECK(classify(g, doubled).classification == RayClass::same_direction);

  const RaySpec skew = make_ray("h", {1.0, 2.0});
  const DivergenceReport rep = classify(g, skew);
  CHECK(rep.classification == RayClass::divergent_same_multicurve);
  REQUIRE(rep.witness_u.has_value());
  CHECK(*rep.j0 == "l1");
  CHECK(*rep.j1 == "l2");

  RaySpec other = make_ray("h", {1.0});
  other.cylinders[0].core_id = "elsewhere";
  CHECK(classify(g, other).classification == RayClass::divergent_different_multicurve);
}

TEST_CASE("classify is projective") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> wdist(0.3, 3.0);
  for (int i = 0; i < 200; ++i) {
    const RaySpec g = make_ray("g", {wdist(rng), wdist(rng), wdist(rng)});
    RaySpec h = make_ray("h", {wdist(rng), wdist(rng), wdist(rng)});
    const RayClass before = classify(g, h).classification;
    for (CylinderSpec& cyl : h.cylinders) cyl.width *= 3.7;
    CHECK(classify(g, h).classification == before);
  }
}

TEST_CASE("find_reparam") {
  // the normalized two-component case w'/w = 2
  const RaySpec g = make_ray("g", {1.0, 1.0});
  const RaySpec h = make_ray("h", {1.0, 2.0});
  const Reparam rp = find_reparam(g, h);
  CHECK(rp.u == doctest::Approx(-std::log(2.0) / 2.0));
  CHECK(rp.j0 == "l1");
  CHECK(rp.j1 == "l2");
  CHECK(std::exp(rp.u) * h.effective_weight("l1") < g.effective_weight("l1"));
  CHECK(std::exp(rp.u) * h.effective_weight("l2") > g.effective_weight("l2"));

  CHECK_THROWS_AS(find_reparam(g, make_ray("h", {2.0, 2.0})), ProportionalWeights);

  // three components
  const RaySpec g3 = make_ray("g", {1.0, 2.0, 3.0});
  const RaySpec h3 = make_ray("h", {2.0, 2.0, 2.0});
  const Reparam rp3 = find_reparam(g3, h3);
  CHECK(rp3.j0 == "l3");
  CHECK(rp3.j1 == "l1");
  CHECK(rp3.u == doctest::Approx(0.5 * (std::log(1.5) - std::log(2.0))));
}

TEST_CASE("property: find_reparam witness inequalities") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> mdist(2, 6);
  std::uniform_real_distribution<double> wdist(0.2, 5.0);
  int done = 0;
  while (done < 1000) {
    const int m = mdist(rng);
    std::vector<double> wg(m), wh(m);
    for (int j = 0; j < m; ++j) { wg[j] = wdist(rng); wh[j] = wdist(rng); }
    const RaySpec g = make_ray("g", wg);
    const RaySpec h = make_ray("h", wh);
    Reparam rp;
    try {
      rp = find_reparam(g, h);
    } catch (const ProportionalWeights&) {
      continue;
    }
    ++done;
    CHECK(std::exp(rp.u) * h.effective_weight(rp.j0) < g.effective_weight(rp.j0));
    CHECK(std::exp(rp.u) * h.effective_weight(rp.j1) > g.effective_weight(rp.j1));
    // the sign condition on the admissible interval
    const double r0 = std::log(g.effective_weight(rp.j0) / h.effective_weight(rp.j0));
    const double r1 = std::log(g.effective_weight(rp.j1) / h.effective_weight(rp.j1));
    CHECK((rp.u - r0) * (rp.u - r1) < 0.0);
  }
}

TEST_CASE("ratio_bound") {
  const RaySpec g = make_ray("g", {1.0});
  CHECK(ratio_bound(g, g, 0.0) <= 1e-9);
  CHECK(ratio_bound(g, g, 2.0) <= 1e-9);

  // w(g) = 1, w(h) = 2, K = 1 both sides, t = 3: asymptotic bound -e^3/2
  const RaySpec h = make_ray("h", {2.0});
  CHECK(asymptotic_ratio_bound(g, h, 3.0) == doctest::Approx(-std::exp(3.0) * 0.5));
  CHECK(asymptotic_ratio_bound(h, g, 3.0) == doctest::Approx(+std::exp(3.0) * 0.5));

  // the exact bracket bound approaches the asymptotic form once e^t w >= 40
  const double t = std::log(40.0);
  CHECK(ratio_bound(h, g, t) ==
        doctest::Approx(asymptotic_ratio_bound(h, g, t)).epsilon(1e-3));
  CHECK(ratio_bound(h, g, t) > 10.0);
}

TEST_CASE("prefactor identification against bracket numerics") {
  // same weight, different unit-arc counts: the bound converges to
  // ln sqrt(K_h / K_g) instead of diverging
  RaySpec g = make_ray("g", {1.0});
  RaySpec h = make_ray("h", {1.0});
  h.cylinders[0].bands = {{std::vector<double>{1.0, 1.0}},
                          {std::vector<double>{1.0, 1.0}}};  // K = 4
  const DivergenceReport rep = classify(g, h);
  REQUIRE(rep.prefactors.size() == 1);
  CHECK(rep.prefactors[0].second == doctest::Approx(2.0));
  const double t = std::log(60.0);
  CHECK(ratio_bound(g, h, t) == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("asymmetry_bound") {
  const RaySpec ray = make_ray("g", {1.0});
  // delta of the shifted ray against the base, c = 1
  RaySpec shifted = ray;
  shifted.offset = 1.0;
  CHECK(delta(shifted, ray, "l1") == doctest::Approx((1.0 - std::exp(1.0)) / 2.0));

  const AsymmetryBound ab = asymmetry_bound(ray, 4.0, 1.0);
  CHECK(ab.forward == 1.0);
  CHECK(ab.backward_lower ==
        doctest::Approx(std::exp(4.0) * (std::exp(1.0) - 1.0) / 2.0).epsilon(5e-2));

  CHECK_THROWS_AS(asymmetry_bound(ray, 0.0, -1.0), DomainError);

  // eventually monotone and unbounded
  double prev = -1e300;
  for (double t : {2.0, 3.0, 4.0, 5.0, 6.0}) {
    const double b = asymmetry_bound(ray, t, 1.0).backward_lower;
    CHECK(b > prev);
    prev = b;
  }
  CHECK(prev > 10.0);
}

TEST_CASE("transverse_bounds") {
  const RaySpec ray = make_ray("g", {2.0});
  TransverseCurveData none;
  const auto [lo0, hi0] = transverse_bounds(none, ray, 0.0);
  CHECK(lo0.is_zero());
  CHECK(hi0.is_zero());

  TransverseCurveData cross;
  cross.crossings["l1"] = 1;
  const auto [lo1, hi1] = transverse_bounds(cross, ray, 0.0);
  CHECK(lo1.to_real() == doctest::Approx(2.0));
  CHECK(hi1.to_real() == doctest::Approx(2.0));

  TransverseCurveData turning = cross;
  turning.turnings["l1"] = 3;
  const auto [lo2, hi2] = transverse_bounds(turning, ray, 0.0);
  const double h_star = min_leaf(ray.cylinders[0], 0.0).h_star.to_real();
  CHECK(lo2.to_real() == doctest::Approx(2.0));
  CHECK(hi2.to_real() == doctest::Approx(2.0 + 3.0 * h_star));

  // lower bound scales exactly like e^t
  const auto [lo_next, hi_next] = transverse_bounds(turning, ray, 1.0);
  CHECK(lo_next.logmag - lo2.logmag == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(!(hi_next < lo_next));
}

TEST_CASE("asymptotic_class") {
  CHECK(asymptotic_class(StumpRelation::subset_of_stump) == LengthClass::to_zero);
  CHECK(asymptotic_class(StumpRelation::crosses_stump) == LengthClass::to_infinity);
  CHECK(asymptotic_class(StumpRelation::disjoint_from_stump) == LengthClass::bounded);
}

TEST_CASE("ray validation") {
  RaySpec ray = make_ray("g", {1.0, 1.0});
  CHECK_NOTHROW(ray.validate());
  ray.cylinders[1].core_id = ray.cylinders[0].core_id;
  CHECK_THROWS_WITH_AS(ray.validate(), "duplicate core_id", InvariantError);
  RaySpec empty;
  CHECK_THROWS_AS(empty.validate(), InvariantError);
}
