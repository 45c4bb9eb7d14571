#include <doctest.h>

#include "efbound/encodings.hpp"
#include "efbound/error.hpp"
#include "efbound/polyhedra.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace efbound;
using testsupport::Gen;

namespace {

// Slack entries recomputed straight from the definition, one dot product at a time.
RationalMatrix slack_by_definition(const VRep& p, const HRep& q) {
  RationalMatrix s(q.num_rows(), p.num_points() + p.num_rays());
  for (std::size_t i = 0; i < q.num_rows(); ++i) {
    for (std::size_t j = 0; j < p.num_points(); ++j) {
      Rational v = q.b[i];
      for (std::size_t t = 0; t < q.dim; ++t) v -= q.A(i, t) * p.points(j, t);
      s(i, j) = v;
    }
    for (std::size_t j = 0; j < p.num_rays(); ++j) {
      Rational v = 0;
      for (std::size_t t = 0; t < q.dim; ++t) v -= q.A(i, t) * p.rays(j, t);
      s(i, p.num_points() + j) = v;
    }
  }
  return s;
}

struct RandomPair {
  VRep p;
  HRep q;
};

// Small random pair with b >= 0 so that dilation is monotone.
RandomPair random_pair(Gen& gen) {
  const auto d = static_cast<std::size_t>(gen.integer(1, 3));
  const auto m = static_cast<std::size_t>(gen.integer(1, 4));
  const auto n = static_cast<std::size_t>(gen.integer(1, 4));
  const auto k = static_cast<std::size_t>(gen.integer(0, 1));
  RationalVector b;
  for (std::size_t i = 0; i < m; ++i) b.push_back(gen.integer(0, 3));
  HRep q(d, gen.matrix(m, d, -2, 2), b);
  VRep p(d, gen.matrix(n, d, -1, 1, 2), gen.matrix(k, d, -1, 1));
  return {p, q};
}

}  // namespace

TEST_CASE("slack of the unit segment and of a single ray") {
  auto s = build_slack(fixtures::segment_v(), fixtures::segment_h());
  CHECK(s.vertex_block == RationalMatrix::from_ints({{0, 1}, {1, 0}}));
  CHECK(s.ray_block.cols() == 0);
  CHECK(s.nonnegative());

  VRep ray(1, RationalMatrix::from_ints({{0}}), RationalMatrix::from_ints({{1}}));
  HRep half(1, RationalMatrix::from_ints({{-1}}), {0});
  auto r = build_slack(ray, half);
  CHECK(r.ray_block == RationalMatrix::from_ints({{1}}));

  CHECK_THROWS_AS(build_slack(fixtures::segment_v(), fixtures::box_h(2)), InputError);
}

TEST_CASE("hard pair at n = 1 has vertex block [[1,1],[1,0]]") {
  auto hp = build_hard_pair(1);
  auto s = build_slack(hp.P, hp.Q);
  CHECK(s.vertex_block == slack_by_definition(hp.P, hp.Q));
  CHECK(s.vertex_block == RationalMatrix::from_ints({{1, 1}, {1, 0}}));
}

TEST_CASE("build_slack matches the entrywise definition on random pairs") {
  Gen gen(41);
  for (int t = 0; t < 100; ++t) {
    auto [p, q] = random_pair(gen);
    CHECK(build_slack(p, q).full() == slack_by_definition(p, q));
  }
}

TEST_CASE("dilation") {
  auto q = fixtures::box_h(2);
  CHECK(dilate(q, 1).b == q.b);
  auto q2 = dilate(q, 2);
  CHECK(q2.A == q.A);
  CHECK(q2.b == RationalVector{0, 2, 0, 2});
  CHECK_THROWS_AS(dilate(q, Rational(1, 2)), InputError);

  auto cut3 = metric_polytope(3);
  auto scaled = dilate(cut3, Rational(3, 2));
  for (std::size_t i = 0; i < cut3.num_rows(); ++i) {
    bool perimeter = true;
    for (std::size_t j = 0; j < 3; ++j) perimeter = perimeter && cut3.A(i, j) == 1;
    if (perimeter) CHECK(scaled.b[i] == 3);
  }
}

TEST_CASE("shift_slack agrees with slack against the dilate") {
  auto seg = build_slack(fixtures::segment_v(), fixtures::segment_h());
  CHECK(shift_slack(seg, 1).vertex_block == seg.vertex_block);
  auto shifted = shift_slack(seg, 2);
  CHECK(shifted.vertex_block ==
        build_slack(fixtures::segment_v(), dilate(fixtures::segment_h(), 2)).vertex_block);
  CHECK(shifted.vertex_block == RationalMatrix::from_ints({{0, 1}, {2, 1}}));

  Gen gen(43);
  for (int t = 0; t < 100; ++t) {
    auto [p, q] = random_pair(gen);
    for (Rational rho : {Rational(1), Rational(3, 2), Rational(2), gen.rational(1, 5, 7)}) {
      if (rho < 1) rho = 1;
      auto lhs = build_slack(p, dilate(q, rho));
      auto rhs = shift_slack(build_slack(p, q), rho);
      CHECK(lhs.vertex_block == rhs.vertex_block);
      CHECK(lhs.ray_block == rhs.ray_block);
      CHECK(lhs.source_b == rhs.source_b);
    }
  }
}

TEST_CASE("containment witnesses and failures") {
  auto k = trivial_ef(fixtures::box_h(3));
  auto ok = ef_contains_points(fixtures::box_v(3), k);
  CHECK(ok.contained);
  CHECK(ok.point_witnesses.cols() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    auto w = ok.point_witnesses.col(j);
    auto lhs = mat_vec(k.F, w);
    auto ex = mat_vec(k.E, fixtures::box_v(3).points.row(j));
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == k.g[i] - ex[i]);
    for (const auto& v : w) CHECK(v >= 0);
  }

  VRep outside(1, RationalMatrix::from_ints({{0}, {2}, {1}}), RationalMatrix(0, 1));
  auto bad = ef_contains_points(outside, trivial_ef(fixtures::segment_h()));
  CHECK_FALSE(bad.contained);
  REQUIRE(bad.failure);
  CHECK(bad.failure->kind == GeneratorKind::point);
  CHECK(bad.failure->index == 1);
  CHECK(verify_farkas(bad.failure->witness_lp, bad.failure->certificate));

  VRep ray(1, RationalMatrix::from_ints({{0}}), RationalMatrix::from_ints({{1}}));
  auto ray_bad = ef_contains_points(ray, trivial_ef(fixtures::segment_h()));
  REQUIRE(ray_bad.failure);
  CHECK(ray_bad.failure->kind == GeneratorKind::ray);
}

TEST_CASE("derivation tables") {
  auto k = trivial_ef(fixtures::segment_h());
  HRep q(1, RationalMatrix::from_ints({{1}}), {2});
  auto d = ef_inside_hrep(k, q);
  REQUIRE(d.contained);
  CHECK(d.offsets == RationalVector{1});
  CHECK(verify_derivation(k, q, d.multipliers, d.offsets));
  CHECK_FALSE(verify_derivation(k, q, d.multipliers, RationalVector{2}));

  // box in R^{2x2} against x_11 <= 1/2
  auto box = box_ef(2);
  RationalMatrix a(1, 4);
  a(0, 0) = 1;
  auto fail = ef_inside_hrep(box, HRep(4, a, {Rational(1, 2)}));
  CHECK_FALSE(fail.contained);
  REQUIRE(fail.failure);
  CHECK(fail.failure->row == 0);
  CHECK(fail.failure->x[0] == 1);

  // hard pair n = 2, EF from the trivial factorization of its slack
  auto hp = build_hard_pair(2);
  auto s = build_slack(hp.P, hp.Q).full();
  ExtendedFormulation ef(hp.Q.A, RationalMatrix::identity(4), hp.Q.b);
  auto hd = ef_inside_hrep(ef, dilate(hp.Q, 1));
  CHECK(hd.contained);
  CHECK(verify_derivation(ef, hp.Q, hd.multipliers, hd.offsets));
  (void)s;
}

TEST_CASE("empty K is contained in anything, with a certificate") {
  // x = 0 and x = 1 at once
  ExtendedFormulation k(RationalMatrix::from_ints({{1}, {1}}), RationalMatrix(2, 0), {0, 1});
  auto d = ef_inside_hrep(k, HRep(1, RationalMatrix::from_ints({{1}}), {-5}));
  CHECK(d.contained);
  CHECK(d.k_empty);
  REQUIRE(d.emptiness);
}

TEST_CASE("sandwich statuses") {
  auto seg_ef = trivial_ef(fixtures::segment_h());
  auto r = verify_sandwich(fixtures::segment_v(), fixtures::segment_h(), 1, seg_ef);
  CHECK(r.status == SandwichStatus::pass);
  CHECK(verify_sandwich(fixtures::segment_v(), fixtures::segment_h(), 2, seg_ef).ok());

  auto wrong = verify_sandwich(fixtures::box_v(1), HRep(1, RationalMatrix::from_ints({{1}}),
                                                         {Rational(1, 2)}),
                               1, seg_ef);
  CHECK(wrong.status == SandwichStatus::fail);

  // Two points on the line y = 0 against |y| <= 1: affine hull inside Q.
  VRep flat(2, RationalMatrix::from_ints({{0, 0}, {1, 0}}), RationalMatrix(0, 2));
  HRep band(2, RationalMatrix::from_ints({{0, 1}, {0, -1}}), {1, 1});
  ExtendedFormulation line(RationalMatrix::from_ints({{0, 1}}), RationalMatrix(1, 0), {0});
  auto a = verify_sandwich(flat, band, 1, line);
  CHECK(a.status == SandwichStatus::affine);
  CHECK(a.affine_hull_inside);
  CHECK(a.recession_full_dimensional == false);

  CHECK(recession_cone_full_dimensional(HRep(1, RationalMatrix::from_ints({{-1}}), {0})));
  CHECK_FALSE(recession_cone_full_dimensional(fixtures::segment_h()));
}

TEST_CASE("slack sign agrees with sandwich against the trivial EF, and passes are monotone in rho") {
  Gen gen(47);
  int inside = 0, outside = 0;
  for (int t = 0; t < 80; ++t) {
    auto [p, q] = random_pair(gen);
    auto k = trivial_ef(q);
    const bool nonneg = build_slack(p, q).nonnegative();
    const auto report = verify_sandwich(p, q, 1, k);
    CHECK(nonneg == report.inner.contained);
    CHECK(report.outer.contained);
    (nonneg ? inside : outside)++;
    if (report.ok()) {
      for (Rational rho : {Rational(3, 2), Rational(2), Rational(7, 2)})
        CHECK(verify_sandwich(p, q, rho, k).ok());
    }
  }
  CHECK(inside > 0);
  CHECK(outside > 0);
}

TEST_CASE("homogenization") {
  // segment -> [0, inf)
  auto h = homogenize(trivial_ef(fixtures::segment_h()));
  CHECK(h.size() == 3);
  VRep half(1, RationalMatrix::from_ints({{0}, {5}}), RationalMatrix::from_ints({{1}}));
  CHECK(ef_contains_points(half, h).contained);
  auto below = ef_inside_hrep(h, HRep(1, RationalMatrix::from_ints({{-1}}), {0}));
  CHECK(below.contained);
  auto bounded = ef_inside_hrep(h, HRep(1, RationalMatrix::from_ints({{1}}), {100}));
  CHECK_FALSE(bounded.contained);

  // CUT(3) -> CUTCONE(3)
  auto cut = build_cut_family(CutFamily::cut_polytope, 3);
  auto cone = homogenize(trivial_ef(metric_polytope(3)));
  CHECK(ef_contains_points(cut, cone).contained);
  auto tri = ef_inside_hrep(cone, metric_cone(3));
  CHECK(tri.contained);
  CHECK(verify_derivation(cone, metric_cone(3), tri.multipliers, tri.offsets));
  CHECK_FALSE(ef_inside_hrep(cone, metric_polytope(3)).contained);

  // twice: two extra variables, same cone
  auto twice = homogenize(cone);
  CHECK(twice.size() == cone.size() + 1);
  CHECK(ef_contains_points(build_cut_family(CutFamily::cut_cone, 3), twice).contained);
  CHECK(ef_inside_hrep(twice, metric_cone(3)).contained);

  // generators of K stay inside after homogenizing (lambda = 1)
  Gen gen(53);
  for (int t = 0; t < 30; ++t) {
    auto [p, q] = random_pair(gen);
    auto k = trivial_ef(q);
    if (!ef_contains_points(p, k).contained) continue;
    CHECK(ef_contains_points(p, homogenize(k)).contained);
  }
}

TEST_CASE("serial and parallel derivations agree") {
  auto hp = build_hard_pair(2);
  auto k = trivial_ef(hp.Q);
  DerivationOptions serial;
  serial.parallel = false;
  auto a = ef_inside_hrep(k, dilate(hp.Q, 2), serial);
  auto b = ef_inside_hrep(k, dilate(hp.Q, 2));
  CHECK(a.contained == b.contained);
  CHECK(a.multipliers == b.multipliers);
  CHECK(a.offsets == b.offsets);
}
