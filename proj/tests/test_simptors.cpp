#include <gtest/gtest.h>

#include "tatetors/simptors.hpp"

using namespace tatetors;
using namespace tatetors::complexes;

namespace {

const AbelianGroup Z = AbelianGroup::integers();
const AbelianGroup Z2 = AbelianGroup::cyclic(2);

std::vector<SimplicialSet> zoo() {
  return {standard_simplex(2), standard_simplex(3), standard_simplex(4), standard_simplex(5), simplex_boundary(3),
          simplex_boundary(4), circle(), torus(), projective_plane()};
}

}  // namespace

TEST(Sset, StandardComplexesValidate) {
  EXPECT_EQ(standard_simplex(2).count(0), 3u);
  EXPECT_EQ(standard_simplex(2).count(1), 3u);
  EXPECT_EQ(standard_simplex(2).count(2), 1u);
  EXPECT_EQ(standard_simplex(4).total(), 31u);
  EXPECT_EQ(simplex_boundary(3).count(2), 4u);
  EXPECT_EQ(simplex_boundary(3).dim(), 2);
  SimplicialSet t = torus();
  EXPECT_EQ(t.count(0), 1u);
  EXPECT_EQ(t.count(1), 3u);
  EXPECT_EQ(t.count(2), 2u);
  EXPECT_EQ(projective_plane().count(2), 2u);
}

TEST(Sset, CorruptedFaceIsDiagnosed) {
  auto raw = standard_simplex(2).raw();
  // make d0 d1 disagree with d0 d0: point the 2-simplex's face 0 at s01 instead of s12
  for (auto& r : raw)
    if (r.id == "s012") r.faces[0] = "s01";
  auto v = validate_simplicial_set(raw);
  ASSERT_TRUE(std::holds_alternative<SsetDiagnosis>(v));
  auto& d = std::get<SsetDiagnosis>(v);
  EXPECT_EQ(d.kind, SsetDiagnosis::Kind::Identity);
  EXPECT_EQ(d.simplex, "s012");
  EXPECT_LT(d.i, d.j);

  auto dangling = standard_simplex(1).raw();
  dangling.back().faces[1] = "nowhere";
  auto w = validate_simplicial_set(dangling);
  ASSERT_TRUE(std::holds_alternative<SsetDiagnosis>(w));
  EXPECT_EQ(std::get<SsetDiagnosis>(w).kind, SsetDiagnosis::Kind::DanglingFace);

  auto dup = standard_simplex(1).raw();
  dup.push_back(dup.front());
  EXPECT_EQ(std::get<SsetDiagnosis>(validate_simplicial_set(dup)).kind, SsetDiagnosis::Kind::DuplicateId);
  auto count = standard_simplex(1).raw();
  count.back().faces.pop_back();
  EXPECT_EQ(std::get<SsetDiagnosis>(validate_simplicial_set(count)).kind, SsetDiagnosis::Kind::FaceCount);
  EXPECT_THROW(require_simplicial_set(count), Error);
}

TEST(Sset, RawRoundTrip) {
  for (auto& k : zoo()) EXPECT_EQ(require_simplicial_set(k.raw()), k);
}

TEST(Street, SmallSimplices) {
  SimplicialSet d2 = standard_simplex(2);
  StreetBoundaries b = street_boundaries(d2, 2, 0);
  EXPECT_EQ(b.plus.size(), 2u);
  EXPECT_EQ(b.minus, (std::vector<std::size_t>{d2.index_of(1, "s02")}));
  EXPECT_EQ(b.plus, (std::vector<std::size_t>{d2.index_of(1, "s01"), d2.index_of(1, "s12")}));
  // the naive equalities fail already here, the parity identity holds
  EXPECT_FALSE(b.literal_equalities());
  EXPECT_TRUE(b.parity_identity());
  EXPECT_THROW(street_boundaries(d2, 1, 0), Error);

  SimplicialSet d4 = standard_simplex(4);
  StreetBoundaries c = street_boundaries(d4, 4, 0);
  EXPECT_EQ(c.pp.size(), 6u);
  EXPECT_EQ(c.mm.size(), 4u);
  EXPECT_EQ(c.pm.size(), 4u);
  EXPECT_EQ(c.mp.size(), 6u);
  EXPECT_TRUE(c.parity_identity());
}

TEST(Street, ParityIdentityEverywhere) {
  for (auto& k : zoo())
    for (int d = 2; d <= k.dim(); ++d)
      for (std::size_t s = 0; s < k.count(d); ++s) ASSERT_TRUE(street_boundaries(k, d, s).parity_identity());
}

TEST(Cochains, CoboundarySquaresToZero) {
  std::mt19937_64 rng(3);
  AbelianGroup g = AbelianGroup::parse("Z+Z/4");
  for (auto& k : zoo())
    for (int n = 0; n + 2 <= k.dim(); ++n)
      for (int trial = 0; trial < 10; ++trial) {
        Cochain c = random_cochain(rng, k, n, g);
        ASSERT_TRUE(coboundary(coboundary(c)).is_zero());
      }
}

TEST(Cochains, CoboundaryMatrixMatchesOperator) {
  std::mt19937_64 rng(5);
  SimplicialSet k = standard_simplex(3);
  Cochain c = random_cochain(rng, k, 1, Z);
  IntMatrix m = coboundary_matrix(k, 1);
  Cochain dc = coboundary(c);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(r, j) * c[j].coords()[0];
    EXPECT_EQ(s, dc[r].coords()[0]);
  }
}

TEST(Pasting, ZeroAlphaGivesZero) {
  MultTorsorRep t = MultTorsorRep::from_cochain(Cochain(standard_simplex(3), 2, Z));
  EvenOdd eo = evaluate_even_odd(t, 0);
  EXPECT_TRUE(eo.E.is_zero());
  EXPECT_TRUE(eo.O.is_zero());
  EXPECT_TRUE(eo.well_typed());
}

TEST(Pasting, DegreeOneSourcesAndTargets) {
  SimplicialSet k = standard_simplex(3);
  MultTorsorRep t = MultTorsorRep::from_cochain(Cochain(k, 2, Z));
  EvenOdd eo = evaluate_even_odd(t, 0);
  std::vector<std::size_t> src{k.index_of(1, "s01"), k.index_of(1, "s12"), k.index_of(1, "s23")};
  std::sort(src.begin(), src.end());
  EXPECT_EQ(eo.even.source, src);
  EXPECT_EQ(eo.even.target, (std::vector<std::size_t>{k.index_of(1, "s03")}));
  EXPECT_EQ(eo.even.order, (std::vector<int>{0, 2}));
  EXPECT_EQ(eo.odd.order, (std::vector<int>{3, 1}));
}

TEST(Pasting, DegreeZeroIsAdditivity) {
  // χ on edges of a triangle: E = χ(12) + χ(01), O = χ(02)
  SimplicialSet k = standard_simplex(2);
  Cochain chi = Cochain::of_ints(k, 1, Z, {0, 0, 0});
  chi.set(k.index_of(1, "s01"), GroupElem::of(Z, 2));
  chi.set(k.index_of(1, "s12"), GroupElem::of(Z, 3));
  chi.set(k.index_of(1, "s02"), GroupElem::of(Z, 5));
  EvenOdd eo = evaluate_even_odd(MultTorsorRep::from_cochain(chi), 0);
  EXPECT_EQ(eo.E, GroupElem::of(Z, 5));
  EXPECT_EQ(eo.O, GroupElem::of(Z, 5));
  chi.set(k.index_of(1, "s02"), GroupElem::of(Z, 4));
  EXPECT_FALSE(check_mult_torsor(MultTorsorRep::from_cochain(chi)).pass);
}

TEST(Pasting, SymbolicIdentityDegreesZeroToTwo) {
  for (auto& k : zoo())
    for (int d = 0; d <= 2; ++d)
      for (std::size_t tau = 0; tau < k.count(d + 2); ++tau) ASSERT_TRUE(pasting_identity(k, d, tau).ok());
}

TEST(Pasting, RandomDegreeThree) {
  std::mt19937_64 rng(11);
  SimplicialSet k = standard_simplex(5);
  AbelianGroup g = AbelianGroup::parse("Z+Z/3");
  for (int trial = 0; trial < 20; ++trial) {
    Cochain a = random_cochain(rng, k, 4, g);
    MultTorsorRep t = MultTorsorRep::from_cochain(a);
    EvenOdd eo = evaluate_even_odd(t, 0);
    ASSERT_TRUE(eo.well_typed());
    ASSERT_EQ(eo.E - eo.O, coboundary(a)[0]);
  }
}

TEST(MultTorsor, CoboundariesPassRandomFail) {
  std::mt19937_64 rng(13);
  for (auto& k : zoo())
    for (int d = 0; d + 2 <= k.dim(); ++d) {
      Cochain x = random_cochain(rng, k, d, Z);
      EXPECT_TRUE(check_mult_torsor(MultTorsorRep::from_cochain(coboundary(x))).pass);
      EXPECT_TRUE(check_mult_torsor(MultTorsorRep::from_cochain(Cochain(k, d + 1, Z))).pass);
    }
  SimplicialSet k = standard_simplex(3);
  Cochain bad = Cochain::of_ints(k, 2, Z, {1, 0, 0, 0});
  MultTorsorReport r = check_mult_torsor(MultTorsorRep::from_cochain(bad));
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].tau, "s0123");
  EXPECT_EQ(r.violations[0].e_minus_o, coboundary(bad)[0]);
}

TEST(Cohomology, Oracles) {
  EXPECT_EQ(cohomology(circle(), 1, Z).group().str(), "Z");
  EXPECT_EQ(cohomology(circle(), 0, Z).group().str(), "Z");
  EXPECT_EQ(cohomology(simplex_boundary(3), 2, Z).group().str(), "Z");
  EXPECT_EQ(cohomology(simplex_boundary(3), 1, Z).group().str(), "0");
  EXPECT_EQ(cohomology(torus(), 2, Z).group().str(), "Z");
  EXPECT_EQ(cohomology(torus(), 1, Z).group().str(), "Z+Z");
  EXPECT_EQ(cohomology(projective_plane(), 2, Z2).group().str(), "Z/2");
  EXPECT_EQ(cohomology(projective_plane(), 2, Z).group().str(), "Z/2");
  EXPECT_EQ(cohomology(projective_plane(), 1, Z).group().str(), "0");
  EXPECT_EQ(cohomology(projective_plane(), 1, Z2).group().str(), "Z/2");
  EXPECT_EQ(cohomology(simplex_boundary(4), 3, AbelianGroup::cyclic(5)).group().str(), "Z/5");
  EXPECT_EQ(cohomology(projective_plane(), 2, AbelianGroup::parse("Z+Z/2")).group().str(), "Z/2+Z/2");
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(cohomology(standard_simplex(4), n, Z).group().is_trivial());
  EXPECT_EQ(cohomology(standard_simplex(4), 0, Z).group().str(), "Z");
  EXPECT_THROW(cohomology(circle(), -1, Z), Error);
}

TEST(Cohomology, RepresentativesAreCocyclesOfTheirClass) {
  for (auto& k : zoo())
    for (int n = 0; n <= k.dim(); ++n)
      for (auto& g : {Z, Z2, AbelianGroup::cyclic(3)}) {
        Cohomology h = cohomology(k, n, g);
        auto reps = h.representatives();
        ASSERT_EQ(reps.size(), h.presentation().rank());
        for (std::size_t i = 0; i < reps.size(); ++i) {
          ASSERT_TRUE(coboundary(reps[i]).is_zero());
          std::vector<std::int64_t> e(reps.size(), 0);
          e[i] = 1;
          ASSERT_EQ(h.class_of(reps[i]), GroupElem(h.presentation(), e));
        }
      }
}

TEST(Classify, ZeroAndTorusGenerator) {
  SimplicialSet t = torus();
  EXPECT_TRUE(classify_torsor(MultTorsorRep::from_cochain(Cochain(t, 2, Z))).is_zero());
  GroupElem c = classify_torsor(MultTorsorRep::from_cochain(Cochain::of_ints(t, 2, Z, {1, 0})));
  ASSERT_EQ(c.coords().size(), 1u);
  EXPECT_EQ(std::abs(c.coords()[0]), 1);
  GroupElem c3 = classify_torsor(MultTorsorRep::from_cochain(Cochain::of_ints(t, 2, Z, {2, -1})));
  EXPECT_EQ(std::abs(c3.coords()[0]), 3);
  EXPECT_THROW(classify_torsor(MultTorsorRep::from_cochain(Cochain::of_ints(standard_simplex(3), 2, Z, {1, 0, 0, 0}))),
               Error);
}

TEST(Classify, TransporterOrNone) {
  std::mt19937_64 rng(17);
  SimplicialSet k = torus();
  for (int trial = 0; trial < 20; ++trial) {
    Cochain a = random_cochain(rng, k, 2, Z);
    Cochain x = random_cochain(rng, k, 1, Z);
    MultTorsorRep t1 = MultTorsorRep::from_cochain(a), t2 = MultTorsorRep::from_cochain(a + coboundary(x));
    auto tr = iso_decide(t1, t2);
    ASSERT_TRUE(tr.has_value());
    ASSERT_EQ(coboundary(*tr), t1.alpha - t2.alpha);
    Cochain shifted = a + Cochain::of_ints(k, 2, Z, {1, 0});
    ASSERT_FALSE(iso_decide(t1, MultTorsorRep::from_cochain(shifted)).has_value());
  }
  EXPECT_THROW(iso_decide(MultTorsorRep::from_cochain(Cochain(k, 2, Z)), MultTorsorRep::from_cochain(Cochain(k, 2, Z2))),
               Error);
}

TEST(Classify, AnchorIndependence) {
  std::mt19937_64 rng(19);
  for (auto& k : {torus(), projective_plane(), simplex_boundary(3)}) {
    Cohomology h = cohomology(k, 2, Z2);
    for (int trial = 0; trial < 10; ++trial) {
      Cochain a = random_cochain(rng, k, 2, Z2);
      MultTorsorRep t = MultTorsorRep::from_cochain(a);
      MultTorsorRep moved = t.reanchored(random_cochain(rng, k, 1, Z2));
      ASSERT_EQ(classify_torsor(h, t), classify_torsor(h, moved));
      ASSERT_TRUE(iso_decide(t, moved).has_value());
    }
  }
}

TEST(Classify, ExhaustiveCensusOverZ2) {
  struct Case {
    SimplicialSet k;
    int degree;
  };
  for (auto& c : std::vector<Case>{{projective_plane(), 1},
                                   {torus(), 1},
                                   {simplex_boundary(3), 1},
                                   {standard_simplex(3), 1},
                                   {circle(), 0},
                                   {standard_simplex(2), 0},
                                   {torus(), 0}}) {
    ClassificationCensus s = classification_census(c.k, c.degree, Z2);
    EXPECT_TRUE(s.ok()) << s.iso_classes << " classes vs |H| = " << s.cohomology_order;
  }
  EXPECT_EQ(classification_census(projective_plane(), 1, Z2).iso_classes, 2u);
  EXPECT_EQ(classification_census(torus(), 0, Z2).iso_classes, 4u);
}

TEST(Gerbe, TrivialCoboundaryAndNontrivial) {
  std::mt19937_64 rng(23);
  AbelianGroup z3 = AbelianGroup::cyclic(3);
  SimplicialSet s3 = simplex_boundary(4);
  GerbeRep trivial{s3, z3, Cochain(s3, 3, z3)};
  MultTorsorRep t = gerbe_to_torsor(trivial);
  EXPECT_EQ(t.degree, 2);
  EXPECT_TRUE(check_mult_torsor(t).pass);
  EXPECT_TRUE(classify_torsor(t).is_zero());

  for (auto& k : {s3, standard_simplex(4), standard_simplex(5)}) {
    Cochain beta = coboundary(random_cochain(rng, k, 2, z3));
    MultTorsorRep u = gerbe_to_torsor({k, z3, beta});
    ASSERT_TRUE(check_mult_torsor(u).pass);
    ASSERT_TRUE(classify_torsor(u).is_zero());
  }

  Cochain one = Cochain(s3, 3, z3);
  one.set(0, GroupElem::of(z3, 1));
  MultTorsorRep nt = gerbe_to_torsor({s3, z3, one});
  EXPECT_TRUE(check_mult_torsor(nt).pass);
  EXPECT_FALSE(classify_torsor(nt).is_zero());

  SimplicialSet d4 = standard_simplex(4);
  Cochain bad(d4, 3, z3);
  bad.set(0, GroupElem::of(z3, 1));
  GerbeRep invalid{d4, z3, bad};
  EXPECT_EQ(gerbe_violations(invalid).size(), 1u);
  EXPECT_THROW(gerbe_to_torsor(invalid), Error);
}
