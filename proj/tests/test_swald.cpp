#include <gtest/gtest.h>

#include "tatetors/swald.hpp"

using namespace tatetors;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

LinMap lin(const Field& f, std::size_t r, std::size_t c, std::vector<std::int64_t> v) {
  return LinMap(FdSpace{c, f}, FdSpace{r, f}, Matrix::from_ints(f, r, c, v));
}

// 0 ⊆ k ⊆ k² over F2 with the standard quotient k² ↠ k onto the second coordinate
SObject example() {
  return build_s_object(F2, {1, 2}, {lin(F2, 2, 1, {1, 0})}, [](int, int) { return lin(F2, 1, 2, {0, 1}); });
}

}  // namespace

TEST(SObject, SmallExamples) {
  SObject p = s_point(F2);
  EXPECT_EQ(p.n(), 0);
  EXPECT_FALSE(validate_s_object(p).has_value());

  SObject k = build_s_object(F2, {1}, {}, {});
  EXPECT_EQ(k.dim(0, 1), 1u);

  SObject x = example();
  EXPECT_EQ(x.dim(0, 1), 1u);
  EXPECT_EQ(x.dim(0, 2), 2u);
  EXPECT_EQ(x.dim(1, 2), 1u);
  EXPECT_FALSE(validate_s_object(x).has_value());
  EXPECT_TRUE(is_valid(check_ses(x.mono(0, 1, 2), x.epi(0, 1, 2))));
}

TEST(SObject, BadQuotientIsRejected) {
  // kernel of the quotient must be the image of k
  EXPECT_THROW(build_s_object(F2, {1, 2}, {lin(F2, 2, 1, {1, 0})}, [](int, int) { return lin(F2, 1, 2, {1, 0}); }),
               Error);
  EXPECT_THROW(build_s_object(F2, {2, 1}, {lin(F2, 1, 2, {1, 0})}, {}), Error);
}

TEST(SObject, FacesAndDegeneracies) {
  SObject x = example();
  SObject d0 = s_face(x, 0), d2 = s_face(x, 2), d1 = s_face(x, 1);
  EXPECT_EQ(d0.n(), 1);
  EXPECT_EQ(d0.dim(0, 1), 1u);  // a12
  EXPECT_EQ(d2.dim(0, 1), 1u);  // a01
  EXPECT_EQ(d1.dim(0, 1), 2u);  // a02
  for (int k = 0; k <= 2; ++k) {
    SObject s = s_degeneracy(x, k);
    EXPECT_FALSE(validate_s_object(s).has_value());
    EXPECT_EQ(s_face(s, k), x);
    EXPECT_EQ(s_face(s, k + 1), x);
  }
  EXPECT_THROW(s_face(x, 3), Error);
}

TEST(Skeleton, CountsAndBasepoint) {
  SSkeleton d0 = enumerate_s_skeleton(F2, 0, 3);
  for (auto& l : d0.levels) EXPECT_EQ(l.size(), 1u);

  SSkeleton d1 = enumerate_s_skeleton(F2, 1, 3);
  EXPECT_EQ(d1.levels[0].size(), 1u);
  EXPECT_EQ(d1.levels[1].size(), 2u);  // 0 and k
  EXPECT_EQ(BigInt(d1.levels[2].size()), count_ses_direct(F2, 1));
  EXPECT_EQ(d1.levels[2].size(), 3u);

  SSkeleton d2 = enumerate_s_skeleton(F2, 2, 2);
  EXPECT_EQ(BigInt(d2.levels[2].size()), count_ses_direct(F2, 2));
  SSkeleton f3 = enumerate_s_skeleton(F3, 2, 2);
  EXPECT_EQ(BigInt(f3.levels[2].size()), count_ses_direct(F3, 2));
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(BigInt(f3.levels[n].size()), s_level_count(F3, 2, n));

  EXPECT_THROW(enumerate_s_skeleton(F3, 2, 4, 1000), Error);
}

TEST(Skeleton, SimplicialIdentities) {
  SSkeleton sk = enumerate_s_skeleton(F2, 2, 4);
  SkeletonReport r = check_skeleton_identities(sk);
  EXPECT_TRUE(r.pass()) << r.violations.front();
  EXPECT_GT(r.checked, 1000u);
  for (int n = 0; n <= 4; ++n)
    for (auto& x : sk.levels[n]) ASSERT_FALSE(validate_s_object(x).has_value());
  EXPECT_NO_THROW(skeleton_as_simplicial_set(sk));
}

TEST(Theories, DimensionIsADegreeZeroTorsor) {
  SSkeleton sk = enumerate_s_skeleton(F2, 2, 3);
  EXPECT_TRUE(verify_dim_theory(sk, DimTheory::universal()).pass());
  AbelianGroup z3 = AbelianGroup::cyclic(3);
  EXPECT_TRUE(verify_dim_theory(sk, DimTheory{GroupElem::of(z3, 2)}).pass());
  // χ(k) = 1, χ(k²) = 3 is not additive
  TheoryReport bad = verify_dim_theory(sk, AbelianGroup::integers(), [](const FdSpace& a) {
    return GroupElem::of(AbelianGroup::integers(), a.dim == 2 ? 3 : static_cast<std::int64_t>(a.dim));
  });
  EXPECT_FALSE(bad.pass());
}

TEST(Theories, DeterminantIsADegreeOneTorsor) {
  SSkeleton sk = enumerate_s_skeleton(F2, 2, 3);
  TheoryReport r = verify_det_theory(sk, DetTheory{});
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, sk.levels[2].size() + sk.levels[3].size());

  SSkeleton s3 = enumerate_s_skeleton(F3, 2, 3);
  EXPECT_TRUE(verify_det_theory(s3, DetTheory{}).pass());
  // flip the sign of λ on one sequence k ↪ k² ↠ k
  SObject target = s3.levels[2].back();
  for (auto& x : s3.levels[2])
    if (x.dim(0, 1) == 1 && x.dim(0, 2) == 2) {
      target = x;
      break;
    }
  DetTheory faulty;
  faulty.fault = [&](const LinMap& i, const LinMap& j) {
    return i == target.mono(0, 1, 2) && j == target.epi(0, 1, 2) ? Scalar(F3, -1) : Scalar(F3, 1);
  };
  TheoryReport f = verify_det_theory(s3, faulty);
  EXPECT_FALSE(f.pass());
  EXPECT_NE(f.witnesses.front().find("E="), std::string::npos);
}
