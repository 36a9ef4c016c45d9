#include <gtest/gtest.h>

#include "tatetors/detline.hpp"

using namespace tatetors;

namespace {

const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);
const Field F7 = Field::prime(7);

LinMap map_of(const Field& f, std::size_t r, std::size_t c, std::vector<std::int64_t> v) {
  return LinMap(Matrix::from_ints(f, r, c, v));
}

Matrix random_invertible(std::mt19937_64& rng, const Field& f, std::size_t n) {
  while (true) {
    Matrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, random_scalar(rng, f));
    if (m.rank() == n) return m;
  }
}

Lattice diag(const Field& f, std::vector<std::int64_t> a) { return Lattice::diagonal(TateSpace{a.size(), f}, a); }

}  // namespace

TEST(GradedLine, DetLineExamples) {
  EXPECT_EQ(det_line(FdSpace{0, F5}), GradedLine::unit());
  GradedLine l = det_line(FdSpace{3, F5});
  EXPECT_EQ(l.degree, 3);
  EXPECT_EQ(l.label, "e1∧e2∧e3");
  Matrix to = Matrix::identity(F5, 2), from = Matrix::from_ints(F5, 2, 2, {2, 0, 0, 1});
  EXPECT_EQ(basis_change(from, to).scalar, Scalar(F5, 2));
  EXPECT_THROW(basis_change(Matrix::from_ints(F5, 1, 2, {1, 0}), Matrix::from_ints(F5, 1, 2, {0, 1})), Error);
}

TEST(GradedLine, KoszulSwap) {
  GradedLine a{1, "a"}, b{1, "b"}, c{2, "c"}, d{3, "d"}, u = GradedLine::unit();
  EXPECT_EQ(koszul_swap(F5, a, b).scalar, Scalar(F5, -1));
  EXPECT_EQ(koszul_swap(F5, u, d).scalar, Scalar(F5, 1));
  EXPECT_EQ(koszul_swap(F5, c, d).scalar, Scalar(F5, 1));
  for (std::int64_t x = -3; x <= 3; ++x)
    for (std::int64_t y = -3; y <= 3; ++y) {
      GradedLine p{x, "p"}, q{y, "q"};
      EXPECT_EQ(compose(koszul_swap(F5, q, p), koszul_swap(F5, p, q)).scalar, Scalar(F5, 1));
    }
}

TEST(Lambda, Examples) {
  DetTheory h;
  // isomorphism a ≅ b ↠ 0: λ is det of the iso
  LinMap iso = map_of(F5, 2, 2, {1, 2, 3, 4});
  FdSpace zero{0, F5};
  LineIso l = lambda_ses(h, require_ses(iso, LinMap::zero(FdSpace{2, F5}, zero)));
  EXPECT_EQ(l.scalar, iso.matrix().determinant());
  EXPECT_EQ(l.target.degree, l.source.degree);
  LinMap i = map_of(F5, 2, 1, {1, 0}), j = map_of(F5, 1, 2, {0, 1});
  EXPECT_EQ(lambda_ses(h, require_ses(i, j)).scalar, Scalar(F5, 1));
  // a section moved by an element of i(a') gives the same scalar
  LinMap moved = map_of(F5, 2, 1, {3, 1});
  EXPECT_EQ(lambda_scalar(i, j, moved), lambda_scalar(i, j));
  EXPECT_THROW(lambda_scalar(i, j, map_of(F5, 2, 1, {1, 0})), Error);
}

TEST(Lambda, DegreesAdd) {
  DetTheory h;
  for (auto& s : all_subspaces(F2, 3)) {
    LineIso l = lambda_ses(h, ses_of_subspace(s));
    EXPECT_EQ(l.source.degree, 3);
    EXPECT_EQ(l.target.degree, 3);
  }
}

TEST(Lambda, NaturalityRandomizedOverF5) {
  std::mt19937_64 rng(17);
  DetTheory h;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 3;
    auto subs = all_subspaces(F5, n);
    const Subspace& a = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    SES s = ses_of_subspace(a);
    // transport the sequence along an automorphism g of k^n
    Matrix g = random_invertible(rng, F5, n);
    Subspace ga = a.dim() ? rref_basis((g * a.basis().transpose()).transpose()) : Subspace(F5, n);
    SES t = ses_of_subspace(ga);
    LinMap gm(g);
    auto fp = factor_through_mono(t.i, compose(gm, s.i));
    auto fpp = factor_through_epi(s.j, compose(t.j, gm));
    ASSERT_TRUE(fp && fpp);
    Scalar left = h.lambda(t.i, t.j) * fp->matrix().determinant() * fpp->matrix().determinant();
    Scalar right = g.determinant() * h.lambda(s.i, s.j);
    ASSERT_EQ(left, right);
  }
}

TEST(Lambda, AssociativityOverFiltrations) {
  DetTheory h;
  for (std::size_t n = 0; n <= 3; ++n) {
    auto subs = all_subspaces(F2, n);
    for (auto& a2 : subs)
      for (auto& a1 : subs)
        if (a2.contains(a1)) {
          auto [p, q] = mult_two_paths(h, subspace_filtration(a1, a2));
          ASSERT_EQ(p, q);
        }
  }
  auto subs = all_subspaces(F5, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Subspace& a2 = subs[rng() % subs.size()];
    const Subspace& x = subs[rng() % subs.size()];
    Subspace a1 = meet(a2, x);
    auto [p, q] = mult_two_paths(h, subspace_filtration(a1, a2));
    ASSERT_EQ(p, q);
  }
}

TEST(Symmetry, GradedPassesUngradedFailsOverF5) {
  DetTheory graded{true, {}}, ungraded{false, {}};
  std::vector<std::pair<FdSpace, FdSpace>> pairs;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b) pairs.push_back({FdSpace{a, F5}, FdSpace{b, F5}});
  auto grids = all_subspace_grids(F5, 2);
  SymmetryReport g = check_symmetry(graded, pairs, grids);
  EXPECT_TRUE(g.pair_pass());
  EXPECT_TRUE(g.grid_pass());
  SymmetryReport u = check_symmetry(ungraded, pairs, grids);
  EXPECT_FALSE(u.pair_pass());
  EXPECT_FALSE(u.grid_pass());
  EXPECT_TRUE(u.criteria_agree());
  SymmetryInstance kk = check_pair(ungraded, FdSpace{1, F5}, FdSpace{1, F5});
  EXPECT_FALSE(kk.pass);
  EXPECT_EQ(kk.lhs, Scalar(F5, -1));
  EXPECT_EQ(kk.rhs, Scalar(F5, 1));
}

TEST(Symmetry, EverythingPassesOverF2) {
  auto grids = all_subspace_grids(F2, 2);
  std::vector<std::pair<FdSpace, FdSpace>> pairs{{FdSpace{1, F2}, FdSpace{1, F2}}, {FdSpace{2, F2}, FdSpace{1, F2}}};
  for (bool graded : {true, false}) {
    SymmetryReport r = check_symmetry(DetTheory{graded, {}}, pairs, grids);
    EXPECT_TRUE(r.pair_pass() && r.grid_pass());
  }
}

TEST(RelDet, DeltaExamples) {
  TateSpace k1{1, F5};
  RelDetTheory t = RelDetTheory::standard(k1);
  Lattice o = Lattice::standard(k1), tinv = Lattice::standard(k1, -1);
  LineIso id = delta_relative(t, o, o);
  EXPECT_EQ(id.scalar, Scalar(F5, 1));
  LineIso up = delta_relative(t, o, tinv);
  EXPECT_EQ(up.target.degree, up.source.degree);
  EXPECT_EQ(t.value(tinv).degree, t.value(o).degree + 1);
  EXPECT_EQ(up.scalar, Scalar(F5, 1));
  EXPECT_THROW(delta_relative(t, tinv, o), Error);
}

TEST(RelDet, DeltaSquareOnChains) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    TateSpace sp{1 + static_cast<std::size_t>(trial % 2), F5};
    RelDetTheory t{sp, random_lattice(rng, sp, -2, 3), GradedLine{trial % 3, "a"}, Scalar(F5, 1 + trial % 4)};
    Lattice a = random_lattice(rng, sp, -2, 3), b = random_lattice(rng, sp, -2, 3), c = random_lattice(rng, sp, -2, 3);
    Lattice u1 = lattice_meet(a, b), u2 = a, u3 = lattice_join(a, c);
    auto [l, r] = delta_square(t, u1, u2, u3);
    ASSERT_EQ(l, r);
    ASSERT_EQ(t.value(u3).degree, t.value(u1).degree + relative_index(u3, u1));
  }
}

TEST(RelDet, DeltaDoesNotDependOnTheWindow) {
  TateSpace sp{2, F5};
  RelDetTheory t = RelDetTheory::standard(sp);
  Lattice u = Lattice::normalize(sp, -1, 1, Matrix::from_ints(F5, 1, 4, {1, 2, 0, 0}));
  Lattice v = Lattice::standard(sp, -1);
  Scalar tight = t.delta(u, v).scalar;
  auto [LO, HI] = std::pair<std::int64_t, std::int64_t>{-3, 4};
  EXPECT_EQ(detail::delta_scalar(u, v, LO, HI), tight);
}

TEST(RelDet, HomTorsorClass) {
  TateSpace k1{1, F7};
  RelDetTheory t = RelDetTheory::standard(k1);
  auto same = hom_torsor_class(t, t);
  EXPECT_EQ(same.degree_shift, 0);
  EXPECT_EQ(*same.scalar, Scalar(F7, 1));
  auto shifted = hom_torsor_class(t.tensored(GradedLine{2, "L"}, Scalar(F7, 5)), t);
  EXPECT_EQ(shifted.degree_shift, 2);
  EXPECT_FALSE(shifted.scalar.has_value());
  auto scaled = hom_torsor_class(t.tensored(GradedLine::unit(), Scalar(F7, 5)), t);
  EXPECT_EQ(scaled.degree_shift, 0);
  EXPECT_EQ(*scaled.scalar, Scalar(F7, 5));
  // never fixed by a non-unit line
  for (std::int64_t d = -2; d <= 2; ++d)
    for (std::int64_t s = 1; s < 7; ++s) {
      if (d == 0 && s == 1) continue;
      auto c = hom_torsor_class(t.tensored(GradedLine{d, "L"}, Scalar(F7, s)), t);
      EXPECT_TRUE(c.degree_shift != 0 || !(*c.scalar == Scalar(F7, 1)));
    }
}

TEST(MuDet, SplitExamples) {
  TateSES s = split_ses(F5, 1, 1);
  MuDetTheory m = mu_det(s, RelDetTheory::standard(s.sub), RelDetTheory::standard(s.quot));
  EXPECT_EQ(m.value(diag(F5, {-1, 1})).degree, 0);
  EXPECT_EQ(m.value(Lattice::standard(s.middle)), tensor(GradedLine::unit(), GradedLine::unit()));
  RelDetTheory a{s.sub, Lattice::standard(s.sub), GradedLine{1, "a"}, Scalar(F5, 1)};
  RelDetTheory b{s.quot, Lattice::standard(s.quot), GradedLine{2, "b"}, Scalar(F5, 1)};
  EXPECT_EQ(mu_det(s, a, b).value(Lattice::standard(s.middle)), tensor(a.anchor, b.anchor));
}

TEST(MuDet, DeltaSquareOnTwistedSequences) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    TateChain c = random_twisted_chain(rng, F5, 1, 1, 0);
    RelDetTheory t1{c.s12.sub, Lattice::standard(c.s12.sub), GradedLine{trial % 2, "a"}, Scalar(F5, 2)};
    RelDetTheory t2{c.s12.quot, random_lattice(rng, c.s12.quot, -1, 2), GradedLine{1, "b"}, Scalar(F5, 3)};
    MuDetTheory m = mu_det(c.s12, t1, t2);
    Lattice a = random_lattice(rng, c.s12.middle, -2, 3), b = random_lattice(rng, c.s12.middle, -2, 3),
            d = random_lattice(rng, c.s12.middle, -2, 3);
    Lattice u1 = lattice_meet(a, b), u3 = lattice_join(a, d);
    auto [l, r] = delta_square(m, u1, a, u3);
    ASSERT_EQ(l, r);
  }
}

// Dropping the symmetry changes δ by exactly (−1)^{deg Δ''(U''_1)·dim(U'_2/U'_1)}.
TEST(MuDet, InsertedSwapCarriesTheKoszulSign) {
  TateSES s = split_ses(F5, 1, 1);
  RelDetTheory t1 = RelDetTheory::standard(s.sub);
  RelDetTheory t2{s.quot, Lattice::standard(s.quot), GradedLine{1, "b"}, Scalar(F5, 1)};
  MuDetTheory with = mu_det(s, t1, t2), without = with;
  without.insert_swap = false;
  Lattice u1 = Lattice::standard(s.middle), u2 = diag(F5, {-1, 0});
  Scalar ratio = with.delta(u1, u2).scalar / without.delta(u1, u2).scalar;
  EXPECT_EQ(ratio, Scalar(F5, -1));
  Lattice u2b = diag(F5, {-2, 0});
  EXPECT_EQ(with.delta(u1, u2b).scalar / without.delta(u1, u2b).scalar, Scalar(F5, 1));
  // the unsigned composite breaks the δ square when dim(U''_2/U''_1)·dim(U'_3/U'_2) is odd
  Lattice mid = diag(F5, {0, -1});
  auto [l, r] = delta_square(without, u1, mid, diag(F5, {-1, -1}));
  auto [l2, r2] = delta_square(with, u1, mid, diag(F5, {-1, -1}));
  EXPECT_EQ(l2, r2);
  EXPECT_NE(l, r);
}
