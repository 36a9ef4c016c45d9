#include <gtest/gtest.h>

#include "tatetors/tate.hpp"

using namespace tatetors;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field QQ = Field::rationals();

LaurentPoly poly(const Field& f, const std::string& s) { return LaurentPoly::parse(f, s); }

LaurentMatrix lmx(const Field& f, std::size_t r, std::size_t c, const std::vector<std::string>& e) {
  LaurentMatrix m(f, r, c);
  for (std::size_t k = 0; k < e.size(); ++k) m(k / c, k % c) = poly(f, e[k]);
  return m;
}

Lattice diag(const Field& f, std::vector<std::int64_t> a) { return Lattice::diagonal(TateSpace{a.size(), f}, a); }

Matrix row(const Field& f, std::vector<std::int64_t> v) { return Matrix::from_ints(f, 1, v.size(), v); }

// All lattices of rank n with bounds inside [0, w].
std::vector<Lattice> all_lattices(const Field& f, std::size_t n, std::int64_t w) {
  TateSpace sp{n, f};
  std::vector<Lattice> out;
  for (auto& s : all_subspaces(f, n * static_cast<std::size_t>(w)))
    if (Lattice::is_t_stable(s, n)) out.push_back(Lattice::from_subspace(sp, 0, w, s));
  return out;
}

}  // namespace

TEST(LaurentPoly, ArithmeticAndDivision) {
  LaurentPoly a = poly(QQ, "1*t^-1+2*t^1"), b = poly(QQ, "3*t^2");
  EXPECT_EQ((a * b).str(), "3*t^1+6*t^3");
  EXPECT_EQ((a - a).str(), "0");
  EXPECT_EQ(a.valuation(), -1);
  EXPECT_EQ(a.degree(), 1);
  LaurentPoly p = poly(F3, "1+t"), q = poly(F3, "1+2*t^1+t^2");
  EXPECT_EQ(LaurentPoly::divide_exact(q, p), p);
  EXPECT_EQ(LaurentPoly::divide_exact(q.shifted(-4), p.shifted(3)), p.shifted(-7));
  EXPECT_THROW(LaurentPoly::divide_exact(p, q), Error);
  EXPECT_THROW(LaurentPoly::divide_exact(p, LaurentPoly(F3)), Error);
}

TEST(LaurentPoly, ParseRoundTripAndErrors) {
  for (std::string s : {"0", "1*t^0", "-1/2*t^-3+5*t^2", "2*t^-1"}) EXPECT_EQ(poly(QQ, s).str(), s);
  EXPECT_EQ(poly(QQ, "t").str(), "1*t^1");
  EXPECT_EQ(poly(QQ, "-t^-2+3").str(), "-1*t^-2+3*t^0");
  EXPECT_EQ(poly(F2, "1+1").str(), "0");
  try {
    LaurentPoly::parse(QQ, "1*t^x", 4, 10);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GE(e.column(), 10u);
  }
  EXPECT_THROW(poly(QQ, "1*s^2"), ParseError);
  EXPECT_THROW(poly(QQ, "1+"), ParseError);
  EXPECT_THROW(poly(QQ, ""), ParseError);
}

TEST(LaurentMatrix, RankDeterminantAdjugate) {
  LaurentMatrix m = lmx(QQ, 2, 2, {"1", "t", "t^-1", "1"});
  EXPECT_EQ(laurent_rank(m), 1u);
  EXPECT_TRUE(laurent_det(m).is_zero());
  LaurentMatrix n = lmx(QQ, 3, 3, {"1+t", "2", "0", "t^-1", "1", "t^2", "0", "3*t", "1"});
  LaurentPoly d = laurent_det(n);
  EXPECT_FALSE(d.is_zero());
  LaurentMatrix lhs = laurent_adjugate(n) * n;
  LaurentMatrix rhs(QQ, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) rhs(i, i) = d;
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(laurent_rank(lmx(F2, 2, 3, {"1", "t", "0", "1", "t", "0"})), 1u);
}

TEST(LaurentMatrix, OneSidedInverses) {
  LaurentMatrix i = lmx(F3, 3, 2, {"1", "t", "0", "t^-1", "1+t", "2"});
  RationalInverse l = left_inverse(i);
  EXPECT_EQ(l.numer * i, LaurentMatrix::identity(F3, 2) * lmx(F3, 2, 2, {l.denom.str(), "0", "0", l.denom.str()}));
  LaurentMatrix j = i.transpose();
  RationalInverse r = right_inverse(j);
  EXPECT_EQ(j * r.numer, lmx(F3, 2, 2, {r.denom.str(), "0", "0", r.denom.str()}));
  EXPECT_THROW(left_inverse(lmx(F3, 2, 2, {"1", "t", "1", "t"})), Error);
}

TEST(Lattice, NormalizeExamples) {
  TateSpace k1{1, QQ};
  Lattice std0 = Lattice::normalize(TateSpace{2, QQ}, 0, 0, Matrix(QQ, 0, 0));
  EXPECT_EQ(std0.lo(), 0);
  EXPECT_EQ(std0.hi(), 0);
  EXPECT_EQ(std0.sub().dim(), 0u);
  // t^{-1}O with slack bounds (−3, 2): the sandwich tightens to lo = hi = -1
  Lattice slack = Lattice::normalize(k1, -3, 2, row(QQ, {0, 0, 1, 0, 0}));
  EXPECT_EQ(slack.lo(), -1);
  EXPECT_EQ(slack.hi(), -1);
  EXPECT_EQ(slack, Lattice::standard(k1, -1));
  Lattice full = Lattice::normalize(k1, -1, 1, Matrix::identity(QQ, 2));
  EXPECT_EQ(full.lo(), -1);
  EXPECT_EQ(full.hi(), -1);
  EXPECT_TRUE(full.sub().is_zero());
  // same lattice from two windows
  EXPECT_EQ(Lattice::normalize(TateSpace{2, F3}, -2, 3, diag(F3, {-1, 1}).in_window(-2, 3).basis()), diag(F3, {-1, 1}));
  EXPECT_THROW(Lattice::normalize(k1, 0, 2, row(QQ, {1, 0, 0})), Error);
  EXPECT_THROW(Lattice::normalize(k1, 1, 0, Matrix(QQ, 0, 0)), Error);
}

TEST(Lattice, NormalizeTakesOClosureAndRejectsNonModules) {
  TateSpace k1{1, F2};
  // span{t^0} in window [0,3) generates O
  EXPECT_EQ(Lattice::normalize(k1, 0, 3, row(F2, {1, 0, 0})), Lattice::standard(k1, 0));
  EXPECT_THROW(Lattice::from_subspace(k1, 0, 3, rref_basis(row(F2, {1, 0, 0}))), Error);
}

TEST(Lattice, ContainsExamples) {
  Lattice L = diag(F3, {-1, 2});
  EXPECT_TRUE(lattice_contains(L, L));
  TateSpace k1{1, F3};
  EXPECT_TRUE(lattice_contains(Lattice::standard(k1, -1), Lattice::standard(k1, 1)));
  EXPECT_FALSE(lattice_contains(Lattice::standard(k1, 1), Lattice::standard(k1, -1)));
  TateSpace k2{2, F3};
  Lattice diagonal_line = Lattice::normalize(k2, -1, 1, row(F3, {1, 1, 0, 0}));
  EXPECT_FALSE(lattice_contains(diagonal_line, Lattice::standard(k2, 0)));
  EXPECT_TRUE(lattice_contains(diagonal_line, Lattice::standard(k2, 1)));
  EXPECT_THROW(lattice_contains(L, Lattice::standard(k1)), Error);
}

TEST(Lattice, MeetJoinExamples) {
  Lattice a = diag(F2, {-1, 0}), b = diag(F2, {0, -1});
  EXPECT_EQ(lattice_meet(a, b), diag(F2, {0, 0}));
  EXPECT_EQ(lattice_join(a, b), diag(F2, {-1, -1}));
  EXPECT_EQ(lattice_meet(a, a), a);
  EXPECT_EQ(lattice_join(a, a), a);
  Lattice small = Lattice::standard(a.space(), 5);
  EXPECT_EQ(lattice_meet(a, small), small);
  EXPECT_EQ(lattice_join(a, small), a);
}

TEST(Lattice, RelativeIndexExamples) {
  TateSpace k1{1, QQ};
  EXPECT_EQ(relative_index(Lattice::standard(k1, -2), Lattice::standard(k1, 0)), 2);
  Lattice L = diag(QQ, {3, -1});
  EXPECT_EQ(relative_index(L, L), 0);
  EXPECT_EQ(relative_index(diag(QQ, {0, 1}), diag(QQ, {-1, 0})), -2);
}

TEST(Lattice, IndexCocycleRandomized) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Field& f = trial % 3 == 0 ? F2 : trial % 3 == 1 ? F3 : QQ;
    TateSpace sp{1 + static_cast<std::size_t>(trial % 3), f};
    Lattice a = random_lattice(rng, sp, -2, 3), b = random_lattice(rng, sp, -2, 3), c = random_lattice(rng, sp, -2, 3);
    ASSERT_EQ(relative_index(a, b) + relative_index(b, c), relative_index(a, c));
  }
}

TEST(Lattice, ModularLawExhaustiveOverF2) {
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::int64_t w = 1; w <= 3; ++w) {
      auto lats = all_lattices(F2, n, w);
      for (auto& a : lats)
        for (auto& b : lats) {
          Lattice m = lattice_meet(a, b), j = lattice_join(a, b);
          ASSERT_EQ(relative_index(a, m), relative_index(j, b));
          ASSERT_TRUE(lattice_contains(a, m) && lattice_contains(b, m));
          ASSERT_TRUE(lattice_contains(j, a) && lattice_contains(j, b));
          // normalized outputs are fixed points of normalization
          ASSERT_EQ(Lattice::normalize(m.space(), m.lo(), m.hi(), m.sub().basis()), m);
        }
    }
}

TEST(Lattice, MeetIsLargestAndJoinSmallest) {
  auto lats = all_lattices(F2, 2, 2);
  for (auto& a : lats)
    for (auto& b : lats) {
      Lattice m = lattice_meet(a, b), j = lattice_join(a, b);
      for (auto& c : lats) {
        if (lattice_contains(a, c) && lattice_contains(b, c)) {
          ASSERT_TRUE(lattice_contains(m, c));
        }
        if (lattice_contains(c, a) && lattice_contains(c, b)) {
          ASSERT_TRUE(lattice_contains(c, j));
        }
      }
    }
}

TEST(Lattice, QuotientDimensionsAreFinite) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    TateSpace sp{2, F3};
    Lattice a = random_lattice(rng, sp, -3, 3), b = random_lattice(rng, sp, -3, 3);
    Lattice m = lattice_meet(a, b);
    LatticeQuotient qa = lattice_quotient(a, m), qb = lattice_quotient(b, m);
    ASSERT_EQ(qa.dim(), qa.big_w.dim() - qa.small_w.dim());
    ASSERT_EQ(static_cast<std::int64_t>(qa.dim()) - static_cast<std::int64_t>(qb.dim()), relative_index(a, b));
  }
}

TEST(TateSes, CheckExamples) {
  EXPECT_TRUE(std::holds_alternative<TateSES>(check_tate_ses(coordinate_embedding(QQ, 2, 1), coordinate_projection(QQ, 1, 2, 1))));
  auto iso = check_tate_ses(lmx(QQ, 1, 1, {"t"}), LaurentMatrix(QQ, 0, 1));
  EXPECT_TRUE(std::holds_alternative<TateSES>(iso));
  auto bad = check_tate_ses(coordinate_embedding(QQ, 2, 1), coordinate_projection(QQ, 1, 2, 0));
  EXPECT_EQ(std::get<TateSesDiagnosis>(bad).failure, TateSesFailure::CompositeNonzero);
  auto rank_i = check_tate_ses(lmx(QQ, 2, 2, {"1", "t", "t^-1", "1"}), LaurentMatrix(QQ, 0, 2));
  EXPECT_EQ(std::get<TateSesDiagnosis>(rank_i).failure, TateSesFailure::RankDeficientI);
  auto rank_j = check_tate_ses(coordinate_embedding(QQ, 2, 1), LaurentMatrix(QQ, 1, 2));
  EXPECT_EQ(std::get<TateSesDiagnosis>(rank_j).failure, TateSesFailure::RankDeficientJ);
  auto inexact = check_tate_ses(coordinate_embedding(QQ, 3, 1), coordinate_projection(QQ, 1, 3, 2));
  EXPECT_EQ(std::get<TateSesDiagnosis>(inexact).failure, TateSesFailure::Inexact);
  EXPECT_THROW(check_tate_ses(coordinate_embedding(QQ, 2, 1), coordinate_projection(QQ, 1, 3, 2)), Error);
}

TEST(LiftProject, Examples) {
  TateSES split = split_ses(F3, 1, 1);
  Lattice u = diag(F3, {-1, 2});
  EXPECT_EQ(lift_lattice(split, u), Lattice::standard(split.sub, -1));
  EXPECT_EQ(project_lattice(split, u), Lattice::standard(split.quot, 2));

  TateSES times_t = require_tate_ses(lmx(F3, 1, 1, {"t"}), LaurentMatrix(F3, 0, 1));
  TateSpace k1{1, F3};
  EXPECT_EQ(lift_lattice(times_t, Lattice::standard(k1)), Lattice::standard(k1, -1));
  Lattice zero = project_lattice(times_t, Lattice::standard(k1));
  EXPECT_EQ(zero.rank(), 0u);
  EXPECT_EQ(zero, Lattice::zero_space_lattice(F3));

  TateSES onto_t = require_tate_ses(LaurentMatrix(F3, 1, 0), lmx(F3, 1, 1, {"t"}));
  EXPECT_EQ(project_lattice(onto_t, Lattice::standard(k1)), Lattice::standard(k1, 1));

  TateSES id = require_tate_ses(LaurentMatrix::identity(F3, 2), LaurentMatrix(F3, 0, 2));
  EXPECT_EQ(lift_lattice(id, u), u);
}

TEST(LiftProject, ExactnessRandomized) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const Field& f = trial % 2 ? F3 : QQ;
    TateChain c = random_twisted_chain(rng, f, 1, 1, 1);
    for (const TateSES* s : {&c.s12, &c.s23, &c.s13, &c.squot}) {
      Lattice u = random_lattice(rng, s->middle, -2, 3), u0 = random_lattice(rng, s->middle, -2, 3);
      ASSERT_EQ(relative_index(u, u0), relative_index(lift_lattice(*s, u), lift_lattice(*s, u0)) +
                                           relative_index(project_lattice(*s, u), project_lattice(*s, u0)));
    }
  }
}

TEST(LiftProject, TwoOrdersAgreeOnChains) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Field& f = trial % 2 ? F2 : QQ;
    TateChain c = random_twisted_chain(rng, f, 1 + trial % 2, 1, 1);
    Lattice u = random_lattice(rng, c.s23.middle, -2, 3);
    ChainCheck r = check_chain(c, u);
    ASSERT_TRUE(r.u1_equal);
    ASSERT_TRUE(r.u21_equal);
    ASSERT_TRUE(r.u32_equal);
  }
}

TEST(LatticeGrid, SplitExample) {
  TateSES s = split_ses(F2, 1, 1);
  Lattice u1 = Lattice::standard(s.middle, 0), u2 = Lattice::standard(s.middle, -1);
  auto g = std::get<LatticeGrid>(lattice_grid(s, u1, u2, Lattice::standard(s.sub, 0)));
  EXPECT_EQ(g.d_sub, 1u);
  EXPECT_EQ(g.d_mid, 2u);
  EXPECT_EQ(g.d_quot, 1u);
  EXPECT_EQ(g.quot1, Lattice::standard(s.quot, 0));

  auto same = std::get<LatticeGrid>(lattice_grid(s, u1, u1));
  EXPECT_EQ(same.d_sub + same.d_mid + same.d_quot, 0u);

  auto wrong = lattice_grid(s, u1, u2, Lattice::standard(s.sub, 1));
  ASSERT_TRUE(std::holds_alternative<LatticeGridDiagnosis>(wrong));
  EXPECT_TRUE(std::holds_alternative<LatticeGridDiagnosis>(lattice_grid(s, u2, u1)));
}

TEST(LatticeGrid, ShiftInvariance) {
  TateSES s = split_ses(F3, 1, 2);
  Lattice u1 = diag(F3, {0, 1, 2}), u2 = diag(F3, {-1, 1, 0});
  auto g = std::get<LatticeGrid>(lattice_grid(s, u1, u2));
  for (std::int64_t a : {-3, 4}) {
    Lattice v1 = diag(F3, {a, 1 + a, 2 + a}), v2 = diag(F3, {-1 + a, 1 + a, a});
    auto h = std::get<LatticeGrid>(lattice_grid(s, v1, v2));
    EXPECT_EQ(h.d_sub, g.d_sub);
    EXPECT_EQ(h.d_mid, g.d_mid);
    EXPECT_EQ(h.d_quot, g.d_quot);
  }
}

TEST(LatticeGrid, RowsExactOnTwistedSequences) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    TateChain c = random_twisted_chain(rng, F3, 1, 1, 1);
    Lattice a = random_lattice(rng, c.s13.middle, -2, 3), b = random_lattice(rng, c.s13.middle, -2, 3);
    Lattice u1 = lattice_meet(a, b), u2 = lattice_join(a, b);
    auto g = lattice_grid(c.s13, u1, u2);
    ASSERT_TRUE(std::holds_alternative<LatticeGrid>(g));
    auto& grid = std::get<LatticeGrid>(g);
    ASSERT_EQ(grid.d_mid, grid.d_sub + grid.d_quot);
  }
}
