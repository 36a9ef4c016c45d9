#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "tatetors/exactlin.hpp"

using namespace tatetors;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

Matrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, d(rng));
  return m;
}

// All vectors of F_2^n as 1xn matrices.
std::vector<Matrix> all_vectors_f2(std::size_t n) {
  std::vector<Matrix> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Matrix v(F2, 1, n);
    for (std::size_t i = 0; i < n; ++i) v.set_int(0, i, (mask >> i) & 1);
    out.push_back(v);
  }
  return out;
}

// Set of vectors (as masks) in the span of the rows of m, by brute force over F_2.
std::set<unsigned> span_f2(const Matrix& m) {
  std::set<unsigned> out;
  for (unsigned sel = 0; sel < (1u << m.rows()); ++sel) {
    unsigned v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if ((sel >> r) & 1)
        for (std::size_t c = 0; c < m.cols(); ++c)
          if (!m.entry_zero(r, c)) v ^= 1u << c;
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Field, ParseAndPrimality) {
  EXPECT_EQ(Field::parse("F5"), F5);
  EXPECT_EQ(Field::parse("Q"), Field::rationals());
  EXPECT_THROW(Field::prime(4), Error);
  EXPECT_THROW(Field::parse("G7"), Error);
}

TEST(Scalar, ArithmeticModP) {
  Scalar a(F5, 3), b(F5, 4);
  EXPECT_EQ((a + b).mod_value(), 2);
  EXPECT_EQ((a * b).mod_value(), 2);
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ(Scalar::parse(F5, "1/2").mod_value(), 3);
  EXPECT_EQ(Scalar(F5, -1).mod_value(), 4);
  EXPECT_THROW(Scalar(F5, 0).inverse(), Error);
}

TEST(Scalar, RationalLowestTerms) {
  Field q = Field::rationals();
  Scalar a = Scalar::parse(q, "4/6");
  EXPECT_EQ(a.str(), "2/3");
  EXPECT_EQ((a * Scalar(q, 3)).str(), "2");
}

TEST(RrefBasis, Examples) {
  EXPECT_EQ(rref_basis(Matrix::identity(F2, 3)).dim(), 3u);
  EXPECT_TRUE(rref_basis(Matrix(F2, 2, 3)).is_zero());
  Subspace s = rref_basis(Matrix::from_ints(F2, 2, 3, {1, 1, 0, 0, 1, 1}));
  EXPECT_EQ(s.basis(), Matrix::from_ints(F2, 2, 3, {1, 0, 1, 0, 1, 1}));
}

TEST(RrefBasis, IdempotentAndRepresentationIndependent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Field& f = trial % 2 ? F5 : Field::rationals();
    Matrix m = random_matrix(rng, f, 3, 5);
    Subspace s = rref_basis(m);
    EXPECT_EQ(rref_basis(s.basis()), s);
    Matrix g = random_matrix(rng, f, 3, 3);
    if (g.determinant().is_zero()) continue;
    EXPECT_EQ(rref_basis(g * m), s);
  }
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel(Matrix::identity(F2, 3)).is_zero());
  EXPECT_EQ(kernel(Matrix(F3, 1, 2)).dim(), 2u);
  Matrix m = Matrix::from_ints(F2, 1, 2, {1, 1});
  std::set<unsigned> brute;
  unsigned mask = 0;
  for (auto& v : all_vectors_f2(2)) {
    if ((m * v.transpose()).is_zero()) brute.insert(mask);
    ++mask;
  }
  EXPECT_EQ(span_f2(kernel(m).basis()), brute);
  EXPECT_EQ(kernel(m).basis(), Matrix::from_ints(F2, 1, 2, {1, 1}));
}

TEST(Kernel, RankNullity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
    const Field& f = trial % 3 == 0 ? Field::rationals() : (trial % 3 == 1 ? F2 : F5);
    Matrix m = random_matrix(rng, f, r, c);
    Subspace k = kernel(m);
    EXPECT_EQ(m.rank() + k.dim(), c);
    if (k.dim()) {
      EXPECT_TRUE((m * k.basis().transpose()).is_zero());
    }
  }
}

TEST(MeetJoin, Examples) {
  Subspace e12 = rref_basis(Matrix::from_ints(F2, 2, 3, {1, 0, 0, 0, 1, 0}));
  Subspace e23 = rref_basis(Matrix::from_ints(F2, 2, 3, {0, 1, 0, 0, 0, 1}));
  auto [m, j] = subspace_meet_join(e12, e23);
  EXPECT_EQ(m, rref_basis(Matrix::from_ints(F2, 1, 3, {0, 1, 0})));
  EXPECT_EQ(j, Subspace::full(F2, 3));
  auto [m2, j2] = subspace_meet_join(e12, e12);
  EXPECT_EQ(m2, e12);
  EXPECT_EQ(j2, e12);
  Subspace zero(F2, 3);
  auto [m3, j3] = subspace_meet_join(zero, e23);
  EXPECT_EQ(m3, zero);
  EXPECT_EQ(j3, e23);
  EXPECT_THROW(meet(e12, Subspace(F2, 4)), Error);
}

// Every subspace of F_2^n, enumerated as row spaces of subsets of vectors; checked
// against brute-force vector sets.
TEST(MeetJoin, ExhaustiveModularF2) {
  for (std::size_t n = 1; n <= 4; ++n) {
    // closure of {0} under joining single vectors reaches every subspace
    std::map<std::set<unsigned>, Subspace> subs{{{0u}, Subspace(F2, n)}};
    auto vecs = all_vectors_f2(n);
    for (bool grew = true; grew;) {
      grew = false;
      auto snapshot = subs;
      for (auto& [k, s] : snapshot)
        for (auto& v : vecs) {
          Subspace t = join(s, rref_basis(v));
          grew |= subs.emplace(span_f2(t.basis()), t).second;
        }
    }
    const std::size_t expected_count[] = {0, 2, 5, 16, 67};
    EXPECT_EQ(subs.size(), expected_count[n]);
    for (auto& [sa, a] : subs)
      for (auto& [sb, b] : subs) {
        auto [m, j] = subspace_meet_join(a, b);
        std::set<unsigned> inter;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.begin()));
        EXPECT_EQ(span_f2(m.basis()), inter);
        std::set<unsigned> sum;
        for (unsigned x : sa)
          for (unsigned y : sb) sum.insert(x ^ y);
        EXPECT_EQ(span_f2(j.basis()), sum);
        EXPECT_EQ(m.dim() + j.dim(), a.dim() + b.dim());
      }
  }
}

TEST(Subspace, QuotientMapKillsSubspace) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Subspace s = rref_basis(random_matrix(rng, F5, 2, 5));
    Matrix q = s.quotient_map();
    EXPECT_EQ(q.rows(), 5 - s.dim());
    if (s.dim()) {
      EXPECT_TRUE((q * s.basis().transpose()).is_zero());
    }
    EXPECT_EQ(q * s.quotient_section().transpose(), Matrix::identity(F5, q.rows()));
  }
}

TEST(Matrix, InverseAndDeterminant) {
  Matrix a = Matrix::from_ints(Field::rationals(), 2, 2, {1, 2, 3, 4});
  EXPECT_EQ(a.determinant().str(), "-2");
  auto inv = a.inverse();
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, Matrix::identity(Field::rationals(), 2));
  EXPECT_FALSE(Matrix::from_ints(F2, 2, 2, {1, 1, 1, 1}).inverse());
}

TEST(Smith, Examples) {
  auto [f1, r1] = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(r1, 3u);
  EXPECT_EQ(f1, (std::vector<BigInt>{1, 1, 1}));
  auto [f2, r2] = smith_normal_form(IntMatrix::from_ints(2, 2, {2, 0, 0, 4}));
  EXPECT_EQ(f2, (std::vector<BigInt>{2, 4}));
  auto [f3, r3] = smith_normal_form(IntMatrix::from_ints(2, 2, {2, 4, 6, 8}));
  EXPECT_EQ(f3, (std::vector<BigInt>{2, 4}));
  EXPECT_EQ(r3, 2u);
  // diag(2,3) is not in normal form: 1, 6
  auto [f4, r4] = smith_normal_form(IntMatrix::from_ints(2, 2, {2, 0, 0, 3}));
  EXPECT_EQ(f4, (std::vector<BigInt>{1, 6}));
}

TEST(Smith, TransformsAndUnimodularInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng) * (trial % 3 + 1);
    auto s = smith_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(r));
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      EXPECT_EQ(s.invariant_factors[i + 1] % s.invariant_factors[i], 0);
    IntMatrix w = m;
    for (int k = 0; k < 6; ++k) {
      std::size_t a = rng() % r, b = rng() % r;
      if (a != b) w.add_row(a, b, d(rng));
      std::size_t x = rng() % c, y = rng() % c;
      if (x != y) w.add_col(x, y, d(rng));
      if (k == 3) w.swap_rows(a, b);
    }
    EXPECT_EQ(smith_normal_form(w), smith_normal_form(m));
  }
}

TEST(Smith, IntegerSolve) {
  IntMatrix m = IntMatrix::from_ints(2, 2, {2, 4, 6, 8});
  auto x = solve_integer(m, {BigInt(2), BigInt(6)});
  ASSERT_TRUE(x);
  EXPECT_EQ(2 * (*x)[0] + 4 * (*x)[1], 2);
  EXPECT_EQ(6 * (*x)[0] + 8 * (*x)[1], 6);
  EXPECT_FALSE(solve_integer(m, {BigInt(1), BigInt(0)}));
}
