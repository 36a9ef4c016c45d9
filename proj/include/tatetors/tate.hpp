// Tate spaces k((t))^n, their lattices (the Sato Grassmannian), relative index,
// admissible sequences given by Laurent matrices, and lifting/projecting lattices.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "tatetors/exactcat.hpp"
#include "tatetors/laurent.hpp"

namespace tatetors {

struct TateSpace {
  std::size_t rank = 0;
  Field field;
  friend bool operator==(const TateSpace&, const TateSpace&) = default;
};

// L with t^hi O^n ⊆ L ⊆ t^lo O^n, stored as the subspace L / t^hi O^n of
// t^lo O^n / t^hi O^n. Coordinate of t^e·unit_i is (e - lo) * n + i.
class Lattice {
 public:
  Lattice() = default;

  static Lattice normalize(const TateSpace& space, std::int64_t lo, std::int64_t hi, const Matrix& raw_basis) {
    if (lo > hi) throw Error("lattice bounds: lo > hi");
    std::size_t width = space.rank * static_cast<std::size_t>(hi - lo);
    if (raw_basis.cols() != width && !(raw_basis.rows() == 0))
      throw Error("lattice basis has " + std::to_string(raw_basis.cols()) + " coordinates, expected " +
                  std::to_string(width));
    Matrix basis = raw_basis.rows() ? raw_basis : Matrix(space.field, 0, width);
    return from_subspace(space, lo, hi, t_closure(rref_basis(basis), space.rank));
  }

  // Smallest t-stable subspace of the window containing s.
  static Subspace t_closure(Subspace s, std::size_t n) {
    while (true) {
      Subspace next = join(s, t_shift(s, n));
      if (next.dim() == s.dim()) return s;
      s = std::move(next);
    }
  }
  static bool is_t_stable(const Subspace& s, std::size_t n) { return s.contains(t_shift(s, n)); }

  static Lattice from_subspace(const TateSpace& space, std::int64_t lo, std::int64_t hi, Subspace sub) {
    const std::size_t n = space.rank;
    if (!(sub.field() == space.field) && sub.ambient_dim()) throw Error("lattice: field mismatch");
    if (sub.ambient_dim() != n * static_cast<std::size_t>(hi - lo)) throw Error("lattice: window size mismatch");
    if (n && !is_t_stable(sub, n)) throw Error("lattice: subspace is not an O-submodule");
    Lattice L;
    L.space_ = space;
    if (n == 0) {
      L.sub_ = Subspace(space.field, 0);
      return L;
    }
    // lower hi while the top block lies in sub
    while (hi > lo) {
      std::size_t w = n * static_cast<std::size_t>(hi - lo);
      Matrix block(space.field, n, w);
      for (std::size_t i = 0; i < n; ++i) block.set_int(i, w - n + i, 1);
      if (!sub.contains_vector(block)) break;
      Matrix kept = sub.basis().block(0, 0, sub.dim(), w - n);
      --hi;
      sub = rref_basis(kept.rows() ? kept : Matrix(space.field, 0, w - n));
    }
    // raise lo while sub vanishes on the bottom block
    while (lo < hi) {
      bool vanishes = true;
      for (std::size_t r = 0; r < sub.dim() && vanishes; ++r)
        for (std::size_t i = 0; i < n; ++i)
          if (!sub.basis().entry_zero(r, i)) {
            vanishes = false;
            break;
          }
      if (!vanishes) break;
      std::size_t w = n * static_cast<std::size_t>(hi - lo);
      Matrix kept = sub.basis().block(0, n, sub.dim(), w - n);
      ++lo;
      sub = rref_basis(kept.rows() ? kept : Matrix(space.field, 0, w - n));
    }
    if (lo == hi) sub = Subspace(space.field, 0);
    L.lo_ = lo;
    L.hi_ = hi;
    L.sub_ = std::move(sub);
    return L;
  }

  // t^a O^n
  static Lattice standard(const TateSpace& space, std::int64_t a = 0) {
    Lattice L;
    L.space_ = space;
    L.sub_ = Subspace(space.field, 0);
    if (space.rank) L.lo_ = L.hi_ = a;
    return L;
  }
  // ⊕_i t^{a_i} O
  static Lattice diagonal(const TateSpace& space, const std::vector<std::int64_t>& a) {
    if (a.size() != space.rank) throw Error("diagonal lattice: exponent count differs from rank");
    if (a.empty()) return standard(space);
    std::int64_t lo = *std::min_element(a.begin(), a.end()), hi = *std::max_element(a.begin(), a.end());
    std::size_t n = space.rank;
    Matrix basis(space.field, 0, n * static_cast<std::size_t>(hi - lo));
    for (std::size_t i = 0; i < n; ++i)
      for (std::int64_t e = a[i]; e < hi; ++e) {
        Matrix row(space.field, 1, basis.cols());
        row.set_int(0, static_cast<std::size_t>(e - lo) * n + i, 1);
        basis = Matrix::vstack(basis, row);
      }
    return normalize(space, lo, hi, basis);
  }
  static Lattice zero_space_lattice(const Field& f) { return standard(TateSpace{0, f}); }

  const TateSpace& space() const { return space_; }
  std::size_t rank() const { return space_.rank; }
  const Field& field() const { return space_.field; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const Subspace& sub() const { return sub_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.space_ == b.space_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.sub_ == b.sub_;
  }

  // L / t^HI O^n inside t^LO O^n / t^HI O^n, for LO ≤ lo, HI ≥ hi.
  Subspace in_window(std::int64_t LO, std::int64_t HI) const {
    if (LO > lo_ || HI < hi_) throw Error("window does not contain lattice bounds");
    std::size_t n = rank();
    std::size_t w = n * static_cast<std::size_t>(HI - LO);
    std::size_t off = n * static_cast<std::size_t>(lo_ - LO);
    std::size_t top = n * static_cast<std::size_t>(HI - hi_);
    Matrix m(field(), sub_.dim() + top, w);
    for (std::size_t r = 0; r < sub_.dim(); ++r)
      for (std::size_t c = 0; c < sub_.ambient_dim(); ++c)
        if (!sub_.basis().entry_zero(r, c)) m.set(r, off + c, sub_.basis().at(r, c));
    for (std::size_t k = 0; k < top; ++k) m.set_int(sub_.dim() + k, w - top + k, 1);
    return rref_basis(m);
  }

  // Exact polynomial generators over O: representatives of sub, then t^hi·unit_i.
  std::vector<LaurentVector> generators() const {
    std::vector<LaurentVector> out;
    for (std::size_t r = 0; r < sub_.dim(); ++r) out.push_back(window_row_to_vector(sub_.basis().row(r), lo_));
    for (std::size_t i = 0; i < rank(); ++i) {
      LaurentVector v(rank(), LaurentPoly(field()));
      v[i] = LaurentPoly::monomial(field(), 1, hi_);
      out.push_back(v);
    }
    return out;
  }

  bool contains_vector(const LaurentVector& v) const {
    if (v.size() != rank()) throw Error("vector rank mismatch");
    for (auto& p : v)
      if (!p.is_zero() && p.valuation() < lo_) return false;
    return sub_.contains_vector(vector_to_window_row(v, lo_, hi_));
  }

  std::string str() const {
    std::string s = "lattice(rank=" + std::to_string(rank()) + ", lo=" + std::to_string(lo_) +
                    ", hi=" + std::to_string(hi_) + ", dim=" + std::to_string(sub_.dim()) + ")";
    return s;
  }

  // Window coordinate conversions.
  LaurentVector window_row_to_vector(const Matrix& row, std::int64_t lo) const {
    std::size_t n = rank();
    LaurentVector v(n, LaurentPoly(field()));
    for (std::size_t c = 0; c < row.cols(); ++c)
      if (!row.entry_zero(0, c)) v[c % n].add_term(row.at(0, c), lo + static_cast<std::int64_t>(c / n));
    return v;
  }
  // Drops terms of exponent ≥ HI; throws if a term lies below LO.
  Matrix vector_to_window_row(const LaurentVector& v, std::int64_t LO, std::int64_t HI) const {
    std::size_t n = rank();
    Matrix row(field(), 1, n * static_cast<std::size_t>(HI - LO));
    for (std::size_t i = 0; i < n; ++i)
      for (auto& [e, c] : v[i].terms()) {
        if (e >= HI) continue;
        if (e < LO) throw Error("vector has terms below the window");
        row.set(0, static_cast<std::size_t>(e - LO) * n + i, c);
      }
    return row;
  }

 private:
  static Subspace t_shift(const Subspace& s, std::size_t n) {
    std::size_t w = s.ambient_dim();
    Matrix m(s.field(), s.dim(), w);
    for (std::size_t r = 0; r < s.dim(); ++r)
      for (std::size_t c = 0; c + n < w; ++c)
        if (!s.basis().entry_zero(r, c)) m.set(r, c + n, s.basis().at(r, c));
    return rref_basis(m);
  }

  TateSpace space_;
  std::int64_t lo_ = 0, hi_ = 0;
  Subspace sub_;
};

inline Lattice lattice_normalize(const TateSpace& space, std::int64_t lo, std::int64_t hi, const Matrix& raw_basis) {
  return Lattice::normalize(space, lo, hi, raw_basis);
}

namespace detail {
inline void same_space(const Lattice& a, const Lattice& b) {
  if (!(a.space() == b.space())) throw Error("lattices live in different spaces");
}
inline std::pair<std::int64_t, std::int64_t> common_window(const Lattice& a, const Lattice& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}
}  // namespace detail

inline bool lattice_contains(const Lattice& a, const Lattice& b) {
  detail::same_space(a, b);
  auto [LO, HI] = detail::common_window(a, b);
  return a.in_window(LO, HI).contains(b.in_window(LO, HI));
}

inline Lattice lattice_meet(const Lattice& a, const Lattice& b) {
  detail::same_space(a, b);
  auto [LO, HI] = detail::common_window(a, b);
  return Lattice::from_subspace(a.space(), LO, HI, meet(a.in_window(LO, HI), b.in_window(LO, HI)));
}

inline Lattice lattice_join(const Lattice& a, const Lattice& b) {
  detail::same_space(a, b);
  auto [LO, HI] = detail::common_window(a, b);
  return Lattice::from_subspace(a.space(), LO, HI, join(a.in_window(LO, HI), b.in_window(LO, HI)));
}

// dim(a / a∩b) - dim(b / a∩b)
inline std::int64_t relative_index(const Lattice& a, const Lattice& b) {
  detail::same_space(a, b);
  auto [LO, HI] = detail::common_window(a, b);
  return static_cast<std::int64_t>(a.in_window(LO, HI).dim()) - static_cast<std::int64_t>(b.in_window(LO, HI).dim());
}

// The finite space big/small for small ⊆ big, with canonical complement basis.
struct LatticeQuotient {
  std::int64_t lo = 0, hi = 0;  // common window
  Subspace small_w, big_w;
  Matrix basis;  // rows: echelon complement of small in big

  std::size_t dim() const { return basis.rows(); }
  // Coordinates of an element of big (window row) in the complement basis.
  Matrix coordinates(const Matrix& row) const {
    Matrix red = small_w.reduce(row);
    return rref_basis(basis).coordinates(red);
  }
};

// The same quotient computed in a wider window [LO, HI); its complement basis is
// the zero-padded one of the tight window.
inline LatticeQuotient lattice_quotient(const Lattice& big, const Lattice& small, std::int64_t LO, std::int64_t HI) {
  detail::same_space(big, small);
  if (!lattice_contains(big, small)) throw Error("lattice quotient: not a sublattice");
  LatticeQuotient q;
  q.lo = LO;
  q.hi = HI;
  q.small_w = small.in_window(LO, HI);
  q.big_w = big.in_window(LO, HI);
  q.basis = complement_basis(q.big_w, q.small_w);
  if (q.basis.rows() == 0) q.basis = Matrix(big.field(), 0, q.big_w.ambient_dim());
  return q;
}

inline LatticeQuotient lattice_quotient(const Lattice& big, const Lattice& small) {
  auto [LO, HI] = detail::common_window(big, small);
  return lattice_quotient(big, small, LO, HI);
}

// ---------------------------------------------------------------------------
// Admissible sequences X' ↪ X ↠ X'' given by Laurent matrices.

struct TateSES {
  LaurentMatrix i, j;
  TateSpace sub, middle, quot;
  RationalInverse i_left, j_right;  // cached one-sided inverses over k(t)
};

enum class TateSesFailure { RankDeficientI, RankDeficientJ, CompositeNonzero, Inexact };

inline const char* to_string(TateSesFailure f) {
  switch (f) {
    case TateSesFailure::RankDeficientI: return "rank-deficient-i";
    case TateSesFailure::RankDeficientJ: return "rank-deficient-j";
    case TateSesFailure::CompositeNonzero: return "composite-nonzero";
    case TateSesFailure::Inexact: return "inexact";
  }
  return "?";
}

struct TateSesDiagnosis {
  TateSesFailure failure;
  std::string detail;
};

inline std::variant<TateSES, TateSesDiagnosis> check_tate_ses(const LaurentMatrix& i, const LaurentMatrix& j) {
  if (i.rows() != j.cols()) throw Error("tate sequence: i and j are not composable");
  if (!(i.field() == j.field())) throw Error("tate sequence: field mismatch");
  const Field& f = i.field();
  std::size_t a = i.cols(), b = i.rows(), c = j.rows();
  if (laurent_rank(i) != a) return TateSesDiagnosis{TateSesFailure::RankDeficientI, "i is not injective over k(t)"};
  if (laurent_rank(j) != c) return TateSesDiagnosis{TateSesFailure::RankDeficientJ, "j is not surjective over k(t)"};
  if (!(j * i).is_zero()) return TateSesDiagnosis{TateSesFailure::CompositeNonzero, "j*i != 0"};
  if (a + c != b)
    return TateSesDiagnosis{TateSesFailure::Inexact, "ranks " + std::to_string(a) + " + " + std::to_string(c) +
                                                         " != " + std::to_string(b)};
  return TateSES{i, j, {a, f}, {b, f}, {c, f}, left_inverse(i), right_inverse(j)};
}

inline TateSES require_tate_ses(const LaurentMatrix& i, const LaurentMatrix& j) {
  auto r = check_tate_ses(i, j);
  if (auto* d = std::get_if<TateSesDiagnosis>(&r)) throw Error(std::string("invalid tate sequence: ") + to_string(d->failure));
  return std::get<TateSES>(r);
}

namespace detail {

// Sandwich guard: every generator of `from` maps into `to`.
inline void verify_maps_into(const LaurentMatrix& m, const Lattice& from, const Lattice& to, const char* what) {
  for (auto& g : from.generators())
    if (!to.contains_vector(m.apply(g))) throw Error(std::string(what) + ": sandwich verification failed");
}

}  // namespace detail

// m^{-1}(u) for m injective over k(t), with left inverse `left`.
inline Lattice preimage_lattice(const LaurentMatrix& m, const RationalInverse& left, const Lattice& u) {
  const std::size_t a = m.cols(), b = m.rows();
  if (u.rank() != b) throw Error("preimage: lattice is not in the target space");
  TateSpace src{a, m.field()};
  if (a == 0) return Lattice::standard(src);
  auto vi = m.vmin();
  auto vb = left.vmin();
  if (!vi || !vb) throw Error("preimage: degenerate matrix");
  std::int64_t N = u.hi() - *vi;   // t^N O^a ⊆ m^{-1}(u)
  std::int64_t M = u.lo() + *vb;   // m^{-1}(u) ⊆ t^M O^a
  M = std::min(M, N);
  std::int64_t LO = std::min(u.lo(), M + *vi), HI = u.hi();
  std::size_t wsrc = a * static_cast<std::size_t>(N - M), wtgt = b * static_cast<std::size_t>(HI - LO);
  // truncated map on window coordinates
  Matrix T(m.field(), wtgt, wsrc);
  for (std::int64_t e = M; e < N; ++e)
    for (std::size_t k = 0; k < a; ++k) {
      std::size_t col = static_cast<std::size_t>(e - M) * a + k;
      for (std::size_t r = 0; r < b; ++r)
        for (auto& [f, c] : m(r, k).terms()) {
          std::int64_t x = e + f;
          if (x >= HI) continue;
          std::size_t row = static_cast<std::size_t>(x - LO) * b + r;
          T.set(row, col, T.at(row, col) + c);
        }
    }
  Subspace target = u.in_window(LO, HI);
  Matrix cond = target.quotient_map() * T;
  Lattice out = Lattice::from_subspace(src, M, N, kernel(cond.rows() ? cond : Matrix(m.field(), 0, wsrc)));
  detail::verify_maps_into(m, out, u, "preimage");
  return out;
}

// m(u) for m surjective over k(t), with right inverse `right`.
inline Lattice image_lattice(const LaurentMatrix& m, const RationalInverse& right, const Lattice& u) {
  const std::size_t b = m.cols(), c = m.rows();
  if (u.rank() != b) throw Error("image: lattice is not in the source space");
  TateSpace tgt{c, m.field()};
  if (c == 0) return Lattice::standard(tgt);
  auto vj = m.vmin();
  auto vr = right.vmin();
  if (!vj || !vr) throw Error("image: degenerate matrix");
  std::int64_t H = u.hi() - *vr;        // t^H O^c ⊆ m(u)
  std::int64_t M = u.lo() + *vj;        // m(u) ⊆ t^M O^c
  H = std::max(H, M);
  std::int64_t E = std::max(u.hi(), H - *vj);  // m(t^E O^b) ⊆ t^H O^c
  Lattice helper = Lattice::standard(tgt);
  std::vector<LaurentVector> gens;
  for (std::size_t r = 0; r < u.sub().dim(); ++r) gens.push_back(u.window_row_to_vector(u.sub().basis().row(r), u.lo()));
  for (std::int64_t e = u.hi(); e < E; ++e)
    for (std::size_t k = 0; k < b; ++k) {
      LaurentVector v(b, LaurentPoly(m.field()));
      v[k] = LaurentPoly::monomial(m.field(), 1, e);
      gens.push_back(v);
    }
  Matrix rows(m.field(), 0, c * static_cast<std::size_t>(H - M));
  for (auto& g : gens) rows = Matrix::vstack(rows, helper.vector_to_window_row(m.apply(g), M, H));
  Lattice out = Lattice::normalize(tgt, M, H, rows);
  detail::verify_maps_into(m, u, out, "image");
  return out;
}

inline Lattice lift_lattice(const TateSES& s, const Lattice& u) {
  if (!(u.space() == s.middle)) throw Error("lift: lattice is not in the middle space");
  return preimage_lattice(s.i, s.i_left, u);
}

inline Lattice project_lattice(const TateSES& s, const Lattice& u) {
  if (!(u.space() == s.middle)) throw Error("project: lattice is not in the middle space");
  return image_lattice(s.j, s.j_right, u);
}

// Image of u under an automorphism (or any k(t)-surjection).
inline Lattice apply_lattice(const LaurentMatrix& m, const Lattice& u) { return image_lattice(m, right_inverse(m), u); }

// ---------------------------------------------------------------------------
// The 3x3 grid of lattices for u1 ⊆ u2 in the middle space of a sequence.

struct LatticeGrid {
  Lattice sub1, mid1, quot1;  // u'_1, u_1, u''_1
  Lattice sub2, mid2, quot2;  // u'_2, u_2, u''_2
  std::size_t d_sub = 0, d_mid = 0, d_quot = 0;  // dims of u'_2/u'_1, u_2/u_1, u''_2/u''_1
  SES bottom_row;                                // u'_2/u'_1 ↪ u_2/u_1 ↠ u''_2/u''_1
};

struct LatticeGridDiagnosis {
  std::string reason;
};

namespace detail {

// Matrix of the map q_from -> q_to induced by m on lattice quotients.
inline Matrix induced_quotient_map(const LaurentMatrix& m, const Lattice& from_space_lattice, const LatticeQuotient& qf,
                                   const Lattice& to_space_lattice, const LatticeQuotient& qt) {
  Matrix out(m.field(), qt.dim(), qf.dim());
  for (std::size_t k = 0; k < qf.dim(); ++k) {
    LaurentVector x = from_space_lattice.window_row_to_vector(qf.basis.row(k), qf.lo);
    Matrix y = to_space_lattice.vector_to_window_row(m.apply(x), qt.lo, qt.hi);
    Matrix coords = qt.coordinates(y);
    for (std::size_t r = 0; r < qt.dim(); ++r) out.set(r, k, coords.at(0, r));
  }
  return out;
}

}  // namespace detail

inline std::variant<LatticeGrid, LatticeGridDiagnosis> lattice_grid(const TateSES& s, const Lattice& u1, const Lattice& u2,
                                                                     const std::optional<Lattice>& claimed_sub1 = {},
                                                                     const std::optional<Lattice>& claimed_sub2 = {}) {
  if (!lattice_contains(u2, u1)) return LatticeGridDiagnosis{"u1 is not contained in u2"};
  LatticeGrid g;
  g.mid1 = u1;
  g.mid2 = u2;
  g.sub1 = lift_lattice(s, u1);
  g.sub2 = lift_lattice(s, u2);
  if (claimed_sub1 && !(*claimed_sub1 == g.sub1)) return LatticeGridDiagnosis{"pullback condition fails for u'_1"};
  if (claimed_sub2 && !(*claimed_sub2 == g.sub2)) return LatticeGridDiagnosis{"pullback condition fails for u'_2"};
  g.quot1 = project_lattice(s, u1);
  g.quot2 = project_lattice(s, u2);
  LatticeQuotient qs = lattice_quotient(g.sub2, g.sub1), qm = lattice_quotient(u2, u1), qq = lattice_quotient(g.quot2, g.quot1);
  g.d_sub = qs.dim();
  g.d_mid = qm.dim();
  g.d_quot = qq.dim();
  const Field& f = u1.field();
  LinMap i(FdSpace{qs.dim(), f}, FdSpace{qm.dim(), f}, detail::induced_quotient_map(s.i, g.sub1, qs, u1, qm));
  LinMap j(FdSpace{qm.dim(), f}, FdSpace{qq.dim(), f}, detail::induced_quotient_map(s.j, u1, qm, g.quot1, qq));
  auto row = check_ses(i, j);
  if (auto* d = std::get_if<SesDiagnosis>(&row)) return LatticeGridDiagnosis{std::string("bottom row: ") + to_string(d->failure)};
  g.bottom_row = std::get<SES>(row);
  if (g.d_mid != g.d_sub + g.d_quot) return LatticeGridDiagnosis{"quotient dimensions are not additive"};
  return g;
}

// ---------------------------------------------------------------------------
// Unimodular automorphisms of k((t))^n as words in elementary and monomial-diagonal factors.

struct AutomorphismWord {
  struct Factor {
    bool diagonal;           // diag(c_i t^{e_i}) or I + c t^e E_{rs}
    std::size_t r = 0, s = 0;
    Scalar c;
    std::int64_t e = 0;
    std::vector<std::pair<Scalar, std::int64_t>> diag;
  };
  std::size_t n = 0;
  Field field;
  std::vector<Factor> factors;

  static LaurentMatrix factor_matrix(const Field& f, std::size_t n, const Factor& x, bool inverse) {
    LaurentMatrix m = LaurentMatrix::identity(f, n);
    if (x.diagonal) {
      for (std::size_t i = 0; i < n; ++i)
        m(i, i) = inverse ? LaurentPoly::monomial(x.diag[i].first.inverse(), -x.diag[i].second)
                          : LaurentPoly::monomial(x.diag[i].first, x.diag[i].second);
    } else {
      m(x.r, x.s) = LaurentPoly::monomial(inverse ? -x.c : x.c, x.e);
    }
    return m;
  }
  LaurentMatrix matrix() const {
    LaurentMatrix m = LaurentMatrix::identity(field, n);
    for (auto& x : factors) m = m * factor_matrix(field, n, x, false);
    return m;
  }
  LaurentMatrix inverse() const {
    LaurentMatrix m = LaurentMatrix::identity(field, n);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) m = m * factor_matrix(field, n, *it, true);
    return m;
  }
};

// Coordinate embedding k^a -> k^b at offset `at`, and coordinate projection k^b -> k^c from offset `from`.
inline LaurentMatrix coordinate_embedding(const Field& f, std::size_t b, std::size_t a, std::size_t at = 0) {
  LaurentMatrix m(f, b, a);
  for (std::size_t k = 0; k < a; ++k) m(at + k, k) = LaurentPoly::monomial(f, 1, 0);
  return m;
}
inline LaurentMatrix coordinate_projection(const Field& f, std::size_t c, std::size_t b, std::size_t from) {
  LaurentMatrix m(f, c, b);
  for (std::size_t k = 0; k < c; ++k) m(k, from + k) = LaurentPoly::monomial(f, 1, 0);
  return m;
}

// 0 → k((t))^a → k((t))^{a+c} → k((t))^c → 0, coordinate split.
inline TateSES split_ses(const Field& f, std::size_t a, std::size_t c) {
  return require_tate_ses(coordinate_embedding(f, a + c, a), coordinate_projection(f, c, a + c, a));
}

// ---------------------------------------------------------------------------
// Filtrations X1 ↪ X2 ↪ X3 from coordinate splits twisted by automorphisms.

struct TateChain {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  TateSES s12;    // X1 ↪ X2 ↠ X2/X1
  TateSES s23;    // X2 ↪ X3 ↠ X3/X2
  TateSES s13;    // X1 ↪ X3 ↠ X3/X1
  TateSES squot;  // X2/X1 ↪ X3/X1 ↠ X3/X2
};

// alpha_k twists X_k, beta_21, beta_32, beta_31 twist the quotients.
inline TateChain twisted_chain(const Field& f, std::size_t n1, std::size_t n2, std::size_t n3, const AutomorphismWord& alpha1,
                               const AutomorphismWord& alpha2, const AutomorphismWord& alpha3, const AutomorphismWord& beta21,
                               const AutomorphismWord& beta32, const AutomorphismWord& beta31) {
  std::size_t m2 = n1 + n2, m3 = m2 + n3;
  if (alpha1.n != n1 || alpha2.n != m2 || alpha3.n != m3 || beta21.n != n2 || beta32.n != n3 || beta31.n != n2 + n3)
    throw Error("twisted chain: automorphism sizes do not match");
  LaurentMatrix i12 = alpha2.matrix() * coordinate_embedding(f, m2, n1) * alpha1.inverse();
  LaurentMatrix i23 = alpha3.matrix() * coordinate_embedding(f, m3, m2) * alpha2.inverse();
  LaurentMatrix j2 = beta21.matrix() * coordinate_projection(f, n2, m2, n1) * alpha2.inverse();
  LaurentMatrix j3 = beta32.matrix() * coordinate_projection(f, n3, m3, m2) * alpha3.inverse();
  LaurentMatrix j13 = beta31.matrix() * coordinate_projection(f, n2 + n3, m3, n1) * alpha3.inverse();
  LaurentMatrix iq = beta31.matrix() * coordinate_embedding(f, n2 + n3, n2) * beta21.inverse();
  LaurentMatrix jq = beta32.matrix() * coordinate_projection(f, n3, n2 + n3, n2) * beta31.inverse();
  return {n1, n2, n3, require_tate_ses(i12, j2), require_tate_ses(i23, j3), require_tate_ses(i23 * i12, j13),
          require_tate_ses(iq, jq)};
}

struct ChainCheck {
  Lattice u1, u21, u32;        // lift then project
  Lattice u1_direct, w, u21_alt, u32_alt;  // via X3/X1
  bool u1_equal = false, u21_equal = false, u32_equal = false;
  bool ok() const { return u1_equal && u21_equal && u32_equal; }
};

// Both routes from U ∈ Γ(X3) to the graded pieces of the filtration.
inline ChainCheck check_chain(const TateChain& c, const Lattice& u) {
  ChainCheck r;
  Lattice u2 = lift_lattice(c.s23, u);
  r.u32 = project_lattice(c.s23, u);
  r.u1 = lift_lattice(c.s12, u2);
  r.u21 = project_lattice(c.s12, u2);
  r.u1_direct = lift_lattice(c.s13, u);
  r.w = project_lattice(c.s13, u);
  r.u21_alt = lift_lattice(c.squot, r.w);
  r.u32_alt = project_lattice(c.squot, r.w);
  r.u1_equal = r.u1 == r.u1_direct;
  r.u21_equal = r.u21 == r.u21_alt;
  r.u32_equal = r.u32 == r.u32_alt;
  return r;
}

// ---------------------------------------------------------------------------
// Random generators for property suites.

inline Scalar random_scalar(std::mt19937_64& rng, const Field& f, bool nonzero = false) {
  std::int64_t lo = f.is_prime() ? 0 : -3, hi = f.is_prime() ? f.characteristic() - 1 : 3;
  if (nonzero && f.is_prime()) lo = 1;
  while (true) {
    Scalar s(f, std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
    if (!nonzero || !s.is_zero()) return s;
  }
}

inline Lattice random_lattice(std::mt19937_64& rng, const TateSpace& space, std::int64_t lo_min, std::int64_t span) {
  std::uniform_int_distribution<std::int64_t> d(0, span);
  std::int64_t lo = lo_min + d(rng), hi = lo + d(rng);
  std::size_t w = space.rank * static_cast<std::size_t>(hi - lo);
  std::size_t k = w ? std::uniform_int_distribution<std::size_t>(0, w)(rng) : 0;
  Matrix m(space.field, k, w);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < w; ++c) m.set(r, c, random_scalar(rng, space.field));
  return Lattice::normalize(space, lo, hi, m);
}

inline AutomorphismWord random_automorphism(std::mt19937_64& rng, const Field& f, std::size_t n, std::size_t factors,
                                            std::int64_t emin = -2, std::int64_t emax = 2) {
  AutomorphismWord w{n, f, {}};
  if (n == 0) return w;
  std::uniform_int_distribution<std::int64_t> ed(emin, emax);
  std::uniform_int_distribution<std::size_t> id(0, n - 1);
  for (std::size_t k = 0; k < factors; ++k) {
    AutomorphismWord::Factor x;
    x.diagonal = n == 1 || std::uniform_int_distribution<int>(0, 3)(rng) == 0;
    if (x.diagonal) {
      for (std::size_t i = 0; i < n; ++i) x.diag.emplace_back(random_scalar(rng, f, true), ed(rng));
    } else {
      x.r = id(rng);
      do x.s = id(rng);
      while (x.s == x.r);
      x.c = random_scalar(rng, f, true);
      x.e = ed(rng);
    }
    w.factors.push_back(std::move(x));
  }
  return w;
}

inline TateChain random_twisted_chain(std::mt19937_64& rng, const Field& f, std::size_t n1, std::size_t n2, std::size_t n3,
                                      std::size_t factors = 2) {
  std::size_t m2 = n1 + n2, m3 = m2 + n3;
  return twisted_chain(f, n1, n2, n3, random_automorphism(rng, f, n1, factors), random_automorphism(rng, f, m2, factors),
                       random_automorphism(rng, f, m3, factors), random_automorphism(rng, f, n2, factors),
                       random_automorphism(rng, f, n3, factors), random_automorphism(rng, f, n2 + n3, factors));
}

}  // namespace tatetors
