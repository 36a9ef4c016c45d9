// The exact category of finite-dimensional vector spaces: admissible sequences,
// intersections and pushouts of admissible arrows, epi-mono factorization, 3x3 grids.
#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "tatetors/exactlin.hpp"

namespace tatetors {

struct FdSpace {
  std::size_t dim = 0;
  Field field;
  friend bool operator==(const FdSpace&, const FdSpace&) = default;
};

class LinMap {
 public:
  LinMap() = default;
  explicit LinMap(Matrix m)
      : source_{m.cols(), m.field()}, target_{m.rows(), m.field()}, matrix_(std::move(m)) {}
  LinMap(FdSpace source, FdSpace target, Matrix m) : source_(source), target_(target), matrix_(std::move(m)) {
    if (matrix_.rows() != target_.dim || matrix_.cols() != source_.dim) throw Error("matrix shape does not match spaces");
    if (!(matrix_.field() == source_.field) || !(matrix_.field() == target_.field)) throw Error("field mismatch");
  }
  static LinMap identity(const FdSpace& s) { return LinMap(s, s, Matrix::identity(s.field, s.dim)); }
  static LinMap zero(const FdSpace& s, const FdSpace& t) { return LinMap(s, t, Matrix(s.field, t.dim, s.dim)); }

  const FdSpace& source() const { return source_; }
  const FdSpace& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  const Field& field() const { return matrix_.field(); }

  bool injective() const { return matrix_.rank() == source_.dim; }
  bool surjective() const { return matrix_.rank() == target_.dim; }
  bool is_zero() const { return matrix_.is_zero(); }
  Subspace image() const { return tatetors::image(matrix_); }
  Subspace kernel() const { return tatetors::kernel(matrix_); }

  friend bool operator==(const LinMap&, const LinMap&) = default;

 private:
  FdSpace source_, target_;
  Matrix matrix_;
};

// g ∘ f
inline LinMap compose(const LinMap& g, const LinMap& f) {
  if (!(f.target() == g.source())) throw Error("maps not composable");
  return LinMap(f.source(), g.target(), g.matrix() * f.matrix());
}

// Inclusion of a subspace of k^n, from its echelon coordinates.
inline LinMap inclusion(const Subspace& s) {
  FdSpace src{s.dim(), s.field()}, tgt{s.ambient_dim(), s.field()};
  if (s.dim() == 0) return LinMap::zero(src, tgt);
  return LinMap(src, tgt, s.basis().transpose());
}
inline LinMap quotient(const Subspace& s) {
  FdSpace src{s.ambient_dim(), s.field()}, tgt{s.ambient_dim() - s.dim(), s.field()};
  return LinMap(src, tgt, s.quotient_map());
}
// Canonical section of quotient(s): unit vectors at non-pivot columns.
inline LinMap quotient_section(const Subspace& s) {
  FdSpace src{s.ambient_dim() - s.dim(), s.field()}, tgt{s.ambient_dim(), s.field()};
  return LinMap(src, tgt, s.quotient_section().transpose());
}

// Unique x with m ∘ x = f, when m is injective and im f ⊆ im m.
inline std::optional<LinMap> factor_through_mono(const LinMap& m, const LinMap& f) {
  if (!(m.target() == f.target())) throw Error("factor_through_mono: target mismatch");
  auto x = m.matrix().solve(f.matrix());
  if (!x) return std::nullopt;
  return LinMap(f.source(), m.source(), *x);
}
// Unique x with x ∘ e = f, when e is surjective and ker e ⊆ ker f.
inline std::optional<LinMap> factor_through_epi(const LinMap& e, const LinMap& f) {
  if (!(e.source() == f.source())) throw Error("factor_through_epi: source mismatch");
  auto xt = e.matrix().transpose().solve(f.matrix().transpose());
  if (!xt) return std::nullopt;
  return LinMap(e.target(), f.target(), xt->transpose());
}

// A right inverse of a surjection.
inline LinMap section_of(const LinMap& e) {
  auto s = e.matrix().solve(Matrix::identity(e.field(), e.target().dim));
  if (!s) throw Error("section_of: map is not surjective");
  return LinMap(e.target(), e.source(), *s);
}

// ---------------------------------------------------------------------------

struct SES {
  LinMap i, j;
  const FdSpace& sub() const { return i.source(); }
  const FdSpace& middle() const { return i.target(); }
  const FdSpace& quot() const { return j.target(); }
};

enum class SesFailure { NotMono, NotEpi, CompositeNonzero, InexactAtMiddle };

inline const char* to_string(SesFailure f) {
  switch (f) {
    case SesFailure::NotMono: return "not-mono";
    case SesFailure::NotEpi: return "not-epi";
    case SesFailure::CompositeNonzero: return "composite-nonzero";
    case SesFailure::InexactAtMiddle: return "inexact-at-middle";
  }
  return "?";
}

struct SesDiagnosis {
  SesFailure failure;
  std::string detail;
};

using SesCheck = std::variant<SES, SesDiagnosis>;

inline SesCheck check_ses(const LinMap& i, const LinMap& j) {
  if (!(i.target() == j.source())) throw Error("check_ses: middle objects differ");
  if (!i.injective()) return SesDiagnosis{SesFailure::NotMono, "rank(i) < dim source"};
  if (!j.surjective()) return SesDiagnosis{SesFailure::NotEpi, "rank(j) < dim target"};
  if (!compose(j, i).is_zero()) return SesDiagnosis{SesFailure::CompositeNonzero, "j*i != 0"};
  std::size_t kd = j.kernel().dim();
  if (kd != i.source().dim)
    return SesDiagnosis{SesFailure::InexactAtMiddle,
                        "dim ker j = " + std::to_string(kd) + " but dim source i = " + std::to_string(i.source().dim)};
  return SES{i, j};
}

inline bool is_valid(const SesCheck& c) { return std::holds_alternative<SES>(c); }

inline SES require_ses(const LinMap& i, const LinMap& j) {
  auto c = check_ses(i, j);
  if (auto* d = std::get_if<SesDiagnosis>(&c)) throw Error(std::string("invalid sequence: ") + to_string(d->failure));
  return std::get<SES>(c);
}

// The sequence s ↪ k^n ↠ k^n/s in canonical coordinates.
inline SES ses_of_subspace(const Subspace& s) { return require_ses(inclusion(s), quotient(s)); }

// Admissibility is routed through the sequence validator.
inline bool is_admissible_mono(const LinMap& m) {
  Subspace im = m.image();
  return is_valid(check_ses(m, quotient(im)));
}
inline bool is_admissible_epi(const LinMap& e) {
  Subspace k = e.kernel();
  return is_valid(check_ses(inclusion(k), e));
}

// ---------------------------------------------------------------------------
// (AIC): pullbacks of admissible monos.

struct Pullback {
  FdSpace p;
  LinMap into1, into2;
};

inline Pullback pullback_admissible_monos(const LinMap& m1, const LinMap& m2) {
  if (!(m1.target() == m2.target())) throw Error("pullback: targets differ");
  if (!m1.injective() || !m2.injective()) throw Error("pullback: input is not a monomorphism");
  Subspace p = meet(m1.image(), m2.image());
  LinMap inc = inclusion(p);
  return {inc.source(), *factor_through_mono(m1, inc), *factor_through_mono(m2, inc)};
}

// The unique u with into1∘u = f1 and into2∘u = f2 (f1, f2 a cone over m1, m2).
inline std::optional<LinMap> pullback_factor(const Pullback& pb, const LinMap& m1, const LinMap& m2, const LinMap& f1,
                                             const LinMap& f2) {
  if (!(compose(m1, f1) == compose(m2, f2))) return std::nullopt;
  auto u = factor_through_mono(compose(m1, pb.into1), compose(m1, f1));
  if (!u || !(compose(pb.into2, *u) == f2)) return std::nullopt;
  return u;
}

// (AIC)°: pushouts of admissible epis.
struct Pushout {
  FdSpace q;
  LinMap from1, from2;
};

inline Pushout pushout_admissible_epis(const LinMap& e1, const LinMap& e2) {
  if (!(e1.source() == e2.source())) throw Error("pushout: sources differ");
  if (!e1.surjective() || !e2.surjective()) throw Error("pushout: input is not an epimorphism");
  Subspace k = join(e1.kernel(), e2.kernel());
  LinMap q = quotient(k);
  return {q.target(), compose(q, section_of(e1)), compose(q, section_of(e2))};
}

inline std::optional<LinMap> pushout_factor(const Pushout& po, const LinMap& e1, const LinMap& e2, const LinMap& g1,
                                            const LinMap& g2) {
  if (!(compose(g1, e1) == compose(g2, e2))) return std::nullopt;
  auto u = factor_through_epi(compose(po.from1, e1), compose(g1, e1));
  if (!u || !(compose(*u, po.from2) == g2)) return std::nullopt;
  return u;
}

// ---------------------------------------------------------------------------
// Admissible squares: horizontal monos top: a ↪ b, bottom: c ↪ d; vertical epis
// left: a ↠ c, right: b ↠ d.

struct AdmissibleSquare {
  LinMap top, bottom, left, right;
};

inline bool commutes(const AdmissibleSquare& s) { return compose(s.right, s.top) == compose(s.bottom, s.left); }

// a ≅ b ×_d c
inline bool is_cartesian(const AdmissibleSquare& s) {
  if (!commutes(s)) return false;
  // pullback = ker [right | -bottom] ⊆ b ⊕ c
  Matrix m = Matrix::hstack(s.right.matrix(), s.bottom.matrix().scaled(Scalar(s.right.field(), -1)));
  std::size_t pdim = kernel(m).dim();
  Matrix to_p = Matrix::vstack(s.top.matrix(), s.left.matrix());
  return to_p.rank() == s.top.source().dim && pdim == s.top.source().dim;
}

// c ⊔_a b ≅ d
inline bool is_cocartesian(const AdmissibleSquare& s) {
  if (!commutes(s)) return false;
  // pushout = (c ⊕ b) / im (left, -top)
  Matrix rel = Matrix::vstack(s.left.matrix(), s.top.matrix().scaled(Scalar(s.top.field(), -1)));
  std::size_t qdim = s.left.target().dim + s.top.target().dim - rel.rank();
  Matrix from_q = Matrix::hstack(s.bottom.matrix(), s.right.matrix());
  return from_q.rank() == s.bottom.target().dim && qdim == s.bottom.target().dim;
}

// Attach to a pullback of monos the cokernels of p ↪ a1 and p ↪ x:
//   a1   ↪ x
//   ↓       ↓
//   a1/p ↪ x/p
inline AdmissibleSquare attach_cokernels(const Pullback& pb, const LinMap& m1) {
  Subspace p_in_a1 = pb.into1.image();
  Subspace p_in_x = compose(m1, pb.into1).image();
  LinMap left = quotient(p_in_a1), right = quotient(p_in_x);
  LinMap bottom(left.target(), right.target(),
                right.matrix() * m1.matrix() * quotient_section(p_in_a1).matrix());
  return {m1, bottom, left, right};
}

// ---------------------------------------------------------------------------
// Unique epi-mono factorization of f = witness_epi ∘ witness_mono.

struct Factorization {
  LinMap e, m;              // canonical: middle object is the echelon image
  LinMap e_alt, m_alt;      // via cokernel of the pulled-back kernel
  LinMap iso;               // the unique iso alt-middle -> canonical middle
};

inline Factorization epi_mono_factorize(const LinMap& f, const LinMap& witness_mono, const LinMap& witness_epi) {
  if (!is_admissible_mono(witness_mono)) throw Error("factorize: witness mono is not admissible");
  if (!is_admissible_epi(witness_epi)) throw Error("factorize: witness epi is not admissible");
  if (!(compose(witness_epi, witness_mono) == f)) throw Error("factorize: composite differs from f");

  Subspace im = f.image();
  LinMap m = inclusion(im);
  LinMap e = *factor_through_mono(m, f);

  // ker(witness_epi) pulled back along witness_mono, then its cokernel and the induced map.
  Pullback pb = pullback_admissible_monos(witness_mono, inclusion(witness_epi.kernel()));
  Subspace k = pb.into1.image();
  LinMap e_alt = quotient(k);
  auto m_alt = factor_through_epi(e_alt, f);
  if (!m_alt) throw Error("factorize: induced map does not exist");

  auto iso = factor_through_mono(m, *m_alt);
  if (!iso || !iso->injective() || !iso->surjective() || !(compose(*iso, e_alt) == e))
    throw Error("factorize: factorizations are not isomorphic");
  if (!e.surjective() || !m.injective() || !m_alt->injective()) throw Error("factorize: legs not admissible");
  return {e, m, e_alt, *m_alt, *iso};
}

// ---------------------------------------------------------------------------
// 3x3 grids. obj[r][c]; row r is obj[r][0] ↪ obj[r][1] ↠ obj[r][2] with maps
// hmono[r], hepi[r]; column c is obj[0][c] ↪ obj[1][c] ↠ obj[2][c] with vmono[c], vepi[c].
// In the usual names: row 0 = x¹₁ x¹ x¹₂, row 1 = x₁ x x₂, row 2 = x²₁ x² x²₂.

struct Grid3x3 {
  std::array<std::array<FdSpace, 3>, 3> obj;
  std::array<LinMap, 3> hmono, hepi, vmono, vepi;

  Grid3x3 transposed() const {
    Grid3x3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t.obj[r][c] = obj[c][r];
    t.hmono = vmono;
    t.hepi = vepi;
    t.vmono = hmono;
    t.vepi = hepi;
    return t;
  }
  friend bool operator==(const Grid3x3&, const Grid3x3&) = default;
};

// Square of monos: top x¹₁ ↪ x¹, left x¹₁ ↪ x₁, right x¹ ↪ x, bottom x₁ ↪ x.
struct MonoSquare {
  LinMap top, left, right, bottom;
  MonoSquare transposed() const { return {left, top, bottom, right}; }
};

struct GridDiagnosis {
  std::string reason;
};

inline std::variant<Grid3x3, GridDiagnosis> complete_grid_3x3(const MonoSquare& sq) {
  if (!(sq.top.source() == sq.left.source()) || !(sq.top.target() == sq.right.source()) ||
      !(sq.left.target() == sq.bottom.source()) || !(sq.right.target() == sq.bottom.target()))
    throw Error("grid: square shapes do not match");
  for (const LinMap* m : {&sq.top, &sq.left, &sq.right, &sq.bottom})
    if (!is_admissible_mono(*m)) return GridDiagnosis{"input arrow is not a monomorphism"};
  if (!(compose(sq.right, sq.top) == compose(sq.bottom, sq.left))) return GridDiagnosis{"input square does not commute"};
  Subspace X1 = sq.right.image(), Y1 = sq.bottom.image();
  Subspace A = compose(sq.right, sq.top).image();
  if (!(A == meet(X1, Y1))) return GridDiagnosis{"input square is not cartesian"};

  Subspace top_im = sq.top.image(), left_im = sq.left.image(), S = join(X1, Y1);
  Grid3x3 g;
  g.hmono[0] = sq.top;
  g.hepi[0] = quotient(top_im);
  g.vmono[0] = sq.left;
  g.vepi[0] = quotient(left_im);
  g.vmono[1] = sq.right;
  g.vepi[1] = quotient(X1);
  g.hmono[1] = sq.bottom;
  g.hepi[1] = quotient(Y1);
  LinMap qS = quotient(S);
  // right column: x¹₂ ↪ x₂ ↠ x²₂
  g.vmono[2] = compose(g.hepi[1], compose(sq.right, quotient_section(top_im)));
  g.vepi[2] = compose(qS, quotient_section(Y1));
  // bottom row: x²₁ ↪ x² ↠ x²₂
  g.hmono[2] = compose(g.vepi[1], compose(sq.bottom, quotient_section(left_im)));
  g.hepi[2] = compose(qS, quotient_section(X1));

  for (int r = 0; r < 3; ++r) {
    g.obj[r][0] = g.hmono[r].source();
    g.obj[r][1] = g.hmono[r].target();
    g.obj[r][2] = g.hepi[r].target();
  }
  for (int k = 0; k < 3; ++k) {
    if (!is_valid(check_ses(g.hmono[k], g.hepi[k]))) return GridDiagnosis{"row " + std::to_string(k) + " is not exact"};
    if (!is_valid(check_ses(g.vmono[k], g.vepi[k]))) return GridDiagnosis{"column " + std::to_string(k) + " is not exact"};
  }
  bool ok = compose(g.hepi[1], g.vmono[1]) == compose(g.vmono[2], g.hepi[0]) &&
            compose(g.vepi[1], g.hmono[1]) == compose(g.hmono[2], g.vepi[0]) &&
            compose(g.vepi[2], g.hepi[1]) == compose(g.hepi[2], g.vepi[1]);
  if (!ok) return GridDiagnosis{"grid squares do not commute"};
  return g;
}

// ---------------------------------------------------------------------------
// Enumeration helpers over F_2 (used by exhaustive property checks).

inline void for_each_matrix(const Field& f, std::size_t rows, std::size_t cols, const std::function<void(const Matrix&)>& fn) {
  std::size_t n = rows * cols;
  std::int64_t q = f.characteristic();
  if (!f.is_prime()) throw Error("enumeration needs a finite field");
  std::vector<std::int64_t> digits(n, 0);
  Matrix m(f, rows, cols);
  for (;;) {
    fn(m);
    std::size_t k = 0;
    while (k < n && digits[k] == q - 1) {
      digits[k] = 0;
      m.set_int(k / cols, k % cols, 0);
      ++k;
    }
    if (k == n) break;
    ++digits[k];
    m.set_int(k / cols, k % cols, digits[k]);
  }
}

// All subspaces of F_q^n, each once, in echelon form: pick pivot columns, then
// fill the non-pivot entries right of each pivot.
inline std::vector<Subspace> all_subspaces(const Field& f, std::size_t n) {
  if (!f.is_prime()) throw Error("enumeration needs a finite field");
  std::int64_t q = f.characteristic();
  std::vector<Subspace> out;
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(d), true);
    do {
      std::vector<std::size_t> piv;
      for (std::size_t c = 0; c < n; ++c)
        if (choose[c]) piv.push_back(c);
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = piv[r] + 1; c < n; ++c)
          if (!choose[c]) free.emplace_back(r, c);
      std::vector<std::int64_t> digits(free.size(), 0);
      Matrix m(f, d, n);
      for (std::size_t r = 0; r < d; ++r) m.set_int(r, piv[r], 1);
      for (;;) {
        out.push_back(rref_basis(m));
        std::size_t k = 0;
        while (k < free.size() && digits[k] == q - 1) {
          digits[k] = 0;
          m.set_int(free[k].first, free[k].second, 0);
          ++k;
        }
        if (k == free.size()) break;
        ++digits[k];
        m.set_int(free[k].first, free[k].second, digits[k]);
      }
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  return out;
}

}  // namespace tatetors
