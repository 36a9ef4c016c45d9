// Graded lines (Pic_k^ℤ), the determinant h = det with its λ maps and Koszul
// symmetry, symmetry criteria, and determinantal theories Δ on Γ(X) together
// with their product along X' ↪ X ↠ X''.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tatetors/exactcat.hpp"
#include "tatetors/tate.hpp"

namespace tatetors {

// Morphisms between lines of equal degree are nonzero scalars once generators are
// fixed, so a line is its degree plus a symbolic label for its generator.
struct GradedLine {
  std::int64_t degree = 0;
  std::string label = "1";
  static GradedLine unit() { return {}; }
  friend bool operator==(const GradedLine&, const GradedLine&) = default;
};

inline GradedLine tensor(const GradedLine& a, const GradedLine& b) {
  if (a.label == "1") return {a.degree + b.degree, b.label};
  if (b.label == "1") return {a.degree + b.degree, a.label};
  return {a.degree + b.degree, a.label + "⊗" + b.label};
}
inline GradedLine dual(const GradedLine& a) { return {-a.degree, a.label == "1" ? "1" : "(" + a.label + ")*"}; }

struct LineIso {
  GradedLine source, target;
  Scalar scalar;
};

inline LineIso make_iso(const GradedLine& s, const GradedLine& t, const Scalar& c) {
  if (s.degree != t.degree) throw Error("line isomorphism between different degrees");
  if (c.is_zero()) throw Error("line isomorphism with zero scalar");
  return {s, t, c};
}
inline LineIso compose(const LineIso& g, const LineIso& f) {
  if (f.target.degree != g.source.degree) throw Error("line isomorphisms not composable");
  return {f.source, g.target, g.scalar * f.scalar};
}
inline LineIso tensor(const LineIso& f, const LineIso& g) {
  return {tensor(f.source, g.source), tensor(f.target, g.target), f.scalar * g.scalar};
}
inline LineIso inverse(const LineIso& f) { return {f.target, f.source, f.scalar.inverse()}; }

inline Scalar koszul_sign(const Field& f, std::int64_t a, std::int64_t b) {
  return Scalar(f, ((a * b) % 2 + 2) % 2 ? -1 : 1);
}
// x⊗y → y⊗x
inline LineIso koszul_swap(const Field& f, const GradedLine& x, const GradedLine& y) {
  return {tensor(x, y), tensor(y, x), koszul_sign(f, x.degree, y.degree)};
}

// Top exterior power of k^n with the standard basis.
inline GradedLine det_line(const FdSpace& v, const std::string& name = "e") {
  if (v.dim == 0) return GradedLine::unit();
  std::string label;
  for (std::size_t k = 1; k <= v.dim; ++k) label += (k > 1 ? "∧" : "") + name + std::to_string(k);
  return {static_cast<std::int64_t>(v.dim), label};
}

// det(from) → det(to) for two bases (rows) of the same subspace: the wedge of
// `from` is det(P) times the wedge of `to` where from = P·to.
inline LineIso basis_change(const Matrix& from, const Matrix& to) {
  Subspace s = rref_basis(to);
  if (s.dim() != to.rows() || !(rref_basis(from) == s)) throw Error("basis change between different subspaces");
  Matrix p = s.coordinates(from), q = s.coordinates(to);
  Scalar c = p.determinant() / q.determinant();
  auto n = static_cast<std::int64_t>(to.rows());
  return make_iso({n, "b"}, {n, "b'"}, c);
}

// det of [i | s] for any section s of j; independent of the section.
inline Scalar lambda_scalar(const LinMap& i, const LinMap& j, const std::optional<LinMap>& section = {}) {
  LinMap s = section ? *section : section_of(j);
  if (!(compose(j, s) == LinMap::identity(j.target()))) throw Error("lambda: invalid section");
  return Matrix::hstack(i.matrix(), s.matrix()).determinant();
}

// h = det, graded (Koszul symmetry) or ungraded (degrees forgotten, no sign).
// `fault` multiplies λ on chosen sequences; it exists so checks can be shown to catch corruption.
struct DetTheory {
  bool graded = true;
  std::function<Scalar(const LinMap&, const LinMap&)> fault;

  GradedLine h(const FdSpace& a) const {
    GradedLine l = det_line(a);
    if (!graded) l.degree = 0;
    return l;
  }
  Scalar lambda(const LinMap& i, const LinMap& j) const {
    Scalar c = lambda_scalar(i, j);
    return fault ? c * fault(i, j) : c;
  }
  Scalar swap(const FdSpace& a, const FdSpace& b) const {
    return koszul_sign(a.field, h(a).degree, h(b).degree);
  }
};

// λ: h(a')⊗h(a'') → h(a).
inline LineIso lambda_ses(const DetTheory& t, const SES& s) {
  return make_iso(tensor(t.h(s.sub()), t.h(s.quot())), t.h(s.middle()), t.lambda(s.i, s.j));
}

// ---------------------------------------------------------------------------
// Symmetry criteria.

struct SymmetryInstance {
  std::string what;
  bool pass = false;
  Scalar lhs, rhs;
};

struct SymmetryReport {
  std::vector<SymmetryInstance> pairs, grids;
  bool pair_pass() const {
    for (auto& p : pairs)
      if (!p.pass) return false;
    return true;
  }
  bool grid_pass() const {
    for (auto& g : grids)
      if (!g.pass) return false;
    return true;
  }
  bool criteria_agree() const { return pair_pass() == grid_pass(); }
};

// a ↪ a⊕b ↠ b against b ↪ a⊕b ↠ a composed with the symmetry h(a)⊗h(b) → h(b)⊗h(a).
inline SymmetryInstance check_pair(const DetTheory& t, const FdSpace& a, const FdSpace& b) {
  const Field& f = a.field;
  FdSpace ab{a.dim + b.dim, f};
  Matrix ia(f, ab.dim, a.dim), pb(f, b.dim, ab.dim), ib(f, ab.dim, b.dim), pa(f, a.dim, ab.dim);
  for (std::size_t k = 0; k < a.dim; ++k) {
    ia.set_int(k, k, 1);
    pa.set_int(k, k, 1);
  }
  for (std::size_t k = 0; k < b.dim; ++k) {
    pb.set_int(k, a.dim + k, 1);
    ib.set_int(a.dim + k, k, 1);
  }
  Scalar first = t.lambda(LinMap(a, ab, ia), LinMap(ab, b, pb));
  Scalar second = t.lambda(LinMap(b, ab, ib), LinMap(ab, a, pa)) * t.swap(a, b);
  return {"pair(" + std::to_string(a.dim) + "," + std::to_string(b.dim) + ")", first == second, second, first};
}

// h(x) from the four corners along rows and along columns; they differ by the
// symmetry exchanging h(x²₁) and h(x¹₂).
inline SymmetryInstance check_grid(const DetTheory& t, const Grid3x3& g) {
  Scalar by_columns = t.lambda(g.vmono[0], g.vepi[0]) * t.lambda(g.vmono[2], g.vepi[2]) * t.lambda(g.hmono[1], g.hepi[1]);
  Scalar by_rows = t.lambda(g.hmono[0], g.hepi[0]) * t.lambda(g.hmono[2], g.hepi[2]) * t.lambda(g.vmono[1], g.vepi[1]) *
                   t.swap(g.obj[2][0], g.obj[0][2]);
  std::string what = "grid(";
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) what += std::to_string(g.obj[r][c].dim) + (r == 2 && c == 2 ? ")" : ",");
  return {what, by_columns == by_rows, by_rows, by_columns};
}

inline SymmetryReport check_symmetry(const DetTheory& t, const std::vector<std::pair<FdSpace, FdSpace>>& pairs,
                                     const std::vector<Grid3x3>& grids) {
  SymmetryReport r;
  for (auto& [a, b] : pairs) r.pairs.push_back(check_pair(t, a, b));
  for (auto& g : grids) r.grids.push_back(check_grid(t, g));
  return r;
}

// All grids from cartesian squares of subspaces of F^n (n ≤ max_dim).
inline std::vector<Grid3x3> all_subspace_grids(const Field& f, std::size_t max_dim) {
  std::vector<Grid3x3> out;
  for (std::size_t n = 0; n <= max_dim; ++n) {
    auto subs = all_subspaces(f, n);
    for (auto& a : subs)
      for (auto& b : subs) {
        LinMap right = inclusion(a), bottom = inclusion(b), corner = inclusion(meet(a, b));
        MonoSquare sq{*factor_through_mono(right, corner), *factor_through_mono(bottom, corner), right, bottom};
        out.push_back(std::get<Grid3x3>(complete_grid_3x3(sq)));
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Length-2 filtrations a1 ⊆ a2 ⊆ a3 and the associativity square of λ.

struct Filtration2 {
  SES s12;  // a1 ↪ a2 ↠ a2/a1
  SES s23;  // a2 ↪ a3 ↠ a3/a2
  SES s13;  // a1 ↪ a3 ↠ a3/a1
  SES sq;   // a2/a1 ↪ a3/a1 ↠ a3/a2
};

// a3 = k^n, a2 = A2, a1 = A1 ⊆ A2, all with echelon bases and canonical quotients.
inline Filtration2 subspace_filtration(const Subspace& A1, const Subspace& A2) {
  if (!A2.contains(A1)) throw Error("filtration: subspaces are not nested");
  Subspace rel = A2.relative(A1);
  SES s12 = ses_of_subspace(rel), s23 = ses_of_subspace(A2), s13 = ses_of_subspace(A1);
  LinMap qi = compose(s13.j, compose(s23.i, quotient_section(rel)));
  LinMap qj = compose(s23.j, quotient_section(A1));
  return {s12, s23, s13, require_ses(qi, qj)};
}

// (λ_{a2⊆a3} ∘ (λ_{a1⊆a2} ⊗ 1), λ_{a1⊆a3} ∘ (1 ⊗ λ_{a2/a1⊆a3/a1})) as scalars.
inline std::pair<Scalar, Scalar> mult_two_paths(const DetTheory& t, const Filtration2& f) {
  return {t.lambda(f.s12.i, f.s12.j) * t.lambda(f.s23.i, f.s23.j), t.lambda(f.s13.i, f.s13.j) * t.lambda(f.sq.i, f.sq.j)};
}

// ---------------------------------------------------------------------------
// Relative determinantal theories on Γ(X).
//
// Generators: for a window top HI, ω(L) ∈ det(L / t^HI O^n) is the wedge of the
// monomials of t^{hi(L)} O^n / t^HI O^n (blocks by descending exponent) followed by
// the echelon rows of L. Putting the monomial block first makes ratios
// ω(L)/ω(L') independent of HI. Δ(L) is generated by anchor ⊗ ω(L) ⊗ ω(base)^{-1}.

namespace detail {

inline Matrix omega_rows(const Lattice& L, std::int64_t LO, std::int64_t HI) {
  std::size_t n = L.rank(), w = n * static_cast<std::size_t>(HI - LO);
  std::size_t units = n * static_cast<std::size_t>(HI - L.hi());
  Matrix m(L.field(), units + L.sub().dim(), w);
  std::size_t r = 0;
  for (std::int64_t e = HI - 1; e >= L.hi(); --e)
    for (std::size_t i = 0; i < n; ++i) m.set_int(r++, static_cast<std::size_t>(e - LO) * n + i, 1);
  std::size_t off = n * static_cast<std::size_t>(L.lo() - LO);
  for (std::size_t k = 0; k < L.sub().dim(); ++k, ++r)
    for (std::size_t c = 0; c < L.sub().ambient_dim(); ++c)
      if (!L.sub().basis().entry_zero(k, c)) m.set(r, off + c, L.sub().basis().at(k, c));
  return m;
}

// Scalar c with ω(u) ∧ ω(v/u) = c·ω(v), ω(v/u) the canonical complement.
inline Scalar delta_scalar(const Lattice& u, const Lattice& v, std::int64_t LO, std::int64_t HI) {
  LatticeQuotient q = lattice_quotient(v, u, LO, HI);
  Matrix top = Matrix::vstack(omega_rows(u, LO, HI), q.basis);
  Matrix bv = omega_rows(v, LO, HI);
  const Subspace& vw = q.big_w;
  if (vw.dim() == 0) return Scalar(u.field(), 1);
  return vw.coordinates(top).determinant() / vw.coordinates(bv).determinant();
}

inline std::pair<std::int64_t, std::int64_t> window_of(std::initializer_list<const Lattice*> ls) {
  std::int64_t LO = (*ls.begin())->lo(), HI = (*ls.begin())->hi();
  for (auto* l : ls) {
    LO = std::min(LO, l->lo());
    HI = std::max(HI, l->hi());
  }
  return {LO, HI};
}

}  // namespace detail

struct RelDetTheory {
  TateSpace space;
  Lattice base;
  GradedLine anchor;
  Scalar anchor_scale;  // Δ(base) is generated by anchor_scale·[anchor]

  static RelDetTheory standard(const TateSpace& space, const GradedLine& anchor = GradedLine::unit()) {
    return {space, Lattice::standard(space), anchor, Scalar(space.field, 1)};
  }

  GradedLine value(const Lattice& L) const {
    if (!(L.space() == space)) throw Error("determinantal theory evaluated on a lattice of another space");
    Lattice c = lattice_meet(L, base);
    auto up = static_cast<std::int64_t>(lattice_quotient(L, c).dim()), down = static_cast<std::int64_t>(lattice_quotient(base, c).dim());
    GradedLine out = anchor;
    if (up) out = tensor(out, GradedLine{up, "det(L/C)"});
    if (down) out = tensor(out, dual(GradedLine{down, "det(base/C)"}));
    out.degree = anchor.degree + up - down;
    return out;
  }
  // δ: Δ(u) ⊗ det(v/u) → Δ(v)
  LineIso delta(const Lattice& u, const Lattice& v) const {
    if (!lattice_contains(v, u)) throw Error("delta: u is not contained in v");
    auto [LO, HI] = detail::window_of({&u, &v, &base});
    GradedLine quot{static_cast<std::int64_t>(lattice_quotient(v, u).dim()), "det(v/u)"};
    return make_iso(tensor(value(u), quot), value(v), detail::delta_scalar(u, v, LO, HI));
  }
  // Tensor the theory with a line L carrying generator scale·[L].
  RelDetTheory tensored(const GradedLine& l, const Scalar& scale) const {
    return {space, base, tensor(anchor, l), anchor_scale * scale};
  }
};

inline LineIso delta_relative(const RelDetTheory& t, const Lattice& u, const Lattice& v) { return t.delta(u, v); }

struct HomTorsorClass {
  std::int64_t degree_shift = 0;
  std::optional<Scalar> scalar;  // empty when the degrees differ
};

inline HomTorsorClass hom_torsor_class(const RelDetTheory& t1, const RelDetTheory& t2) {
  if (!(t1.space == t2.space)) throw Error("hom torsor: theories on different spaces");
  HomTorsorClass c;
  c.degree_shift = t1.value(t1.base).degree - t2.value(t1.base).degree;
  if (c.degree_shift != t1.value(t2.base).degree - t2.value(t2.base).degree)
    throw Error("hom torsor: degree shift depends on the lattice");
  if (c.degree_shift == 0) c.scalar = t1.anchor_scale / t2.anchor_scale;
  return c;
}

// The λ of u2/u1 ↪ u3/u1 ↠ u3/u2 in canonical complement coordinates.
inline SES quotient_chain_ses(const Lattice& u1, const Lattice& u2, const Lattice& u3) {
  auto [LO, HI] = detail::window_of({&u1, &u2, &u3});
  LatticeQuotient q21 = lattice_quotient(u2, u1, LO, HI), q31 = lattice_quotient(u3, u1, LO, HI),
                  q32 = lattice_quotient(u3, u2, LO, HI);
  const Field& f = u1.field();
  Matrix i(f, q31.dim(), q21.dim()), j(f, q32.dim(), q31.dim());
  for (std::size_t k = 0; k < q21.dim(); ++k) {
    Matrix c = q31.coordinates(q21.basis.row(k));
    for (std::size_t r = 0; r < q31.dim(); ++r) i.set(r, k, c.at(0, r));
  }
  for (std::size_t k = 0; k < q31.dim(); ++k) {
    Matrix c = q32.coordinates(q31.basis.row(k));
    for (std::size_t r = 0; r < q32.dim(); ++r) j.set(r, k, c.at(0, r));
  }
  return require_ses(LinMap(FdSpace{q21.dim(), f}, FdSpace{q31.dim(), f}, i),
                     LinMap(FdSpace{q31.dim(), f}, FdSpace{q32.dim(), f}, j));
}

// The square δ_{u1,u3} ∘ (1 ⊗ λ) = δ_{u2,u3} ∘ (δ_{u1,u2} ⊗ 1), as (left, right) scalars.
template <class Theory>
std::pair<Scalar, Scalar> delta_square(const Theory& t, const Lattice& u1, const Lattice& u2, const Lattice& u3) {
  SES s = quotient_chain_ses(u1, u2, u3);
  Scalar left = t.delta(u1, u3).scalar * lambda_scalar(s.i, s.j);
  Scalar right = t.delta(u2, u3).scalar * t.delta(u1, u2).scalar;
  return {left, right};
}

// Δ(U) := Δ'(U∩X') ⊗ Δ''(U/(U∩X')) with δ assembled from λ^{-1}, the symmetry
// exchanging Δ''(U''_1) and det(U'_2/U'_1), and δ'⊗δ''.
struct MuDetTheory {
  TateSES ses;
  RelDetTheory sub, quot;
  bool insert_swap = true;

  GradedLine value(const Lattice& u) const {
    return tensor(sub.value(lift_lattice(ses, u)), quot.value(project_lattice(ses, u)));
  }
  LineIso delta(const Lattice& u1, const Lattice& u2) const {
    auto g = lattice_grid(ses, u1, u2);
    if (auto* d = std::get_if<LatticeGridDiagnosis>(&g)) throw Error("mu_det: " + d->reason);
    const LatticeGrid& grid = std::get<LatticeGrid>(g);
    const Field& f = ses.middle.field;
    Scalar lam = lambda_scalar(grid.bottom_row.i, grid.bottom_row.j);
    std::int64_t deg_quot1 = quot.value(grid.quot1).degree;
    Scalar sigma = insert_swap ? koszul_sign(f, deg_quot1, static_cast<std::int64_t>(grid.d_sub)) : Scalar(f, 1);
    Scalar c = lam.inverse() * sigma * sub.delta(grid.sub1, grid.sub2).scalar * quot.delta(grid.quot1, grid.quot2).scalar;
    GradedLine q{static_cast<std::int64_t>(grid.d_mid), "det(v/u)"};
    return make_iso(tensor(value(u1), q), value(u2), c);
  }
  // The same theory anchored at O^n.
  RelDetTheory anchored() const {
    Lattice o = Lattice::standard(ses.middle);
    return {ses.middle, o, value(o), sub.anchor_scale * quot.anchor_scale};
  }
};

inline MuDetTheory mu_det(const TateSES& ses, const RelDetTheory& t1, const RelDetTheory& t2) {
  if (!(t1.space == ses.sub) || !(t2.space == ses.quot)) throw Error("mu_det: theories do not live on the ends of the sequence");
  MuDetTheory m{ses, t1, t2, true};
  // verify the δ square on a sampled chain before handing the theory out
  Lattice a = Lattice::standard(ses.middle, 1), b = Lattice::standard(ses.middle, 0), c = Lattice::standard(ses.middle, -1);
  auto [l, r] = delta_square(m, a, b, c);
  if (!(l == r)) throw Error("mu_det: combined theory fails the delta square");
  return m;
}

}  // namespace tatetors
