// Dimension theories χ, relative dimension theories on Γ(X) (elements of the
// G-torsor Dim_χ(X)), pushouts along homomorphisms, and the product μ along
// X' ↪ X ↠ X''.
#pragma once

#include "tatetors/group.hpp"
#include "tatetors/tate.hpp"

namespace tatetors {

// χ(a) = dim(a)·g, g the image of [k] ∈ K_0 = ℤ.
struct DimTheory {
  GroupElem generator_image;
  const AbelianGroup& group() const { return generator_image.group(); }
  GroupElem operator()(std::int64_t dim) const { return dim * generator_image; }
  static DimTheory universal() { return {GroupElem::of(AbelianGroup::integers(), 1)}; }
  friend bool operator==(const DimTheory&, const DimTheory&) = default;
};

// d(L) = base_value + χ-index of L against base.
struct RelDimTheory {
  DimTheory chi;
  TateSpace space;
  Lattice base;
  GroupElem base_value;

  GroupElem operator()(const Lattice& L) const {
    if (!(L.space() == space)) throw Error("relative dimension theory evaluated on a lattice of another space");
    return base_value + chi(relative_index(L, base));
  }
  // Same function, anchored elsewhere.
  RelDimTheory reanchored(const Lattice& L) const { return {chi, space, L, (*this)(L)}; }
  // g + d
  RelDimTheory translated(const GroupElem& g) const { return {chi, space, base, base_value + g}; }
};

inline RelDimTheory standard_reldim(const DimTheory& chi, const TateSpace& space, const GroupElem& value_at_O) {
  return {chi, space, Lattice::standard(space), value_at_O};
}

inline GroupElem eval_reldim(const RelDimTheory& d, const Lattice& L) { return d(L); }

namespace detail {
inline void same_torsor(const RelDimTheory& a, const RelDimTheory& b) {
  if (!(a.chi == b.chi)) throw Error("dimension theories differ");
  if (!(a.space == b.space)) throw Error("relative dimension theories live on different spaces");
}
}  // namespace detail

// The g with d1 = g + d2.
inline GroupElem torsor_difference(const RelDimTheory& d1, const RelDimTheory& d2) {
  detail::same_torsor(d1, d2);
  GroupElem g = d1(d1.base) - d2(d1.base);
  if (!(d1(d2.base) - d2(d2.base) == g)) throw Error("torsor difference depends on the lattice");
  return g;
}

inline bool same_theory(const RelDimTheory& a, const RelDimTheory& b) {
  return a.chi == b.chi && a.space == b.space && torsor_difference(a, b).is_zero();
}

inline RelDimTheory pushout_along(const GroupHom& h, const RelDimTheory& d) {
  if (!(h.source() == d.chi.group())) throw Error("pushout: homomorphism source is not the theory's group");
  return {DimTheory{h(d.chi.generator_image)}, d.space, d.base, h(d.base_value)};
}

// d'(U∩X') + d''(U/(U∩X')), straight from the definition.
inline GroupElem mu_eval(const TateSES& s, const RelDimTheory& d1, const RelDimTheory& d2, const Lattice& u) {
  return d1(lift_lattice(s, u)) + d2(project_lattice(s, u));
}

// Nested sample pairs (small ⊆ big) used to confirm d(V) = d(U) + χ(V/U).
inline std::vector<std::pair<Lattice, Lattice>> sample_nested_pairs(const TateSpace& x, const Lattice& around) {
  std::vector<std::pair<Lattice, Lattice>> out;
  Lattice o = Lattice::standard(x);
  std::int64_t lo = std::min<std::int64_t>(around.lo(), 0) - 1, hi = std::max<std::int64_t>(around.hi(), 0) + 1;
  out.emplace_back(Lattice::standard(x, hi), Lattice::standard(x, lo));
  out.emplace_back(lattice_meet(o, around), lattice_join(o, around));
  out.emplace_back(Lattice::standard(x, hi), around);
  out.emplace_back(around, Lattice::standard(x, lo));
  if (x.rank) {
    std::vector<std::int64_t> a(x.rank, 0);
    a[0] = -1;
    out.emplace_back(o, Lattice::diagonal(x, a));
  }
  return out;
}

inline RelDimTheory mu_combine(const TateSES& s, const RelDimTheory& d1, const RelDimTheory& d2) {
  if (!(d1.chi == d2.chi)) throw Error("mu: dimension theories differ");
  if (!(d1.space == s.sub) || !(d2.space == s.quot)) throw Error("mu: theories do not live on the ends of the sequence");
  Lattice base = Lattice::standard(s.middle);
  RelDimTheory d{d1.chi, s.middle, base, mu_eval(s, d1, d2, base)};
  std::vector<std::int64_t> mixed(s.middle.rank);
  for (std::size_t k = 0; k < mixed.size(); ++k) mixed[k] = k % 2 ? 1 : -1;
  Lattice probe = Lattice::diagonal(s.middle, mixed);
  for (auto& [small, big] : sample_nested_pairs(s.middle, probe)) {
    GroupElem lhs = mu_eval(s, d1, d2, big), rhs = mu_eval(s, d1, d2, small) + d1.chi(relative_index(big, small));
    if (!(lhs == rhs)) throw Error("mu: the combined theory fails d(V) = d(U) + chi(V/U)");
    if (!(d(big) == lhs)) throw Error("mu: anchored theory disagrees with the defining formula");
  }
  return d;
}

}  // namespace tatetors
