#pragma once
// Invariant suites shared by `tatetors_cli verify` and the acceptance binary.
// Each suite runs a fixed battery (randomized ones from an explicit seed) and
// reports the first witnesses in the owning module's file format.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tatetors/detline.hpp"
#include "tatetors/dimtorsor.hpp"
#include "tatetors/exactcat.hpp"
#include "tatetors/io.hpp"
#include "tatetors/simptors.hpp"
#include "tatetors/swald.hpp"
#include "tatetors/tate.hpp"

namespace tatetors {

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::optional<std::size_t> trials;  // randomized suites only; unset = suite default
};

// (file name, contents) in the .lat/.lmx/.sset/.coch formats
using Witness = std::vector<std::pair<std::string, std::string>>;

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::size_t trials = 0;      // instances examined
  std::size_t violations = 0;
  std::vector<std::string> notes;  // first few failures, plus facts worth printing
  Witness witness;                 // first failing input as named files

  void fail(const std::string& what, Witness w = {}) {
    pass = false;
    ++violations;
    if (notes.size() < 8) notes.push_back(what);
    if (witness.empty()) witness = std::move(w);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

namespace suite_detail {

inline const Field& pick(std::size_t k, const std::vector<Field>& fs) { return fs[k % fs.size()]; }

inline Witness lattices(std::initializer_list<const Lattice*> ls) {
  Witness w;
  for (auto* l : ls) w.emplace_back(std::string(1, static_cast<char>('a' + w.size())) + ".lat", print_lattice(*l));
  return w;
}

inline Witness ses_files(const TateSES& s, std::initializer_list<const Lattice*> ls) {
  Witness w{{"i.lmx", print_laurent_matrix(s.i)}, {"j.lmx", print_laurent_matrix(s.j)}};
  for (auto& f : lattices(ls)) w.push_back(f);
  return w;
}

inline std::string vec_str(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Formal sum Σ m·[simplex id] of (d+1)-simplices.
inline std::string formal_sum(const SimplicialSet& k, int d, const std::map<std::size_t, std::int64_t>& terms) {
  std::string s;
  for (auto [i, m] : terms) s += (s.empty() ? "" : " ") + std::to_string(m) + "*" + k.id(d, i);
  return s.empty() ? "0" : s;
}

inline Subspace random_subspace(std::mt19937_64& rng, const Field& f, std::size_t n) {
  std::size_t k = std::uniform_int_distribution<std::size_t>(0, n)(rng);
  Matrix m(f, k, n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, random_scalar(rng, f));
  return Subspace::row_space(m);
}

inline std::vector<Matrix> invertible_matrices(const Field& f, std::size_t d) {
  std::vector<Matrix> out;
  for_each_matrix(f, d, d, [&](const Matrix& m) {
    if (m.rank() == d) out.push_back(m);
  });
  return out;
}

// The grid of a ⊆ x ⊇ b with corner a∩b; `twist` re-embeds the corner.
inline std::variant<Grid3x3, GridDiagnosis> subspace_grid(const Subspace& a, const Subspace& b, const Subspace& corner,
                                                          const Matrix* twist = nullptr) {
  LinMap right = inclusion(a), bottom = inclusion(b), c = inclusion(corner);
  if (twist) c = compose(c, LinMap(c.source(), c.source(), *twist));
  auto top = factor_through_mono(right, c), left = factor_through_mono(bottom, c);
  if (!top || !left) throw Error("subspace grid: corner is not inside both subspaces");
  return complete_grid_3x3({*top, *left, right, bottom});
}

inline std::vector<SimplicialSet> zoo() {
  using namespace complexes;
  return {standard_simplex(2), standard_simplex(3), standard_simplex(4), standard_simplex(5), simplex_boundary(3),
          simplex_boundary(4), circle(), torus(), projective_plane()};
}

}  // namespace suite_detail

// relative_index(⊕ t^{-a_i} O, O^n) = Σ a_i.
inline SuiteResult suite_index(const SuiteOptions& o) {
  SuiteResult r("index");
  std::mt19937_64 rng(o.seed);
  const std::vector<Field> fields{Field::prime(2), Field::prime(5), Field::rationals()};
  std::size_t trials = o.trials.value_or(500);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<std::int64_t> a(n), e(n);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
      e[i] = -a[i];
      sum += a[i];
    }
    TateSpace sp{n, suite_detail::pick(t, fields)};
    Lattice L = Lattice::diagonal(sp, e), O = Lattice::standard(sp);
    ++r.trials;
    std::int64_t got = relative_index(L, O);
    if (got != sum)
      r.fail("a=" + suite_detail::vec_str(a) + " index " + std::to_string(got) + " expected " + std::to_string(sum),
             suite_detail::lattices({&L, &O}));
  }
  return r;
}

// Cocycle on triples and the modular law on pairs, over F2 and F5, rank ≤ 3.
inline SuiteResult suite_cocycle(const SuiteOptions& o) {
  SuiteResult r("cocycle");
  std::mt19937_64 rng(o.seed);
  const std::vector<Field> fields{Field::prime(2), Field::prime(5)};
  std::size_t trials = o.trials.value_or(1000);
  for (std::size_t t = 0; t < trials; ++t) {
    TateSpace sp{std::uniform_int_distribution<std::size_t>(1, 3)(rng), suite_detail::pick(t, fields)};
    Lattice a = random_lattice(rng, sp, -3, 3), b = random_lattice(rng, sp, -3, 3), c = random_lattice(rng, sp, -3, 3);
    ++r.trials;
    std::int64_t ab = relative_index(a, b), bc = relative_index(b, c), ac = relative_index(a, c);
    if (ab + bc != ac)
      r.fail("cocycle: " + std::to_string(ab) + " + " + std::to_string(bc) + " != " + std::to_string(ac),
             suite_detail::lattices({&a, &b, &c}));
    Lattice m = lattice_meet(a, b), j = lattice_join(a, b);
    bool bounds = lattice_contains(a, m) && lattice_contains(b, m) && lattice_contains(j, a) && lattice_contains(j, b);
    std::int64_t lhs = relative_index(a, m), rhs = relative_index(j, b);
    if (!bounds || lhs != rhs)
      r.fail("modular law: [a:a∩b]=" + std::to_string(lhs) + " [a+b:b]=" + std::to_string(rhs) +
                 (bounds ? "" : " (meet/join not bounds)"),
             suite_detail::lattices({&a, &b}));
  }
  return r;
}

// Random split-then-twisted chains X1 ↪ X2 ↪ X3: lift/project along both routes,
// index additivity along each sequence, and associativity of μ.
inline SuiteResult suite_mu(const SuiteOptions& o) {
  SuiteResult r("mu");
  std::mt19937_64 rng(o.seed);
  const std::vector<Field> fields{Field::prime(2), Field::prime(3), Field::prime(5), Field::rationals()};
  AbelianGroup g = AbelianGroup::parse("Z+Z/4");
  DimTheory chi{GroupElem(g, {1, 1})};
  std::size_t trials = o.trials.value_or(1000);
  for (std::size_t t = 0; t < trials; ++t) {
    const Field& f = suite_detail::pick(t, fields);
    std::size_t n1 = 1 + t % 2, n2 = 1, n3 = 1 + (t / 2) % 2;
    TateChain c = random_twisted_chain(rng, f, n1, n2, n3);
    Lattice u = random_lattice(rng, c.s13.middle, -2, 3), u0 = random_lattice(rng, c.s13.middle, -2, 3);
    ++r.trials;
    Witness w = suite_detail::ses_files(c.s13, {&u, &u0});

    ChainCheck cc = check_chain(c, u);
    if (!cc.ok())
      r.fail(std::string("two routes disagree on") + (cc.u1_equal ? "" : " U1") + (cc.u21_equal ? "" : " U21") +
                 (cc.u32_equal ? "" : " U32"),
             w);
    for (const TateSES* s : {&c.s12, &c.s23, &c.s13, &c.squot}) {
      Lattice v = random_lattice(rng, s->middle, -2, 3), v0 = random_lattice(rng, s->middle, -2, 3);
      std::int64_t whole = relative_index(v, v0);
      std::int64_t parts = relative_index(lift_lattice(*s, v), lift_lattice(*s, v0)) +
                           relative_index(project_lattice(*s, v), project_lattice(*s, v0));
      if (whole != parts)
        r.fail("index not additive: " + std::to_string(whole) + " vs " + std::to_string(parts),
               suite_detail::ses_files(*s, {&v, &v0}));
    }

    RelDimTheory d1 = standard_reldim(chi, c.s12.sub, GroupElem(g, {static_cast<std::int64_t>(t % 7), 1}));
    RelDimTheory d21 = standard_reldim(chi, c.s12.quot, GroupElem(g, {-2, 3}));
    RelDimTheory d32 = standard_reldim(chi, c.s23.quot, GroupElem(g, {5, 0}));
    RelDimTheory left = mu_combine(c.s23, mu_combine(c.s12, d1, d21), d32);
    RelDimTheory right = mu_combine(c.s13, d1, mu_combine(c.squot, d21, d32));
    GroupElem el = mu_eval(c.s23, mu_combine(c.s12, d1, d21), d32, u);
    GroupElem er = mu_eval(c.s13, d1, mu_combine(c.squot, d21, d32), u);
    if (!same_theory(left, right) || !(el == er) || !(left(u) == el))
      r.fail("mu not associative: " + el.str() + " vs " + er.str(), w);
  }
  return r;
}

// Every composite of an admissible mono a ↪ b and epi b ↠ c over F2 (dims ≤ 3)
// factors through its image, and the two factorizations differ by exactly one iso.
inline SuiteResult suite_abelian(const SuiteOptions&) {
  SuiteResult r("abelian");
  const Field f = Field::prime(2);
  const std::size_t D = 3;
  auto maps = [&](std::size_t rows, std::size_t cols, std::size_t rank) {
    std::vector<Matrix> out;
    for_each_matrix(f, rows, cols, [&](const Matrix& m) {
      if (m.rank() == rank) out.push_back(m);
    });
    return out;
  };
  for (std::size_t b = 0; b <= D; ++b)
    for (std::size_t a = 0; a <= b; ++a)
      for (std::size_t c = 0; c <= b; ++c) {
        FdSpace A{a, f}, B{b, f}, C{c, f};
        auto monos = maps(b, a, a), epis = maps(c, b, c);
        for (auto& mm : monos)
          for (auto& em : epis) {
            LinMap m(A, B, mm), e(B, C, em), comp = compose(e, m);
            ++r.trials;
            std::string w = "mono " + mm.str() + " epi " + em.str();
            try {
              Factorization fz = epi_mono_factorize(comp, m, e);
              std::size_t rk = comp.matrix().rank();
              if (fz.e.target().dim != rk || !(compose(fz.m, fz.e) == comp)) {
                r.fail("middle object is not the image: " + w);
                continue;
              }
              // uniqueness: φ ↦ m∘φ is injective exactly when m has no kernel
              if (!fz.m.kernel().is_zero() || !(compose(fz.m, fz.iso) == fz.m_alt)) r.fail("connecting iso not unique: " + w);
            } catch (const Error& ex) {
              r.fail(std::string(ex.what()) + ": " + w);
            }
          }
      }
  return r;
}

// Cartesian squares of subspaces of F2^n (n ≤ 3), every re-embedding of the corner:
// rows and columns of the completed grid are exact and all four squares commute.
// Non-cartesian squares (corner strictly inside the meet) must be refused.
inline SuiteResult suite_grid(const SuiteOptions&) {
  SuiteResult r("grid");
  const Field f = Field::prime(2);
  std::vector<std::vector<Matrix>> gl;
  for (std::size_t d = 0; d <= 3; ++d) gl.push_back(suite_detail::invertible_matrices(f, d));
  std::size_t refused = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    auto subs = all_subspaces(f, n);
    for (auto& a : subs)
      for (auto& b : subs) {
        Subspace corner = meet(a, b);
        std::string w = "x=F2^" + std::to_string(n) + " x1=" + a.basis().str() + " y1=" + b.basis().str();
        for (auto& g : gl[corner.dim()]) {
          ++r.trials;
          auto res = suite_detail::subspace_grid(a, b, corner, &g);
          if (auto* d = std::get_if<GridDiagnosis>(&res)) {
            r.fail("refused: " + d->reason + ": " + w);
            continue;
          }
          const Grid3x3& x = std::get<Grid3x3>(res);
          bool exact = true;
          for (int k = 0; k < 3; ++k)
            exact = exact && is_valid(check_ses(x.hmono[k], x.hepi[k])) && is_valid(check_ses(x.vmono[k], x.vepi[k]));
          bool commute = compose(x.vmono[1], x.hmono[0]) == compose(x.hmono[1], x.vmono[0]) &&
                         compose(x.vmono[2], x.hepi[0]) == compose(x.hepi[1], x.vmono[1]) &&
                         compose(x.vepi[1], x.hmono[1]) == compose(x.hmono[2], x.vepi[0]) &&
                         compose(x.vepi[2], x.hepi[1]) == compose(x.hepi[2], x.vepi[1]);
          if (!exact || !commute) r.fail(std::string(exact ? "" : "inexact row/column ") + (commute ? "" : "square fails to commute") + ": " + w);
        }
        for (auto& inner : all_subspaces(f, n))
          if (corner.contains(inner) && inner.dim() < corner.dim()) {
            ++r.trials;
            if (std::holds_alternative<Grid3x3>(suite_detail::subspace_grid(a, b, inner)))
              r.fail("non-cartesian square completed: " + w + " corner=" + inner.basis().str());
            else
              ++refused;
          }
      }
  }
  r.note(std::to_string(refused) + " non-cartesian squares refused");
  return r;
}

// Pair and grid symmetry criteria for graded and ungraded det.
inline SuiteResult suite_symmetry(const SuiteOptions& o) {
  SuiteResult r("symmetry");
  std::mt19937_64 rng(o.seed);
  const Field F2 = Field::prime(2), F5 = Field::prime(5);
  DetTheory graded{true, {}}, ungraded{false, {}};

  // instance (a, b): the pair criterion on a, b and the grid criterion on the split grid of a ⊕ b
  auto split_instance = [&](const DetTheory& t, const Field& f, std::size_t a, std::size_t b) {
    std::size_t n = a + b;
    Matrix ea(f, a, n), eb(f, b, n);
    for (std::size_t k = 0; k < a; ++k) ea.set_int(k, k, 1);
    for (std::size_t k = 0; k < b; ++k) eb.set_int(k, a + k, 1);
    Subspace A = Subspace::row_space(ea), B = Subspace::row_space(eb);
    auto g = std::get<Grid3x3>(suite_detail::subspace_grid(A, B, meet(A, B)));
    return std::pair{check_pair(t, FdSpace{a, f}, FdSpace{b, f}), check_grid(t, g)};
  };
  auto expect = [&](bool ok, const std::string& what) {
    ++r.trials;
    if (!ok) r.fail(what);
  };

  // graded, exhaustive over F2 dims ≤ 2
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b) expect(check_pair(graded, FdSpace{a, F2}, FdSpace{b, F2}).pass, "graded F2 pair fails");
  for (auto& g : all_subspace_grids(F2, 2)) {
    auto s = check_grid(graded, g);
    expect(s.pass, "graded F2 " + s.what + " fails");
  }
  // graded, random over F5
  std::size_t trials = o.trials.value_or(200);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    Subspace A = suite_detail::random_subspace(rng, F5, n), B = suite_detail::random_subspace(rng, F5, n);
    auto g = std::get<Grid3x3>(suite_detail::subspace_grid(A, B, meet(A, B)));
    auto sg = check_grid(graded, g);
    auto sp = check_pair(graded, FdSpace{A.dim(), F5}, FdSpace{B.dim(), F5});
    expect(sg.pass && sp.pass, "graded F5 random " + sg.what + " fails");
  }
  // ungraded over F5: (k,k) is the canonical failure
  SymmetryInstance kk = check_pair(ungraded, FdSpace{1, F5}, FdSpace{1, F5});
  expect(!kk.pass && kk.lhs == Scalar(F5, -1) && kk.rhs == Scalar(F5, 1),
         "ungraded F5 pair(1,1) gave " + kk.lhs.str() + " vs " + kk.rhs.str());
  r.note("ungraded F5 pair(1,1): " + kk.lhs.str() + " vs " + kk.rhs.str());
  std::size_t ungraded_failures = 0;
  for (const Field& f : {F2, F5})
    for (const DetTheory* t : {&graded, &ungraded})
      for (std::size_t a = 0; a <= 2; ++a)
        for (std::size_t b = 0; b <= 2; ++b) {
          auto [p, g] = split_instance(*t, f, a, b);
          if (!t->graded && !p.pass) ++ungraded_failures;
          expect(p.pass == g.pass, std::string(t->graded ? "graded " : "ungraded ") + f.name() + " " + p.what +
                                       " and " + g.what + " disagree");
        }
  expect(ungraded_failures > 0, "ungraded det never fails the pair criterion");
  return r;
}

struct CohomologyOracle {
  std::string name;
  SimplicialSet complex;
  int degree;
  std::string group, expected;
};

inline std::vector<CohomologyOracle> cohomology_oracles() {
  using namespace complexes;
  return {{"circle", circle(), 1, "Z", "Z"},
          {"boundary3", simplex_boundary(3), 2, "Z", "Z"},
          {"torus", torus(), 2, "Z", "Z"},
          {"rp2", projective_plane(), 2, "Z/2", "Z/2"},
          {"torus", torus(), 1, "Z", "Z+Z"},
          {"rp2", projective_plane(), 2, "Z", "Z/2"},
          {"rp2", projective_plane(), 1, "Z", "0"},
          {"boundary4", simplex_boundary(4), 3, "Z/5", "Z/5"},
          {"simplex4", standard_simplex(4), 2, "Z", "0"}};
}

inline SuiteResult suite_cohomology(const SuiteOptions&) {
  SuiteResult r("cohomology");
  for (auto& c : cohomology_oracles()) {
    ++r.trials;
    std::string got = cohomology(c.complex, c.degree, AbelianGroup::parse(c.group)).group().str();
    if (got != c.expected)
      r.fail("H^" + std::to_string(c.degree) + "(" + c.name + ", " + c.group + ") = " + got + ", expected " + c.expected,
             {{c.name + ".sset", print_sset(c.complex)}});
  }
  return r;
}

// Exhaustive census of degree-1 Z/2 torsors on the projective plane.
inline SuiteResult suite_classify(const SuiteOptions&) {
  SuiteResult r("classify");
  SimplicialSet k = complexes::projective_plane();
  ClassificationCensus c = classification_census(k, 1, AbelianGroup::cyclic(2));
  r.trials = c.cochains;
  r.note(std::to_string(c.cochains) + " cochains, " + std::to_string(c.torsors) + " torsors, " +
         std::to_string(c.iso_classes) + " iso classes, |H^2| = " + std::to_string(c.cohomology_order));
  if (static_cast<std::int64_t>(c.iso_classes) != c.cohomology_order) r.fail("iso classes differ from |H^2|", {{"rp2.sset", print_sset(k)}});
  if (!c.classify_constant) r.fail("classify_torsor varies inside an iso class", {{"rp2.sset", print_sset(k)}});
  if (!c.classify_separates) r.fail("classify_torsor merges iso classes", {{"rp2.sset", print_sset(k)}});
  return r;
}

// E - O = δα symbolically on every simplex, degrees 0..2.
inline SuiteResult suite_pasting(const SuiteOptions&) {
  SuiteResult r("pasting");
  for (auto& k : suite_detail::zoo())
    for (int d = 0; d <= 2; ++d) {
      if (d + 2 > k.dim()) continue;
      for (std::size_t tau = 0; tau < k.count(d + 2); ++tau) {
        ++r.trials;
        PastingIdentity p = pasting_identity(k, d, tau);
        if (!p.ok())
          r.fail("degree " + std::to_string(d) + " on '" + k.id(d + 2, tau) + "': E-O " + suite_detail::formal_sum(k, d + 1, p.e_minus_o) +
                     " vs δ " + suite_detail::formal_sum(k, d + 1, p.coboundary),
                 {{"complex.sset", print_sset(k)}});
      }
    }
  return r;
}

// Skeleton of S(Vect_F2) with D = 2, N = 4: simplicial identities, χ = dim as a
// degree-0 torsor, det as a degree-1 torsor, and both faults caught. A sign
// fault needs -1 ≠ 1, so it is planted on the F3 skeleton (D = 2, N = 3).
inline SuiteResult suite_swald(const SuiteOptions&) {
  SuiteResult r("swald");
  const Field F2 = Field::prime(2), F3 = Field::prime(3);
  SSkeleton sk = enumerate_s_skeleton(F2, 2, 4);
  r.note(std::to_string(sk.size()) + " objects on levels 0..4");

  SkeletonReport ids = check_skeleton_identities(sk);
  r.trials += ids.checked;
  for (auto& v : ids.violations) r.fail("identity: " + v);

  TheoryReport dim = verify_dim_theory(sk, DimTheory::universal());
  r.trials += dim.checked;
  for (auto& w : dim.witnesses) r.fail("dim: " + w);

  TheoryReport det = verify_det_theory(sk, DetTheory{});
  r.trials += det.checked;
  for (auto& w : det.witnesses) r.fail("det: " + w);

  TheoryReport bad_dim = verify_dim_theory(sk, AbelianGroup::integers(), [](const FdSpace& a) {
    return GroupElem::of(AbelianGroup::integers(), a.dim == 2 ? 3 : static_cast<std::int64_t>(a.dim));
  });
  ++r.trials;
  if (bad_dim.pass()) r.fail("dimension fault chi(k^2) = 3 not detected");

  SSkeleton s3 = enumerate_s_skeleton(F3, 2, 3);
  const SObject* target = nullptr;
  for (auto& x : s3.levels[2])
    if (x.dim(0, 1) == 1 && x.dim(0, 2) == 2) {
      target = &x;
      break;
    }
  DetTheory faulty;
  faulty.fault = [&](const LinMap& i, const LinMap& j) {
    return i == target->mono(0, 1, 2) && j == target->epi(0, 1, 2) ? Scalar(F3, -1) : Scalar(F3, 1);
  };
  TheoryReport clean3 = verify_det_theory(s3, DetTheory{}), bad_det = verify_det_theory(s3, faulty);
  r.trials += clean3.checked + 1;
  for (auto& w : clean3.witnesses) r.fail("det over F3: " + w);
  if (bad_det.pass())
    r.fail("sign fault not detected");
  else
    r.note("sign fault caught on " + std::to_string(bad_det.witnesses.size()) + " 3-simplices");
  return r;
}

// Gerbes on ∂Δ⁴, Δ⁴, Δ⁵: trivial, coboundary, nontrivial and random betas.
inline SuiteResult suite_gerbe(const SuiteOptions& o) {
  SuiteResult r("gerbe");
  std::mt19937_64 rng(o.seed);
  using namespace complexes;
  std::size_t valid = 0, invalid = 0;
  for (auto& g : {AbelianGroup::cyclic(2), AbelianGroup::cyclic(3), AbelianGroup::integers()})
    for (auto& k : {simplex_boundary(4), standard_simplex(4), standard_simplex(5)}) {
      struct Entry {
        Cochain beta;
        bool coboundary;
      };
      std::vector<Entry> corpus{{Cochain(k, 3, g), true}};
      for (int i = 0; i < 4; ++i) corpus.push_back({coboundary(random_cochain(rng, k, 2, g, 3)), true});
      for (int i = 0; i < 4; ++i) corpus.push_back({random_cochain(rng, k, 3, g, 3), false});
      for (auto& [beta, cob] : corpus) {
        ++r.trials;
        GerbeRep gr{k, g, beta};
        Witness w{{"complex.sset", print_sset(k)}, {"beta.coch", print_cochain(beta)}};
        if (!gerbe_violations(gr).empty()) {
          ++invalid;
          bool threw = false;
          try {
            gerbe_to_torsor(gr);
          } catch (const Error&) {
            threw = true;
          }
          if (!threw) r.fail("invalid gerbe accepted", w);
          continue;
        }
        ++valid;
        MultTorsorRep t = gerbe_to_torsor(gr);
        if (!check_mult_torsor(t).pass) {
          r.fail("torsor of a valid gerbe fails E = O", w);
          continue;
        }
        GroupElem cls = classify_torsor(t);
        MultTorsorRep zero = MultTorsorRep::from_cochain(Cochain(k, 3, g));
        bool trivial = iso_decide(t, zero).has_value();
        if (cob && !cls.is_zero()) r.fail("coboundary gerbe classifies to " + cls.str(), w);
        if (trivial != cls.is_zero()) r.fail("class " + cls.str() + " disagrees with iso_decide", w);
      }
    }
  r.note(std::to_string(valid) + " valid, " + std::to_string(invalid) + " invalid gerbes");
  if (valid == 0) r.fail("no valid gerbe in the corpus");
  return r;
}

struct SuiteEntry {
  std::string name;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

inline const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> all{
      {"index", suite_index},       {"cocycle", suite_cocycle}, {"mu", suite_mu},
      {"abelian", suite_abelian},   {"grid", suite_grid},       {"symmetry", suite_symmetry},
      {"cohomology", suite_cohomology}, {"classify", suite_classify}, {"pasting", suite_pasting},
      {"swald", suite_swald},       {"gerbe", suite_gerbe}};
  return all;
}

inline const SuiteEntry* find_suite(const std::string& name) {
  for (auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace tatetors
