// Finite Δ-complexes, cochains with values in ⊕ ℤ/d, the even/odd pasting of
// multiplicative torsors, cohomology by Smith normal form, classification of
// torsors and the gerbe-to-torsor construction.
//
// Only non-degenerate simplices are stored and every face of a stored simplex
// is again stored. Degenerate simplices stay implicit: cochains are normalized,
// i.e. vanish on them, so they never enter a computation.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tatetors/group.hpp"

namespace tatetors {

inline constexpr int kMaxSimplexDim = 5;

struct RawSimplex {
  int dim = 0;
  std::string id;
  std::vector<std::string> faces;
  std::size_t line = 0;  // source line, 0 when not read from a file
};

class SimplicialSet {
 public:
  struct Data {
    std::vector<std::vector<std::string>> ids;                 // ids[d][k]
    std::vector<std::vector<std::vector<std::size_t>>> faces;  // faces[d][k][i] indexes ids[d-1]
    std::map<std::string, std::pair<int, std::size_t>> index;
  };

  SimplicialSet() : d_(std::make_shared<Data>()) {}
  explicit SimplicialSet(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  // -1 for the empty complex
  int dim() const { return static_cast<int>(d_->ids.size()) - 1; }
  std::size_t count(int d) const { return d < 0 || d > dim() ? 0 : d_->ids[d].size(); }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto& v : d_->ids) t += v.size();
    return t;
  }
  const std::string& id(int d, std::size_t k) const { return d_->ids.at(d).at(k); }
  std::size_t face(int d, std::size_t k, int i) const { return d_->faces.at(d).at(k).at(i); }
  const std::vector<std::size_t>& faces(int d, std::size_t k) const { return d_->faces.at(d).at(k); }
  std::optional<std::pair<int, std::size_t>> find(const std::string& id) const {
    auto it = d_->index.find(id);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(int d, const std::string& id) const {
    auto f = find(id);
    if (!f || f->first != d) throw Error("no " + std::to_string(d) + "-simplex named '" + id + "'");
    return f->second;
  }

  std::vector<RawSimplex> raw() const {
    std::vector<RawSimplex> out;
    for (int d = 0; d <= dim(); ++d)
      for (std::size_t k = 0; k < count(d); ++k) {
        RawSimplex r{d, id(d, k), {}, 0};
        if (d > 0)
          for (auto f : faces(d, k)) r.faces.push_back(id(d - 1, f));
        out.push_back(std::move(r));
      }
    return out;
  }

  friend bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    return a.d_ == b.d_ || (a.d_->ids == b.d_->ids && a.d_->faces == b.d_->faces);
  }

 private:
  std::shared_ptr<const Data> d_;
};

struct SsetDiagnosis {
  enum class Kind { DuplicateId, BadDimension, FaceCount, DanglingFace, FaceDimension, Identity };
  Kind kind;
  std::string simplex;
  int i = -1, j = -1;  // for Identity: ∂i∂j != ∂(j-1)∂i
  std::size_t line = 0;
  std::string message;
};

inline std::variant<SimplicialSet, SsetDiagnosis> validate_simplicial_set(const std::vector<RawSimplex>& raw) {
  using K = SsetDiagnosis::Kind;
  auto data = std::make_shared<SimplicialSet::Data>();
  int top = -1;
  for (auto& r : raw) {
    if (r.dim < 0 || r.dim > kMaxSimplexDim)
      return SsetDiagnosis{K::BadDimension, r.id, -1, -1, r.line,
                           "simplex '" + r.id + "' has dimension " + std::to_string(r.dim) + " outside [0," +
                               std::to_string(kMaxSimplexDim) + "]"};
    if (data->index.count(r.id))
      return SsetDiagnosis{K::DuplicateId, r.id, -1, -1, r.line, "duplicate simplex id '" + r.id + "'"};
    top = std::max(top, r.dim);
    data->ids.resize(top + 1);
    data->index[r.id] = {r.dim, data->ids[r.dim].size()};
    data->ids[r.dim].push_back(r.id);
  }
  data->faces.resize(top + 1);
  for (int d = 0; d <= top; ++d) data->faces[d].resize(data->ids[d].size());
  for (auto& r : raw) {
    std::size_t want = r.dim == 0 ? 0 : r.dim + 1;
    if (r.faces.size() != want)
      return SsetDiagnosis{K::FaceCount, r.id, -1, -1, r.line,
                           "simplex '" + r.id + "' of dimension " + std::to_string(r.dim) + " needs " +
                               std::to_string(want) + " faces, got " + std::to_string(r.faces.size())};
    auto& slot = data->faces[r.dim][data->index[r.id].second];
    for (std::size_t i = 0; i < r.faces.size(); ++i) {
      auto it = data->index.find(r.faces[i]);
      if (it == data->index.end())
        return SsetDiagnosis{K::DanglingFace, r.id, static_cast<int>(i), -1, r.line,
                             "face " + std::to_string(i) + " of '" + r.id + "' names unknown simplex '" +
                                 r.faces[i] + "'"};
      if (it->second.first != r.dim - 1)
        return SsetDiagnosis{K::FaceDimension, r.id, static_cast<int>(i), -1, r.line,
                             "face " + std::to_string(i) + " of '" + r.id + "' is '" + r.faces[i] +
                                 "' of dimension " + std::to_string(it->second.first)};
      slot.push_back(it->second.second);
    }
  }
  // ∂i∂j = ∂(j-1)∂i for i < j
  for (int d = 2; d <= top; ++d)
    for (std::size_t k = 0; k < data->ids[d].size(); ++k) {
      auto& f = data->faces[d][k];
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i) {
          std::size_t a = data->faces[d - 1][f[j]][i], b = data->faces[d - 1][f[i]][j - 1];
          if (a != b) {
            std::size_t line = 0;
            for (auto& r : raw)
              if (r.id == data->ids[d][k]) line = r.line;
            return SsetDiagnosis{K::Identity, data->ids[d][k], i, j, line,
                                 "simplicial identity fails on '" + data->ids[d][k] + "': d" + std::to_string(i) +
                                     " d" + std::to_string(j) + " = '" + data->ids[d - 2][a] + "' but d" +
                                     std::to_string(j - 1) + " d" + std::to_string(i) + " = '" +
                                     data->ids[d - 2][b] + "'"};
          }
        }
    }
  return SimplicialSet(std::move(data));
}

inline SimplicialSet require_simplicial_set(const std::vector<RawSimplex>& raw) {
  auto v = validate_simplicial_set(raw);
  if (auto* d = std::get_if<SsetDiagnosis>(&v)) throw Error(d->message);
  return std::get<SimplicialSet>(std::move(v));
}

namespace complexes {

namespace detail {
inline std::string vertex_id(unsigned mask) {
  std::string s = "s";
  for (int v = 0; v < 32; ++v)
    if (mask >> v & 1u) s += std::to_string(v);
  return s;
}
// Ordered simplicial complex on the vertex sets accepted by keep.
template <class Keep>
SimplicialSet from_masks(int n, Keep keep) {
  std::vector<RawSimplex> raw;
  for (int d = 0; d <= n; ++d)
    for (unsigned m = 1; m < (1u << (n + 1)); ++m) {
      if (__builtin_popcount(m) != d + 1 || !keep(m)) continue;
      RawSimplex r{d, vertex_id(m), {}, 0};
      if (d > 0) {
        std::vector<int> verts;
        for (int v = 0; v <= n; ++v)
          if (m >> v & 1u) verts.push_back(v);
        for (int v : verts) r.faces.push_back(vertex_id(m & ~(1u << v)));
      }
      raw.push_back(std::move(r));
    }
  return require_simplicial_set(raw);
}
}  // namespace detail

// Δ^n; simplices are named s<vertices>, e.g. s013.
inline SimplicialSet standard_simplex(int n) {
  if (n < 0 || n > kMaxSimplexDim) throw Error("standard simplex dimension out of range");
  return detail::from_masks(n, [](unsigned) { return true; });
}

// ∂Δ^n
inline SimplicialSet simplex_boundary(int n) {
  if (n < 1 || n > kMaxSimplexDim) throw Error("simplex boundary dimension out of range");
  unsigned full = (1u << (n + 1)) - 1;
  return detail::from_masks(n, [full](unsigned m) { return m != full; });
}

// Three vertices, three edges.
inline SimplicialSet circle() { return simplex_boundary(2); }

// One vertex, edges a b c, triangles U L with boundaries a+b-c.
inline SimplicialSet torus() {
  return require_simplicial_set({{0, "v", {}, 0},
                                 {1, "a", {"v", "v"}, 0},
                                 {1, "b", {"v", "v"}, 0},
                                 {1, "c", {"v", "v"}, 0},
                                 {2, "U", {"b", "c", "a"}, 0},
                                 {2, "L", {"a", "c", "b"}, 0}});
}

// Square with antipodal boundary identification cut along the diagonal c.
inline SimplicialSet projective_plane() {
  return require_simplicial_set({{0, "v", {}, 0},
                                 {0, "w", {}, 0},
                                 {1, "a", {"w", "v"}, 0},
                                 {1, "b", {"w", "v"}, 0},
                                 {1, "c", {"v", "v"}, 0},
                                 {2, "U", {"b", "a", "c"}, 0},
                                 {2, "L", {"a", "b", "c"}, 0}});
}

}  // namespace complexes

// ---------------------------------------------------------------------------
// cochains

class Cochain {
 public:
  Cochain(SimplicialSet k, int degree, AbelianGroup g) : k_(std::move(k)), n_(degree), g_(std::move(g)) {
    v_.assign(k_.count(n_), GroupElem::zero(g_));
  }
  Cochain(SimplicialSet k, int degree, AbelianGroup g, std::vector<GroupElem> values)
      : k_(std::move(k)), n_(degree), g_(std::move(g)), v_(std::move(values)) {
    if (v_.size() != k_.count(n_)) throw Error("cochain needs one value per " + std::to_string(n_) + "-simplex");
    for (auto& x : v_)
      if (!(x.group() == g_)) throw Error("cochain value outside " + g_.str());
  }
  // Values of a cyclic group given as integers.
  static Cochain of_ints(SimplicialSet k, int degree, AbelianGroup g, const std::vector<std::int64_t>& values) {
    std::vector<GroupElem> v;
    for (auto x : values) v.push_back(GroupElem::of(g, x));
    return Cochain(std::move(k), degree, std::move(g), std::move(v));
  }

  const SimplicialSet& complex() const { return k_; }
  int degree() const { return n_; }
  const AbelianGroup& group() const { return g_; }
  const std::vector<GroupElem>& values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const GroupElem& operator[](std::size_t k) const { return v_.at(k); }
  const GroupElem& at(const std::string& id) const { return v_.at(k_.index_of(n_, id)); }
  void set(std::size_t k, const GroupElem& x) {
    if (!(x.group() == g_)) throw Error("cochain value outside " + g_.str());
    v_.at(k) = x;
  }
  bool is_zero() const {
    for (auto& x : v_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.n_ == b.n_ && a.g_ == b.g_ && a.k_ == b.k_ && a.v_ == b.v_;
  }
  friend Cochain operator+(const Cochain& a, const Cochain& b) {
    a.check(b);
    Cochain c = a;
    for (std::size_t k = 0; k < c.v_.size(); ++k) c.v_[k] += b.v_[k];
    return c;
  }
  Cochain operator-() const {
    Cochain c = *this;
    for (auto& x : c.v_) x = -x;
    return c;
  }
  friend Cochain operator-(const Cochain& a, const Cochain& b) { return a + (-b); }

 private:
  void check(const Cochain& b) const {
    if (n_ != b.n_ || !(g_ == b.g_) || !(k_ == b.k_)) throw Error("cochains live in different groups");
  }
  SimplicialSet k_;
  int n_;
  AbelianGroup g_;
  std::vector<GroupElem> v_;
};

// (δc)(σ) = Σ (-1)^i c(∂i σ)
inline Cochain coboundary(const Cochain& c) {
  const SimplicialSet& k = c.complex();
  int n = c.degree();
  Cochain out(k, n + 1, c.group());
  for (std::size_t s = 0; s < k.count(n + 1); ++s) {
    GroupElem x = GroupElem::zero(c.group());
    for (int i = 0; i <= n + 1; ++i) {
      const GroupElem& v = c[k.face(n + 1, s, i)];
      x += i % 2 ? -v : v;
    }
    out.set(s, x);
  }
  return out;
}

// Rows: (n+1)-simplices, columns: n-simplices.
inline IntMatrix coboundary_matrix(const SimplicialSet& k, int n) {
  IntMatrix m(k.count(n + 1), k.count(n));
  if (n < 0) return m;
  for (std::size_t s = 0; s < k.count(n + 1); ++s)
    for (int i = 0; i <= n + 1; ++i) m(s, k.face(n + 1, s, i)) += i % 2 ? -1 : 1;
  return m;
}

template <class Rng>
Cochain random_cochain(Rng& rng, const SimplicialSet& k, int n, const AbelianGroup& g, std::int64_t spread = 5) {
  std::uniform_int_distribution<std::int64_t> d(-spread, spread);
  std::vector<GroupElem> v;
  for (std::size_t s = 0; s < k.count(n); ++s) {
    std::vector<std::int64_t> c(g.rank());
    for (auto& x : c) x = d(rng);
    v.emplace_back(g, c);
  }
  return Cochain(k, n, g, v);
}

// ---------------------------------------------------------------------------
// even and odd faces

struct StreetBoundaries {
  // indices into the (d-1)- and (d-2)-simplices, sorted; xy means ∂x applied to ∂y σ
  std::vector<std::size_t> plus, minus;
  std::vector<std::size_t> pp, pm, mp, mm;

  bool literal_equalities() const { return pp == mm && pm == mp; }
  // ∂++ + ∂-- = ∂+- + ∂-+ as multisets
  bool parity_identity() const {
    auto sum = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
      a.insert(a.end(), b.begin(), b.end());
      std::sort(a.begin(), a.end());
      return a;
    };
    return sum(pp, mm) == sum(pm, mp);
  }
};

inline std::vector<std::size_t> parity_faces(const SimplicialSet& k, int d, std::size_t s, int parity) {
  std::vector<std::size_t> out;
  for (int i = parity; i <= d; i += 2) out.push_back(k.face(d, s, i));
  return out;
}

inline StreetBoundaries street_boundaries(const SimplicialSet& k, int d, std::size_t s) {
  if (d < 2) throw Error("second-order boundaries need a simplex of dimension at least 2");
  if (s >= k.count(d)) throw Error("no such simplex");
  StreetBoundaries b;
  b.plus = parity_faces(k, d, s, 0);
  b.minus = parity_faces(k, d, s, 1);
  auto second = [&](const std::vector<std::size_t>& from, int parity) {
    std::vector<std::size_t> out;
    for (auto f : from)
      for (auto g : parity_faces(k, d - 1, f, parity)) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
  };
  b.pp = second(b.plus, 0);
  b.mp = second(b.plus, 1);
  b.pm = second(b.minus, 0);
  b.mm = second(b.minus, 1);
  std::sort(b.plus.begin(), b.plus.end());
  std::sort(b.minus.begin(), b.minus.end());
  return b;
}

// ---------------------------------------------------------------------------
// multiplicative torsors in trivialized form

// Degree d: a G-torsor on every d-simplex (trivialized by an anchor), an element
// alpha(σ) on every (d+1)-simplex standing for α_σ : ⊗ T_{∂+σ} → ⊗ T_{∂-σ},
// measured against the anchors.
struct MultTorsorRep {
  SimplicialSet complex;
  int degree = 0;
  AbelianGroup group;
  Cochain anchors;
  Cochain alpha;

  static MultTorsorRep from_cochain(const Cochain& alpha) {
    int d = alpha.degree() - 1;
    return {alpha.complex(), d, alpha.group(), Cochain(alpha.complex(), d, alpha.group()), alpha};
  }
  // Move every anchor x_ρ to x_ρ + a_ρ. The morphisms stay the same, their
  // measured values change by δa.
  MultTorsorRep reanchored(const Cochain& a) const {
    if (a.degree() != degree) throw Error("anchor change has the wrong degree");
    return {complex, degree, group, anchors + a, alpha + coboundary(a)};
  }
};

struct PastingRun {
  std::vector<int> order;                  // faces of τ, in the order they are applied
  std::vector<std::size_t> source, target;  // sorted multisets of degree-d simplices
  std::size_t transpositions = 0;           // symmetry moves; they act trivially on G-torsors
  GroupElem value;
  std::map<std::size_t, std::int64_t> terms;  // (d+1)-simplex -> how often its α was used
};

namespace detail {

// Run α_{∂i τ} for i in order, tensor-extending by identities and permuting factors.
inline PastingRun paste(const SimplicialSet& k, int d, std::size_t tau, const std::vector<int>& order,
                        const Cochain* alpha, const AbelianGroup& g) {
  PastingRun run;
  run.order = order;
  run.value = GroupElem::zero(g);
  std::vector<std::size_t> word;
  for (int i : order) {
    std::size_t sigma = k.face(d + 2, tau, i);
    for (auto rho : parity_faces(k, d + 1, sigma, 0)) {
      auto it = std::find(word.begin(), word.end(), rho);
      if (it == word.end()) {
        run.source.push_back(rho);  // enters through the tensor extension
        continue;
      }
      run.transpositions += static_cast<std::size_t>(word.end() - it) - 1;
      word.erase(it);
    }
    for (auto rho : parity_faces(k, d + 1, sigma, 1)) word.push_back(rho);
    if (alpha) run.value += (*alpha)[sigma];
    ++run.terms[sigma];
  }
  run.target = word;
  std::sort(run.source.begin(), run.source.end());
  std::sort(run.target.begin(), run.target.end());
  return run;
}

inline std::vector<int> even_order(int top) {
  std::vector<int> o;
  for (int i = 0; i <= top; i += 2) o.push_back(i);
  return o;
}
// α_{∂1}·α_{∂3}·… applies the largest odd face first
inline std::vector<int> odd_order(int top) {
  std::vector<int> o;
  for (int i = top % 2 ? top : top - 1; i >= 1; i -= 2) o.push_back(i);
  return o;
}

}  // namespace detail

struct EvenOdd {
  GroupElem E, O;
  PastingRun even, odd;
  bool well_typed() const { return even.source == odd.source && even.target == odd.target; }
};

inline EvenOdd evaluate_even_odd(const MultTorsorRep& t, std::size_t tau) {
  int top = t.degree + 2;
  if (tau >= t.complex.count(top)) throw Error("no such " + std::to_string(top) + "-simplex");
  EvenOdd r;
  r.even = detail::paste(t.complex, t.degree, tau, detail::even_order(top), &t.alpha, t.group);
  r.odd = detail::paste(t.complex, t.degree, tau, detail::odd_order(top), &t.alpha, t.group);
  r.E = r.even.value;
  r.O = r.odd.value;
  return r;
}

// Symbolic form: E - O as a formal sum of α-terms against Σ (-1)^i [∂i τ].
struct PastingIdentity {
  bool well_typed = false;
  bool matches_coboundary = false;
  std::map<std::size_t, std::int64_t> e_minus_o, coboundary;
  bool ok() const { return well_typed && matches_coboundary; }
};

inline PastingIdentity pasting_identity(const SimplicialSet& k, int degree, std::size_t tau) {
  int top = degree + 2;
  AbelianGroup z = AbelianGroup::integers();
  PastingRun e = detail::paste(k, degree, tau, detail::even_order(top), nullptr, z);
  PastingRun o = detail::paste(k, degree, tau, detail::odd_order(top), nullptr, z);
  PastingIdentity r;
  r.well_typed = e.source == o.source && e.target == o.target;
  for (auto [s, m] : e.terms) r.e_minus_o[s] += m;
  for (auto [s, m] : o.terms) r.e_minus_o[s] -= m;
  for (int i = 0; i <= top; ++i) r.coboundary[k.face(top, tau, i)] += i % 2 ? -1 : 1;
  std::erase_if(r.e_minus_o, [](auto& p) { return p.second == 0; });
  std::erase_if(r.coboundary, [](auto& p) { return p.second == 0; });
  r.matches_coboundary = r.e_minus_o == r.coboundary;
  return r;
}

struct TorsorViolation {
  std::string tau;
  GroupElem e_minus_o;
};

struct MultTorsorReport {
  bool pass = true;
  bool well_typed = true;
  std::size_t checked = 0;
  std::vector<TorsorViolation> violations;
};

inline MultTorsorReport check_mult_torsor(const MultTorsorRep& t) {
  if (t.alpha.degree() != t.degree + 1 || !(t.alpha.group() == t.group) || !(t.alpha.complex() == t.complex))
    throw Error("torsor data is inconsistent with its degree, group or complex");
  MultTorsorReport rep;
  for (std::size_t tau = 0; tau < t.complex.count(t.degree + 2); ++tau) {
    EvenOdd eo = evaluate_even_odd(t, tau);
    ++rep.checked;
    if (!eo.well_typed()) rep.well_typed = false;
    if (!(eo.E == eo.O)) rep.violations.push_back({t.complex.id(t.degree + 2, tau), eo.E - eo.O});
  }
  rep.pass = rep.well_typed && rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// cohomology

namespace detail {

inline std::vector<BigInt> column(const IntMatrix& m, std::size_t c) {
  std::vector<BigInt> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  return v;
}

inline BigInt mod_floor(const BigInt& a, std::int64_t m) {
  BigInt r = a % m;
  return r < 0 ? r + m : r;
}

// H^n(Σ, ℤ/m), m = 0 meaning ℤ. Lifted cocycles are the x ∈ ℤ^N with
// δx ∈ mℤ^N'; H^n = lifted cocycles / (coboundaries + mℤ^N).
struct CyclicCohomology {
  std::int64_t modulus = 0;
  std::size_t cochains = 0;
  IntMatrix basis;  // columns: ℤ-basis of the lifted cocycles
  SmithForm basis_sf;
  SmithForm rel_sf;
  std::vector<std::int64_t> orders;  // per generator, 0 for ℤ
  std::vector<std::size_t> slots;    // generator -> row of rel_sf
  std::vector<std::vector<BigInt>> reps;

  // Coordinates of x in the cocycle basis; nullopt if x is not a lifted cocycle.
  std::optional<std::vector<BigInt>> basis_coords(const std::vector<BigInt>& x) const {
    std::size_t r = basis_sf.rank;
    std::vector<BigInt> ux(cochains);
    for (std::size_t i = 0; i < cochains; ++i)
      for (std::size_t j = 0; j < cochains; ++j) ux[i] += basis_sf.U(i, j) * x[j];
    std::vector<BigInt> z(r);
    for (std::size_t i = 0; i < cochains; ++i) {
      if (i < r) {
        if (ux[i] % basis_sf.invariant_factors[i] != 0) return std::nullopt;
        z[i] = ux[i] / basis_sf.invariant_factors[i];
      } else if (ux[i] != 0) {
        return std::nullopt;
      }
    }
    return z;
  }

  std::vector<std::int64_t> class_of(const std::vector<BigInt>& x) const {
    auto z = basis_coords(x);
    if (!z) throw Error("cochain is not a cocycle");
    std::size_t r = z->size();
    std::vector<std::int64_t> out;
    for (std::size_t g = 0; g < orders.size(); ++g) {
      std::size_t row = slots[g];
      BigInt w = 0;
      for (std::size_t j = 0; j < r; ++j) w += rel_sf.U(row, j) * (*z)[j];
      if (orders[g]) w = mod_floor(w, orders[g]);
      out.push_back(static_cast<std::int64_t>(w));
    }
    return out;
  }
};

inline CyclicCohomology cyclic_cohomology(const SimplicialSet& k, int n, std::int64_t m) {
  CyclicCohomology h;
  h.modulus = m;
  std::size_t N = k.count(n), N1 = k.count(n + 1);
  h.cochains = N;
  IntMatrix D = coboundary_matrix(k, n);
  IntMatrix M(N1, N + (m ? N1 : 0));
  for (std::size_t r = 0; r < N1; ++r) {
    for (std::size_t c = 0; c < N; ++c) M(r, c) = D(r, c);
    if (m) M(r, N + r) = -m;
  }
  SmithForm sm = smith_form(M);
  std::size_t gens = M.cols() - sm.rank;
  IntMatrix G(N, gens);
  for (std::size_t j = 0; j < gens; ++j)
    for (std::size_t r = 0; r < N; ++r) G(r, j) = sm.V(r, sm.rank + j);
  h.basis_sf = smith_form(G);
  std::size_t rk = h.basis_sf.rank;
  h.basis = IntMatrix(N, rk);
  for (std::size_t j = 0; j < rk; ++j)
    for (std::size_t r = 0; r < N; ++r) h.basis(r, j) = h.basis_sf.invariant_factors[j] * h.basis_sf.U_inv(r, j);

  // relations: coboundaries and m·e_i
  std::vector<std::vector<BigInt>> rels;
  IntMatrix Dprev = coboundary_matrix(k, n - 1);
  for (std::size_t c = 0; c < Dprev.cols(); ++c) rels.push_back(column(Dprev, c));
  if (m)
    for (std::size_t i = 0; i < N; ++i) {
      std::vector<BigInt> e(N);
      e[i] = m;
      rels.push_back(e);
    }
  IntMatrix R(rk, rels.size());
  for (std::size_t c = 0; c < rels.size(); ++c) {
    auto z = h.basis_coords(rels[c]);
    if (!z) throw Error("internal: relation is not a cocycle");
    for (std::size_t j = 0; j < rk; ++j) R(j, c) = (*z)[j];
  }
  h.rel_sf = smith_form(R);
  for (std::size_t j = 0; j < rk; ++j) {
    std::int64_t order = j < h.rel_sf.rank ? static_cast<std::int64_t>(h.rel_sf.invariant_factors[j]) : 0;
    if (order == 1) continue;
    h.orders.push_back(order);
    h.slots.push_back(j);
    std::vector<BigInt> rep(N);
    for (std::size_t b = 0; b < rk; ++b)
      for (std::size_t r = 0; r < N; ++r) rep[r] += h.basis(r, b) * h.rel_sf.U_inv(b, j);
    if (m)
      for (auto& x : rep) x = mod_floor(x, m);
    h.reps.push_back(std::move(rep));
  }
  return h;
}

inline std::vector<BigInt> component(const Cochain& c, std::size_t f) {
  std::vector<BigInt> v;
  for (auto& x : c.values()) v.push_back(x.coords()[f]);
  return v;
}

}  // namespace detail

// Invariant-factor form: ℤ summands first, then torsion d1 | d2 | ….
inline AbelianGroup canonical_group(const std::vector<std::int64_t>& orders) {
  std::vector<std::int64_t> out, torsion;
  for (auto o : orders) (o == 0 ? out : torsion).push_back(o);
  if (!torsion.empty()) {
    IntMatrix d(torsion.size(), torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) d(i, i) = torsion[i];
    for (auto& f : smith_normal_form(d).first)
      if (f != 1) out.push_back(static_cast<std::int64_t>(f));
  }
  return AbelianGroup(out);
}

struct Cohomology {
  SimplicialSet complex;
  int degree = 0;
  AbelianGroup coefficients;
  std::vector<detail::CyclicCohomology> parts;  // one per summand of the coefficients

  // Generators in the order the coordinates are reported.
  AbelianGroup presentation() const {
    std::vector<std::int64_t> o;
    for (auto& p : parts) o.insert(o.end(), p.orders.begin(), p.orders.end());
    return AbelianGroup(o);
  }
  AbelianGroup group() const { return canonical_group(presentation().factors()); }

  std::vector<Cochain> representatives() const {
    std::vector<Cochain> out;
    for (std::size_t f = 0; f < parts.size(); ++f)
      for (auto& rep : parts[f].reps) {
        std::vector<GroupElem> v;
        for (auto& x : rep) {
          std::vector<std::int64_t> c(coefficients.rank(), 0);
          c[f] = static_cast<std::int64_t>(x);
          v.emplace_back(coefficients, c);
        }
        out.emplace_back(complex, degree, coefficients, v);
      }
    return out;
  }

  GroupElem class_of(const Cochain& c) const {
    if (c.degree() != degree || !(c.group() == coefficients) || !(c.complex() == complex))
      throw Error("cochain does not belong to this cohomology group");
    std::vector<std::int64_t> coords;
    for (std::size_t f = 0; f < parts.size(); ++f) {
      auto x = parts[f].class_of(detail::component(c, f));
      coords.insert(coords.end(), x.begin(), x.end());
    }
    return GroupElem(presentation(), coords);
  }
};

// Exact for every degree of a finite complex; degrees past the top dimension give 0.
inline Cohomology cohomology(const SimplicialSet& k, int n, const AbelianGroup& g) {
  if (n < 0 || n > kMaxSimplexDim) throw Error("cohomology degree " + std::to_string(n) + " out of range");
  Cohomology h;
  h.complex = k;
  h.degree = n;
  h.coefficients = g;
  for (auto m : g.factors()) h.parts.push_back(detail::cyclic_cohomology(k, n, m));
  return h;
}

// ---------------------------------------------------------------------------
// classification

namespace detail {
inline void same_kind(const MultTorsorRep& a, const MultTorsorRep& b) {
  if (a.degree != b.degree) throw Error("torsors have different degrees");
  if (!(a.group == b.group)) throw Error("torsors have different groups");
  if (!(a.complex == b.complex)) throw Error("torsors live on different complexes");
}
}  // namespace detail

inline GroupElem classify_torsor(const Cohomology& h, const MultTorsorRep& t) {
  if (h.degree != t.degree + 1) throw Error("classification needs H^(degree+1)");
  if (!check_mult_torsor(t).pass) throw Error("not a multiplicative torsor: E != O somewhere");
  return h.class_of(t.alpha);
}

inline GroupElem classify_torsor(const MultTorsorRep& t) {
  return classify_torsor(cohomology(t.complex, t.degree + 1, t.group), t);
}

// A transporter x with δx = alpha1 - alpha2, if the torsors are isomorphic.
inline std::optional<Cochain> iso_decide(const MultTorsorRep& a, const MultTorsorRep& b) {
  detail::same_kind(a, b);
  Cochain diff = a.alpha - b.alpha;
  const SimplicialSet& k = a.complex;
  int n = a.degree;
  std::size_t N = k.count(n), N1 = k.count(n + 1);
  IntMatrix D = coboundary_matrix(k, n);
  std::vector<std::vector<std::int64_t>> x(N, std::vector<std::int64_t>(a.group.rank(), 0));
  for (std::size_t f = 0; f < a.group.rank(); ++f) {
    std::int64_t m = a.group.factors()[f];
    IntMatrix M(N1, N + (m ? N1 : 0));
    for (std::size_t r = 0; r < N1; ++r) {
      for (std::size_t c = 0; c < N; ++c) M(r, c) = D(r, c);
      if (m) M(r, N + r) = m;
    }
    auto sol = solve_integer(M, detail::component(diff, f));
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < N; ++i)
      x[i][f] = static_cast<std::int64_t>(m ? detail::mod_floor((*sol)[i], m) : (*sol)[i]);
  }
  std::vector<GroupElem> v;
  for (auto& c : x) v.emplace_back(a.group, c);
  Cochain t(k, n, a.group, v);
  if (!(coboundary(t) == diff)) throw Error("internal: transporter does not solve the equation");
  return t;
}

// Every (degree+1)-cochain with values in a finite G, grouped into isomorphism
// classes of torsors by iso_decide, compared with H^(degree+1).
struct ClassificationCensus {
  std::size_t cochains = 0, torsors = 0, iso_classes = 0;
  std::int64_t cohomology_order = 0;
  bool classify_constant = true;   // same class inside every iso class
  bool classify_separates = true;  // distinct classes across iso classes
  bool ok() const {
    return classify_constant && classify_separates && static_cast<std::int64_t>(iso_classes) == cohomology_order;
  }
};

inline ClassificationCensus classification_census(const SimplicialSet& k, int degree, const AbelianGroup& g,
                                                  std::size_t budget = 1u << 16) {
  if (!g.is_finite()) throw Error("census needs a finite group");
  std::size_t N = k.count(degree + 1);
  std::int64_t order = g.order();
  double total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= static_cast<double>(order);
  if (total > static_cast<double>(budget)) throw Error("census exceeds the cochain budget");
  Cohomology h = cohomology(k, degree + 1, g);
  ClassificationCensus c;
  c.cohomology_order = h.presentation().order();
  std::vector<MultTorsorRep> reps;
  std::vector<GroupElem> rep_class;
  // elements of G by mixed radix
  std::vector<GroupElem> elems;
  for (std::int64_t e = 0; e < order; ++e) {
    std::vector<std::int64_t> coords;
    std::int64_t r = e;
    for (auto d : g.factors()) coords.push_back(r % d), r /= d;
    elems.emplace_back(g, coords);
  }
  std::vector<std::size_t> digit(N, 0);
  for (;;) {
    std::vector<GroupElem> v;
    for (auto d : digit) v.push_back(elems[d]);
    ++c.cochains;
    MultTorsorRep t = MultTorsorRep::from_cochain(Cochain(k, degree + 1, g, v));
    if (check_mult_torsor(t).pass) {
      ++c.torsors;
      GroupElem cls = classify_torsor(h, t);
      bool placed = false;
      for (std::size_t r = 0; r < reps.size() && !placed; ++r)
        if (iso_decide(t, reps[r])) {
          placed = true;
          if (!(cls == rep_class[r])) c.classify_constant = false;
        }
      if (!placed) {
        for (auto& other : rep_class)
          if (other == cls) c.classify_separates = false;
        reps.push_back(t);
        rep_class.push_back(cls);
      }
    }
    std::size_t i = 0;
    while (i < N && ++digit[i] == elems.size()) digit[i++] = 0;
    if (i == N) break;
  }
  c.iso_classes = reps.size();
  return c;
}

// ---------------------------------------------------------------------------
// gerbes

// A multiplicative G-gerbe with trivialized objects: for each 2-simplex σ the
// torsor T_σ = Hom(α_σ(x0⊗x2), x1) is identified with G through the chosen
// objects, and beta(τ) on 3-simplices is the associativity constraint.
struct GerbeRep {
  SimplicialSet complex;
  AbelianGroup group;
  Cochain beta;
};

struct GerbeViolation {
  std::string simplex;  // a 4-simplex
  GroupElem even, odd;  // β∂4 + β∂2 + β∂0 and β∂1 + β∂3
};

inline std::vector<GerbeViolation> gerbe_violations(const GerbeRep& g) {
  if (g.beta.degree() != 3 || !(g.beta.group() == g.group) || !(g.beta.complex() == g.complex))
    throw Error("gerbe needs a degree-3 cochain with values in its group on its complex");
  std::vector<GerbeViolation> out;
  const SimplicialSet& k = g.complex;
  for (std::size_t s = 0; s < k.count(4); ++s) {
    auto b = [&](int i) { return g.beta[k.face(4, s, i)]; };
    GroupElem e = b(4) + b(2) + b(0), o = b(1) + b(3);
    if (!(e == o)) out.push_back({k.id(4, s), e, o});
  }
  return out;
}

// The degree-2 torsor σ ↦ T_σ; α_τ : T_∂0 ⊗ T_∂2 → T_∂1 ⊗ T_∂3 is composition with β_τ.
inline MultTorsorRep gerbe_to_torsor(const GerbeRep& g) {
  auto v = gerbe_violations(g);
  if (!v.empty()) throw Error("invalid gerbe: degree-4 condition fails on '" + v.front().simplex + "'");
  return {g.complex, 2, g.group, Cochain(g.complex, 2, g.group), g.beta};
}

}  // namespace tatetors
