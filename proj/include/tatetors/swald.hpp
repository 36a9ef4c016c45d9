// Truncated S-construction of Vect_0(F_q): n-simplices are rigidified
// filtrations a_{01} ↪ … ↪ a_{0n} with chosen quotients a_{ij}, enumerated on
// the nose (objects are k^d, maps are explicit matrices).
#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tatetors/detline.hpp"
#include "tatetors/dimtorsor.hpp"
#include "tatetors/group.hpp"
#include "tatetors/simptors.hpp"

namespace tatetors {

// mono(i,j,l) : a_ij → a_il for i ≤ j ≤ l and epi(i,k,l) : a_il → a_kl for
// i ≤ k ≤ l, including the degenerate ones (identities and maps from/to 0).
// φ^{kl}_{ij} = epi(i,k,l) ∘ mono(i,j,l).
class SObject {
 public:
  SObject() : SObject(Field::prime(2), 0) {}
  SObject(Field f, int n) : f_(std::move(f)), n_(n) {
    std::size_t m = static_cast<std::size_t>(n + 1);
    dims_.assign(m * m, 0);
    mono_.resize(m * m * m);
    epi_.resize(m * m * m);
  }

  int n() const { return n_; }
  const Field& field() const { return f_; }
  std::size_t dim(int i, int j) const { return dims_[i * (n_ + 1) + j]; }
  FdSpace entry(int i, int j) const { return {dim(i, j), f_}; }
  const LinMap& mono(int i, int j, int l) const { return mono_[idx(i, j, l)]; }
  const LinMap& epi(int i, int k, int l) const { return epi_[idx(i, k, l)]; }
  LinMap phi(int i, int j, int k, int l) const { return compose(epi(i, k, l), mono(i, j, l)); }
  // a_ij ↪ a_ik ↠ a_jk
  SES ses(int i, int j, int k) const { return SES{mono(i, j, k), epi(i, j, k)}; }

  void set_dim(int i, int j, std::size_t d) { dims_[i * (n_ + 1) + j] = d; }
  void set_mono(int i, int j, int l, LinMap m) { mono_[idx(i, j, l)] = std::move(m); }
  void set_epi(int i, int k, int l, LinMap e) { epi_[idx(i, k, l)] = std::move(e); }

  // Generating data: row-0 monos and the quotient choices; equal keys mean equal objects.
  std::string key() const {
    std::string s = std::to_string(n_) + ":";
    for (int j = 1; j < n_; ++j) s += mono(0, j, j + 1).matrix().str() + ";";
    for (int i = 1; i < n_; ++i)
      for (int j = i + 1; j <= n_; ++j) s += epi(0, i, j).matrix().str() + ";";
    for (int j = 1; j <= n_; ++j) s += std::to_string(dim(0, j)) + ",";
    return s;
  }

  friend bool operator==(const SObject& a, const SObject& b) {
    return a.n_ == b.n_ && a.f_ == b.f_ && a.dims_ == b.dims_ && a.mono_ == b.mono_ && a.epi_ == b.epi_;
  }

 private:
  std::size_t idx(int i, int j, int l) const {
    if (i < 0 || l > n_ || i > j || j > l) throw Error("S-object index out of range");
    std::size_t m = static_cast<std::size_t>(n_ + 1);
    return (i * m + j) * m + l;
  }
  Field f_;
  int n_;
  std::vector<std::size_t> dims_;
  std::vector<LinMap> mono_, epi_;
};

struct SDiagnosis {
  std::string what;
  std::vector<int> indices;
};

inline std::optional<SDiagnosis> validate_s_object(const SObject& x) {
  int n = x.n();
  for (int i = 0; i <= n; ++i)
    if (x.dim(i, i) != 0) return SDiagnosis{"a_ii is not zero", {i, i}};
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        if (!(x.mono(i, j, k).source() == x.entry(i, j)) || !(x.mono(i, j, k).target() == x.entry(i, k)))
          return SDiagnosis{"mono has wrong ends", {i, j, k}};
        if (!(x.epi(i, j, k).source() == x.entry(i, k)) || !(x.epi(i, j, k).target() == x.entry(j, k)))
          return SDiagnosis{"epi has wrong ends", {i, j, k}};
        if (!is_valid(check_ses(x.mono(i, j, k), x.epi(i, j, k))))
          return SDiagnosis{"a_ij -> a_ik -> a_jk is not short exact", {i, j, k}};
      }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
          if (!(compose(x.mono(i, k, l), x.mono(i, j, k)) == x.mono(i, j, l)))
            return SDiagnosis{"monos do not compose", {i, j, k, l}};
          if (!(compose(x.epi(j, k, l), x.epi(i, j, l)) == x.epi(i, k, l)))
            return SDiagnosis{"epis do not compose", {i, j, k, l}};
          // i ≤ j ≤ k ≤ l read as a_ik → a_jl both ways
          if (!(compose(x.epi(i, j, l), x.mono(i, k, l)) == compose(x.mono(j, k, l), x.epi(i, j, k))))
            return SDiagnosis{"mono and epi do not commute", {i, j, k, l}};
        }
  return std::nullopt;
}

// monos[j] : k^{d_{j+1}} → k^{d_{j+2}} (j = 0..n-2) and quotient choices
// quot(i, j) : a_0j ↠ a_ij for 1 ≤ i < j ≤ n, whose kernel must be the image of a_0i.
inline SObject build_s_object(const Field& f, const std::vector<std::size_t>& dims, const std::vector<LinMap>& monos,
                              const std::function<LinMap(int, int)>& quot) {
  int n = static_cast<int>(dims.size());
  if (static_cast<int>(monos.size()) != std::max(n - 1, 0)) throw Error("filtration needs n-1 monos");
  SObject x(f, n);
  auto d0 = [&](int j) -> std::size_t { return j == 0 ? 0 : dims[j - 1]; };
  for (int j = 1; j <= n; ++j)
    if (j > 1 && d0(j) < d0(j - 1)) throw Error("filtration dimensions must increase");
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) x.set_dim(i, j, d0(j) - d0(i));
  auto sp = [&](int i, int j) { return x.entry(i, j); };

  // row 0
  for (int j = 0; j <= n; ++j) {
    x.set_mono(0, j, j, LinMap::identity(sp(0, j)));
    for (int l = j + 1; l <= n; ++l) {
      if (j == 0) {
        x.set_mono(0, 0, l, LinMap::zero(sp(0, 0), sp(0, l)));
        continue;
      }
      const LinMap& step = monos[l - 2];
      if (!(step.source() == sp(0, l - 1)) || !(step.target() == sp(0, l)))
        throw Error("mono " + std::to_string(l - 1) + " has the wrong shape");
      if (!step.injective()) throw Error("filtration map " + std::to_string(l - 1) + " is not injective");
      x.set_mono(0, j, l, compose(step, x.mono(0, j, l - 1)));
    }
  }
  // quotients a_0l ↠ a_il
  for (int l = 0; l <= n; ++l) {
    x.set_epi(0, 0, l, LinMap::identity(sp(0, l)));
    for (int i = 1; i <= l; ++i) {
      if (i == l) {
        x.set_epi(0, l, l, LinMap::zero(sp(0, l), sp(l, l)));
        continue;
      }
      LinMap q = quot(i, l);
      if (!(q.source() == sp(0, l)) || !(q.target() == sp(i, l)))
        throw Error("quotient choice (" + std::to_string(i) + "," + std::to_string(l) + ") has the wrong shape");
      if (!is_valid(check_ses(x.mono(0, i, l), q)))
        throw Error("quotient choice (" + std::to_string(i) + "," + std::to_string(l) +
                    ") does not have the image of a_0" + std::to_string(i) + " as kernel");
      x.set_epi(0, i, l, q);
    }
  }
  // everything else is induced
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int l = j; l <= n; ++l) {
        // mono(i,j,l): the unique map with mono(i,j,l) ∘ epi(0,i,j) = epi(0,i,l) ∘ mono(0,j,l)
        auto m = factor_through_epi(x.epi(0, i, j), compose(x.epi(0, i, l), x.mono(0, j, l)));
        // epi(i,j,l): the unique map with epi(i,j,l) ∘ epi(0,i,l) = epi(0,j,l)
        auto e = factor_through_epi(x.epi(0, i, l), x.epi(0, j, l));
        if (!m || !e) throw Error("quotient choices are incompatible");
        x.set_mono(i, j, l, *m);
        x.set_epi(i, j, l, *e);
      }
  if (auto d = validate_s_object(x)) throw Error("S-object: " + d->what);
  return x;
}

// Basepoint of S_0.
inline SObject s_point(const Field& f) { return build_s_object(f, {}, {}, {}); }

// ∂_k deletes index k; ∂_0(a)_{ij} = a_{i+1,j+1}.
inline SObject s_face(const SObject& x, int k) {
  int n = x.n();
  if (n < 1 || k < 0 || k > n) throw Error("face index out of range");
  auto d = [k](int i) { return i < k ? i : i + 1; };
  SObject y(x.field(), n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      y.set_dim(i, j, x.dim(d(i), d(j)));
      for (int l = j; l < n; ++l) {
        y.set_mono(i, j, l, x.mono(d(i), d(j), d(l)));
        y.set_epi(i, j, l, x.epi(d(i), d(j), d(l)));
      }
    }
  return y;
}

// s_k repeats index k: a_{k,k+1} becomes 0.
inline SObject s_degeneracy(const SObject& x, int k) {
  int n = x.n();
  if (k < 0 || k > n) throw Error("degeneracy index out of range");
  auto s = [k](int i) { return i <= k ? i : i - 1; };
  SObject y(x.field(), n + 1);
  for (int i = 0; i <= n + 1; ++i)
    for (int j = i; j <= n + 1; ++j) {
      y.set_dim(i, j, x.dim(s(i), s(j)));
      for (int l = j; l <= n + 1; ++l) {
        y.set_mono(i, j, l, x.mono(s(i), s(j), s(l)));
        y.set_epi(i, j, l, x.epi(s(i), s(j), s(l)));
      }
    }
  return y;
}

// ---------------------------------------------------------------------------
// enumeration

namespace detail {

inline const std::vector<Matrix>& matrices_of_rank(const Field& f, std::size_t rows, std::size_t cols, std::size_t rank) {
  static std::map<std::tuple<std::string, std::size_t, std::size_t, std::size_t>, std::vector<Matrix>> cache;
  auto key = std::make_tuple(f.name(), rows, cols, rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Matrix> out;
  for_each_matrix(f, rows, cols, [&](const Matrix& m) {
    if (m.rank() == rank) out.push_back(m);
  });
  return cache[key] = out;
}

inline BigInt injective_count(std::int64_t q, std::size_t a, std::size_t b) {
  BigInt c = 1, qb = 1;
  for (std::size_t i = 0; i < b; ++i) qb *= q;
  BigInt qi = 1;
  for (std::size_t i = 0; i < a; ++i) {
    c *= qb - qi;
    qi *= q;
  }
  return c;
}

inline void for_each_dims(int n, std::size_t D, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> d(n, 0);
  std::function<void(int, std::size_t)> rec = [&](int pos, std::size_t from) {
    if (pos == n) {
      fn(d);
      return;
    }
    for (std::size_t v = from; v <= D; ++v) {
      d[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
}

}  // namespace detail

// Number of level-n objects with entries of dimension ≤ D, by counting the generating data.
inline BigInt s_level_count(const Field& f, std::size_t D, int n) {
  std::int64_t q = f.characteristic();
  if (q == 0) throw Error("S-construction enumeration needs a finite field");
  BigInt total = 0;
  detail::for_each_dims(n, D, [&](const std::vector<std::size_t>& d) {
    BigInt c = 1;
    for (int j = 0; j + 1 < n; ++j) c *= detail::injective_count(q, d[j], d[j + 1]);
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::size_t e = d[j - 1] - d[i - 1];
        c *= detail::injective_count(q, e, e);
      }
    total += c;
  });
  return total;
}

inline std::vector<SObject> enumerate_s_level(const Field& f, std::size_t D, int n) {
  std::vector<SObject> out;
  if (n == 0) {
    out.push_back(s_point(f));
    return out;
  }
  detail::for_each_dims(n, D, [&](const std::vector<std::size_t>& d) {
    // choose monos step by step, then quotient choices pair by pair
    std::vector<LinMap> monos;
    std::function<void(int)> pick_monos = [&](int j) {
      if (j + 1 < n) {
        for (auto& m : detail::matrices_of_rank(f, d[j + 1], d[j], d[j])) {
          monos.emplace_back(FdSpace{d[j], f}, FdSpace{d[j + 1], f}, m);
          pick_monos(j + 1);
          monos.pop_back();
        }
        return;
      }
      // base quotients with the right kernels
      std::vector<std::pair<int, int>> pairs;
      std::vector<LinMap> base;
      for (int i = 1; i < n; ++i)
        for (int l = i + 1; l <= n; ++l) {
          LinMap inc = LinMap::identity(FdSpace{d[i - 1], f});
          for (int s = i; s < l; ++s) inc = compose(monos[s - 1], inc);
          pairs.emplace_back(i, l);
          base.push_back(quotient(inc.image()));
        }
      std::vector<const std::vector<Matrix>*> choices;
      for (auto& b : base) {
        std::size_t e = b.target().dim;
        choices.push_back(&detail::matrices_of_rank(f, e, e, e));
      }
      std::vector<std::size_t> pick(base.size(), 0);
      for (;;) {
        auto quot = [&](int i, int l) {
          for (std::size_t p = 0; p < pairs.size(); ++p)
            if (pairs[p] == std::make_pair(i, l)) {
              const Matrix& g = (*choices[p])[pick[p]];
              return compose(LinMap(base[p].target(), base[p].target(), g), base[p]);
            }
          throw Error("internal: missing quotient choice");
        };
        out.push_back(build_s_object(f, d, monos, quot));
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == choices[p]->size()) pick[p++] = 0;
        if (p == pick.size()) break;
      }
    };
    pick_monos(0);
  });
  return out;
}

struct SSkeleton {
  Field field = Field::prime(2);
  std::size_t D = 0;
  int N = 0;
  std::vector<std::vector<SObject>> levels;
  std::vector<std::vector<std::vector<std::size_t>>> faces;        // faces[n][x][i] in level n-1
  std::vector<std::vector<std::vector<std::size_t>>> degeneracies;  // degeneracies[n][x][i] in level n+1 (n < N)

  std::size_t size() const {
    std::size_t s = 0;
    for (auto& l : levels) s += l.size();
    return s;
  }
};

inline SSkeleton enumerate_s_skeleton(const Field& f, std::size_t D, int N, std::size_t budget = 200000) {
  if (N < 0) throw Error("level cap must be non-negative");
  BigInt total = 0;
  for (int n = 0; n <= N; ++n) total += s_level_count(f, D, n);
  if (total > budget)
    throw Error("S-skeleton would have " + total.str() + " objects, over the budget of " + std::to_string(budget));
  SSkeleton sk;
  sk.field = f;
  sk.D = D;
  sk.N = N;
  std::vector<std::unordered_map<std::string, std::size_t>> index(N + 1);
  for (int n = 0; n <= N; ++n) {
    sk.levels.push_back(enumerate_s_level(f, D, n));
    for (std::size_t x = 0; x < sk.levels[n].size(); ++x) index[n][sk.levels[n][x].key()] = x;
  }
  auto find = [&](int n, const SObject& y) {
    auto it = index[n].find(y.key());
    if (it == index[n].end()) throw Error("internal: face or degeneracy left the enumerated level " + std::to_string(n));
    return it->second;
  };
  sk.faces.resize(N + 1);
  sk.degeneracies.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    for (auto& x : sk.levels[n]) {
      std::vector<std::size_t> fc, dg;
      if (n > 0)
        for (int i = 0; i <= n; ++i) fc.push_back(find(n - 1, s_face(x, i)));
      if (n < N)
        for (int i = 0; i <= n; ++i) dg.push_back(find(n + 1, s_degeneracy(x, i)));
      sk.faces[n].push_back(fc);
      sk.degeneracies[n].push_back(dg);
    }
  return sk;
}

// Short exact sequences k^a ↪ k^b ↠ k^c with b ≤ D, counted directly.
inline BigInt count_ses_direct(const Field& f, std::size_t D) {
  BigInt c = 0;
  for (std::size_t b = 0; b <= D; ++b)
    for (std::size_t a = 0; a <= b; ++a) {
      std::size_t q = b - a;
      for_each_matrix(f, b, a, [&](const Matrix& i) {
        for_each_matrix(f, q, b, [&](const Matrix& j) {
          if (is_valid(check_ses(LinMap(FdSpace{a, f}, FdSpace{b, f}, i), LinMap(FdSpace{b, f}, FdSpace{q, f}, j)))) ++c;
        });
      });
    }
  return c;
}

// ---------------------------------------------------------------------------
// checks

struct SkeletonReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

// ∂i∂j = ∂(j-1)∂i, ∂i sj, si sj on the incidence data, and dim a_ij = dim a_0j - dim a_0i.
inline SkeletonReport check_skeleton_identities(const SSkeleton& sk) {
  SkeletonReport r;
  auto bad = [&](const std::string& what, int n, std::size_t x) {
    r.violations.push_back(what + " at level " + std::to_string(n) + " object " + std::to_string(x));
  };
  for (int n = 0; n <= sk.N; ++n)
    for (std::size_t x = 0; x < sk.levels[n].size(); ++x) {
      const SObject& o = sk.levels[n][x];
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          ++r.checked;
          if (o.dim(i, j) + o.dim(0, i) != o.dim(0, j)) bad("dim a_ij mismatch", n, x);
        }
      auto face = [&](int m, std::size_t y, int i) { return sk.faces[m][y][i]; };
      auto degen = [&](int m, std::size_t y, int i) { return sk.degeneracies[m][y][i]; };
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i) {
            ++r.checked;
            if (face(n - 1, face(n, x, j), i) != face(n - 1, face(n, x, i), j - 1)) bad("d_i d_j", n, x);
          }
      if (n < sk.N)
        for (int j = 0; j <= n; ++j) {
          std::size_t y = degen(n, x, j);
          for (int i = 0; i <= n + 1; ++i) {
            ++r.checked;
            std::size_t lhs = face(n + 1, y, i);
            bool ok;
            if (i < j)
              ok = lhs == degen(n - 1, face(n, x, i), j - 1);
            else if (i == j || i == j + 1)
              ok = lhs == x;
            else
              ok = lhs == degen(n - 1, face(n, x, i - 1), j);
            if (!ok) bad("d_i s_j", n, x);
          }
          if (n + 1 < sk.N)
            for (int i = 0; i <= j; ++i) {
              ++r.checked;
              if (degen(n + 1, degen(n, x, j), i) != degen(n + 1, degen(n, x, i), j + 1)) bad("s_i s_j", n, x);
            }
        }
    }
  return r;
}

// The skeleton as a simplicial set (degenerate simplices included), ids x<level>_<index>.
inline SimplicialSet skeleton_as_simplicial_set(const SSkeleton& sk) {
  std::vector<RawSimplex> raw;
  auto name = [](int n, std::size_t x) { return "x" + std::to_string(n) + "_" + std::to_string(x); };
  int top = std::min(sk.N, kMaxSimplexDim);
  for (int n = 0; n <= top; ++n)
    for (std::size_t x = 0; x < sk.levels[n].size(); ++x) {
      RawSimplex s{n, name(n, x), {}, 0};
      if (n > 0)
        for (auto f : sk.faces[n][x]) s.faces.push_back(name(n - 1, f));
      raw.push_back(std::move(s));
    }
  return require_simplicial_set(raw);
}

struct TheoryReport {
  std::size_t checked = 0;
  std::vector<std::string> witnesses;
  bool pass() const { return witnesses.empty(); }
};

inline std::string describe_filtration(const SObject& x) {
  std::string s = "a01=k^" + std::to_string(x.dim(0, 1));
  for (int j = 2; j <= x.n(); ++j)
    s += " -> a0" + std::to_string(j) + "=k^" + std::to_string(x.dim(0, j)) + " via " + x.mono(0, j - 1, j).matrix().str();
  for (int i = 1; i < x.n(); ++i)
    for (int j = i + 1; j <= x.n(); ++j)
      s += "; a" + std::to_string(i) + std::to_string(j) + " quotient " + x.epi(0, i, j).matrix().str();
  return s;
}

// A degree-0 torsor on the skeleton: α(x) = chi(a_01) on 1-simplices; the E = O
// condition on 2-simplices is additivity on short exact sequences.
inline TheoryReport verify_dim_theory(const SSkeleton& sk, const AbelianGroup& g,
                                      const std::function<GroupElem(const FdSpace&)>& chi) {
  if (sk.N < 2) throw Error("dimension check needs level 2");
  SimplicialSet s = skeleton_as_simplicial_set(sk);
  std::vector<GroupElem> v;
  for (auto& x : sk.levels[1]) v.push_back(chi(x.entry(0, 1)));
  MultTorsorRep t = MultTorsorRep::from_cochain(Cochain(s, 1, g, v));
  MultTorsorReport rep = check_mult_torsor(t);
  TheoryReport r;
  r.checked = rep.checked;
  for (auto& w : rep.violations) {
    std::size_t x = std::stoul(w.tau.substr(w.tau.find('_') + 1));
    r.witnesses.push_back("E-O=" + w.e_minus_o.str() + " on " + describe_filtration(sk.levels[2][x]));
  }
  return r;
}

inline TheoryReport verify_dim_theory(const SSkeleton& sk, const DimTheory& chi) {
  return verify_dim_theory(sk, chi.group(), [&](const FdSpace& a) { return chi(static_cast<std::int64_t>(a.dim)); });
}

// Degree-1 check: on every 3-simplex, E = λ(∂2)λ(∂0) and O = λ(∂1)λ(∂3) (the two
// ways around the length-2 filtration); degrees add on every 2-simplex.
inline TheoryReport verify_det_theory(const SSkeleton& sk, const DetTheory& t) {
  if (sk.N < 3) throw Error("determinant check needs level 3");
  TheoryReport r;
  for (auto& x : sk.levels[2]) {
    ++r.checked;
    SES s = x.ses(0, 1, 2);
    if (t.h(s.sub()).degree + t.h(s.quot()).degree != t.h(s.middle()).degree)
      r.witnesses.push_back("degree not additive on " + describe_filtration(x));
  }
  for (auto& x : sk.levels[3]) {
    ++r.checked;
    auto lam = [&](int i) {
      SObject f = s_face(x, i);
      return t.lambda(f.mono(0, 1, 2), f.epi(0, 1, 2));
    };
    Scalar e = lam(2) * lam(0), o = lam(1) * lam(3);
    if (!(e == o)) r.witnesses.push_back("E=" + e.str() + " O=" + o.str() + " on " + describe_filtration(x));
  }
  return r;
}

}  // namespace tatetors
