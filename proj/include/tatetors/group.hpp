// Finitely generated abelian groups ⊕ ℤ/d_i (d_i = 0 for ℤ), elements and homomorphisms.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tatetors/exactlin.hpp"

namespace tatetors {

class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (auto d : factors_)
      if (d != 0 && d < 2) throw Error("group factor must be 0 (for Z) or at least 2");
  }
  static AbelianGroup integers() { return AbelianGroup({0}); }
  static AbelianGroup cyclic(std::int64_t d) { return AbelianGroup({d}); }

  // "Z", "Z/6", "Z+Z/2"; "0" is the trivial group.
  static AbelianGroup parse(const std::string& s) {
    if (s == "0") return AbelianGroup();
    std::vector<std::int64_t> f;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t end = s.find('+', pos);
      if (end == std::string::npos) end = s.size();
      std::string term = s.substr(pos, end - pos);
      if (term == "Z") {
        f.push_back(0);
      } else if (term.size() > 2 && term.compare(0, 2, "Z/") == 0 &&
                 term.find_first_not_of("0123456789", 2) == std::string::npos) {
        f.push_back(std::stoll(term.substr(2)));
      } else {
        throw Error("malformed group term '" + term + "' in '" + s + "'");
      }
      if (end == s.size()) break;
      pos = end + 1;
    }
    return AbelianGroup(f);
  }

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_trivial() const { return factors_.empty(); }
  bool is_finite() const {
    for (auto d : factors_)
      if (d == 0) return false;
    return true;
  }
  std::int64_t order() const {
    std::int64_t o = 1;
    for (auto d : factors_) {
      if (d == 0) throw Error("order of an infinite group");
      o *= d;
    }
    return o;
  }
  std::string str() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (auto d : factors_) {
      if (!s.empty()) s += "+";
      s += d == 0 ? "Z" : "Z/" + std::to_string(d);
    }
    return s;
  }
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<std::int64_t> factors_;
};

class GroupElem {
 public:
  GroupElem() = default;
  GroupElem(const AbelianGroup& g, std::vector<std::int64_t> coords) : group_(g), c_(std::move(coords)) {
    if (c_.size() != g.rank()) throw Error("element has wrong number of coordinates for " + g.str());
    reduce();
  }
  static GroupElem zero(const AbelianGroup& g) { return GroupElem(g, std::vector<std::int64_t>(g.rank(), 0)); }
  // The element with a single coordinate v in a cyclic (or ℤ) group.
  static GroupElem of(const AbelianGroup& g, std::int64_t v) {
    if (g.rank() != 1) throw Error("GroupElem::of needs a cyclic group");
    return GroupElem(g, {v});
  }

  const AbelianGroup& group() const { return group_; }
  const std::vector<std::int64_t>& coords() const { return c_; }
  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  friend GroupElem operator+(const GroupElem& a, const GroupElem& b) {
    a.check(b);
    std::vector<std::int64_t> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.c_[k] + b.c_[k];
    return GroupElem(a.group_, c);
  }
  GroupElem operator-() const {
    std::vector<std::int64_t> c(c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -c_[k];
    return GroupElem(group_, c);
  }
  friend GroupElem operator-(const GroupElem& a, const GroupElem& b) { return a + (-b); }
  friend GroupElem operator*(std::int64_t n, const GroupElem& a) {
    std::vector<std::int64_t> c(a.c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = n * a.c_[k];
    return GroupElem(a.group_, c);
  }
  GroupElem& operator+=(const GroupElem& b) { return *this = *this + b; }

  std::string str() const {
    if (c_.size() == 1) return std::to_string(c_[0]);
    std::string s = "(";
    for (std::size_t k = 0; k < c_.size(); ++k) s += (k ? "," : "") + std::to_string(c_[k]);
    return s + ")";
  }

 private:
  void check(const GroupElem& b) const {
    if (!(group_ == b.group_)) throw Error("group mismatch: " + group_.str() + " vs " + b.group_.str());
  }
  void reduce() {
    for (std::size_t k = 0; k < c_.size(); ++k) {
      std::int64_t d = group_.factors()[k];
      if (d) c_[k] = ((c_[k] % d) + d) % d;
    }
  }
  AbelianGroup group_;
  std::vector<std::int64_t> c_;
};

// Homomorphism given by an integer matrix on generators (column k = image of generator k).
class GroupHom {
 public:
  GroupHom(const AbelianGroup& source, const AbelianGroup& target, std::vector<std::vector<std::int64_t>> columns)
      : source_(source), target_(target), cols_(std::move(columns)) {
    if (cols_.size() != source_.rank()) throw Error("homomorphism needs one column per source generator");
    for (std::size_t k = 0; k < cols_.size(); ++k) {
      if (cols_[k].size() != target_.rank()) throw Error("homomorphism column has wrong length");
      std::int64_t d = source_.factors()[k];
      if (d && !(d * GroupElem(target_, cols_[k])).is_zero())
        throw Error("homomorphism is ill-defined: relation " + std::to_string(d) + "*g" + std::to_string(k) +
                    " does not map to zero");
    }
  }
  static GroupHom identity(const AbelianGroup& g) {
    std::vector<std::vector<std::int64_t>> c(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
    for (std::size_t k = 0; k < g.rank(); ++k) c[k][k] = 1;
    return GroupHom(g, g, c);
  }
  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }

  GroupElem operator()(const GroupElem& x) const {
    if (!(x.group() == source_)) throw Error("homomorphism applied outside its source");
    GroupElem out = GroupElem::zero(target_);
    for (std::size_t k = 0; k < cols_.size(); ++k) out += x.coords()[k] * GroupElem(target_, cols_[k]);
    return out;
  }

 private:
  AbelianGroup source_, target_;
  std::vector<std::vector<std::int64_t>> cols_;
};

}  // namespace tatetors
