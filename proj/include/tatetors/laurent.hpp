// Laurent polynomials and matrices over an exact field; rank and determinants over k(t).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatetors/exactlin.hpp"

namespace tatetors {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Field& f) : field_(f) {}
  static LaurentPoly monomial(const Scalar& c, std::int64_t e) {
    LaurentPoly p(c.field());
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
  }
  static LaurentPoly monomial(const Field& f, std::int64_t c, std::int64_t e) { return monomial(Scalar(f, c), e); }
  static LaurentPoly constant(const Scalar& c) { return monomial(c, 0); }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::int64_t, Scalar>& terms() const { return terms_; }
  std::int64_t valuation() const {
    if (is_zero()) throw Error("valuation of zero");
    return terms_.begin()->first;
  }
  std::int64_t degree() const {
    if (is_zero()) throw Error("degree of zero");
    return terms_.rbegin()->first;
  }
  Scalar coeff(std::int64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(field_, 0) : it->second;
  }
  void add_term(const Scalar& c, std::int64_t e) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a.check(b);
    for (auto& [e, c] : b.terms_) a.add_term(c, e);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a.check(b);
    for (auto& [e, c] : b.terms_) a.add_term(-c, e);
    return a;
  }
  LaurentPoly operator-() const { return LaurentPoly(field_) - *this; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b);
    LaurentPoly out(a.field_);
    for (auto& [e1, c1] : a.terms_)
      for (auto& [e2, c2] : b.terms_) out.add_term(c1 * c2, e1 + e2);
    return out;
  }
  LaurentPoly shifted(std::int64_t k) const {
    LaurentPoly out(field_);
    for (auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  // a / b when b divides a in k[t, t^-1]; throws otherwise.
  static LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    LaurentPoly q(a.field_), r = a;
    if (a.is_zero()) return q;
    std::int64_t lowest = a.valuation() - b.valuation();
    Scalar lead_inv = b.terms_.rbegin()->second.inverse();
    while (!r.is_zero()) {
      std::int64_t e = r.degree() - b.degree();
      if (e < lowest) throw Error("inexact polynomial division");
      Scalar c = r.terms_.rbegin()->second * lead_inv;
      q.add_term(c, e);
      r = r - b.shifted(e) * constant(c);
    }
    return q;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto& [e, c] : terms_) {
      if (!s.empty()) s += "+";
      s += c.str() + "*t^" + std::to_string(e);
    }
    return s;
  }

  // Terms `c*t^e`, `c`, or `t^e`, joined by '+'; "0" is zero. `column` offsets error locations.
  static LaurentPoly parse(const Field& f, const std::string& s, std::size_t line = 1, std::size_t column = 1) {
    LaurentPoly p(f);
    if (s == "0") return p;
    std::size_t pos = 0;
    auto fail = [&](const std::string& what, std::size_t at) { throw ParseError(what + " in '" + s + "'", line, column + at); };
    if (s.empty()) fail("empty polynomial", 0);
    while (pos <= s.size()) {
      std::size_t end = pos;
      // a '+' directly after '^' or at term start belongs to a signed number
      while (end < s.size() && !(s[end] == '+' && end > pos && s[end - 1] != '^')) ++end;
      std::string term = s.substr(pos, end - pos);
      if (term.empty()) fail("empty term", pos);
      std::string coef = term, expo = "0";
      auto star = term.find('*');
      auto tpos = term.find('t');
      if (star != std::string::npos) {
        coef = term.substr(0, star);
        std::string rest = term.substr(star + 1);
        if (rest.empty() || rest[0] != 't') fail("expected 't' after '*'", pos + star + 1);
        tpos = star + 1;
      } else if (tpos != std::string::npos) {
        if (tpos != 0 && !(tpos == 1 && term[0] == '-')) fail("malformed term", pos);
        coef = tpos == 0 ? "1" : "-1";
      }
      if (tpos != std::string::npos) {
        std::string rest = term.substr(tpos + 1);
        if (rest.empty())
          expo = "1";
        else if (rest[0] != '^' || rest.size() == 1)
          fail("malformed exponent", pos + tpos + 1);
        else
          expo = rest.substr(1);
        std::size_t start = (expo[0] == '-' || expo[0] == '+') ? 1 : 0;
        if (expo.size() == start || expo.find_first_not_of("0123456789", start) != std::string::npos)
          fail("malformed exponent", pos + tpos + 2);
      }
      Scalar c(f, 0);
      try {
        c = Scalar::parse(f, coef);
      } catch (const ParseError&) {
        throw;
      } catch (const Error&) {
        fail("malformed coefficient", pos);
      }
      p.add_term(c, std::stoll(expo));
      if (end >= s.size()) break;
      pos = end + 1;
      if (pos == s.size()) fail("trailing '+'", end);
    }
    return p;
  }

 private:
  void check(const LaurentPoly& b) const {
    if (!(field_ == b.field_)) throw Error("field mismatch");
  }
  Field field_;
  std::map<std::int64_t, Scalar> terms_;
};

using LaurentVector = std::vector<LaurentPoly>;

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(const Field& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), v_(rows * cols, LaurentPoly(f)) {}
  static LaurentMatrix identity(const Field& f, std::size_t n) {
    LaurentMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::monomial(f, 1, 0);
    return m;
  }
  // Constant matrix from an ordinary one.
  static LaurentMatrix constant(const Matrix& a) {
    LaurentMatrix m(a.field(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = LaurentPoly::constant(a.at(r, c));
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  LaurentPoly& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("shape mismatch in Laurent product");
    if (!(a.field_ == b.field_)) throw Error("field mismatch");
    LaurentMatrix o(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) o(i, j) = o(i, j) + a(i, k) * b(k, j);
      }
    return o;
  }
  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("shape mismatch in Laurent sum");
    LaurentMatrix o = a;
    for (std::size_t i = 0; i < a.v_.size(); ++i) o.v_[i] = a.v_[i] + b.v_[i];
    return o;
  }

  bool is_zero() const {
    for (auto& p : v_)
      if (!p.is_zero()) return false;
    return true;
  }
  // Minimal valuation over nonzero entries (none for the zero matrix).
  std::optional<std::int64_t> vmin() const {
    std::optional<std::int64_t> out;
    for (auto& p : v_)
      if (!p.is_zero() && (!out || p.valuation() < *out)) out = p.valuation();
    return out;
  }

  LaurentVector apply(const LaurentVector& x) const {
    if (x.size() != cols_) throw Error("shape mismatch applying Laurent matrix");
    LaurentVector y(rows_, LaurentPoly(field_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() && !x[k].is_zero()) y[i] = y[i] + (*this)(i, k) * x[k];
    return y;
  }

  LaurentMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    LaurentMatrix o(field_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) o(i, j) = (*this)(rows[i], cols[j]);
    return o;
  }
  LaurentMatrix transpose() const {
    LaurentMatrix o(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) o(j, i) = (*this)(i, j);
    return o;
  }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<LaurentPoly> v_;
};

namespace detail {

// Fraction-free elimination over k[t, t^-1]. Returns rank; `det` gets the
// determinant when the matrix is square.
inline std::size_t bareiss(LaurentMatrix m, LaurentPoly* det = nullptr) {
  const Field& f = m.field();
  std::size_t R = m.rows(), C = m.cols(), r = 0;
  LaurentPoly prev = LaurentPoly::monomial(f, 1, 0);
  bool negate = false;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m(p, c).is_zero()) ++p;
    if (p == R) continue;
    if (p != r) {
      for (std::size_t k = 0; k < C; ++k) std::swap(m(p, k), m(r, k));
      negate = !negate;
    }
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t k = c + 1; k < C; ++k)
        m(i, k) = LaurentPoly::divide_exact(m(r, c) * m(i, k) - m(i, c) * m(r, k), prev);
      m(i, c) = LaurentPoly(f);
    }
    prev = m(r, c);
    ++r;
  }
  if (det) {
    if (R != C) throw Error("determinant of non-square Laurent matrix");
    *det = r < R ? LaurentPoly(f) : (R == 0 ? LaurentPoly::monomial(f, 1, 0) : prev);
    if (negate) *det = -*det;
  }
  return r;
}

}  // namespace detail

// Rank over the rational function field k(t).
inline std::size_t laurent_rank(const LaurentMatrix& m) { return detail::bareiss(m); }

inline LaurentPoly laurent_det(const LaurentMatrix& m) {
  LaurentPoly d;
  detail::bareiss(m, &d);
  return d;
}

// adj(m) with adj(m) * m = det(m) * I.
inline LaurentMatrix laurent_adjugate(const LaurentMatrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw Error("adjugate of non-square matrix");
  LaurentMatrix adj(m.field(), n, n);
  if (n == 1) {
    adj(0, 0) = LaurentPoly::monomial(m.field(), 1, 0);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != r) rows.push_back(k);
        if (k != c) cols.push_back(k);
      }
      LaurentPoly minor = laurent_det(m.select(rows, cols));
      adj(c, r) = (r + c) % 2 ? -minor : minor;
    }
  return adj;
}

// A one-sided inverse over k(t), numerator / denominator. For a left inverse of
// an injective b×a matrix M: numer is a×b with numer * M = denom * I. For a right
// inverse of a surjective c×b matrix: numer is b×c with M * numer = denom * I.
struct RationalInverse {
  LaurentMatrix numer;
  LaurentPoly denom;
  // Minimal valuation of the entries as Laurent series (none if numer is zero).
  std::optional<std::int64_t> vmin() const {
    auto v = numer.vmin();
    if (!v) return v;
    return *v - denom.valuation();
  }
};

inline RationalInverse left_inverse(const LaurentMatrix& m) {
  std::size_t b = m.rows(), a = m.cols();
  std::vector<std::size_t> rows, all_cols(a);
  for (std::size_t k = 0; k < a; ++k) all_cols[k] = k;
  for (std::size_t r = 0; r < b && rows.size() < a; ++r) {
    rows.push_back(r);
    if (laurent_rank(m.select(rows, all_cols)) < rows.size()) rows.pop_back();
  }
  if (rows.size() < a) throw Error("left inverse: matrix is not injective over k(t)");
  LaurentMatrix s = m.select(rows, all_cols);
  LaurentMatrix adj = laurent_adjugate(s);
  RationalInverse out{LaurentMatrix(m.field(), a, b), laurent_det(s)};
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < a; ++k) out.numer(i, rows[k]) = adj(i, k);
  return out;
}

inline RationalInverse right_inverse(const LaurentMatrix& m) {
  RationalInverse l = left_inverse(m.transpose());
  return {l.numer.transpose(), l.denom};
}

}  // namespace tatetors
