// Exact linear algebra over F_p or Q, and Smith normal form over Z.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tatetors {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field {
 public:
  Field() = default;  // Q

  static Field prime(std::int64_t p) {
    if (p < 2 || p > 2147483647) throw Error("field characteristic out of range: " + std::to_string(p));
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error("not a prime: " + std::to_string(p));
    Field f;
    f.p_ = p;
    return f;
  }
  static Field rationals() { return Field(); }

  // "F5", "F_5", "Q"
  static Field parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.size() >= 2 && s[0] == 'F') {
      std::string num = s.substr(s[1] == '_' ? 2 : 1);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad field: " + s);
      return prime(std::stoll(num));
    }
    throw Error("bad field: " + s);
  }

  bool is_prime() const { return p_ != 0; }
  std::int64_t characteristic() const { return p_; }
  std::string name() const { return p_ ? "F" + std::to_string(p_) : "Q"; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::int64_t p_ = 0;
};

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  if (nr == 0) throw Error("division by zero");
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod(t, p);
}

struct ModArith {
  using value_type = std::int64_t;
  std::int64_t p;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a - b + p) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type neg(value_type a) const { return a ? p - a : 0; }
  value_type inv(value_type a) const { return inv_mod(a, p); }
};

struct RatArith {
  using value_type = Rational;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division by zero");
    return 1 / a;
  }
};

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& t) {
    std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos)
      throw Error("bad scalar: " + s);
    return BigInt(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error("zero denominator: " + s);
  return Rational(parse_int(s.substr(0, slash)), den);
}

}  // namespace detail

class Scalar {
 public:
  Scalar() = default;  // rational zero
  Scalar(const Field& f, std::int64_t v) : field_(f) {
    if (f.is_prime())
      v_ = detail::mod(v, f.characteristic());
    else
      v_ = Rational(v);
  }
  Scalar(const Field& f, const Rational& q) : field_(f) {
    if (f.is_prime()) {
      std::int64_t p = f.characteristic();
      auto num = static_cast<std::int64_t>(BigInt(numerator(q) % p));
      auto den = static_cast<std::int64_t>(BigInt(denominator(q) % p));
      v_ = detail::mod(num, p) * detail::inv_mod(den, p) % p;
    } else {
      v_ = q;
    }
  }
  static Scalar parse(const Field& f, const std::string& s) { return Scalar(f, detail::parse_rational(s)); }

  const Field& field() const { return field_; }
  bool is_zero() const {
    return field_.is_prime() ? std::get<std::int64_t>(v_) == 0 : std::get<Rational>(v_) == 0;
  }
  bool is_one() const { return *this == Scalar(field_, 1); }
  std::int64_t mod_value() const { return std::get<std::int64_t>(v_); }
  const Rational& rational_value() const { return std::get<Rational>(v_); }

  std::string str() const {
    if (field_.is_prime()) return std::to_string(mod_value());
    std::ostringstream os;
    os << rational_value();
    return os.str();
  }

  Scalar inverse() const {
    if (field_.is_prime()) return Scalar(field_, detail::inv_mod(mod_value(), field_.characteristic()));
    if (is_zero()) throw Error("division by zero");
    return Scalar(field_, Rational(1) / rational_value());
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return a.combine(b, 0); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a.combine(b, 1); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return a.combine(b, 2); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const { return Scalar(field_, 0) - *this; }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.v_ == b.v_; }

  Scalar pow(std::int64_t e) const {
    Scalar base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    Scalar r(field_, 1);
    while (n) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

 private:
  Scalar combine(const Scalar& b, int op) const {
    if (!(field_ == b.field_)) throw Error("field mismatch");
    if (field_.is_prime()) {
      std::int64_t p = field_.characteristic(), x = mod_value(), y = b.mod_value();
      std::int64_t r = op == 0 ? (x + y) % p : op == 1 ? (x - y + p) % p : x * y % p;
      return Scalar(field_, r);
    }
    const Rational &x = rational_value(), &y = b.rational_value();
    return Scalar(field_, op == 0 ? Rational(x + y) : op == 1 ? Rational(x - y) : Rational(x * y));
  }

  Field field_;
  std::variant<std::int64_t, Rational> v_ = Rational(0);
};

// Dense matrix; maps act on column vectors. Storage is raw residues for F_p and
// rationals for Q so that elimination runs without per-entry dispatch.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
    if (f.is_prime())
      data_ = std::vector<std::int64_t>(rows * cols, 0);
    else
      data_ = std::vector<Rational>(rows * cols, Rational(0));
  }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
    return m;
  }
  static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
    if (v.size() != rows * cols) throw Error("entry count does not match shape");
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set_int(r, c, v[r * cols + c]);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar at(std::size_t r, std::size_t c) const {
    if (field_.is_prime()) return Scalar(field_, mods()[r * cols_ + c]);
    return Scalar(field_, rats()[r * cols_ + c]);
  }
  void set(std::size_t r, std::size_t c, const Scalar& s) {
    if (!(s.field() == field_)) throw Error("field mismatch");
    if (field_.is_prime())
      mods()[r * cols_ + c] = s.mod_value();
    else
      rats()[r * cols_ + c] = s.rational_value();
  }
  void set_int(std::size_t r, std::size_t c, std::int64_t v) { set(r, c, Scalar(field_, v)); }
  bool entry_zero(std::size_t r, std::size_t c) const {
    return field_.is_prime() ? mods()[r * cols_ + c] == 0 : rats()[r * cols_ + c] == 0;
  }

  bool is_zero() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!entry_zero(r, c)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error("field mismatch");
    if (a.cols_ != b.rows_) throw Error("shape mismatch in product");
    Matrix out(a.field_, a.rows_, b.cols_);
    a.dispatch([&](auto ar, auto& av) {
      auto& bv = b.raw<decltype(ar)>();
      auto& ov = out.raw<decltype(ar)>();
      for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
          const auto& x = av[i * a.cols_ + k];
          if (ar.is_zero(x)) continue;
          for (std::size_t j = 0; j < b.cols_; ++j)
            ov[i * b.cols_ + j] = ar.add(ov[i * b.cols_ + j], ar.mul(x, bv[k * b.cols_ + j]));
        }
    });
    return out;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) { return a.entrywise(b, false); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a.entrywise(b, true); }
  Matrix scaled(const Scalar& s) const {
    Matrix out(field_, rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c) * s);
    return out;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    dispatch([&](auto ar, auto& v) {
      auto& o = out.raw<decltype(ar)>();
      for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) o[c * rows_ + r] = v[r * cols_ + c];
    });
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
    Matrix out(field_, nr, nc);
    dispatch([&](auto ar, auto& v) {
      auto& o = out.raw<decltype(ar)>();
      for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) o[r * nc + c] = v[(r0 + r) * cols_ + c0 + c];
    });
    return out;
  }
  Matrix row(std::size_t r) const { return block(r, 0, 1, cols_); }
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < cols_; ++c) out.set(i, c, at(idx[i], c));
    return out;
  }
  Matrix select_cols(const std::vector<std::size_t>& idx) const { return transpose().select_rows(idx).transpose(); }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error("hstack row mismatch");
    return vstack(a.transpose(), b.transpose()).transpose();
  }
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error("field mismatch");
    if (a.cols_ != b.cols_ && a.rows_ && b.rows_) throw Error("vstack column mismatch");
    std::size_t cols = a.rows_ ? a.cols_ : b.cols_;
    Matrix out(a.field_, a.rows_ + b.rows_, cols);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < cols; ++c) out.set(r, c, a.at(r, c));
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < cols; ++c) out.set(a.rows_ + r, c, b.at(r, c));
    return out;
  }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> piv;
    dispatch_mut([&](auto ar, auto& v) { piv = rref_impl(ar, v, rows_, cols_); });
    return piv;
  }
  std::pair<Matrix, std::vector<std::size_t>> rref() const {
    Matrix m = *this;
    auto piv = m.rref_in_place();
    return {std::move(m), std::move(piv)};
  }
  std::size_t rank() const { return rref().second.size(); }

  Scalar determinant() const {
    if (rows_ != cols_) throw Error("determinant of non-square matrix");
    Scalar out(field_, 0);
    dispatch([&](auto ar, auto& v0) {
      auto v = v0;
      auto det = ar.one();
      std::size_t n = rows_;
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && ar.is_zero(v[p * n + c])) ++p;
        if (p == n) {
          det = ar.zero();
          break;
        }
        if (p != c) {
          for (std::size_t k = 0; k < n; ++k) std::swap(v[p * n + k], v[c * n + k]);
          det = ar.neg(det);
        }
        det = ar.mul(det, v[c * n + c]);
        auto iv = ar.inv(v[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
          if (ar.is_zero(v[r * n + c])) continue;
          auto f = ar.mul(v[r * n + c], iv);
          for (std::size_t k = c; k < n; ++k) v[r * n + k] = ar.sub(v[r * n + k], ar.mul(f, v[c * n + k]));
        }
      }
      out = Scalar(field_, det);
    });
    return out;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw Error("inverse of non-square matrix");
    auto [r, piv] = hstack(*this, identity(field_, rows_)).rref();
    if (piv.size() < rows_ || (rows_ && piv[rows_ - 1] >= rows_)) return std::nullopt;
    return r.block(0, rows_, rows_, rows_);
  }

  // Some X with (*this) X = b, if the system is consistent.
  std::optional<Matrix> solve(const Matrix& b) const {
    if (b.rows_ != rows_) throw Error("solve: row mismatch");
    auto [r, piv] = hstack(*this, b).rref();
    Matrix x(field_, cols_, b.cols_);
    for (std::size_t i = 0; i < piv.size(); ++i) {
      if (piv[i] >= cols_) return std::nullopt;
      for (std::size_t c = 0; c < b.cols_; ++c) x.set(piv[i], c, r.at(i, cols_ + c));
    }
    return x;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c).str();
      os << "\n";
    }
    return os.str();
  }

  template <class Arith>
  auto& raw() {
    if constexpr (std::is_same_v<Arith, detail::ModArith>)
      return mods();
    else
      return rats();
  }
  template <class Arith>
  const auto& raw() const {
    if constexpr (std::is_same_v<Arith, detail::ModArith>)
      return mods();
    else
      return rats();
  }

  template <class F>
  void dispatch(F&& f) const {
    if (field_.is_prime())
      f(detail::ModArith{field_.characteristic()}, mods());
    else
      f(detail::RatArith{}, rats());
  }
  template <class F>
  void dispatch_mut(F&& f) {
    if (field_.is_prime())
      f(detail::ModArith{field_.characteristic()}, mods());
    else
      f(detail::RatArith{}, rats());
  }

 private:
  std::vector<std::int64_t>& mods() { return std::get<std::vector<std::int64_t>>(data_); }
  const std::vector<std::int64_t>& mods() const { return std::get<std::vector<std::int64_t>>(data_); }
  std::vector<Rational>& rats() { return std::get<std::vector<Rational>>(data_); }
  const std::vector<Rational>& rats() const { return std::get<std::vector<Rational>>(data_); }

  Matrix entrywise(const Matrix& b, bool minus) const {
    if (!(field_ == b.field_) || rows_ != b.rows_ || cols_ != b.cols_) throw Error("shape mismatch in sum");
    Matrix out(field_, rows_, cols_);
    dispatch([&](auto ar, auto& v) {
      auto& bv = b.raw<decltype(ar)>();
      auto& o = out.raw<decltype(ar)>();
      for (std::size_t i = 0; i < v.size(); ++i) o[i] = minus ? ar.sub(v[i], bv[i]) : ar.add(v[i], bv[i]);
    });
    return out;
  }

  template <class Arith, class Vec>
  static std::vector<std::size_t> rref_impl(Arith ar, Vec& v, std::size_t rows, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && ar.is_zero(v[p * cols + c])) ++p;
      if (p == rows) continue;
      if (p != r)
        for (std::size_t k = 0; k < cols; ++k) std::swap(v[p * cols + k], v[r * cols + k]);
      auto iv = ar.inv(v[r * cols + c]);
      for (std::size_t k = c; k < cols; ++k) v[r * cols + k] = ar.mul(v[r * cols + k], iv);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || ar.is_zero(v[i * cols + c])) continue;
        auto f = v[i * cols + c];
        for (std::size_t k = c; k < cols; ++k) v[i * cols + k] = ar.sub(v[i * cols + k], ar.mul(f, v[r * cols + k]));
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }

  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::variant<std::vector<std::int64_t>, std::vector<Rational>> data_ = std::vector<Rational>{};
};

// Subspace of k^n stored by its reduced row echelon basis (rows).
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, std::size_t ambient) : basis_(f, 0, ambient) {}

  static Subspace row_space(const Matrix& m) {
    auto [r, piv] = m.rref();
    Subspace s;
    s.basis_ = r.block(0, 0, piv.size(), m.cols());
    s.pivots_ = std::move(piv);
    return s;
  }
  static Subspace full(const Field& f, std::size_t n) { return row_space(Matrix::identity(f, n)); }

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return dim() == 0; }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

  // Reduce the rows of v modulo this subspace: the result vanishes at every pivot column.
  Matrix reduce(const Matrix& v) const {
    check_ambient(v.cols());
    Matrix out = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      std::size_t pc = pivots_[i];
      for (std::size_t r = 0; r < out.rows(); ++r) {
        if (out.entry_zero(r, pc)) continue;
        Scalar f = out.at(r, pc);
        for (std::size_t c = pc; c < out.cols(); ++c)
          if (!basis_.entry_zero(i, c)) out.set(r, c, out.at(r, c) - f * basis_.at(i, c));
      }
    }
    return out;
  }

  bool contains_vector(const Matrix& v) const { return reduce(v).is_zero(); }
  bool contains(const Subspace& o) const { return contains_vector(o.basis_); }

  // Coordinates (as rows) of vectors lying in this subspace with respect to the echelon basis.
  Matrix coordinates(const Matrix& v) const {
    if (!contains_vector(v)) throw Error("vector not in subspace");
    return v.select_cols(pivots_);
  }

  // inner ⊆ this, expressed in the coordinates of this subspace's echelon basis.
  Subspace relative(const Subspace& inner) const {
    if (inner.dim() == 0) return Subspace(field(), dim());
    return row_space(coordinates(inner.basis()));
  }

  // Columns not carrying a pivot; these index the canonical quotient k^n / this.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t j = 0;
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
      if (j < pivots_.size() && pivots_[j] == c)
        ++j;
      else
        out.push_back(c);
    }
    return out;
  }

  // Matrix of the canonical quotient map k^n -> k^n/this (acts on column vectors).
  Matrix quotient_map() const {
    auto fc = free_columns();
    Matrix q(field(), fc.size(), ambient_dim());
    // q(x) = free coordinates of x - sum_i x[pivot_i] * basis_i
    for (std::size_t k = 0; k < fc.size(); ++k) {
      q.set_int(k, fc[k], 1);
      for (std::size_t i = 0; i < pivots_.size(); ++i)
        if (!basis_.entry_zero(i, fc[k])) q.set(k, pivots_[i], -basis_.at(i, fc[k]));
    }
    return q;
  }
  // Rows: the canonical section of the quotient (unit vectors at free columns).
  Matrix quotient_section() const {
    auto fc = free_columns();
    Matrix s(field(), fc.size(), ambient_dim());
    for (std::size_t k = 0; k < fc.size(); ++k) s.set_int(k, fc[k], 1);
    return s;
  }

  void check_ambient(std::size_t n) const {
    if (n != ambient_dim()) throw Error("ambient dimension mismatch");
  }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace rref_basis(const Matrix& m) { return Subspace::row_space(m); }

inline Subspace kernel(const Matrix& m) {
  auto [r, piv] = m.rref();
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> freec;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) freec.push_back(c);
  Matrix k(m.field(), freec.size(), m.cols());
  for (std::size_t f = 0; f < freec.size(); ++f) {
    k.set_int(f, freec[f], 1);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!r.entry_zero(i, freec[f])) k.set(f, piv[i], -r.at(i, freec[f]));
  }
  return rref_basis(k);
}

// Column space of m as a subspace of k^rows.
inline Subspace image(const Matrix& m) { return rref_basis(m.transpose()); }

inline Subspace join(const Subspace& a, const Subspace& b) {
  a.check_ambient(b.ambient_dim());
  return rref_basis(Matrix::vstack(a.basis(), b.basis()));
}

// a ∩ b = (a^⊥ + b^⊥)^⊥ for the standard pairing.
inline Subspace meet(const Subspace& a, const Subspace& b) {
  a.check_ambient(b.ambient_dim());
  Subspace pa = kernel(a.basis().rows() ? a.basis() : Matrix(a.field(), 0, a.ambient_dim()));
  Subspace pb = kernel(b.basis().rows() ? b.basis() : Matrix(b.field(), 0, b.ambient_dim()));
  Matrix both = Matrix::vstack(pa.basis(), pb.basis());
  if (both.rows() == 0) return Subspace::full(a.field(), a.ambient_dim());
  return kernel(both);
}

inline std::pair<Subspace, Subspace> subspace_meet_join(const Subspace& a, const Subspace& b) {
  return {meet(a, b), join(a, b)};
}

// Canonical complement basis of b inside a (b ⊆ a): a reduced modulo b, in echelon form.
inline Matrix complement_basis(const Subspace& a, const Subspace& b) {
  if (!a.contains(b)) throw Error("complement: not a subspace");
  return rref_basis(b.reduce(a.basis())).basis();
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_ints(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
    if (v.size() != rows * cols) throw Error("entry count does not match shape");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) m.v_[i] = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("shape mismatch in product");
    IntMatrix o(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) o(i, j) += a(i, k) * b(k, j);
      }
    return o;
  }
  IntMatrix transpose() const {
    IntMatrix o(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) o(c, r) = (*this)(r, c);
    return o;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row a += f * row b
  void add_row(std::size_t a, std::size_t b, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(a, c) += f * (*this)(b, c);
  }
  void add_col(std::size_t a, std::size_t b, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, a) += f * (*this)(r, b);
  }
  void negate_col(std::size_t a) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, a) = -(*this)(r, a);
  }
  void negate_row(std::size_t a) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(a, c) = -(*this)(a, c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> v_;
};

struct SmithForm {
  std::vector<BigInt> invariant_factors;  // positive, d1 | d2 | ...
  std::size_t rank = 0;
  IntMatrix U, V;  // U * m * V = diag(invariant_factors), U and V unimodular
  IntMatrix U_inv;
  IntMatrix D;
};

inline SmithForm smith_form(const IntMatrix& m) {
  std::size_t R = m.rows(), C = m.cols();
  IntMatrix D = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C), Ui = IntMatrix::identity(R);
  // Column ops act on V from the right, row ops on U from the left.
  auto row_op = [&](std::size_t a, std::size_t b, const BigInt& f) {
    D.add_row(a, b, f);
    U.add_row(a, b, f);
    Ui.add_col(b, a, -f);
  };
  auto col_op = [&](std::size_t a, std::size_t b, const BigInt& f) {
    D.add_col(a, b, f);
    V.add_col(a, b, f);
  };
  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // pick smallest nonzero |entry| in the remaining block
    auto find_min = [&](std::size_t& pr, std::size_t& pc) {
      bool found = false;
      BigInt best;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c)
          if (D(r, c) != 0 && (!found || abs(D(r, c)) < best)) {
            best = abs(D(r, c));
            pr = r;
            pc = c;
            found = true;
          }
      return found;
    };
    std::size_t pr = 0, pc = 0;
    if (!find_min(pr, pc)) break;
    for (;;) {
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      Ui.swap_cols(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (D(r, t) == 0) continue;
        row_op(r, t, -(D(r, t) / D(t, t)));
        if (D(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (D(t, c) == 0) continue;
        col_op(c, t, -(D(t, c) / D(t, t)));
        if (D(t, c) != 0) clean = false;
      }
      if (clean) {
        // enforce divisibility of the remaining block by the pivot
        bool divides = true;
        for (std::size_t r = t + 1; r < R && divides; ++r)
          for (std::size_t c = t + 1; c < C; ++c)
            if (D(r, c) % D(t, t) != 0) {
              row_op(t, r, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      // new minimum in row t / column t drives the next round
      pr = t;
      pc = t;
      BigInt best = abs(D(t, t));
      for (std::size_t r = t; r < R; ++r)
        if (D(r, t) != 0 && abs(D(r, t)) < best) best = abs(D(r, t)), pr = r, pc = t;
      for (std::size_t c = t; c < C; ++c)
        if (D(t, c) != 0 && abs(D(t, c)) < best) best = abs(D(t, c)), pr = t, pc = c;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
      Ui.negate_col(t);
    }
  }
  SmithForm out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(D(i, i));
  out.U = std::move(U);
  out.V = std::move(V);
  out.U_inv = std::move(Ui);
  out.D = std::move(D);
  return out;
}

inline std::pair<std::vector<BigInt>, std::size_t> smith_normal_form(const IntMatrix& m) {
  auto s = smith_form(m);
  return {s.invariant_factors, s.rank};
}

// Integer solution of m x = b (b a column), if one exists.
inline std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& m, const std::vector<BigInt>& b) {
  if (b.size() != m.rows()) throw Error("solve_integer: shape mismatch");
  auto s = smith_form(m);
  // D y = U b, x = V y
  std::vector<BigInt> ub(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.rows(); ++c) ub[r] += s.U(r, c) * b[c];
  std::vector<BigInt> y(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r < s.rank) {
      if (ub[r] % s.invariant_factors[r] != 0) return std::nullopt;
      y[r] = ub[r] / s.invariant_factors[r];
    } else if (ub[r] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(m.cols());
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) x[r] += s.V(r, c) * y[c];
  return x;
}

}  // namespace tatetors
