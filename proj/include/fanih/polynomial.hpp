#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fanih {

/// Integer Laurent polynomial in one variable (q for Poincare polynomials,
/// t for Stanley's g/h vectors).  Only nonzero coefficients are stored.
class Polynomial {
 public:
  using Coefficients = std::map<int, std::int64_t>;

  Polynomial() = default;
  Polynomial(std::initializer_list<std::pair<const int, std::int64_t>> terms) {
    for (const auto& [e, c] : terms) add(e, c);
  }

  static Polynomial constant(std::int64_t c) {
    Polynomial p;
    p.add(0, c);
    return p;
  }

  static Polynomial monomial(int exponent, std::int64_t c = 1) {
    Polynomial p;
    p.add(exponent, c);
    return p;
  }

  /// Builds a polynomial from a dense coefficient list (index = exponent * step).
  static Polynomial from_dense(std::initializer_list<std::int64_t> coeffs, int step = 1) {
    Polynomial p;
    int e = 0;
    for (auto c : coeffs) {
      p.add(e, c);
      e += step;
    }
    return p;
  }

  std::int64_t operator[](int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
  }

  void add(int exponent, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[exponent];
    slot += c;
    if (slot == 0) terms_.erase(exponent);
  }

  const Coefficients& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add(ea + eb, ca * cb);
    }
    return out;
  }
  friend Polynomial operator*(std::int64_t s, const Polynomial& p) { return Polynomial::constant(s) * p; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const {
    Polynomial out = constant(1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Multiplies by q^k.
  Polynomial shifted(int k) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) out.add(e + k, c);
    return out;
  }

  /// Substitutes q -> q^factor (used to compare t-polynomials with q^2 ones).
  Polynomial stretched(int factor) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) out.add(e * factor, c);
    return out;
  }

  /// Drops all terms with exponent above `cap`.
  Polynomial truncated(int cap) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      if (e <= cap) out.add(e, c);
    }
    return out;
  }

  /// Coefficientwise a >= b.
  friend bool dominates(const Polynomial& a, const Polynomial& b) {
    for (const auto& [e, c] : b.terms_) {
      if (a[e] < c) return false;
    }
    for (const auto& [e, c] : a.terms_) {
      if (c < b[e]) return false;
    }
    return true;
  }

  bool nonnegative() const {
    for (const auto& [e, c] : terms_) {
      if (c < 0) return false;
    }
    return true;
  }

  /// Palindromic about `center`: coefficient of center-j equals that of center+j.
  bool palindromic_about(int center) const {
    for (const auto& [e, c] : terms_) {
      if ((*this)[2 * center - e] != c) return false;
    }
    return true;
  }

  /// Renders like "1 + 2q^2 + q^4" in the given variable.
  std::string to_string(char var = 'q') const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << var;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  Coefficients terms_;
};

/// Power series 1/(1-q^2)^k truncated at degree cap.
inline Polynomial inverse_power_series(unsigned k, int cap) {
  Polynomial out = Polynomial::constant(1);
  Polynomial geometric;
  for (int e = 0; e <= cap; e += 2) geometric.add(e, 1);
  for (unsigned i = 0; i < k; ++i) out = (out * geometric).truncated(cap);
  return out;
}

/// Finitely supported degree -> positive dimension map (generator multisets,
/// graded ranks).
class GradedDims {
 public:
  GradedDims() = default;
  GradedDims(std::initializer_list<std::pair<const int, std::int64_t>> entries) {
    for (const auto& [d, n] : entries) add(d, n);
  }

  static GradedDims from_polynomial(const Polynomial& p) {
    GradedDims g;
    for (const auto& [e, c] : p.terms()) {
      if (c < 0) throw std::invalid_argument("graded dimensions must be nonnegative");
      g.add(e, c);
    }
    return g;
  }

  void add(int degree, std::int64_t count) {
    if (count == 0) return;
    auto& slot = dims_[degree];
    slot += count;
    if (slot < 0) throw std::invalid_argument("graded dimensions must be nonnegative");
    if (slot == 0) dims_.erase(degree);
  }

  std::int64_t operator[](int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
  }

  const std::map<int, std::int64_t>& entries() const noexcept { return dims_; }
  bool empty() const noexcept { return dims_.empty(); }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (const auto& [d, n] : dims_) s += n;
    return s;
  }

  Polynomial to_polynomial() const {
    Polynomial p;
    for (const auto& [d, n] : dims_) p.add(d, n);
    return p;
  }

  /// Generator degrees of M(t): a generator in degree d moves to d - t.
  GradedDims shifted(int t) const {
    GradedDims out;
    for (const auto& [d, n] : dims_) out.add(d - t, n);
    return out;
  }

  friend bool operator==(const GradedDims& a, const GradedDims& b) { return a.dims_ == b.dims_; }

 private:
  std::map<int, std::int64_t> dims_;
};

}  // namespace fanih
