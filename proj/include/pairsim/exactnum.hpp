#pragma once

// Exact integer/rational arithmetic: dense square matrices over Z and Q,
// integer polynomials, fraction-free determinants and characteristic
// polynomials, square-free decomposition and Sturm root counting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pairsim/errors.hpp"

namespace pairsim {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const BigRational& q) { return boost::multiprecision::denominator(q); }

/// Exact binary value of a finite double.
inline BigRational to_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to a rational");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 mantissa bits fit in an int64 after scaling.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigRational r{BigInt(scaled)};
  if (exp > 0) {
    r *= BigRational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= BigRational(BigInt(1) << -exp);
  }
  return r;
}

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

/// Parses "p/q" or "p" into lowest terms. Throws DomainError on malformed input
/// or a zero denominator.
inline BigRational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (!den.empty() && den[0] == '-'))
    throw DomainError("malformed rational '" + text + "'");
  BigInt n(strip_plus(num));
  BigInt d(strip_plus(den));
  if (d == 0) throw DomainError("zero denominator in '" + text + "'");
  return BigRational(n, d);
}

inline std::string format_rational(const BigRational& q) { return q.str(); }

/// Dense square matrix with value semantics. Row-major storage.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T& x) { return x == 0; });
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    if (o.n_ != n_) throw DimensionMismatch("matrix sum of different dimensions");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using IntMatrix = SquareMatrix<BigInt>;
using RationalMatrix = SquareMatrix<BigRational>;

/// Scales a rational matrix by the lcm D of its denominators. Returns (D·M, D).
/// Eigenvalue rationality of M is equivalent to integrality of the eigenvalues of D·M.
inline std::pair<IntMatrix, BigInt> scale_to_integer(const RationalMatrix& m) {
  BigInt d = 1;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) d = boost::multiprecision::lcm(d, denominator_of(m(i, j)));
  IntMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out(i, j) = numerator_of(m(i, j)) * (d / denominator_of(m(i, j)));
  return {std::move(out), d};
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
inline BigInt det_bareiss(IntMatrix m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first with no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long long> coeffs) {
    for (auto v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial constant(BigInt c) { return IntPolynomial(std::vector<BigInt>{std::move(c)}); }
  static IntPolynomial monomial(BigInt c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = std::move(c);
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& leading() const { return c_.back(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  BigInt operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Sign of p(q), evaluated exactly on the homogenized form.
  int sign_at(const BigRational& q) const {
    if (c_.empty()) return 0;
    const BigInt num = numerator_of(q);
    const BigInt den = denominator_of(q);
    BigInt acc = 0;
    BigInt den_pow = 1;
    // Σ a_k num^k den^(deg-k), Horner from the top.
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * num + *it * den_pow;
      den_pow *= den;
    }
    return acc.sign();
  }

  int sign_at_plus_infinity() const { return c_.empty() ? 0 : leading().sign(); }
  int sign_at_minus_infinity() const {
    if (c_.empty()) return 0;
    int s = leading().sign();
    return (degree() % 2 == 0) ? s : -s;
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long long>(i);
    return IntPolynomial(std::move(d));
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& a : c_) g = boost::multiprecision::gcd(g, a);
    return g;
  }

  /// Primitive part with positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (c_.empty()) return {};
    BigInt g = content();
    if (leading() < 0) g = -g;
    std::vector<BigInt> v(c_);
    for (auto& a : v) a /= g;
    return IntPolynomial(std::move(v));
  }

  IntPolynomial operator-() const {
    std::vector<BigInt> v(c_);
    for (auto& a : v) a = -a;
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return IntPolynomial(std::move(v));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(v));
  }
  friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& p) {
    std::vector<BigInt> v(p.c_);
    for (auto& a : v) a *= s;
    return IntPolynomial(std::move(v));
  }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const BigInt& a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      BigInt mag = boost::multiprecision::abs(a);
      out += out.empty() ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + ");
      if (mag != 1 || i == 0) out += mag.str();
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

/// lc(b)^(deg a - deg b + 1) · a  mod  b.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  int e = a.degree() - b.degree() + 1;
  IntPolynomial r = a;
  const BigInt& lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    IntPolynomial s = IntPolynomial::monomial(r.leading(), static_cast<std::size_t>(r.degree() - b.degree()));
    r = lb * r - s * b;
    --e;
  }
  BigInt scale = boost::multiprecision::pow(lb, static_cast<unsigned>(e));
  return scale * r;
}

/// a / b where b divides a in Z[x]; throws DomainError otherwise.
inline IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw DomainError("inexact polynomial division");
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), BigInt(0));
  IntPolynomial r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    BigInt rem;
    BigInt c;
    boost::multiprecision::divide_qr(r.leading(), b.leading(), c, rem);
    if (rem != 0) throw DomainError("inexact polynomial division");
    auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    q[shift] = c;
    r = r - IntPolynomial::monomial(c, shift) * b;
  }
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return IntPolynomial(std::move(q));
}

/// gcd over Z[x] by the subresultant pseudo-remainder sequence. The result is
/// normalized to a positive leading coefficient; gcd(0, 0) = 0.
inline IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.is_zero()) return a.is_zero() ? a : boost::multiprecision::abs(a.content()) * a.primitive_part();
  BigInt d = boost::multiprecision::gcd(a.content(), b.content());
  a = a.primitive_part();
  b = b.primitive_part();
  BigInt g = 1;
  BigInt h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    if (r.degree() == 0) {
      b = IntPolynomial::constant(1);
      break;
    }
    a = std::move(b);
    BigInt divisor = g * boost::multiprecision::pow(h, static_cast<unsigned>(delta));
    std::vector<BigInt> rc(r.coeffs());
    for (auto& c : rc) c /= divisor;
    b = IntPolynomial(std::move(rc));
    g = a.leading();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = boost::multiprecision::pow(g, static_cast<unsigned>(delta)) /
          boost::multiprecision::pow(h, static_cast<unsigned>(delta - 1));
    }
  }
  return d * b.primitive_part();
}

/// Monic det(xI - M) by Faddeev-LeVerrier with exact integer division.
inline IntPolynomial char_poly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  if (n == 0) return IntPolynomial(std::move(c));
  // Sparse rows of M; adjacency-type inputs are mostly zeros.
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) rows[i].emplace_back(j, m(i, j));

  IntMatrix mk = IntMatrix::identity(n);  // M_1 = I
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix amk(n);  // M · M_k
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [l, v] : rows[i])
        for (std::size_t j = 0; j < n; ++j)
          if (mk(l, j) != 0) amk(i, j) += v * mk(l, j);
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    BigInt ck = -trace / static_cast<long long>(k);
    c[n - k] = ck;
    if (k < n) {
      for (std::size_t i = 0; i < n; ++i) amk(i, i) += ck;
      mk = std::move(amk);
    }
  }
  return IntPolynomial(std::move(c));
}

struct SquareFreeFactor {
  IntPolynomial factor;
  std::size_t multiplicity;
};

/// Yun's algorithm over Z[x]: p = ±content · Π f_i^(m_i), each f_i primitive,
/// square-free and pairwise coprime, listed by increasing multiplicity.
inline std::vector<SquareFreeFactor> square_free_decomposition(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("square-free decomposition of the zero polynomial");
  std::vector<SquareFreeFactor> out;
  IntPolynomial f = p.primitive_part();
  if (f.degree() <= 0) return out;
  IntPolynomial fp = f.derivative();
  IntPolynomial a0 = gcd(f, fp);
  IntPolynomial b = divide_exact(f, a0);
  IntPolynomial c = divide_exact(fp, a0);
  IntPolynomial d = c - b.derivative();
  for (std::size_t i = 1; b.degree() > 0; ++i) {
    IntPolynomial a = gcd(b, d);
    b = divide_exact(b, a);
    c = divide_exact(d, a);
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back({a, i});
  }
  return out;
}

/// Square-free part p / gcd(p, p'), primitive.
inline IntPolynomial square_free_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return p.primitive_part();
  return divide_exact(p.primitive_part(), gcd(p, p.derivative()));
}

namespace detail {

/// Upper bound on |root| for a nonzero polynomial: 1 + max|a_i| / |lc| (Cauchy).
inline BigInt cauchy_root_bound(const IntPolynomial& p) {
  BigInt mx = 0;
  for (int i = 0; i < p.degree(); ++i) mx = std::max<BigInt>(mx, boost::multiprecision::abs(p.coeff(static_cast<std::size_t>(i))));
  BigInt lc = boost::multiprecision::abs(p.leading());
  return 1 + (mx + lc - 1) / lc;
}

/// Fujiwara bound 2·max |a_{d-k}/lc|^(1/k), rounded up; usually far tighter than Cauchy.
inline BigInt fujiwara_root_bound(const IntPolynomial& p) {
  const int d = p.degree();
  long double lc = boost::multiprecision::abs(p.leading()).convert_to<long double>();
  long double best = 0;
  for (int k = 1; k <= d; ++k) {
    long double a = boost::multiprecision::abs(p.coeff(static_cast<std::size_t>(d - k))).convert_to<long double>() / lc;
    if (k == d) a /= 2;
    if (a > 0) best = std::max(best, std::pow(a, 1.0L / k));
  }
  long double bound = 2 * best * (1 + 1e-12L) + 1;
  if (!std::isfinite(static_cast<double>(bound))) return cauchy_root_bound(p);
  return std::min(BigInt(static_cast<long long>(std::min(bound, 1e18L))) + 1, cauchy_root_bound(p));
}

}  // namespace detail

/// All integer roots of a monic polynomial, ascending. Candidates are divisors of
/// the constant term (after removing factors of x) restricted to a root bound.
inline std::vector<BigInt> integer_roots(const IntPolynomial& p) {
  if (!p.is_monic()) throw DomainError("integer_roots requires a monic polynomial");
  std::vector<BigInt> roots;
  std::size_t low = 0;
  while (p.coeff(low) == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  IntPolynomial q(std::vector<BigInt>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(low), p.coeffs().end()));
  if (q.degree() <= 0) return roots;
  const BigInt c0 = boost::multiprecision::abs(q.coeff(0));
  const BigInt bound = std::min(detail::fujiwara_root_bound(q), c0);
  auto test = [&](const BigInt& z) {
    if (c0 % z == 0) {
      if (q(z) == 0) roots.push_back(z);
      if (q(-z) == 0) roots.push_back(-z);
    }
  };
  if (bound <= BigInt(1) << 22) {
    for (BigInt z = 1; z <= bound; ++z) test(z);
  } else {
    // Pair divisors z and c0/z by trial division up to sqrt(c0).
    BigInt r = boost::multiprecision::sqrt(c0);
    for (BigInt z = 1; z <= r; ++z) {
      if (c0 % z != 0) continue;
      test(z);
      BigInt w = c0 / z;
      if (w != z) test(w);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Sturm chain p, p', -rem(...), with each member reduced to a positive multiple
/// of its primitive part (signs are all that matter).
inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
  std::vector<IntPolynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  IntPolynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    const IntPolynomial& a = chain[chain.size() - 2];
    const IntPolynomial& b = chain.back();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem multiplies by lc(b)^(δ+1); undo the sign when that factor is negative.
    const int e = a.degree() - b.degree() + 1;
    if (b.leading() < 0 && e % 2 == 1) r = -r;
    BigInt g = r.content();
    std::vector<BigInt> rc(r.coeffs());
    for (auto& c : rc) c = -(c / g);
    chain.emplace_back(std::move(rc));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

namespace detail {

template <typename SignFn>
std::size_t sign_changes(const std::vector<IntPolynomial>& chain, SignFn sign) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& f : chain) {
    int s = sign(f);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Number of distinct real roots of a square-free polynomial strictly below q.
inline std::size_t count_roots_below(const std::vector<IntPolynomial>& chain, const BigRational& q) {
  if (chain.empty()) return 0;
  std::size_t at_minus_inf = detail::sign_changes(chain, [](const IntPolynomial& f) { return f.sign_at_minus_infinity(); });
  std::size_t at_q = detail::sign_changes(chain, [&](const IntPolynomial& f) { return f.sign_at(q); });
  // Sturm counts roots in (-inf, q]; drop q itself when it is a root.
  std::size_t count = at_minus_inf - at_q;
  if (chain.front().sign_at(q) == 0) --count;
  return count;
}

inline std::size_t count_roots_below(const IntPolynomial& p, const BigRational& q) {
  return count_roots_below(sturm_chain(p), q);
}

}  // namespace pairsim
