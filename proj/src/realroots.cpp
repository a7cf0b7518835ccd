#include "sbridge/realroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "sbridge/errors.hpp"

namespace sbridge::realroots {

Rational exact(double x) {
  if (!std::isfinite(x)) throw InputError("InvalidNumber", "non-finite value");
  return Rational(x);  // mpq from double is exact
}

RealPoly::RealPoly(std::vector<Rational> coefficients)
    : c_(std::move(coefficients)) {
  trim();
}

RealPoly RealPoly::constant(const Rational& c) { return RealPoly({c}); }
RealPoly RealPoly::x() { return RealPoly({0, 1}); }

void RealPoly::trim() {
  for (auto& q : c_) q.canonicalize();
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RealPoly::coeff(int k) const {
  return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0);
}

Rational RealPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RealPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + it->get_d();
  }
  return acc;
}

RealPoly RealPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * int(k));
  return RealPoly(std::move(d));
}

RealPoly RealPoly::operator-() const {
  auto c = c_;
  for (auto& q : c) q = -q;
  return RealPoly(std::move(c));
}

RealPoly operator+(const RealPoly& a, const RealPoly& b) {
  const auto n = std::max(a.coefficients().size(), b.coefficients().size());
  std::vector<Rational> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = a.coeff(int(k)) + b.coeff(int(k));
  }
  return RealPoly(std::move(c));
}

RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + (-b); }

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  std::vector<Rational> c(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
  }
  return RealPoly(std::move(c));
}

RealPoly operator*(const Rational& s, const RealPoly& a) {
  return RealPoly::constant(s) * a;
}

RealPoly pow(const RealPoly& a, int k) {
  RealPoly out = RealPoly::constant(1);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

std::pair<RealPoly, RealPoly> divmod(const RealPoly& a, const RealPoly& b) {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (a.degree() < b.degree()) return {RealPoly{}, a};
  std::vector<Rational> r = a.coefficients();
  std::vector<Rational> q(r.size() - b.coefficients().size() + 1);
  const int db = b.degree();
  const Rational& lead = b.leading();
  for (int k = int(r.size()) - 1; k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    const Rational f = r[k] / lead;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coefficients()[j];
  }
  r.resize(db);
  return {RealPoly(std::move(q)), RealPoly(std::move(r))};
}

RealPoly gcd(const RealPoly& a, const RealPoly& b) {
  RealPoly x = a, y = b;
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return Rational(1) / x.leading() * x;
}

RealPoly squarefree_part(const RealPoly& p) {
  if (p.degree() < 1) return p;
  return divmod(p, gcd(p, p.derivative())).first;
}

SturmChain sturm_chain(const RealPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("Sturm chain of the zero polynomial");
  SturmChain chain{{p}};
  RealPoly next = p.derivative();
  while (!next.is_zero()) {
    chain.polys.push_back(next);
    const auto& a = chain.polys[chain.polys.size() - 2];
    next = -divmod(a, chain.polys.back()).second;
  }
  return chain;
}

namespace {

int count_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Divides out every factor (x - c) of p.
RealPoly deflate(RealPoly p, const Rational& c) {
  const RealPoly lin({-c, 1});
  while (!p.is_zero() && sgn(p(c)) == 0) p = divmod(p, lin).first;
  return p;
}

// Distinct roots in (lo, hi); nullopt means the matching infinity.
std::size_t count_between(RealPoly p, const std::optional<Rational>& lo,
                          const std::optional<Rational>& hi) {
  if (p.is_zero()) throw ZeroPolynomial("root count of the zero polynomial");
  if (lo) p = deflate(std::move(p), *lo);
  if (hi) p = deflate(std::move(p), *hi);
  if (p.degree() < 1) return 0;
  const auto chain = sturm_chain(p);
  const int a = lo ? sign_changes(chain, *lo) : sign_changes_at_infinity(chain, -1);
  const int b = hi ? sign_changes(chain, *hi) : sign_changes_at_infinity(chain, 1);
  return a > b ? std::size_t(a - b) : 0;
}

}  // namespace

int sign_changes(const SturmChain& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.polys.size());
  for (const auto& p : chain.polys) s.push_back(sgn(p(x)));
  return count_changes(s);
}

int sign_changes_at_infinity(const SturmChain& chain, int side) {
  std::vector<int> s;
  for (const auto& p : chain.polys) {
    int sign = sgn(p.leading());
    if (side < 0 && p.degree() % 2 == 1) sign = -sign;
    s.push_back(sign);
  }
  return count_changes(s);
}

std::size_t sturm_count(const RealPoly& p, const Rational& lo,
                        const Rational& hi) {
  if (p.is_zero()) throw ZeroPolynomial("sturm_count of the zero polynomial");
  if (!(lo < hi)) throw InputError("InvalidInterval", "need lo < hi");
  return count_between(p, lo, hi);
}

std::size_t count_real_roots(const RealPoly& p) {
  return count_between(p, std::nullopt, std::nullopt);
}

namespace {

void isolate_into(const RealPoly& sq, const Rational& lo, const Rational& hi,
                  std::vector<RootInterval>& out) {
  const std::size_t n = sturm_count(sq, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  const Rational mid = (lo + hi) / 2;
  isolate_into(sq, lo, mid, out);
  if (sgn(sq(mid)) == 0) out.push_back({mid, mid});
  isolate_into(sq, mid, hi, out);
}

}  // namespace

std::vector<RootInterval> isolate_roots(const RealPoly& p, const Rational& lo,
                                        const Rational& hi) {
  if (!(lo < hi)) throw InputError("InvalidInterval", "need lo < hi");
  std::vector<RootInterval> out;
  isolate_into(squarefree_part(p), lo, hi, out);
  return out;
}

RootInterval separate(const RealPoly& p, RootInterval root, const Rational& x) {
  if (root.lo == root.hi || !(root.lo < x && x < root.hi)) return root;
  if (sgn(p(x)) == 0) return {x, x};
  const RealPoly sq = squarefree_part(p);
  if (sturm_count(sq, root.lo, x) == 1) return {root.lo, x};
  return {x, root.hi};
}

// --- trigonometric polynomials -------------------------------------------

int TrigPoly::harmonic() const {
  int h = 0;
  for (std::size_t j = 0; j < std::max(cos_coeffs.size(), sin_coeffs.size());
       ++j) {
    const bool c = j < cos_coeffs.size() && sgn(cos_coeffs[j]) != 0;
    const bool s = j < sin_coeffs.size() && sgn(sin_coeffs[j]) != 0;
    if (c || s) h = int(j) + 1;
  }
  return h;
}

double TrigPoly::eval(double t) const {
  double acc = constant.get_d();
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j) {
    acc += cos_coeffs[j].get_d() * std::cos(double(j + 1) * t);
  }
  for (std::size_t j = 0; j < sin_coeffs.size(); ++j) {
    acc += sin_coeffs[j].get_d() * std::sin(double(j + 1) * t);
  }
  return acc;
}

namespace {

void add_cos(TrigPoly& p, int j, const Rational& c) {
  if (j < 0) j = -j;
  if (j == 0) {
    p.constant += c;
    return;
  }
  if (int(p.cos_coeffs.size()) < j) p.cos_coeffs.resize(j);
  p.cos_coeffs[j - 1] += c;
}

void add_sin(TrigPoly& p, int j, const Rational& c) {
  if (j == 0) return;
  if (j < 0) {
    j = -j;
    if (int(p.sin_coeffs.size()) < j) p.sin_coeffs.resize(j);
    p.sin_coeffs[j - 1] -= c;
    return;
  }
  if (int(p.sin_coeffs.size()) < j) p.sin_coeffs.resize(j);
  p.sin_coeffs[j - 1] += c;
}

}  // namespace

TrigPoly TrigPoly::derivative() const {
  TrigPoly d;
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j) {
    add_sin(d, int(j) + 1, -cos_coeffs[j] * int(j + 1));
  }
  for (std::size_t j = 0; j < sin_coeffs.size(); ++j) {
    add_cos(d, int(j) + 1, sin_coeffs[j] * int(j + 1));
  }
  return d;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly out = a;
  out.constant += b.constant;
  for (std::size_t j = 0; j < b.cos_coeffs.size(); ++j) {
    add_cos(out, int(j) + 1, b.cos_coeffs[j]);
  }
  for (std::size_t j = 0; j < b.sin_coeffs.size(); ++j) {
    add_sin(out, int(j) + 1, b.sin_coeffs[j]);
  }
  return out;
}

TrigPoly operator*(const Rational& s, const TrigPoly& a) {
  TrigPoly out = a;
  out.constant *= s;
  for (auto& c : out.cos_coeffs) c *= s;
  for (auto& c : out.sin_coeffs) c *= s;
  return out;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  // terms as (kind, j, coeff); kind 0 = cos (j = 0 is the constant), 1 = sin
  struct Term {
    int kind, j;
    Rational c;
  };
  auto terms = [](const TrigPoly& p) {
    std::vector<Term> t{{0, 0, p.constant}};
    for (std::size_t j = 0; j < p.cos_coeffs.size(); ++j) {
      t.push_back({0, int(j) + 1, p.cos_coeffs[j]});
    }
    for (std::size_t j = 0; j < p.sin_coeffs.size(); ++j) {
      t.push_back({1, int(j) + 1, p.sin_coeffs[j]});
    }
    return t;
  };
  TrigPoly out;
  for (const auto& x : terms(a)) {
    if (sgn(x.c) == 0) continue;
    for (const auto& y : terms(b)) {
      if (sgn(y.c) == 0) continue;
      const Rational h = x.c * y.c / 2;
      const int j = x.j, k = y.j;
      if (x.kind == 0 && y.kind == 0) {
        add_cos(out, j - k, h);
        add_cos(out, j + k, h);
      } else if (x.kind == 1 && y.kind == 1) {
        add_cos(out, j - k, h);
        add_cos(out, j + k, -h);
      } else if (x.kind == 1) {  // sin j cos k
        add_sin(out, j + k, h);
        add_sin(out, j - k, h);
      } else {  // cos j sin k
        add_sin(out, k + j, h);
        add_sin(out, k - j, h);
      }
    }
  }
  return out;
}

TrigPoly cos_harmonic(int j, const Rational& c) {
  TrigPoly p;
  add_cos(p, j, c);
  return p;
}

TrigPoly sin_harmonic(int j, const Rational& c) {
  TrigPoly p;
  add_sin(p, j, c);
  return p;
}

// --- the two-critical-point lemma ------------------------------------------

RealPoly lemma_quartic(const Rational& a, const Rational& b) {
  return RealPoly({b * b, 2 * b, 1 - a * a - b * b, -2 * b, -1});
}

std::size_t g1_zero_count(const Rational& a, const Rational& b) {
  const RealPoly f = lemma_quartic(a, b);
  std::size_t zeros = 0;
  for (auto root : isolate_roots(f, 0, 1)) {
    // f(r) = 0 already gives |a| r = |b + r| sqrt(1 - r^2); g1 vanishes when
    // the two terms have opposite signs (r > 0, so sign(a r) = sign(a))
    root = separate(f, root, -b);
    const int s = root.lo == root.hi ? sgn(b + root.lo)
                                     : sgn(b + (root.lo + root.hi) / 2);
    if (sgn(a) == -s) ++zeros;
  }
  return zeros;
}

std::size_t g1_zero_count(GCoefficients c) {
  return g1_zero_count(exact(c.a), exact(c.b));
}

int lemma_case(const Rational& a, const Rational& b) {
  if (sgn(a) == 0) return 1;
  if (sgn(b) == 0) return 2;
  if (sgn(a) > 0) return sgn(b) > 0 ? 3 : 6;
  return sgn(b) < 0 ? 4 : 5;
}

std::size_t eta_critical_count(const Direction& v) {
  if (v[2] == 0.0) {
    // planar circle: tan t = v2 / v1
    if (v[0] == 0.0 || v[1] == 0.0) return 0;
    return (v[0] > 0) == (v[1] > 0) ? 1 : 0;
  }
  const Rational v3 = exact(v[2]);
  return g1_zero_count(exact(v[0]) / (2 * v3), -exact(v[1]) / (2 * v3));
}

namespace {

// Rational close to x with a small denominator, if one is within rounding;
// otherwise the exact value of x.
Rational snap(double x) {
  const double tol = 1e-14 * std::max(1.0, std::abs(x));
  double y = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int k = 0; k < 20; ++k) {
    const double fl = std::floor(y);
    if (std::abs(fl) > 1e9) break;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > 1000000) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(double(p1) / double(q1) - x) <= tol) {
      Rational r(mpz_class(std::to_string(p1)), mpz_class(std::to_string(q1)));
      r.canonicalize();
      return r;
    }
    if (y - fl == 0.0) break;
    y = 1.0 / (y - fl);
  }
  return exact(x);
}

}  // namespace

std::size_t eta_critical_count(const Direction& v, double t_lo, double t_hi) {
  if (!(t_lo < t_hi) || t_hi - t_lo > 2 * std::numbers::pi + 1e-12) {
    throw InputError("InvalidInterval", "need t_lo < t_hi within one period");
  }
  const Rational v1 = exact(v[0]), v2 = exact(v[1]), v3 = exact(v[2]);
  // with u = tan(t/2), times (1+u^2)^2
  const RealPoly q({v2, -2 * v1 - 4 * v3, 0, -2 * v1 + 4 * v3, -v2});
  const double pi = std::numbers::pi;
  const double tol = 1e-12;
  // poles of u at t = pi + 2k pi split the interval
  std::vector<double> cuts;
  for (double c = pi * (2 * std::ceil((t_lo - pi) / (2 * pi)) + 1);
       c <= t_hi + tol; c += 2 * pi) {
    cuts.push_back(c);
  }
  std::size_t total = 0;
  double a = t_lo;
  auto u_of = [&](double t) { return snap(std::tan(t / 2)); };
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double b = i < cuts.size() ? cuts[i] : t_hi;
    const bool a_pole = std::abs(std::remainder(a - pi, 2 * pi)) < tol;
    const bool b_pole = std::abs(std::remainder(b - pi, 2 * pi)) < tol;
    if (b - a > tol) {
      const std::optional<Rational> lo =
          a_pole ? std::nullopt : std::optional<Rational>(u_of(a));
      const std::optional<Rational> hi =
          b_pole ? std::nullopt : std::optional<Rational>(u_of(b));
      total += count_between(q, lo, hi);
    }
    // t = pi (u infinite) is a solution iff v2 = 0, i.e. q loses degree 4
    if (i < cuts.size() && b > t_lo + tol && b < t_hi - tol && q.degree() < 4) {
      ++total;
    }
    a = b;
  }
  return total;
}

// --- Kuiper's polynomial ---------------------------------------------------

WeierstrassPoly weierstrass_polynomial(const TrigPoly& lambda1,
                                       const TrigPoly& lambda2, int r,
                                       const Rational& epsilon,
                                       const Direction& v) {
  if (r < 1) throw InvalidParams("r must be positive");
  constexpr int kNormSamples = 20000;
  for (int k = 0; k < kNormSamples; ++k) {
    const double t = 2 * std::numbers::pi * k / kNormSamples;
    const double l1 = lambda1.eval(t), l2 = lambda2.eval(t);
    if (l1 * l1 + l2 * l2 > 1 + 1e-12) {
      throw NormViolation("lambda1^2 + lambda2^2 exceeds 1 near t = " +
                          std::to_string(t));
    }
  }
  const TrigPoly one = cos_harmonic(0, 1);
  const TrigPoly radial = one + epsilon * lambda1;
  const TrigPoly x = cos_harmonic(r) * radial;
  const TrigPoly y = sin_harmonic(r) * radial;
  const TrigPoly z = cos_harmonic(0, Rational(1, 2)) +
                     cos_harmonic(2 * r, Rational(1, 2)) + epsilon * lambda2;
  const TrigPoly d = exact(v[0]) * x.derivative() +
                     exact(v[1]) * y.derivative() + exact(v[2]) * z.derivative();

  const int N = std::max({2 * r, r + lambda1.harmonic(), lambda2.harmonic()});
  // (cos t + i sin t) (1 + w^2) = 2w + i (1 - w^2)
  const RealPoly re({0, 2}), im({1, 0, -1}), circle({1, 0, 1});
  std::vector<RealPoly> circle_pow{RealPoly::constant(1)};
  for (int k = 1; k <= N; ++k) circle_pow.push_back(circle_pow.back() * circle);
  RealPoly out = d.constant * circle_pow[N];
  RealPoly pr = RealPoly::constant(1), pi_ = RealPoly{};
  for (int j = 1; j <= N; ++j) {
    RealPoly nr = pr * re - pi_ * im;
    RealPoly ni = pr * im + pi_ * re;
    pr = std::move(nr);
    pi_ = std::move(ni);
    const Rational c = j <= int(d.cos_coeffs.size()) ? d.cos_coeffs[j - 1] : 0;
    const Rational s = j <= int(d.sin_coeffs.size()) ? d.sin_coeffs[j - 1] : 0;
    if (sgn(c) == 0 && sgn(s) == 0) continue;
    out = out + (c * pr + s * pi_) * circle_pow[N - j];
  }
  return {out, N};
}

std::size_t kuiper_critical_count(const WeierstrassPoly& wp) {
  return count_real_roots(wp.poly) + (wp.poly.degree() < 2 * wp.N ? 1 : 0);
}

}  // namespace sbridge::realroots
