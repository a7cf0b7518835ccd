#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "sbridge/direction.hpp"

namespace sbridge::realroots {

using Rational = mpq_class;

// Exact value of a finite double (every double is a dyadic rational).
Rational exact(double x);

// Polynomial with rational coefficients, lowest degree first. Trailing zero
// coefficients are dropped, so the zero polynomial has no coefficients.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<Rational> coefficients);
  static RealPoly constant(const Rational& c);
  static RealPoly x();

  const std::vector<Rational>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if 0
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(int k) const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  RealPoly derivative() const;
  RealPoly operator-() const;
  bool operator==(const RealPoly&) const = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

RealPoly operator+(const RealPoly& a, const RealPoly& b);
RealPoly operator-(const RealPoly& a, const RealPoly& b);
RealPoly operator*(const RealPoly& a, const RealPoly& b);
RealPoly operator*(const Rational& s, const RealPoly& a);
RealPoly pow(const RealPoly& a, int k);

// a = q*b + r with deg r < deg b. ZeroPolynomial if b = 0.
std::pair<RealPoly, RealPoly> divmod(const RealPoly& a, const RealPoly& b);
RealPoly gcd(const RealPoly& a, const RealPoly& b);  // monic (or zero)
RealPoly squarefree_part(const RealPoly& p);

// p, p', then negated remainders, down to the last nonzero remainder.
struct SturmChain {
  std::vector<RealPoly> polys;
};
SturmChain sturm_chain(const RealPoly& p);

// Sign changes of the chain at x, or at -inf (side < 0) / +inf (side > 0).
int sign_changes(const SturmChain& chain, const Rational& x);
int sign_changes_at_infinity(const SturmChain& chain, int side);

// Distinct real roots of p in the open interval (lo, hi). Roots sitting on
// an endpoint are divided out first, so the endpoints never count.
std::size_t sturm_count(const RealPoly& p, const Rational& lo,
                        const Rational& hi);

// Distinct real roots over the whole line.
std::size_t count_real_roots(const RealPoly& p);

// Disjoint isolating intervals for the distinct roots of p in (lo, hi),
// increasing. Each is either open (lo, hi) holding exactly one root or a
// point lo == hi that is a root.
struct RootInterval {
  Rational lo, hi;
};
std::vector<RootInterval> isolate_roots(const RealPoly& p, const Rational& lo,
                                        const Rational& hi);

// Shrinks an open isolating interval of p until it no longer contains `x`
// (or becomes the point x when x is the root).
RootInterval separate(const RealPoly& p, RootInterval root, const Rational& x);

// c0 + sum_j (cos_coeffs[j-1] cos(jt) + sin_coeffs[j-1] sin(jt)).
struct TrigPoly {
  Rational constant = 0;
  std::vector<Rational> cos_coeffs;
  std::vector<Rational> sin_coeffs;

  int harmonic() const;  // largest j with a nonzero coefficient, 0 if none
  double eval(double t) const;
  TrigPoly derivative() const;
};

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(const Rational& s, const TrigPoly& a);
TrigPoly cos_harmonic(int j, const Rational& c = 1);
TrigPoly sin_harmonic(int j, const Rational& c = 1);

// Coefficients of g1(x) = a x + (b + x) sqrt(1 - x^2).
struct GCoefficients {
  double a = 0;
  double b = 0;
};

// f = g1 * g2 = b^2 + 2bx + (1 - a^2 - b^2) x^2 - 2b x^3 - x^4.
RealPoly lemma_quartic(const Rational& a, const Rational& b);

// Zeros of g1 on (0, 1): roots of the quartic there, kept when they solve
// g1 and not only g2 = -a x + (b + x) sqrt(1 - x^2).
std::size_t g1_zero_count(const Rational& a, const Rational& b);
std::size_t g1_zero_count(GCoefficients c);

// Which of the six sign cases of the lemma (a,b) falls in: 1 a=0, 2 b=0,
// 3 a>0 b>0, 4 a<0 b<0, 5 a<0 b>0, 6 a>0 b<0.
int lemma_case(const Rational& a, const Rational& b);

// Solutions of -v1 sin t + v2 cos t - 2 v3 sin t cos t = 0 (critical points
// of <eta(t), v> for eta(t) = (cos t, sin t, cos^2 t)).
// On (0, pi/2): the planar case directly when v3 = 0, else g1_zero_count.
std::size_t eta_critical_count(const Direction& v);
// On an arbitrary open interval of length < 2 pi, via u = tan(t/2) and
// Sturm counts.
std::size_t eta_critical_count(const Direction& v, double t_lo, double t_hi);

// Kuiper's curve (cos rt (1 + e l1), sin rt (1 + e l1), cos^2 rt + e l2):
// d/dt <curve, v> rewritten with cos t = 2w/(1+w^2), sin t = (1-w^2)/(1+w^2)
// and multiplied through by (1+w^2)^N, N = max(2r, r + harmonic(l1),
// harmonic(l2)). NormViolation if l1^2 + l2^2 > 1 somewhere on a dense grid.
// In this chart w = tan(pi/4 - t/2); t = 3 pi/2 sits at w = infinity.
struct WeierstrassPoly {
  RealPoly poly;
  int N = 0;
};
WeierstrassPoly weierstrass_polynomial(const TrigPoly& lambda1,
                                       const TrigPoly& lambda2, int r,
                                       const Rational& epsilon,
                                       const Direction& v);

// Real critical parameters in one period: finite real roots of the
// polynomial, plus one if t = 3 pi/2 is critical (degree drops below 2N).
std::size_t kuiper_critical_count(const WeierstrassPoly& wp);

}  // namespace sbridge::realroots
