// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Every tolerance and size is pinned below.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curves.hpp"
#include "sbridge/braid.hpp"
#include "sbridge/construction.hpp"
#include "sbridge/errors.hpp"
#include "sbridge/geometry.hpp"
#include "sbridge/realroots.hpp"

using namespace sbridge;
namespace rr = sbridge::realroots;
namespace cons = sbridge::construction;

namespace {

// 1
constexpr int kLemmaGrid = 200;
constexpr std::size_t kLemmaRandom = 100000;
constexpr std::uint64_t kLemmaSeed = 1;
// 2
constexpr std::size_t kSturmPolys = 10000;
constexpr std::size_t kSturmSamples = 1000000;
constexpr int kSturmMaxDegree = 6;
constexpr std::uint64_t kSturmSeed = 2;
// 3
constexpr int kKuiperInstances = 100;
constexpr std::uint64_t kKuiperSeed = 3;
// 4
constexpr int kEtaVertices = 720;
constexpr std::size_t kEtaDirs = 2000;
// 5, 6
constexpr std::size_t kCertDirs = 5000;
constexpr std::uint64_t kCertSeed = 7;
constexpr int kSamples = 64;
// 7, 8
constexpr std::size_t kCorpusDirs = 2000;
constexpr std::uint64_t kCorpusSeed = 8;
// 9
constexpr int kParityDirections = 200;
constexpr int kRigidMotions = 10;
constexpr std::uint64_t kParitySeed = 9;
// 10
constexpr int kFreeingPlats = 50;
constexpr std::uint64_t kFreeingSeed = 10;
constexpr double kStepLimitRate = 0.10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

rr::Rational q(long num, long den) {
  rr::Rational r(num, den);
  r.canonicalize();
  return r;
}

// 1. g1 has at most two zeros on (0,1), fewer in the sign strata.
Outcome lemma_scan() {
  std::size_t worst = 0, checked = 0, strata_bad = 0;
  auto visit = [&](const rr::Rational& a, const rr::Rational& b) {
    const std::size_t c = rr::g1_zero_count(a, b);
    const int k = rr::lemma_case(a, b);
    worst = std::max(worst, c);
    if ((k == 3 && c != 0) || ((k == 5 || k == 6) && c > 1)) ++strata_bad;
    ++checked;
  };
  for (int i = 0; i < kLemmaGrid; ++i)
    for (int k = 0; k < kLemmaGrid; ++k)
      visit(q(20 * i, kLemmaGrid - 1) - 10, q(20 * k, kLemmaGrid - 1) - 10);
  std::mt19937_64 rng(kLemmaSeed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (std::size_t i = 0; i < kLemmaRandom; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    visit(rr::exact(a), rr::exact(b));
  }
  return {worst <= 2 && strata_bad == 0,
          fmt("%zu pairs, max zeros %zu, strata violations %zu", checked,
              worst, strata_bad)};
}

// 2. Sturm counts against sign changes on a dense grid.
Outcome sturm_vs_sampling() {
  std::mt19937_64 rng(kSturmSeed);
  std::uniform_int_distribution<int> degree(1, kSturmMaxDegree);
  std::uniform_int_distribution<int> den(1, 16);
  auto rational = [&]() {
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-10 * d, 10 * d);
    return q(num(rng), d);
  };
  std::size_t compared = 0, rejected = 0, mismatches = 0, roots = 0;
  while (compared < kSturmPolys) {
    std::vector<rr::Rational> c(degree(rng) + 1);
    for (auto& x : c) x = rational();
    if (c.back() == 0) continue;
    const rr::RealPoly p(c);
    if (rr::gcd(p, p.derivative()).degree() > 0) {
      ++rejected;
      continue;
    }
    rr::Rational lo = rational(), hi = rational();
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    const std::size_t exact = rr::sturm_count(p, lo, hi);
    std::vector<double> cd;
    for (const auto& x : c) cd.push_back(x.get_d());
    const double a = lo.get_d(), b = hi.get_d();
    std::size_t changes = 0;
    int last = 0;
    for (std::size_t k = 1; k < kSturmSamples; ++k) {
      const double x = a + (b - a) * double(k) / double(kSturmSamples);
      double y = 0;
      for (auto it = cd.rbegin(); it != cd.rend(); ++it) y = y * x + *it;
      const int s = y > 0 ? 1 : (y < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    if (changes != exact) ++mismatches;
    roots += exact;
    ++compared;
  }
  return {mismatches == 0,
          fmt("%zu polynomials (%zu roots in range), %zu mismatches, %zu "
              "non-squarefree rejected",
              compared, roots, mismatches, rejected)};
}

// 3. The eps = 0 polynomial splits off (1+w^2)^(N-2r) and keeps <= 4r real
// roots.
Outcome kuiper_structure() {
  std::mt19937_64 rng(kKuiperSeed);
  std::uniform_int_distribution<int> num(-100, 100);
  std::uniform_int_distribution<int> rdist(1, 3);
  std::uniform_int_distribution<int> hdist(0, 4);
  std::normal_distribution<double> g;
  // four terms with |coefficient| <= 7/40 each keep |lambda| <= 0.7
  auto random_trig = [&]() {
    rr::TrigPoly p{q(num(rng) * 7, 4000), {}, {}};
    for (int t = 0; t < 3; ++t) {
      const int h = hdist(rng);
      if (h == 0) continue;
      const auto c = q(num(rng) * 7, 4000);
      p = p + (rng() % 2 ? rr::cos_harmonic(h, c) : rr::sin_harmonic(h, c));
    }
    return p;
  };
  const rr::RealPoly one_plus_w2({1, 0, 1});
  int bad_division = 0, too_many = 0, max_roots = 0;
  for (int i = 0; i < kKuiperInstances; ++i) {
    const auto l1 = random_trig();
    const auto l2 = random_trig();
    const int r = rdist(rng);
    const Direction v(g(rng), g(rng), g(rng));
    const auto wp = rr::weierstrass_polynomial(l1, l2, r, 0, v);
    const auto [quot, rem] =
        rr::divmod(wp.poly, rr::pow(one_plus_w2, wp.N - 2 * r));
    if (!rem.is_zero()) ++bad_division;
    const int real = static_cast<int>(rr::count_real_roots(wp.poly));
    const int crit = static_cast<int>(rr::kuiper_critical_count(wp));
    max_roots = std::max(max_roots, real);
    if (real > 4 * r || crit > 4 * r) ++too_many;
  }
  return {bad_division == 0 && too_many == 0,
          fmt("%d instances, %d not divisible, %d above 4r (most real roots "
              "%d)",
              kKuiperInstances, bad_division, too_many, max_roots)};
}

// 4. eta has superbridge number two.
Outcome eta_superbridge() {
  const SpaceCurve eta(testcurves::eta_points(kEtaVertices));
  const auto rep = sweep_directions(eta, {kEtaDirs, 4, true});
  return {rep.max_maxima == 2,
          fmt("max_maxima %d over %zu directions", rep.max_maxima,
              rep.direction_count)};
}

struct CertRow {
  std::string name;
  braid::PlatDiagram plat;
  int at64 = -1;
  int at128 = -1;
  std::string error;
};

std::vector<CertRow>& certificates() {
  static std::vector<CertRow> rows = [] {
    std::vector<CertRow> rows{
        {"trefoil", braid::PlatDiagram(2, {2, 2, 2})},
        {"figure-eight", braid::PlatDiagram(2, {2, -3, 2, -3})},
        {"3-plat", braid::PlatDiagram(3, {-4, 4, -3, 4, -5, -5, -2})}};
    for (auto& row : rows) {
      for (int m : {kSamples, 2 * kSamples}) {
        try {
          cons::ConstructionParams p;
          p.samples_per_strand = m;
          const auto conf = cons::build_conformation(row.plat, p);
          const auto cert = cons::certify_bound(conf, kCertDirs, kCertSeed);
          (m == kSamples ? row.at64 : row.at128) = cert.sweep.max_maxima;
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
    }
    return rows;
  }();
  return rows;
}

// 5. J-only maxima stay under 3n - 1 and do not move when sampling doubles.
Outcome bound_certificates() {
  bool ok = true;
  std::string detail;
  for (const auto& row : certificates()) {
    const int bound = 3 * row.plat.n - 1;
    ok = ok && row.error.empty() && row.at64 >= 0 && row.at64 <= bound &&
         row.at64 == row.at128;
    detail += fmt("%s %d/%d (bound %d)%s; ", row.name.c_str(), row.at64,
                  row.at128, bound, row.error.empty() ? "" : " error");
  }
  return {ok, detail};
}

// 6. ... and stay above the bridge number.
Outcome lower_bounds() {
  bool ok = true;
  std::string detail;
  for (const auto& row : certificates()) {
    ok = ok && row.at64 >= row.plat.n + 1;
    detail += fmt("%s %d >= %d; ", row.name.c_str(), row.at64, row.plat.n + 1);
  }
  return {ok, detail};
}

struct Named {
  std::string name;
  SpaceCurve curve;
};

std::vector<Named> corpus() {
  std::vector<Named> c;
  c.push_back({"T(2,3)", cons::torus_knot_curve(2, 3, 2, 1, 240)});
  c.push_back({"T(2,5)", cons::torus_knot_curve(2, 5, 2, 1, 400)});
  c.push_back({"T(3,4)", cons::torus_knot_curve(3, 4, 2, 1, 320)});
  c.push_back({"T(2,7)", cons::torus_knot_curve(2, 7, 2, 1, 560)});
  c.push_back({"T(3,5)", cons::torus_knot_curve(3, 5, 2, 1, 400)});
  c.push_back({"hexagonal trefoil",
               SpaceCurve(testcurves::hexagonal_trefoil())});
  c.push_back({"eta", SpaceCurve(testcurves::eta_points(kEtaVertices))});
  c.push_back({"heptagon", testcurves::regular_polygon_xz(7)});
  c.push_back({"kuiper n=2",
               cons::kuiper_parametrization(
                   2, rr::cos_harmonic(1, q(1, 2)), rr::sin_harmonic(2, q(1, 3)),
                   q(1, 20), 1024)});
  c.push_back({"built trefoil",
               cons::build_conformation(braid::PlatDiagram(2, {2, 2, 2}))
                   .curve});
  c.push_back({"built figure-eight",
               cons::build_conformation(braid::PlatDiagram(2, {2, -3, 2, -3}))
                   .curve});
  std::mt19937_64 rng(kCorpusSeed);
  std::normal_distribution<double> g;
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({g(rng), g(rng), g(rng)});
  c.push_back({"random 12-gon", SpaceCurve(pts)});
  return c;
}

// 7. d <= 2 max_maxima, d even, and three maxima for the six stick trefoil.
Outcome inequality_certificates() {
  bool ok = true;
  std::string detail;
  int count = 0;
  for (const auto& [name, curve] : corpus()) {
    const auto cert = certify_inequalities(curve, {kCorpusDirs, kCorpusSeed});
    const bool even = cert.degree % 2 == 0;
    ok = ok && cert.degree_le_twice_maxima && even;
    if (name == "hexagonal trefoil") {
      ok = ok && cert.max_maxima <= 3;
      detail += fmt("hexagonal trefoil max %d; ", cert.max_maxima);
    }
    if (!cert.degree_le_twice_maxima || !even)
      detail += fmt("%s fails (d %d, max %d); ", name.c_str(), cert.degree,
                    cert.max_maxima);
    ++count;
  }
  return {ok && count >= 10, fmt("%d curves; ", count) + detail};
}

// 8. Lower bounds for the trefoil on the torus.
Outcome torus_sanity() {
  const auto c = cons::torus_knot_curve(2, 3, 2, 1, 240);
  const auto cert = certify_inequalities(c, {kCorpusDirs, kCorpusSeed});
  return {cert.max_maxima >= 3 && cert.degree >= 6,
          fmt("max_maxima %d, degree %d", cert.max_maxima, cert.degree)};
}

std::array<double, 3> apply(const std::array<std::array<double, 3>, 3>& m,
                            const std::array<double, 3>& x) {
  std::array<double, 3> y{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) y[i] += m[i][k] * x[k];
  return y;
}

// 9. maxima = minima, antipodes swap them, rigid motions change nothing.
Outcome parity_and_symmetry() {
  std::mt19937_64 rng(kParitySeed);
  std::normal_distribution<double> g;
  std::vector<Named> curves;
  for (auto& c : corpus()) {
    if (c.name == "hexagonal trefoil" || c.name == "T(2,5)" ||
        c.name == "built trefoil" || c.name == "random 12-gon")
      curves.push_back(c);
  }
  int parity = 0, antipodal = 0, rigid = 0, skipped = 0, checked = 0;
  for (const auto& [name, curve] : curves) {
    for (int i = 0; i < kParityDirections; ++i) {
      const Direction v(g(rng), g(rng), g(rng));
      try {
        const auto e = count_extrema(curve, v);
        const auto f = count_extrema(curve, -v);
        if (e.maxima != e.minima) ++parity;
        if (e.maxima != f.minima || e.minima != f.maxima) ++antipodal;
        ++checked;
      } catch (const GenericityFailure&) {
        ++skipped;
      }
    }
    for (int m = 0; m < kRigidMotions; ++m) {
      // random rotation from a unit quaternion, random translation
      double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
      const double n = std::sqrt(a * a + b * b + c * c + d * d);
      a /= n, b /= n, c /= n, d /= n;
      const std::array<std::array<double, 3>, 3> rot{
          {{a * a + b * b - c * c - d * d, 2 * (b * c - a * d),
            2 * (b * d + a * c)},
           {2 * (b * c + a * d), a * a - b * b + c * c - d * d,
            2 * (c * d - a * b)},
           {2 * (b * d - a * c), 2 * (c * d + a * b),
            a * a - b * b - c * c + d * d}}};
      const std::array<double, 3> shift{g(rng), g(rng), g(rng)};
      std::vector<Point> moved;
      for (const auto& p : curve.vertices()) {
        auto y = apply(rot, p);
        for (int k = 0; k < 3; ++k) y[k] += shift[k];
        moved.push_back(y);
      }
      const SpaceCurve image(moved, curve.tags(), curve.singular());
      for (int i = 0; i < 20; ++i) {
        const Direction v(g(rng), g(rng), g(rng));
        const auto w = apply(rot, v.v);
        try {
          for (auto r : {Restrict::All, Restrict::JOnly}) {
            const auto e = count_extrema(curve, v, r);
            const auto f = count_extrema(image, Direction(w[0], w[1], w[2]), r);
            if (e.maxima != f.maxima || e.minima != f.minima) ++rigid;
          }
        } catch (const GenericityFailure&) {
          ++skipped;
        }
      }
    }
  }
  return {parity == 0 && antipodal == 0 && rigid == 0,
          fmt("%d directions: parity %d, antipodal %d, rigid-motion %d "
              "violations, %d non-generic skipped",
              checked, parity, antipodal, rigid, skipped)};
}

// 10. Routing, freeing, and building from the freed plat.
Outcome strand_freeing() {
  std::mt19937 rng(kFreeingSeed);
  int routed_ok = 0, freed = 0, step_limit = 0, built = 0, links = 0,
      free_required = 0, other = 0;
  for (int i = 0; i < kFreeingPlats; ++i) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int len = 1 + static_cast<int>(rng() % 30);
    std::uniform_int_distribution<int> gen(1, 2 * n - 1);
    std::vector<int> letters;
    for (int k = 0; k < len; ++k)
      letters.push_back(rng() % 2 ? gen(rng) : -gen(rng));
    const auto routed =
        braid::route_leftmost_home(braid::PlatDiagram(n, letters));
    if (braid::permutation_of(routed.word)[0] == 1) ++routed_ok;
    braid::PlatDiagram result;
    try {
      result = braid::free_leftmost_strand(routed).plat;
    } catch (const StepLimitExceeded&) {
      ++step_limit;
      continue;
    }
    if (braid::leftmost_is_free(result)) ++freed;
    try {
      cons::build_conformation(result);
      ++built;
    } catch (const NotAKnot&) {
      ++links;
    } catch (const FreeStrandRequired&) {
      ++free_required;
    } catch (const Error&) {
      ++other;
    }
  }
  const double rate = double(step_limit) / kFreeingPlats;
  const bool ok = routed_ok == kFreeingPlats &&
                  freed + step_limit == kFreeingPlats &&
                  rate < kStepLimitRate && free_required == 0 && other == 0;
  return {ok, fmt("%d plats: routed %d, freed %d, step limit %d, built %d, "
                  "links %d, FreeStrandRequired %d, other errors %d",
                  kFreeingPlats, routed_ok, freed, step_limit, built, links,
                  free_required, other)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"lemma scan", lemma_scan},
      {"sturm vs sampling", sturm_vs_sampling},
      {"kuiper polynomial structure", kuiper_structure},
      {"eta superbridge", eta_superbridge},
      {"bridge conformation certificates", bound_certificates},
      {"lower bounds", lower_bounds},
      {"inequality certificates", inequality_certificates},
      {"torus knot sanity", torus_sanity},
      {"parity and symmetry", parity_and_symmetry},
      {"strand freeing", strand_freeing}};
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("criterion %zu %s: %s (%s) [%.1fs]\n", i + 1, checks[i].first,
                o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
