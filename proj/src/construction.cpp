#include "sbridge/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "sbridge/errors.hpp"

namespace sbridge::construction {

namespace {

constexpr double kPi = std::numbers::pi;

double ease(double u) { return 0.5 - 0.5 * std::cos(kPi * u); }

bool near(const Point& a, const Point& b) {
  return std::abs(a[0] - b[0]) < 1e-12 && std::abs(a[1] - b[1]) < 1e-12 &&
         std::abs(a[2] - b[2]) < 1e-12;
}

// Plat coordinates (row grid along t, position x) to space.
struct Layout {
  int n = 2;
  int m = 64;
  double eps = 0.05, delta = 0.01, t0 = 0.1, dt = 0.1;

  double radius(double x) const {
    return 1 + eps * ((x - 2) / (2.0 * n - 2) - 0.5);
  }
  double t(int row, int j) const { return t0 + (row + double(j) / m) * dt; }
  Point at(double t, double x, double zeta) const {
    const double r = radius(x), c = std::cos(t);
    return {r * c, r * std::sin(t), c * c + zeta};
  }
};

// A polyline joining two ports of the plat: bottom ends of the braid strings
// (port p) or top ends (port kTop + q).
constexpr int kTop = 1 << 20;

struct Piece {
  std::vector<Point> pts;
  int a = 0, b = 0;
  int e_index = -1;  // cap/cup: index in pts of its attachment point
  int e_id = -1;
};

struct Edge {
  int u = 0, v = 0;
  std::vector<Point> pts;
  Tag tag = Tag::J;
};

// One closed trail through every edge, switching between J and L at every
// vertex visit. Pairings at a vertex are flipped until the trails merge.
std::vector<std::pair<int, bool>> alternating_circuit(
    const std::vector<Edge>& edges, int vertex_count) {
  std::vector<std::vector<int>> jh(vertex_count), lh(vertex_count);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto& bucket = edges[e].tag == Tag::J ? jh : lh;
    bucket[edges[e].u].push_back(2 * e);
    bucket[edges[e].v].push_back(2 * e + 1);
  }
  for (int x = 0; x < vertex_count; ++x) {
    if (jh[x].size() != 2 || lh[x].size() != 2) {
      throw CrossingViolation("attachment point without two J and two L ends");
    }
  }
  std::vector<int> choice(vertex_count, 0);
  std::vector<int> pair(2 * edges.size());
  auto rebuild = [&] {
    for (int x = 0; x < vertex_count; ++x) {
      const int l0 = lh[x][choice[x]], l1 = lh[x][1 - choice[x]];
      pair[jh[x][0]] = l0, pair[l0] = jh[x][0];
      pair[jh[x][1]] = l1, pair[l1] = jh[x][1];
    }
  };
  std::vector<int> trail_of(edges.size());
  auto trace = [&](int start_edge, int id, std::vector<std::pair<int, bool>>* out) {
    int leave = 2 * start_edge;  // leave from the u end
    do {
      const int e = leave / 2;
      trail_of[e] = id;
      if (out) out->push_back({e, leave % 2 == 0});
      leave = pair[leave ^ 1];
    } while (leave != 2 * start_edge);
  };
  for (int guard = 0; guard <= vertex_count; ++guard) {
    rebuild();
    std::fill(trail_of.begin(), trail_of.end(), -1);
    int trails = 0;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (trail_of[e] < 0) trace(e, trails++, nullptr);
    }
    if (trails == 1) {
      std::vector<std::pair<int, bool>> out;
      trace(0, 0, &out);
      return out;
    }
    for (int x = 0; x < vertex_count; ++x) {
      if (trail_of[jh[x][0] / 2] != trail_of[jh[x][1] / 2]) {
        choice[x] ^= 1;
        break;
      }
    }
  }
  throw CrossingViolation("could not close the singular knot into one cycle");
}

// Crossings of the xy-projection, found by bucketing segments by angle.
struct ProjectedCrossing {
  std::size_t s1, s2;
  double gap;  // height difference at the crossing
};

std::vector<ProjectedCrossing> projected_crossings(const SpaceCurve& c) {
  const auto& v = c.vertices();
  const std::size_t n = v.size();
  constexpr int kBins = 4096;
  auto bin = [](double th) {
    const int b = static_cast<int>((th + kPi) / (2 * kPi) * kBins);
    return std::clamp(b, 0, kBins - 1);
  };
  std::vector<std::vector<std::size_t>> bins(kBins);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    int b0 = bin(std::atan2(p[1], p[0])), b1 = bin(std::atan2(q[1], q[0]));
    if (b0 > b1) std::swap(b0, b1);
    if (b1 - b0 > kBins / 2) {  // wraps through the cut at angle pi
      for (int b = b1; b < kBins; ++b) bins[b].push_back(i);
      for (int b = 0; b <= b0; ++b) bins[b].push_back(i);
    } else {
      for (int b = b0; b <= b1; ++b) bins[b].push_back(i);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<ProjectedCrossing> out;
  for (const auto& bucket : bins) {
    for (std::size_t x = 0; x < bucket.size(); ++x) {
      for (std::size_t y = x + 1; y < bucket.size(); ++y) {
        const std::size_t i = std::min(bucket[x], bucket[y]);
        const std::size_t j = std::max(bucket[x], bucket[y]);
        const Point &a0 = v[i], &a1 = v[(i + 1) % n];
        const Point &b0 = v[j], &b1 = v[(j + 1) % n];
        if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) continue;
        const double rx = a1[0] - a0[0], ry = a1[1] - a0[1];
        const double sx = b1[0] - b0[0], sy = b1[1] - b0[1];
        const double den = rx * sy - ry * sx;
        if (den == 0) continue;
        const double t = ((b0[0] - a0[0]) * sy - (b0[1] - a0[1]) * sx) / den;
        const double u = ((b0[0] - a0[0]) * ry - (b0[1] - a0[1]) * rx) / den;
        if (t <= 0 || t >= 1 || u <= 0 || u >= 1) continue;
        if (!seen.insert({i, j}).second) continue;
        const double za = a0[2] + t * (a1[2] - a0[2]);
        const double zb = b0[2] + u * (b1[2] - b0[2]);
        out.push_back({i, j, std::abs(za - zb)});
      }
    }
  }
  return out;
}

SpaceCurve eta_curve(int samples) {
  std::vector<Point> pts;
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * kPi * k / samples;
    pts.push_back({std::cos(t), std::sin(t), std::cos(t) * std::cos(t)});
  }
  return SpaceCurve(pts);
}

}  // namespace

void validate(const ConstructionParams& p) {
  if (p.epsilon && !(*p.epsilon > 0 && *p.epsilon < 0.2)) {
    throw InvalidParams("epsilon must lie in (0, 0.2)");
  }
  if (p.delta && !(*p.delta > 0 && (!p.epsilon || *p.delta < *p.epsilon / 2))) {
    throw InvalidParams("delta must lie in (0, epsilon/2)");
  }
  if (p.samples_per_strand < 16) {
    throw InvalidParams("samples_per_strand must be at least 16");
  }
  if (!(p.arc_margin > 0 && p.arc_margin < kPi / 4)) {
    throw InvalidParams("arc_margin must lie in (0, pi/4)");
  }
}

ConstructionParams resolve(const braid::PlatDiagram& plat,
                           ConstructionParams p) {
  validate(p);
  const double rows = static_cast<double>(plat.word.size() + 2);
  const double d = (kPi / 2 - 2 * p.arc_margin) / rows;
  const double scale = 0.002 * std::max(2 * plat.n - 2, 1) * d * d * d;
  if (!p.epsilon) p.epsilon = std::min(scale, 0.1);
  if (!p.delta) p.delta = *p.epsilon / 20;
  validate(p);
  return p;
}

ConstructedConformation build_conformation(const braid::PlatDiagram& plat,
                                           const ConstructionParams& given) {
  const ConstructionParams params = resolve(plat, given);
  braid::validate(plat.word);
  if (plat.word.width != 2 * plat.n) {
    throw InvalidBraid("plat width must be 2n");
  }
  if (braid::component_count(plat) != 1) {
    throw NotAKnot("plat closes to a link with " +
                   std::to_string(braid::component_count(plat)) +
                   " components");
  }
  if (!braid::leftmost_is_free(plat)) {
    throw FreeStrandRequired("string 1 still takes part in crossings");
  }
  ConstructedConformation conf;
  conf.n = plat.n;
  conf.params = params;
  conf.source = plat;
  const int n = plat.n;
  if (n == 1) {
    conf.curve = eta_curve(4 * params.samples_per_strand);
    return conf;
  }

  const auto& word = plat.word.letters;
  const int L = static_cast<int>(word.size());
  const int R = L + 2;  // cup row, one row per letter, cap row
  Layout lay;
  lay.n = n;
  // odd, so strands meet mid-segment rather than at a shared sample
  lay.m = params.samples_per_strand | 1;
  lay.eps = *params.epsilon;
  lay.delta = *params.delta;
  lay.t0 = params.arc_margin;
  lay.dt = (kPi / 2 - 2 * params.arc_margin) / R;
  const int m = lay.m;

  std::vector<Piece> pieces;
  std::vector<int> strand_at(kTop + 2 * n + 1, -1), conn_at(kTop + 2 * n + 1, -1);
  auto add = [&](Piece p, bool strand) {
    const int id = static_cast<int>(pieces.size());
    auto& slot = strand ? strand_at : conn_at;
    slot[p.a] = id;
    slot[p.b] = id;
    pieces.push_back(std::move(p));
  };

  // braid strings, bottom to top; letter k sits in row L + 1 - k
  for (int p = 2; p <= 2 * n; ++p) {
    Piece s;
    s.a = p;
    int pos = p;
    s.pts.push_back(lay.at(lay.t(1, 0), pos, 0));
    for (int row = 1; row <= L; ++row) {
      const int g = word[L - row];
      const int lo = std::abs(g);
      int to = pos;
      bool over = false;
      if (pos == lo) to = lo + 1, over = g < 0;
      if (pos == lo + 1) to = lo, over = g > 0;
      for (int j = 1; j <= m; ++j) {
        const double u = double(j) / m;
        const double x = pos + (to - pos) * ease(u);
        const double bump = std::sin(kPi * u);
        const double zeta =
            to == pos ? 0.0 : (over ? 1 : -1) * lay.delta * bump * bump;
        s.pts.push_back(lay.at(lay.t(row, j), x, zeta));
      }
      pos = to;
    }
    s.b = kTop + pos;
    add(std::move(s), true);
  }

  // caps and cups of pairs 2..n; attachment ids 2(i-2) top, 2(i-2)+1 bottom
  std::vector<Point> e_point(2 * n - 2);
  for (int i = 2; i <= n; ++i) {
    const int a = 2 * i - 1, b = 2 * i;
    const double c = 2 * i - 0.5;
    Piece cap, cup;
    cap.a = kTop + a, cap.b = kTop + b;
    cup.a = a, cup.b = b;
    for (int j = 0; j <= 2 * m; ++j) {
      const int k = j <= m ? j : 2 * m - j;  // m at the attachment point
      const double side = j <= m ? -1 : 1;
      const double off = 0.5 * std::sin(kPi / 2 * (1 - double(k) / m));
      cap.pts.push_back(lay.at(lay.t(R - 1, k), c + side * off, 0));
      cup.pts.push_back(lay.at(lay.t(0, m - k), c + side * off, 0));
    }
    cap.e_index = cup.e_index = m;
    cap.e_id = 2 * (i - 2);
    cup.e_id = 2 * (i - 2) + 1;
    e_point[cap.e_id] = cap.pts[m];
    e_point[cup.e_id] = cup.pts[m];
    add(std::move(cap), false);
    add(std::move(cup), false);
  }

  // far side angles, strictly between the two transition rows
  const double far_from = lay.t(R, m);
  const double far_to = lay.t(-1, 0) + 2 * kPi;
  const int far_steps =
      static_cast<int>(std::ceil((far_to - far_from) / (lay.dt / m)));
  std::vector<double> far_t;
  for (int k = 1; k < far_steps; ++k) {
    far_t.push_back(far_from + (far_to - far_from) * k / far_steps);
  }

  // loose strand: top of string 2, around the far side, bottom of string 2
  Piece loose;
  loose.a = kTop + 2, loose.b = 2;
  for (int j = 0; j <= m; ++j) loose.pts.push_back(lay.at(lay.t(R - 1, j), 2, 0));
  for (int j = 1; j <= m; ++j) loose.pts.push_back(lay.at(lay.t(R, j), 2, 0));
  for (double t : far_t) loose.pts.push_back(lay.at(t, 2, 0));
  for (int j = 0; j <= m; ++j) loose.pts.push_back(lay.at(lay.t(-1, j), 2, 0));
  for (int j = 1; j <= m; ++j) loose.pts.push_back(lay.at(lay.t(0, j), 2, 0));
  const std::vector<Point> loose_pts = loose.pts;
  add(std::move(loose), false);

  // walk the knot: strand, connector, strand, ...
  std::vector<Point> knot;
  std::vector<int> e_at;  // attachment id at each knot vertex, or -1
  int port = 2;
  bool strand = true;
  do {
    const Piece& pc = pieces[(strand ? strand_at : conn_at)[port]];
    const bool fwd = pc.a == port;
    const int len = static_cast<int>(pc.pts.size());
    for (int k = 0; k < len; ++k) {
      const int idx = fwd ? k : len - 1 - k;
      if (!knot.empty() && near(knot.back(), pc.pts[idx])) continue;
      knot.push_back(pc.pts[idx]);
      e_at.push_back(idx == pc.e_index ? pc.e_id : -1);
    }
    port = fwd ? pc.b : pc.a;
    strand = !strand;
  } while (!(port == 2 && strand));
  if (near(knot.back(), knot.front())) knot.pop_back(), e_at.pop_back();

  // J arcs between consecutive attachment points, plus the L strands
  std::vector<std::size_t> stops;
  for (std::size_t k = 0; k < knot.size(); ++k) {
    if (e_at[k] >= 0) stops.push_back(k);
  }
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < stops.size(); ++s) {
    const std::size_t from = stops[s];
    const std::size_t to = stops[(s + 1) % stops.size()];
    Edge e;
    e.u = e_at[from], e.v = e_at[to];
    for (std::size_t k = from;; k = (k + 1) % knot.size()) {
      e.pts.push_back(knot[k]);
      if (k == to && e.pts.size() > 1) break;
    }
    edges.push_back(std::move(e));
  }
  for (int i = 2; i <= n; ++i) {
    const double c = 2 * i - 0.5;
    for (int x : {2 * i - 1, 2 * i}) {
      Edge e;
      e.tag = Tag::L;
      e.u = 2 * (i - 2), e.v = 2 * (i - 2) + 1;
      e.pts.push_back(e_point[e.u]);
      for (int j = 1; j <= m; ++j) {
        e.pts.push_back(lay.at(lay.t(R, j), c + (x - c) * ease(double(j) / m), 0));
      }
      for (double t : far_t) e.pts.push_back(lay.at(t, x, 0));
      for (int j = 0; j < m; ++j) {
        e.pts.push_back(lay.at(lay.t(-1, j), x + (c - x) * ease(double(j) / m), 0));
      }
      e.pts.push_back(e_point[e.v]);
      edges.push_back(std::move(e));
    }
  }

  const auto circuit = alternating_circuit(edges, 2 * n - 2);
  std::vector<Point> verts;
  std::vector<Tag> tags;
  for (const auto& [e, fwd] : circuit) {
    const auto& pts = edges[e].pts;
    const std::size_t len = pts.size();
    if (verts.empty()) verts.push_back(fwd ? pts.front() : pts.back());
    for (std::size_t k = 1; k < len; ++k) {
      tags.push_back(edges[e].tag);
      verts.push_back(fwd ? pts[k] : pts[len - 1 - k]);
    }
  }
  verts.pop_back();  // back at the start

  // orient and rotate so the loose strand runs forward from vertex 0
  const std::size_t N = verts.size();
  auto find = [&](const Point& p) {
    return static_cast<std::size_t>(
        std::find_if(verts.begin(), verts.end(),
                     [&](const Point& q) { return near(p, q); }) -
        verts.begin());
  };
  const std::size_t loose_len = loose_pts.size() - 1;
  std::size_t first = find(loose_pts.front());
  if ((first + loose_len) % N != find(loose_pts.back())) {
    std::vector<Point> rv(N);
    std::vector<Tag> rt(N);
    for (std::size_t k = 0; k < N; ++k) {
      rv[k] = verts[(N - k) % N];
      rt[k] = tags[(2 * N - k - 1) % N];
    }
    verts.swap(rv);
    tags.swap(rt);
    first = find(loose_pts.front());
  }
  std::rotate(verts.begin(), verts.begin() + first, verts.end());
  std::rotate(tags.begin(), tags.begin() + first, tags.end());
  std::vector<bool> sing(N);
  for (std::size_t k = 0; k < N; ++k) sing[k] = tags[(k + N - 1) % N] != tags[k];
  conf.curve = SpaceCurve(std::move(verts), std::move(tags), std::move(sing));
  conf.loose_strand_segments = {0, loose_len};
  for (const auto& p : e_point) {
    const auto& v = conf.curve.vertices();
    conf.attachment_points.push_back(
        static_cast<std::size_t>(std::find(v.begin(), v.end(), p) - v.begin()));
  }

  // the projection must show exactly the word's crossings, all between J
  // segments and with clear height separation
  const auto crossings = projected_crossings(conf.curve);
  for (const auto& x : crossings) {
    if (conf.curve.tags()[x.s1] == Tag::L || conf.curve.tags()[x.s2] == Tag::L) {
      throw CrossingViolation("an added strand crosses the diagram");
    }
    if (x.gap < lay.delta) {
      throw CrossingViolation("crossing with height gap " +
                              std::to_string(x.gap) + " below delta");
    }
  }
  if (static_cast<int>(crossings.size()) != L) {
    throw CrossingViolation("projection has " + std::to_string(crossings.size()) +
                            " crossings, the word has " + std::to_string(L));
  }
  return conf;
}

SpaceCurve kuiper_parametrization(int n, const realroots::TrigPoly& lambda1,
                                  const realroots::TrigPoly& lambda2,
                                  const realroots::Rational& epsilon,
                                  int samples) {
  if (n < 1) throw InvalidParams("n must be at least 1");
  const int r = 2 * n - 1;
  if (samples < 64 * r) {
    throw InvalidParams("need at least 64(2n-1) samples");
  }
  const double e = epsilon.get_d();
  std::vector<Point> pts;
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * kPi * k / samples;
    const double l1 = lambda1.eval(t), l2 = lambda2.eval(t);
    if (l1 * l1 + l2 * l2 > 1 + 1e-12) {
      throw NormViolation("lambda1^2 + lambda2^2 exceeds 1 at t = " +
                          std::to_string(t));
    }
    const double c = std::cos(r * t);
    pts.push_back({c * (1 + e * l1), std::sin(r * t) * (1 + e * l1),
                   c * c + e * l2});
  }
  return SpaceCurve(pts);
}

SpaceCurve torus_knot_curve(int p, int q, double R, double r, int samples) {
  if (!(p >= 2 && p < q && std::gcd(p, q) == 1)) {
    throw InvalidTorusParams("need coprime 2 <= p < q");
  }
  if (!(r > 0 && r < R)) throw InvalidTorusParams("need 0 < r < R");
  if (samples < 8 * q) throw InvalidTorusParams("need at least 8q samples");
  std::vector<Point> pts;
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * kPi * k / samples;
    const double w = R + r * std::cos(q * t);
    pts.push_back({w * std::cos(p * t), w * std::sin(p * t), r * std::sin(q * t)});
  }
  return SpaceCurve(pts);
}

EtaCase classify_direction(const Direction& v) {
  const std::size_t inside = realroots::eta_critical_count(v);
  // derivative of <eta, v> is v2 at t = 0 and -v1 at t = pi/2
  if (inside == 2 || (inside == 1 && v[1] > 0 && v[0] > 0)) {
    return EtaCase::MaxInsideArc;
  }
  const std::size_t total =
      realroots::eta_critical_count(v, -0.123, -0.123 + 2 * kPi);
  return total <= 2 ? EtaCase::OneMaxOutside : EtaCase::TwoMaxOutside;
}

std::string to_string(EtaCase c) {
  switch (c) {
    case EtaCase::MaxInsideArc: return "max_inside_arc";
    case EtaCase::OneMaxOutside: return "one_max_outside";
    case EtaCase::TwoMaxOutside: return "two_max_outside";
  }
  return "unknown";
}

BoundCertificate certify_bound(const ConstructedConformation& conf,
                               std::size_t dirs, std::uint64_t seed) {
  BoundCertificate cert;
  cert.n = conf.n;
  cert.bound = 3 * conf.n - 1;
  cert.params = conf.params;
  const SphereGrid grid{dirs, seed, true};
  ConstructedConformation current = conf;
  std::vector<DirectionSample> samples;
  for (;; ++cert.rebuilds) {
    try {
      samples = sample_directions(current.curve, grid, Restrict::JOnly);
      cert.sweep = sweep_directions(current.curve, grid, Restrict::JOnly);
      break;
    } catch (const GenericityFailure&) {
      if (cert.rebuilds == 3) throw;
      cert.params.delta = *cert.params.delta / 2;
      cert.params.epsilon = *cert.params.epsilon / 2;
      current = build_conformation(conf.source, cert.params);
    }
  }
  const int n = conf.n;
  cert.cases[EtaCase::MaxInsideArc].bound = 3 * n - 1;
  cert.cases[EtaCase::OneMaxOutside].bound = 2 * n - 1;
  cert.cases[EtaCase::TwoMaxOutside].bound = 2 * n;
  for (const auto& s : samples) {
    auto& tally = cert.cases[classify_direction(s.v)];
    ++tally.directions;
    tally.max_maxima = std::max(tally.max_maxima, s.extrema.maxima);
  }
  if (cert.sweep.max_maxima > cert.bound) {
    throw BoundViolation("J-only maxima reach " +
                         std::to_string(cert.sweep.max_maxima) +
                         ", above 3n-1 = " + std::to_string(cert.bound));
  }
  return cert;
}

}  // namespace sbridge::construction
