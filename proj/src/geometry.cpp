#include "sbridge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "sbridge/errors.hpp"

namespace sbridge {

namespace {

constexpr double kGenericTol = 1e-9;
constexpr double kJitter = 1e-6;
constexpr int kNudges = 5;

double dot(const Point& p, const Direction& v) {
  return p[0] * v[0] + p[1] * v[1] + p[2] * v[2];
}

// Heights along the cycle; throws when a segment is within 1e-9 radians of
// perpendicular to v.
std::vector<double> checked_heights(const SpaceCurve& curve,
                                    const Direction& v) {
  const auto& pts = curve.vertices();
  const std::size_t n = pts.size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = dot(pts[i], v);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % n];
    const double len = std::hypot(q[0] - p[0], q[1] - p[1], q[2] - p[2]);
    if (!(std::abs(h[(i + 1) % n] - h[i]) > kGenericTol * len)) {
      throw GenericityFailure("segment " + std::to_string(i) +
                              " is level in this direction");
    }
  }
  return h;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index,
                       std::uint64_t salt) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(index), std::uint32_t(index >> 32),
                    std::uint32_t(salt)};
  return std::mt19937_64(seq);
}

Direction jitter(const Direction& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kJitter, kJitter);
  return Direction(v[0] + u(rng), v[1] + u(rng), v[2] + u(rng));
}

// Runs f(v); on GenericityFailure retries at jittered copies of v.
template <class F>
auto with_nudges(const Direction& v, std::mt19937_64& rng, F f, bool* nudged)
    -> std::pair<Direction, decltype(f(v))> {
  try {
    return {v, f(v)};
  } catch (const GenericityFailure&) {
  }
  for (int k = 0; k < kNudges; ++k) {
    const Direction w = jitter(v, rng);
    try {
      auto r = f(w);
      if (nudged) *nudged = true;
      return {w, r};
    } catch (const GenericityFailure&) {
    }
  }
  throw GenericityFailure("no generic direction within 1e-6 after 5 tries");
}

bool lex_less(const Direction& a, const Direction& b) { return a.v < b.v; }

// Orthonormal pair perpendicular to v.
std::pair<Point, Point> tangent_frame(const Direction& v) {
  const Point a = std::abs(v[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
  Point e1{a[1] * v[2] - a[2] * v[1], a[2] * v[0] - a[0] * v[2],
           a[0] * v[1] - a[1] * v[0]};
  const double n = std::hypot(e1[0], e1[1], e1[2]);
  for (auto& c : e1) c /= n;
  const Point e2{v[1] * e1[2] - v[2] * e1[1], v[2] * e1[0] - v[0] * e1[2],
                 v[0] * e1[1] - v[1] * e1[0]};
  return {e1, e2};
}

}  // namespace

SpaceCurve::SpaceCurve(std::vector<Point> vertices, std::vector<Tag> tags,
                       std::vector<bool> singular)
    : vertices_(std::move(vertices)),
      tags_(std::move(tags)),
      singular_(std::move(singular)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidCurve("need at least 3 vertices");
  if (tags_.size() != n || singular_.size() != n) {
    throw InvalidCurve("tags and singular flags must match the vertex count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double c : vertices_[i]) {
      if (!std::isfinite(c)) {
        throw InvalidCurve("vertex " + std::to_string(i) + " is not finite");
      }
    }
    if (vertices_[i] == vertices_[(i + 1) % n]) {
      throw InvalidCurve("vertices " + std::to_string(i) + " and " +
                         std::to_string((i + 1) % n) + " coincide");
    }
    const bool change = tags_[(i + n - 1) % n] != tags_[i];
    if (change != singular_[i]) {
      throw InvalidCurve("vertex " + std::to_string(i) +
                         (change ? " joins J and L but is not singular"
                                 : " is singular but does not join J and L"));
    }
  }
}

SpaceCurve::SpaceCurve(std::vector<Point> vertices)
    : SpaceCurve(vertices, std::vector<Tag>(vertices.size(), Tag::J),
                 std::vector<bool>(vertices.size(), false)) {}

std::vector<std::size_t> SpaceCurve::singular_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < singular_.size(); ++i) {
    if (singular_[i]) out.push_back(i);
  }
  return out;
}

SpaceCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,z,tag,singular") {
    throw ParseError("line 1: expected header x,y,z,tag,singular");
  }
  std::vector<Point> pts;
  std::vector<Tag> tags;
  std::vector<bool> sing;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (f.size() != 5) throw ParseError(where + "expected 5 fields");
    Point p;
    for (int k = 0; k < 3; ++k) {
      std::size_t used = 0;
      try {
        p[k] = std::stod(f[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != f[k].size()) {
        throw ParseError(where + "bad coordinate '" + f[k] + "'");
      }
    }
    if (f[3] != "J" && f[3] != "L") throw ParseError(where + "tag must be J or L");
    if (f[4] != "0" && f[4] != "1") throw ParseError(where + "singular must be 0 or 1");
    pts.push_back(p);
    tags.push_back(f[3] == "J" ? Tag::J : Tag::L);
    sing.push_back(f[4] == "1");
  }
  return SpaceCurve(std::move(pts), std::move(tags), std::move(sing));
}

SpaceCurve read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const SpaceCurve& curve) {
  out << "x,y,z,tag,singular\n";
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& p = curve.vertices()[i];
    out << p[0] << ',' << p[1] << ',' << p[2] << ','
        << (curve.tags()[i] == Tag::J ? 'J' : 'L') << ','
        << (curve.singular()[i] ? 1 : 0) << '\n';
  }
  out.precision(old);
}

Extrema count_extrema(const SpaceCurve& curve, const Direction& v,
                      Restrict restrict_to) {
  const auto h = checked_heights(curve, v);
  const std::size_t n = h.size();
  auto at = [&](std::size_t i) { return h[i % n]; };
  Extrema e;
  const auto& tags = curve.tags();
  const bool has_l = std::count(tags.begin(), tags.end(), Tag::L) > 0;

  if (restrict_to == Restrict::All || !has_l) {
    for (std::size_t i = 0; i < n; ++i) {
      const double prev = at(i + n - 1), next = at(i + 1);
      if (h[i] > prev && h[i] > next) ++e.maxima;
      if (h[i] < prev && h[i] < next) ++e.minima;
    }
    return e;
  }

  // J-arcs start where an L segment hands over to a J segment
  std::set<Point> top_ends, bottom_ends;
  for (std::size_t s = 0; s < n; ++s) {
    if (tags[s] != Tag::J || tags[(s + n - 1) % n] != Tag::L) continue;
    std::size_t len = 0;
    while (tags[(s + len) % n] == Tag::J) ++len;
    // vertices s .. s+len
    for (std::size_t k = 1; k < len; ++k) {
      const double c = at(s + k), prev = at(s + k - 1), next = at(s + k + 1);
      if (c > prev && c > next) ++e.maxima;
      if (c < prev && c < next) ++e.minima;
    }
    const auto& pts = curve.vertices();
    if (at(s + 1) < at(s)) top_ends.insert(pts[s]);
    if (at(s + 1) > at(s)) bottom_ends.insert(pts[s]);
    const std::size_t end = (s + len) % n;
    if (at(s + len - 1) < at(end)) top_ends.insert(pts[end]);
    if (at(s + len - 1) > at(end)) bottom_ends.insert(pts[end]);
  }
  e.maxima += static_cast<int>(top_ends.size());
  e.minima += static_cast<int>(bottom_ends.size());
  return e;
}

std::vector<Direction> grid_directions(const SphereGrid& grid) {
  if (grid.count == 0) throw InvalidParams("direction grid must be nonempty");
  std::vector<Direction> base;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double n = static_cast<double>(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double z = 1.0 - (2.0 * double(i) + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * double(i);
    base.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (double s : {1.0, -1.0}) {
      Point p{0, 0, 0};
      p[axis] = s;
      base.emplace_back(p[0], p[1], p[2]);
    }
  }
  std::vector<Direction> out;
  out.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto rng = stream(grid.seed, i, 0);
    out.push_back(jitter(base[i], rng));
  }
  return out;
}

namespace {

DirectionSample sample_one(const SpaceCurve& curve, const Direction& v,
                           Restrict restrict_to, std::uint64_t seed,
                           std::uint64_t index, std::uint64_t salt) {
  auto rng = stream(seed, index, salt);
  DirectionSample s{v, {}, false};
  auto count = [&](const Direction& w) {
    return count_extrema(curve, w, restrict_to);
  };
  auto [w, e] = with_nudges(v, rng, count, &s.perturbed);
  s.v = w;
  s.extrema = e;
  return s;
}

}  // namespace

std::vector<DirectionSample> sample_directions(const SpaceCurve& curve,
                                               const SphereGrid& grid,
                                               Restrict restrict_to) {
  const auto dirs = grid_directions(grid);
  std::vector<DirectionSample> out;
  out.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    out.push_back(sample_one(curve, dirs[i], restrict_to, grid.seed, i, 1));
  }
  return out;
}

SweepReport sweep_directions(const SpaceCurve& curve, const SphereGrid& grid,
                             Restrict restrict_to) {
  // map, then an order independent reduction
  const auto samples = sample_directions(curve, grid, restrict_to);

  SweepReport rep;
  auto absorb = [&](const DirectionSample& s, bool first) {
    const int m = s.extrema.maxima;
    ++rep.direction_count;
    if (s.perturbed) ++rep.perturbations;
    if (restrict_to == Restrict::All && m != s.extrema.minima) {
      ++rep.parity_violations;
    }
    if (first || m > rep.max_maxima ||
        (m == rep.max_maxima && lex_less(s.v, rep.argmax_direction))) {
      rep.max_maxima = m;
      rep.argmax_direction = s.v;
    }
    if (first || m < rep.min_maxima ||
        (m == rep.min_maxima && lex_less(s.v, rep.argmin_direction))) {
      rep.min_maxima = m;
      rep.argmin_direction = s.v;
    }
  };
  for (std::size_t i = 0; i < samples.size(); ++i) absorb(samples[i], i == 0);

  if (grid.refine) {
    double step = 0.5 * std::sqrt(4.0 * std::numbers::pi / double(grid.count));
    std::uint64_t index = samples.size();
    for (int round = 0; round < 3; ++round, step *= 0.5) {
      const Direction centre = rep.argmax_direction;
      const auto [e1, e2] = tangent_frame(centre);
      std::vector<DirectionSample> ring;
      for (int k = 0; k < 8; ++k) {
        const double th = std::numbers::pi * k / 4.0;
        const double c = std::cos(step), s = std::sin(step);
        const double a = std::cos(th) * s, b = std::sin(th) * s;
        const Direction w(centre[0] * c + a * e1[0] + b * e2[0],
                          centre[1] * c + a * e1[1] + b * e2[1],
                          centre[2] * c + a * e1[2] + b * e2[2]);
        ring.push_back(sample_one(curve, w, restrict_to, grid.seed, index++, 2));
      }
      for (const auto& s : ring) absorb(s, false);
    }
  }
  return rep;
}

int plane_crossings(const SpaceCurve& curve, const Direction& v) {
  const auto h = checked_heights(curve, v);
  const std::size_t n = h.size();
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = h[i], b = h[(i + 1) % n];
    events.emplace_back(std::min(a, b), +1);
    events.emplace_back(std::max(a, b), -1);
  }
  std::sort(events.begin(), events.end());
  int level = 0, best = 0;
  for (std::size_t i = 0; i < events.size();) {
    const double at = events[i].first;
    while (i < events.size() && events[i].first == at) level += events[i++].second;
    best = std::max(best, level);
  }
  return best;
}

int geometric_degree(const SpaceCurve& curve, const SphereGrid& grid) {
  const auto dirs = grid_directions(grid);
  auto crossings = [&](const Direction& w) { return plane_crossings(curve, w); };
  int best = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    // same nudges as sweep_directions so the two see identical directions
    auto rng = stream(grid.seed, i, 1);
    best = std::max(best, with_nudges(dirs[i], rng, crossings, nullptr).second);
  }
  return best;
}

InequalityCertificate certify_inequalities(const SpaceCurve& curve,
                                           const SphereGrid& grid) {
  InequalityCertificate c;
  c.sweep = sweep_directions(curve, grid, Restrict::All);
  c.max_maxima = c.sweep.max_maxima;
  c.degree = geometric_degree(curve, grid);
  c.stick_count = curve.stick_count();
  c.degree_le_twice_maxima = c.degree <= 2 * c.max_maxima;
  c.maxima_le_half_sticks =
      static_cast<std::size_t>(c.max_maxima) <= c.stick_count / 2;
  return c;
}

std::vector<TraceEntry> maxima_transition_trace(const SpaceCurve& curve,
                                                const Direction& v_start,
                                                const Direction& v_end,
                                                int steps, std::uint64_t seed) {
  if (curve.singular_vertices().empty()) {
    throw InvalidCurve("transition trace needs singular vertices");
  }
  if (steps < 2) throw InvalidParams("steps must be at least 2");
  const Point a = v_start.v;
  Point b = v_end.v;
  const double cosw = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  // antipodal ends: go through a perpendicular in two quarter turns
  const bool antipodal = cosw < -1 + 1e-12;
  const Point mid = tangent_frame(v_start).first;
  auto count = [&](const Direction& w) {
    return count_extrema(curve, w, Restrict::JOnly).maxima;
  };
  std::vector<TraceEntry> out;
  for (int k = 0; k <= steps; ++k) {
    double f = double(k) / steps;
    Point from = a, to = b;
    if (antipodal) {
      f *= 2;
      to = mid;
      if (f > 1) f -= 1, from = mid, to = b;
    }
    const double c = from[0] * to[0] + from[1] * to[1] + from[2] * to[2];
    const double om = std::acos(std::clamp(c, -1.0, 1.0));
    Point p = from;
    if (om > 1e-12) {
      const double s0 = std::sin((1 - f) * om) / std::sin(om);
      const double s1 = std::sin(f * om) / std::sin(om);
      for (int i = 0; i < 3; ++i) p[i] = s0 * from[i] + s1 * to[i];
    }
    TraceEntry entry{Direction(p[0], p[1], p[2]), std::nullopt, false};
    auto rng = stream(seed, std::uint64_t(k), 3);
    try {
      auto [w, m] = with_nudges(entry.direction, rng, count, &entry.perturbed);
      entry.direction = w;
      entry.maxima = m;
    } catch (const GenericityFailure&) {
      entry.perturbed = true;
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace sbridge
