#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbridge/direction.hpp"

namespace sbridge {

using Point = std::array<double, 3>;

enum class Tag { J, L };
enum class Restrict { All, JOnly };

// Closed polygon. Segment i runs from vertex i to vertex i+1 (mod size) and
// carries tags[i]. Singular vertices are exactly the places where the tag
// changes; the same point may occur twice in the cycle when two J-arcs meet
// there.
class SpaceCurve {
 public:
  SpaceCurve() = default;
  SpaceCurve(std::vector<Point> vertices, std::vector<Tag> tags,
             std::vector<bool> singular);
  // All segments J, no singular vertices.
  explicit SpaceCurve(std::vector<Point> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Tag>& tags() const { return tags_; }
  const std::vector<bool>& singular() const { return singular_; }
  std::vector<std::size_t> singular_vertices() const;
  std::size_t stick_count() const { return vertices_.size(); }

 private:
  std::vector<Point> vertices_;
  std::vector<Tag> tags_;
  std::vector<bool> singular_;
};

// CSV with header x,y,z,tag,singular; tag belongs to the segment leaving the
// vertex. Coordinates are written with 17 significant digits.
SpaceCurve read_curve_csv(std::istream& in);
SpaceCurve read_curve_file(const std::string& path);
void write_curve_csv(std::ostream& out, const SpaceCurve& curve);

struct Extrema {
  int maxima = 0;
  int minima = 0;
};

// Strict local extrema of <., v> along the cycle. With JOnly each maximal
// J-arc is treated on its own and an arc end counts as a one-sided extremum;
// a singular point met by two J-arcs counts at most once.
// GenericityFailure if a segment is level: its height change is at most
// 1e-9 times its length.
Extrema count_extrema(const SpaceCurve& curve, const Direction& v,
                      Restrict restrict_to = Restrict::All);

// Fibonacci lattice of `count` points plus the six axes, each jittered by
// 1e-6 with a generator seeded from `seed` and the index.
struct SphereGrid {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  bool refine = true;
};
std::vector<Direction> grid_directions(const SphereGrid& grid);

struct DirectionSample {
  Direction v;  // after any nudge
  Extrema extrema;
  bool perturbed = false;
};

// count_extrema at every grid direction, nudging non-generic ones.
std::vector<DirectionSample> sample_directions(const SpaceCurve& curve,
                                               const SphereGrid& grid,
                                               Restrict restrict_to);

struct SweepReport {
  std::size_t direction_count = 0;
  int max_maxima = 0;
  Direction argmax_direction;
  int min_maxima = 0;
  Direction argmin_direction;
  int parity_violations = 0;
  int perturbations = 0;
};

// Non-generic grid directions are re-jittered (1e-6, up to 5 tries) before
// GenericityFailure escapes. With grid.refine the argmax gets 3 rounds of
// neighborhood search at half the lattice spacing, halving each round.
SweepReport sweep_directions(const SpaceCurve& curve, const SphereGrid& grid,
                             Restrict restrict_to = Restrict::All);

// Most segments crossed by one plane orthogonal to v.
int plane_crossings(const SpaceCurve& curve, const Direction& v);
// Max of plane_crossings over the grid directions (no refinement).
int geometric_degree(const SpaceCurve& curve, const SphereGrid& grid);

struct InequalityCertificate {
  int max_maxima = 0;
  int degree = 0;
  std::size_t stick_count = 0;
  bool degree_le_twice_maxima = false;
  bool maxima_le_half_sticks = false;
  SweepReport sweep;
};
InequalityCertificate certify_inequalities(const SpaceCurve& curve,
                                           const SphereGrid& grid);

struct TraceEntry {
  Direction direction;
  std::optional<int> maxima;  // empty when no generic nudge was found
  bool perturbed = false;
};

// JOnly maxima along the great circle arc from v_start to v_end, steps + 1
// samples including both ends. InvalidCurve if the curve has no singular
// vertices, InvalidParams if steps < 2.
std::vector<TraceEntry> maxima_transition_trace(const SpaceCurve& curve,
                                                const Direction& v_start,
                                                const Direction& v_end,
                                                int steps,
                                                std::uint64_t seed = 0);

}  // namespace sbridge
