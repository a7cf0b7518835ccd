#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbridge/braid.hpp"
#include "sbridge/geometry.hpp"
#include "sbridge/realroots.hpp"

namespace sbridge::construction {

struct ConstructionParams {
  // Radial width of the tube around the unit circle and height of the
  // over/under bumps. Left empty they scale with the row width d of the
  // layout: epsilon = 0.002 (2n-2) d^3, delta = epsilon / 20. The wiggles
  // must stay small next to the torsion of eta in C^3, and their third
  // derivatives grow like 1/d^3.
  std::optional<double> epsilon;
  std::optional<double> delta;
  int samples_per_strand = 64;  // per strand per row (rounded up to odd)
  double arc_margin = 0.1;      // braid region is (margin, pi/2 - margin)
};

// InvalidParams unless 0 < epsilon < 0.2, 0 < delta < epsilon/2 (when
// given), samples_per_strand >= 16 and 0 < arc_margin < pi/4.
void validate(const ConstructionParams& p);

// The params with epsilon and delta filled in for this plat.
ConstructionParams resolve(const braid::PlatDiagram& plat,
                           ConstructionParams p);

struct ConstructedConformation {
  SpaceCurve curve;
  int n = 1;
  // Segments [first, first + count) form the loose strand, running in
  // increasing t from the top of the braid around the far side.
  std::pair<std::size_t, std::size_t> loose_strand_segments{0, 0};
  // One vertex index per attachment point (each point is visited twice by
  // the cycle; this is the first visit).
  std::vector<std::size_t> attachment_points;
  ConstructionParams params;  // resolved
  braid::PlatDiagram source;
};

// The plat is drawn in polar coordinates: plat height becomes the angle t
// over the braid region, position x becomes the radius 1 + eps ((x-2)/(2n-2)
// - 1/2), and z = cos^2 t plus a bump of +-delta at each crossing. String 2
// continues from its top around the far side back to its bottom (the loose
// strand); each other cap top is joined to the matching cup bottom by two L
// strands running around the far side at the radii of the cap's strings.
// FreeStrandRequired unless string 1 takes part in no crossing, NotAKnot for
// links, CrossingViolation if the projection to the xy-plane shows any
// crossing other than the word's, or one with less than delta of clearance.
// n = 1 gives the plain eta curve with no attachment points.
ConstructedConformation build_conformation(const braid::PlatDiagram& plat,
                                           const ConstructionParams& params = {});

// (cos rt (1 + e l1), sin rt (1 + e l1), cos^2 rt + e l2), r = 2n - 1,
// sampled at t = 2 pi k / samples. All J. NormViolation if l1^2 + l2^2 > 1
// at a sample, InvalidParams if samples < 64 r.
SpaceCurve kuiper_parametrization(int n, const realroots::TrigPoly& lambda1,
                                  const realroots::TrigPoly& lambda2,
                                  const realroots::Rational& epsilon,
                                  int samples);

// ((R + r cos qt) cos pt, (R + r cos qt) sin pt, r sin qt). InvalidTorusParams
// unless gcd(p,q) = 1, 2 <= p < q, 0 < r < R and samples >= 8 q.
SpaceCurve torus_knot_curve(int p, int q, double R, double r, int samples);

// How eta(t) = (cos t, sin t, cos^2 t) looks from direction v.
enum class EtaCase { MaxInsideArc, OneMaxOutside, TwoMaxOutside };
EtaCase classify_direction(const Direction& v);
std::string to_string(EtaCase c);

struct CaseTally {
  std::size_t directions = 0;
  int max_maxima = 0;
  int bound = 0;  // what the case analysis allows: 3n-1, 2n-1 or 2n
};

struct BoundCertificate {
  int n = 0;
  int bound = 0;  // 3n - 1
  SweepReport sweep;  // J-only
  std::map<EtaCase, CaseTally> cases;
  ConstructionParams params;  // the ones actually used
  int rebuilds = 0;  // parameter halvings forced by genericity trouble
};

// Sweeps J-only maxima over the grid. If a direction stays non-generic the
// conformation is rebuilt at half delta and epsilon (up to 3 times).
// BoundViolation if max_maxima > 3n - 1.
BoundCertificate certify_bound(const ConstructedConformation& conf,
                               std::size_t dirs, std::uint64_t seed);

}  // namespace sbridge::construction
