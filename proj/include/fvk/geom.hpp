#ifndef FVK_GEOM_HPP
#define FVK_GEOM_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace fvk {

// All curve geometry is exact: coordinates are rationals, so genericity
// decisions (transversality, coincidence) are never tolerance-based.
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q", "-3", or decimal literals like "0.35" exactly.
// Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

std::string rat_to_string(const Rat& r);

// Largest integer <= r.
boost::multiprecision::cpp_int rat_floor(const Rat& r);
// r reduced mod 1 into [0, 1).
Rat mod1(const Rat& r);

struct Vec2 {
  Rat u, v;
  Vec2 operator+(const Vec2& o) const { return {u + o.u, v + o.v}; }
  Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
  bool operator==(const Vec2& o) const { return u == o.u && v == o.v; }
};

inline Rat cross(const Vec2& a, const Vec2& b) { return a.u * b.v - a.v * b.u; }
inline Rat dot(const Vec2& a, const Vec2& b) { return a.u * b.u + a.v * b.v; }

enum class Space { Cylinder, Torus };

// A curve vertex. On the cylinder `a` is the angular coordinate in turns
// (1 = full circle) and `b` is the height z in [0, 1]; on the torus both
// are angular. `h` is the out-of-surface height used only to decide
// over/under at projection crossings.
struct CurveVertex {
  Rat a, b, h;
};

// Closed piecewise-linear curve(s) on the cylinder or torus.
struct Curve {
  Space space = Space::Cylinder;
  std::vector<std::vector<CurveVertex>> components;
};

// The discrete symmetry group: rotations by k/d turns on the cylinder,
// the lattice generated by (1/d1, 0) and (0, 1/d2) on the torus.
struct GroupSpec {
  Space space = Space::Cylinder;
  long d1 = 1;
  long d2 = 1;  // ignored on the cylinder
};

// One straight piece of the curve with its minimal angular lift.
// The footprint in the universal cover is start + t * delta, t in [0, 1].
struct Segment {
  int comp = 0;
  int index = 0;  // segment index within the component
  Vec2 start;     // u normalized to [0,1); v likewise on the torus
  Vec2 delta;     // |delta.u| < 1/2 (and |delta.v| < 1/2 on the torus)
  Rat h0, h1;     // heights at the endpoints

  Vec2 at(const Rat& t) const {
    return {start.u + t * delta.u, start.v + t * delta.v};
  }
  Rat height_at(const Rat& t) const { return h0 + t * (h1 - h0); }
};

// Validates the curve (closed components, minimal lifts strictly shorter
// than half a turn, no zero-length segments, no cusp reversals, cylinder
// heights z within [0, 1]) and produces the segment list.
// Throws GenericityError on violations.
std::vector<Segment> build_segments(const Curve& curve);

enum class IntersectKind {
  None,
  Proper,      // transverse, both parameters strictly inside (0, 1)
  Vertex,      // transverse but touching an endpoint of either segment
  Collinear,   // segments on one line with touching or overlapping spans
};

// Intersection of segment `a` with segment `b` shifted by `offset` (integer
// wraps plus any group translation folded in by the caller):
// a(t) == b(s) + offset.
struct IntersectResult {
  IntersectKind kind = IntersectKind::None;
  Rat t, s;     // for Proper and Vertex
  Rat t0, t1;   // for Collinear: contact interval along a, t0 <= t1
  Vec2 point;   // for Proper: a(t) in universal-cover coordinates
};

IntersectResult intersect_segments(const Segment& a, const Segment& b,
                                   const Vec2& offset);

// Splits every segment of the curve into `parts` equal pieces. The result
// traces the same point set, so every derived diagram is unchanged.
Curve subdivide(const Curve& curve, int parts);

// Rotates the whole curve by the group element (k1/d1 [, k2/d2]).
Curve rotate_curve(const Curve& curve, const GroupSpec& spec, long k1,
                   long k2 = 0);

}  // namespace fvk

#endif
