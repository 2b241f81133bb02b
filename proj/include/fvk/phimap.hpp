#ifndef FVK_PHIMAP_HPP
#define FVK_PHIMAP_HPP

#include <string>
#include <vector>

#include "fvk/diagram.hpp"
#include "fvk/geom.hpp"

namespace fvk {

// A point on the curve: component, segment index within the component and
// parameter strictly inside (0, 1).
struct CurvePoint {
  int comp = 0;
  int seg = 0;
  Rat t;

  friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    if (a.seg != b.seg) return a.seg < b.seg;
    return a.t < b.t;
  }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    return a.comp == b.comp && a.seg == b.seg && a.t == b.t;
  }
};

// A transverse double point of the surface projection.
struct ProjCrossing {
  CurvePoint over, under;
  int sign = +1;   // cross-product sign of (over tangent, under tangent)
  Vec2 position;   // normalized surface coordinates
};

// Two distinct curve points identified by the group action:
// point_b = point_a + g. point_a is the lexicographically smaller point;
// it names the neighbourhood that gets shifted when the flat crossing is
// formed. flat_bit is the cross-product sign of the tangents at a and b.
struct EquivalentPair {
  CurvePoint point_a, point_b;
  long k1 = 0, k2 = 0;  // the group element g
  int flat_bit = +1;
};

// Every transverse double point of the projection, with over/under resolved
// by the h coordinate. Throws GenericityError on non-generic projections
// (tangency, vertex coincidence, triple points, equal heights).
std::vector<ProjCrossing> project_crossings(const Curve& curve);

// All unordered equivalent point pairs under the group action, each
// reported once. Throws GenericityError when the curve is not generic with
// respect to the subgroup.
std::vector<EquivalentPair> find_equivalent_pairs(const Curve& curve,
                                                  const GroupSpec& spec);

struct PhiResult {
  Diagram diagram;
  int classical_crossings = 0;
  int flat_crossings = 0;
  // Cylinder d=2 outputs (and order-2 torus lattices) are flagged: for
  // those the equivalence is expected to hold even without the all-flat
  // third Reidemeister move.
  bool restricted_eligible = false;
};

// The main construction: classical crossings from the projection plus one
// flat crossing per equivalent pair, assembled into a Gauss code along each
// component. The connecting arcs of the construction carry only virtual
// crossings and are elided.
PhiResult phi(const Curve& curve, const GroupSpec& spec);

}  // namespace fvk

#endif
