#include "fvk/phimap.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fvk/errors.hpp"

namespace fvk {

namespace {

std::string point_str(const Vec2& p) {
  return "(" + rat_to_string(p.u) + ", " + rat_to_string(p.v) + ")";
}

Vec2 normalize_position(const Curve& curve, const Vec2& p) {
  Vec2 out;
  out.u = mod1(p.u);
  out.v = curve.space == Space::Torus ? mod1(p.v) : p.v;
  return out;
}

struct SegmentTable {
  std::vector<Segment> segs;
  // component -> number of segments (== number of vertices)
  std::vector<int> comp_sizes;
  // global index of segment (comp, index)
  std::vector<int> comp_base;
};

SegmentTable make_table(const Curve& curve) {
  SegmentTable table;
  table.segs = build_segments(curve);
  table.comp_sizes.assign(curve.components.size(), 0);
  for (const auto& s : table.segs) table.comp_sizes[s.comp]++;
  table.comp_base.assign(curve.components.size(), 0);
  for (std::size_t c = 1; c < curve.components.size(); ++c) {
    table.comp_base[c] = table.comp_base[c - 1] + table.comp_sizes[c - 1];
  }
  return table;
}

// True when segment j immediately follows segment i along its component.
bool follows(const SegmentTable& t, int i, int j) {
  const Segment& a = t.segs[i];
  const Segment& b = t.segs[j];
  return a.comp == b.comp && (a.index + 1) % t.comp_sizes[a.comp] == b.index;
}

using PositionKey = std::pair<Rat, Rat>;

PositionKey key_of(const Vec2& p) { return {p.u, p.v}; }

// Offsets by which the wrapped copies of a segment can reach another; the
// spans of minimal lifts are under half a turn, so small integers suffice.
const int kOffsetLo = -2;
const int kOffsetHi = 2;

}  // namespace

std::vector<ProjCrossing> project_crossings(const Curve& curve) {
  SegmentTable table = make_table(curve);
  const auto& segs = table.segs;
  std::vector<ProjCrossing> crossings;
  std::map<PositionKey, int> seen_positions;

  int n = static_cast<int>(segs.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool j_follows_i = follows(table, i, j);
      bool i_follows_j = follows(table, j, i);
      for (int ou = kOffsetLo; ou <= kOffsetHi; ++ou) {
        int vlo = curve.space == Space::Torus ? kOffsetLo : 0;
        int vhi = curve.space == Space::Torus ? kOffsetHi : 0;
        for (int ov = vlo; ov <= vhi; ++ov) {
          Vec2 offset{Rat(ou), Rat(ov)};
          IntersectResult r = intersect_segments(segs[i], segs[j], offset);
          switch (r.kind) {
            case IntersectKind::None:
              break;
            case IntersectKind::Vertex: {
              // The shared corner of consecutive segments is expected;
              // any other vertex contact is non-generic.
              bool shared = (j_follows_i && r.t == 1 && r.s == 0) ||
                            (i_follows_j && r.t == 0 && r.s == 1);
              if (!shared) {
                throw GenericityError(
                    "non-generic projection: crossing at a vertex near " +
                    point_str(normalize_position(curve, segs[i].at(r.t))));
              }
              break;
            }
            case IntersectKind::Collinear: {
              // Straight continuation through a shared corner is fine; any
              // overlap of distinct strands is not.
              bool contact_only =
                  (j_follows_i && r.t0 == 1) || (i_follows_j && r.t1 == 0);
              if (!contact_only) {
                throw GenericityError(
                    "non-generic projection: collinear segments overlap near " +
                    point_str(normalize_position(curve,
                                                 segs[i].at(r.t0 < 0 ? Rat(0)
                                                                     : r.t0))));
              }
              break;
            }
            case IntersectKind::Proper: {
              ProjCrossing c;
              Rat h_i = segs[i].height_at(r.t);
              Rat h_j = segs[j].height_at(r.s);
              Vec2 pos = normalize_position(curve, r.point);
              if (h_i == h_j) {
                throw GenericityError(
                    "non-generic projection: equal heights at " +
                    point_str(pos));
              }
              CurvePoint pi{segs[i].comp, segs[i].index, r.t};
              CurvePoint pj{segs[j].comp, segs[j].index, r.s};
              bool i_over = h_i > h_j;
              c.over = i_over ? pi : pj;
              c.under = i_over ? pj : pi;
              const Vec2& d_over = i_over ? segs[i].delta : segs[j].delta;
              const Vec2& d_under = i_over ? segs[j].delta : segs[i].delta;
              c.sign = cross(d_over, d_under) > 0 ? +1 : -1;
              c.position = pos;
              auto [it, inserted] =
                  seen_positions.emplace(key_of(pos), 1);
              (void)it;
              if (!inserted) {
                throw GenericityError(
                    "non-generic projection: multiple crossings at " +
                    point_str(pos));
              }
              crossings.push_back(std::move(c));
              break;
            }
          }
        }
      }
    }
  }

  std::sort(crossings.begin(), crossings.end(),
            [](const ProjCrossing& a, const ProjCrossing& b) {
              return std::min(a.over, a.under) < std::min(b.over, b.under);
            });
  return crossings;
}

std::vector<EquivalentPair> find_equivalent_pairs(const Curve& curve,
                                                  const GroupSpec& spec) {
  if (spec.d1 < 1 || (spec.space == Space::Torus && spec.d2 < 1)) {
    throw GenericityError("group orders must be positive");
  }
  SegmentTable table = make_table(curve);
  const auto& segs = table.segs;
  int n = static_cast<int>(segs.size());

  // nonzero group elements
  std::vector<std::pair<long, long>> elements;
  if (spec.space == Space::Cylinder) {
    for (long k = 1; k < spec.d1; ++k) elements.emplace_back(k, 0);
  } else {
    for (long k1 = 0; k1 < spec.d1; ++k1) {
      for (long k2 = 0; k2 < spec.d2; ++k2) {
        if (k1 || k2) elements.emplace_back(k1, k2);
      }
    }
  }

  struct PairData {
    EquivalentPair pair;
    int count = 0;
  };
  std::map<std::pair<CurvePoint, CurvePoint>, PairData> found;

  for (const auto& [k1, k2] : elements) {
    Vec2 g{Rat(k1, spec.d1),
           spec.space == Space::Torus ? Rat(k2, spec.d2) : Rat(0)};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int ou = kOffsetLo; ou <= kOffsetHi; ++ou) {
          int vlo = spec.space == Space::Torus ? kOffsetLo : 0;
          int vhi = spec.space == Space::Torus ? kOffsetHi : 0;
          for (int ov = vlo; ov <= vhi; ++ov) {
            // solve segs[i](t) == segs[j](s) + g + offset: the point on
            // segment i is the g-translate of the point on segment j.
            Vec2 offset{g.u + ou, g.v + ov};
            IntersectResult r = intersect_segments(segs[i], segs[j], offset);
            switch (r.kind) {
              case IntersectKind::None:
                break;
              case IntersectKind::Vertex:
                throw GenericityError(
                    "non-generic with respect to subgroup: equivalent point "
                    "at a vertex near " +
                    point_str(normalize_position(curve, segs[i].at(r.t))));
              case IntersectKind::Collinear:
                throw GenericityError(
                    "non-generic with respect to subgroup: the curve "
                    "overlaps its translate by " +
                    std::to_string(k1) + "/" + std::to_string(spec.d1) +
                    (spec.space == Space::Torus
                         ? ", " + std::to_string(k2) + "/" +
                               std::to_string(spec.d2)
                         : std::string()));
              case IntersectKind::Proper: {
                CurvePoint high{segs[i].comp, segs[i].index, r.t};
                CurvePoint low{segs[j].comp, segs[j].index, r.s};
                // high = low + g. Store unordered; lexicographic minimum
                // becomes point_a, the shifted-neighbourhood choice.
                CurvePoint a = std::min(low, high);
                CurvePoint b = std::max(low, high);
                if (a == b) {
                  throw GenericityError(
                      "non-generic with respect to subgroup: a point is "
                      "equivalent to itself");
                }
                auto key = std::make_pair(a, b);
                auto it = found.find(key);
                if (it == found.end()) {
                  EquivalentPair pair;
                  pair.point_a = a;
                  pair.point_b = b;
                  bool a_is_low = a == low;
                  pair.k1 = a_is_low ? k1 : (spec.d1 - k1) % spec.d1;
                  pair.k2 = spec.space == Space::Torus
                                ? (a_is_low ? k2 : (spec.d2 - k2) % spec.d2)
                                : 0;
                  const Vec2& da = segs[table.comp_base[a.comp] + a.seg].delta;
                  const Vec2& db = segs[table.comp_base[b.comp] + b.seg].delta;
                  pair.flat_bit = cross(da, db) > 0 ? +1 : -1;
                  found.emplace(key, PairData{pair, 1});
                } else {
                  it->second.count++;
                }
                break;
              }
            }
          }
        }
      }
    }
  }

  std::vector<EquivalentPair> pairs;
  for (const auto& [key, data] : found) {
    (void)key;
    // every geometric pair is discovered exactly twice: once from g and
    // once from its inverse
    if (data.count != 2) {
      throw GenericityError(
          "non-generic with respect to subgroup: irregular pair multiplicity "
          "at " +
          point_str(normalize_position(
              curve,
              table.segs[table.comp_base[data.pair.point_a.comp] +
                         data.pair.point_a.seg]
                  .at(data.pair.point_a.t))));
    }
    pairs.push_back(data.pair);
  }
  return pairs;
}

PhiResult phi(const Curve& curve, const GroupSpec& spec) {
  SegmentTable table = make_table(curve);
  auto crossings = project_crossings(curve);
  auto pairs = find_equivalent_pairs(curve, spec);

  auto position_of = [&](const CurvePoint& p) {
    const Segment& s = table.segs[table.comp_base[p.comp] + p.seg];
    return normalize_position(curve, s.at(p.t));
  };

  // Classical crossing points and equivalent points must be pairwise
  // distinct surface points.
  std::map<PositionKey, int> special;
  for (const auto& c : crossings) special[key_of(c.position)]++;
  for (const auto& p : pairs) {
    special[key_of(position_of(p.point_a))]++;
    special[key_of(position_of(p.point_b))]++;
  }
  for (const auto& [key, count] : special) {
    if (count > 1) {
      throw GenericityError(
          "non-generic with respect to subgroup: coincident special points "
          "at (" +
          rat_to_string(key.first) + ", " + rat_to_string(key.second) + ")");
    }
  }

  // Events along each component: (segment, parameter) -> visit.
  struct Event {
    int seg = 0;
    Rat t;
    Visit visit;
  };
  std::vector<std::vector<Event>> events(curve.components.size());

  Diagram d;
  int next_id = 1;
  for (const auto& c : crossings) {
    int id = next_id++;
    d.crossings.emplace(id, CrossingKind::make_classical(c.sign));
    events[c.over.comp].push_back({c.over.seg, c.over.t, {id, Role::Over}});
    events[c.under.comp].push_back(
        {c.under.seg, c.under.t, {id, Role::Under}});
  }
  for (const auto& p : pairs) {
    int id = next_id++;
    d.crossings.emplace(id, CrossingKind::make_flat(p.flat_bit));
    events[p.point_a.comp].push_back(
        {p.point_a.seg, p.point_a.t, {id, Role::FlatPass}});
    events[p.point_b.comp].push_back(
        {p.point_b.seg, p.point_b.t, {id, Role::FlatPass}});
  }

  for (auto& comp_events : events) {
    std::sort(comp_events.begin(), comp_events.end(),
              [](const Event& a, const Event& b) {
                if (a.seg != b.seg) return a.seg < b.seg;
                return a.t < b.t;
              });
    Component comp;
    for (const auto& e : comp_events) comp.visits.push_back(e.visit);
    d.components.push_back(std::move(comp));
  }

  auto report = validate(d);
  if (!report.ok) {
    throw std::logic_error("phi produced an invalid diagram: " +
                           report.to_string());
  }

  PhiResult result;
  result.diagram = std::move(d);
  result.classical_crossings = static_cast<int>(crossings.size());
  result.flat_crossings = static_cast<int>(pairs.size());
  result.restricted_eligible =
      (spec.space == Space::Cylinder && spec.d1 == 2) ||
      (spec.space == Space::Torus && spec.d1 * spec.d2 == 2);
  return result;
}

}  // namespace fvk
