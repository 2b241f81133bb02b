#include "fvk/geom.hpp"

#include <cctype>

#include "fvk/errors.hpp"

namespace fvk {

using boost::multiprecision::cpp_int;

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&text, &i]() -> std::optional<cpp_int> {
    std::size_t begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == begin) return std::nullopt;
    return cpp_int(text.substr(begin, i - begin));
  };
  auto whole = digits();
  if (!whole) return std::nullopt;
  Rat value(*whole);
  if (i < text.size() && text[i] == '/') {
    ++i;
    auto den = digits();
    if (!den || *den == 0 || i != text.size()) return std::nullopt;
    value = Rat(*whole, *den);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t begin = i;
    auto frac = digits();
    if (!frac || i != text.size()) return std::nullopt;
    cpp_int scale = 1;
    for (std::size_t k = begin; k < i; ++k) scale *= 10;
    value += Rat(*frac, scale);
  } else if (i != text.size()) {
    return std::nullopt;
  }
  if (negative) value = -value;
  return value;
}

std::string rat_to_string(const Rat& r) { return r.str(); }

cpp_int rat_floor(const Rat& r) {
  cpp_int num = numerator(r);
  cpp_int den = denominator(r);  // positive by canonical form
  cpp_int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

namespace {

// Minimal-magnitude angular lift in (-1/2, 1/2); half-turn spans are
// ambiguous and rejected.
Rat minimal_lift(const Rat& from, const Rat& to, const char* what) {
  Rat d = mod1(to - from);
  if (d > Rat(1, 2)) d -= 1;
  if (d == Rat(1, 2) || d == Rat(-1, 2)) {
    throw GenericityError(std::string(what) +
                          " spans exactly half a turn; subdivide the segment");
  }
  return d;
}

}  // namespace

std::vector<Segment> build_segments(const Curve& curve) {
  std::vector<Segment> segs;
  for (std::size_t c = 0; c < curve.components.size(); ++c) {
    const auto& verts = curve.components[c];
    if (verts.size() < 2) {
      throw GenericityError("component " + std::to_string(c) +
                            " has fewer than 2 vertices");
    }
    int n = static_cast<int>(verts.size());
    std::vector<Segment> local;
    for (int i = 0; i < n; ++i) {
      const CurveVertex& v0 = verts[i];
      const CurveVertex& v1 = verts[(i + 1) % n];
      Segment s;
      s.comp = static_cast<int>(c);
      s.index = i;
      s.start.u = mod1(v0.a);
      s.delta.u = minimal_lift(v0.a, v1.a, "segment");
      if (curve.space == Space::Cylinder) {
        if (v0.b < 0 || v0.b > 1) {
          throw GenericityError("vertex z coordinate " + rat_to_string(v0.b) +
                                " outside [0, 1]");
        }
        s.start.v = v0.b;
        s.delta.v = v1.b - v0.b;
      } else {
        s.start.v = mod1(v0.b);
        s.delta.v = minimal_lift(v0.b, v1.b, "segment");
      }
      if (s.delta.u == 0 && s.delta.v == 0) {
        throw GenericityError("zero-length segment at component " +
                              std::to_string(c) + ", vertex " +
                              std::to_string(i));
      }
      s.h0 = v0.h;
      s.h1 = v1.h;
      local.push_back(std::move(s));
    }
    // Reject cusps: consecutive segments that double back along the same
    // line make the projection non-immersed.
    for (int i = 0; i < n; ++i) {
      const Segment& a = local[i];
      const Segment& b = local[(i + 1) % n];
      if (cross(a.delta, b.delta) == 0 && dot(a.delta, b.delta) < 0) {
        throw GenericityError("cusp at component " + std::to_string(c) +
                              ", vertex " + std::to_string((i + 1) % n));
      }
    }
    for (auto& s : local) segs.push_back(std::move(s));
  }
  return segs;
}

IntersectResult intersect_segments(const Segment& a, const Segment& b,
                                   const Vec2& offset) {
  IntersectResult r;
  Vec2 q = b.start + offset;  // shifted start of b
  Rat denom = cross(a.delta, b.delta);
  if (denom == 0) {
    // Parallel. Shared line iff (q - a.start) is parallel to a.delta.
    if (cross(q - a.start, a.delta) != 0) return r;
    // Collinear: compare parameter intervals along a.
    Rat len2 = dot(a.delta, a.delta);
    Rat t0 = dot(q - a.start, a.delta) / len2;
    Rat t1 = dot(q + b.delta - a.start, a.delta) / len2;
    if (t0 > t1) std::swap(t0, t1);
    if (t1 < 0 || t0 > 1) return r;
    r.kind = IntersectKind::Collinear;
    r.t0 = t0;
    r.t1 = t1;
    return r;
  }
  Rat t = cross(q - a.start, b.delta) / denom;
  Rat s = cross(q - a.start, a.delta) / denom;
  if (t < 0 || t > 1 || s < 0 || s > 1) return r;
  r.t = t;
  r.s = s;
  if (t == 0 || t == 1 || s == 0 || s == 1) {
    r.kind = IntersectKind::Vertex;
    return r;
  }
  r.kind = IntersectKind::Proper;
  r.point = a.at(t);
  return r;
}

Curve subdivide(const Curve& curve, int parts) {
  if (parts < 1) parts = 1;
  Curve out;
  out.space = curve.space;
  for (const auto& verts : curve.components) {
    std::vector<CurveVertex> fine;
    int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i) {
      const CurveVertex& v0 = verts[i];
      const CurveVertex& v1 = verts[(i + 1) % n];
      Rat du = minimal_lift(v0.a, v1.a, "segment");
      Rat dv = curve.space == Space::Torus
                   ? minimal_lift(v0.b, v1.b, "segment")
                   : v1.b - v0.b;
      for (int k = 0; k < parts; ++k) {
        Rat t(k, parts);
        fine.push_back({mod1(v0.a + t * du),
                        curve.space == Space::Torus ? mod1(v0.b + t * dv)
                                                    : v0.b + t * dv,
                        v0.h + t * (v1.h - v0.h)});
      }
    }
    out.components.push_back(std::move(fine));
  }
  return out;
}

Curve rotate_curve(const Curve& curve, const GroupSpec& spec, long k1,
                   long k2) {
  Curve out = curve;
  Rat g1(k1, spec.d1);
  Rat g2 = spec.space == Space::Torus ? Rat(k2, spec.d2) : Rat(0);
  for (auto& verts : out.components) {
    for (auto& v : verts) {
      v.a = mod1(v.a + g1);
      if (curve.space == Space::Torus) v.b = mod1(v.b + g2);
    }
  }
  return out;
}

}  // namespace fvk
