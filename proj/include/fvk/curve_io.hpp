#ifndef FVK_CURVE_IO_HPP
#define FVK_CURVE_IO_HPP

#include <string>

#include "fvk/geom.hpp"

namespace fvk {

struct CurveFile {
  Curve curve;
  GroupSpec group;
};

// Parses the curve text format:
//
//   space: cylinder            (or: space: torus)
//   group: 2                   (torus: group: d1 d2)
//   component:
//   <theta> <z> <h>            (torus: <theta1> <theta2> <h>)
//   ...
//
// Angular values are in turns (1 = full circle) and may be written as
// rationals p/q, integers, or exact decimals. Blank lines and '#' comments
// are allowed. Throws ParseError on malformed input.
CurveFile parse_curve(const std::string& text);

std::string serialize_curve(const CurveFile& cf);

CurveFile read_curve_file(const std::string& path);

}  // namespace fvk

#endif
