#include "fvk/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "fvk/errors.hpp"

namespace fvk {

CurveFile parse_curve(const std::string& text) {
  CurveFile cf;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_space = false, have_group = false;

  auto strip = [](std::string s) {
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;

    if (line.rfind("space:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::string kind, extra;
      if (!(ls >> kind) || (ls >> extra)) {
        throw ParseError(line_no, 1, "expected 'space: cylinder|torus'");
      }
      if (kind == "cylinder") {
        cf.curve.space = Space::Cylinder;
      } else if (kind == "torus") {
        cf.curve.space = Space::Torus;
      } else {
        throw ParseError(line_no, 1, "unknown space '" + kind + "'");
      }
      cf.group.space = cf.curve.space;
      have_space = true;
      continue;
    }
    if (line.rfind("group:", 0) == 0) {
      if (!have_space) {
        throw ParseError(line_no, 1, "'space:' must come before 'group:'");
      }
      std::istringstream ls(line.substr(6));
      std::string extra;
      if (cf.curve.space == Space::Cylinder) {
        if (!(ls >> cf.group.d1) || (ls >> extra) || cf.group.d1 < 1) {
          throw ParseError(line_no, 1, "expected 'group: <d>' with d >= 1");
        }
      } else {
        if (!(ls >> cf.group.d1 >> cf.group.d2) || (ls >> extra) ||
            cf.group.d1 < 1 || cf.group.d2 < 1) {
          throw ParseError(line_no, 1,
                           "expected 'group: <d1> <d2>' with d1, d2 >= 1");
        }
      }
      have_group = true;
      continue;
    }
    if (line == "component:") {
      if (!have_space || !have_group) {
        throw ParseError(line_no, 1,
                         "'space:' and 'group:' must come before components");
      }
      cf.curve.components.emplace_back();
      continue;
    }

    // vertex line
    if (cf.curve.components.empty()) {
      throw ParseError(line_no, 1, "vertex line before any 'component:'");
    }
    std::istringstream ls(line);
    std::string ta, tb, th, extra;
    if (!(ls >> ta >> tb >> th) || (ls >> extra)) {
      throw ParseError(line_no, 1,
                       "expected three coordinates, got '" + line + "'");
    }
    auto a = parse_rational(ta);
    auto b = parse_rational(tb);
    auto h = parse_rational(th);
    if (!a) throw ParseError(line_no, 1, "bad rational '" + ta + "'");
    if (!b) throw ParseError(line_no, 1, "bad rational '" + tb + "'");
    if (!h) throw ParseError(line_no, 1, "bad rational '" + th + "'");
    cf.curve.components.back().push_back({*a, *b, *h});
  }

  if (!have_space) throw ParseError(line_no, 1, "missing 'space:' header");
  if (!have_group) throw ParseError(line_no, 1, "missing 'group:' header");
  if (cf.curve.components.empty()) {
    throw ParseError(line_no, 1, "curve has no components");
  }
  for (std::size_t c = 0; c < cf.curve.components.size(); ++c) {
    if (cf.curve.components[c].size() < 2) {
      throw ParseError(line_no, 1,
                       "component " + std::to_string(c) +
                           " needs at least 2 vertices");
    }
  }
  return cf;
}

std::string serialize_curve(const CurveFile& cf) {
  std::ostringstream out;
  out << "space: "
      << (cf.curve.space == Space::Cylinder ? "cylinder" : "torus") << "\n";
  out << "group: " << cf.group.d1;
  if (cf.curve.space == Space::Torus) out << ' ' << cf.group.d2;
  out << "\n";
  for (const auto& comp : cf.curve.components) {
    out << "component:\n";
    for (const auto& v : comp) {
      out << rat_to_string(v.a) << ' ' << rat_to_string(v.b) << ' '
          << rat_to_string(v.h) << "\n";
    }
  }
  return out.str();
}

CurveFile read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(1, 1, "cannot open file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_curve(buf.str());
}

}  // namespace fvk
