#ifndef FVK_DIAGRAM_IO_HPP
#define FVK_DIAGRAM_IO_HPP

#include <string>

#include "fvk/diagram.hpp"

namespace fvk {

// Parses the diagram text format:
//
//   components: <n>
//   <visit tokens for component 1, or the single token O for a marker>
//   ...
//   crossings:
//   <id> C <+1|-1>
//   <id> F <+1|-1>
//
// Visit tokens are <id><role> with role '+' (Over), '-' (Under) or
// 'f' (FlatPass). Blank lines and '#' comments are allowed.
// Throws ParseError on malformed input. The result is not validated;
// call validate() for structural checks.
Diagram parse_diagram(const std::string& text);

std::string serialize_diagram(const Diagram& d);

Diagram read_diagram_file(const std::string& path);

}  // namespace fvk

#endif
