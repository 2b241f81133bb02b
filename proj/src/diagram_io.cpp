#include "fvk/diagram_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fvk/errors.hpp"

namespace fvk {

namespace {

struct Line {
  int number = 0;
  std::string text;
};

// Splits into lines, dropping blanks and '#' comments.
std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string trimmed = raw;
    auto hash = trimmed.find('#');
    if (hash != std::string::npos) trimmed.erase(hash);
    auto begin = trimmed.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = trimmed.find_last_not_of(" \t\r");
    lines.push_back({number, trimmed.substr(begin, end - begin + 1)});
  }
  return lines;
}

Visit parse_visit_token(const std::string& tok, int line, int col) {
  std::size_t i = 0;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
    ++i;
  if (i == 0 || i + 1 != tok.size()) {
    throw ParseError(line, col, "bad visit token '" + tok + "'");
  }
  Role role;
  switch (tok[i]) {
    case '+':
      role = Role::Over;
      break;
    case '-':
      role = Role::Under;
      break;
    case 'f':
      role = Role::FlatPass;
      break;
    default:
      throw ParseError(line, col,
                       "bad role character '" + std::string(1, tok[i]) + "'");
  }
  return Visit{std::stoi(tok.substr(0, i)), role};
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  auto lines = significant_lines(text);
  std::size_t li = 0;
  auto need_line = [&](const char* what) -> const Line& {
    if (li >= lines.size()) {
      int ln = lines.empty() ? 1 : lines.back().number;
      throw ParseError(ln, 1, std::string("unexpected end of input, expected ") + what);
    }
    return lines[li];
  };

  const Line& header = need_line("'components: <n>'");
  std::istringstream hs(header.text);
  std::string kw;
  long ncomp = -1;
  hs >> kw >> ncomp;
  if (kw != "components:" || ncomp < 0 || !hs || (hs >> kw)) {
    throw ParseError(header.number, 1, "expected 'components: <n>'");
  }
  ++li;

  Diagram d;
  for (long c = 0; c < ncomp; ++c) {
    const Line& line = need_line("a component line");
    Component comp;
    std::istringstream ls(line.text);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.size() == 1 && toks[0] == "O") {
      // zero-crossing unknot marker
    } else {
      int col = 1;
      for (const auto& t : toks) {
        if (t == "O") {
          throw ParseError(line.number, col,
                           "'O' marker cannot be mixed with visit tokens");
        }
        comp.visits.push_back(parse_visit_token(t, line.number, col));
        col += static_cast<int>(t.size()) + 1;
      }
      if (comp.visits.empty()) {
        throw ParseError(line.number, 1, "empty component line");
      }
    }
    d.components.push_back(std::move(comp));
    ++li;
  }

  const Line& ch = need_line("'crossings:'");
  if (ch.text != "crossings:") {
    throw ParseError(ch.number, 1, "expected 'crossings:'");
  }
  ++li;

  for (; li < lines.size(); ++li) {
    const Line& line = lines[li];
    std::istringstream ls(line.text);
    long id = -1;
    std::string kind, sign;
    if (!(ls >> id >> kind >> sign) || id < 0 || (ls >> kw)) {
      throw ParseError(line.number, 1,
                       "expected '<id> C|F +1|-1', got '" + line.text + "'");
    }
    if (kind != "C" && kind != "F") {
      throw ParseError(line.number, 1, "crossing kind must be C or F");
    }
    if (sign != "+1" && sign != "-1") {
      throw ParseError(line.number, 1, "sign must be +1 or -1");
    }
    int s = sign == "+1" ? 1 : -1;
    auto [it, inserted] = d.crossings.emplace(
        static_cast<int>(id), kind == "C" ? CrossingKind::make_classical(s)
                                          : CrossingKind::make_flat(s));
    (void)it;
    if (!inserted) {
      throw ParseError(line.number, 1,
                       "duplicate crossing id " + std::to_string(id));
    }
  }

  return d;
}

std::string serialize_diagram(const Diagram& d) {
  std::ostringstream out;
  out << "components: " << d.components.size() << "\n";
  for (const auto& comp : d.components) {
    if (comp.is_unknot_marker()) {
      out << "O\n";
      continue;
    }
    bool first = true;
    for (const auto& v : comp.visits) {
      if (!first) out << ' ';
      out << v.crossing << role_char(v.role);
      first = false;
    }
    out << "\n";
  }
  out << "crossings:\n";
  for (const auto& [id, kind] : d.crossings) {
    out << id << ' ' << (kind.classical ? 'C' : 'F') << ' '
        << (kind.sign > 0 ? "+1" : "-1") << "\n";
  }
  return out.str();
}

Diagram read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(1, 1, "cannot open file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

}  // namespace fvk
