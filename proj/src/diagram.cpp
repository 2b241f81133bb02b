#include "fvk/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace fvk {

char role_char(Role r) {
  switch (r) {
    case Role::Over:
      return '+';
    case Role::Under:
      return '-';
    case Role::FlatPass:
      return 'f';
  }
  return '?';
}

int Diagram::classical_count() const {
  int n = 0;
  for (const auto& [id, kind] : crossings) {
    (void)id;
    if (kind.classical) ++n;
  }
  return n;
}

int Diagram::flat_count() const {
  return static_cast<int>(crossings.size()) - classical_count();
}

std::size_t Diagram::total_visits() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.visits.size();
  return n;
}

std::vector<int> Diagram::classical_ids() const {
  std::vector<int> ids;
  for (const auto& [id, kind] : crossings) {
    if (kind.classical) ids.push_back(id);
  }
  return ids;  // map iteration is already sorted
}

int Diagram::fresh_id() const {
  return crossings.empty() ? 1 : crossings.rbegin()->first + 1;
}

std::string ValidationReport::to_string() const {
  if (ok) return "ok";
  std::ostringstream out;
  for (const auto& v : violations) {
    out << v.message << "\n";
  }
  return out.str();
}

ValidationReport validate(const Diagram& d) {
  ValidationReport report;
  auto fail = [&report](int id, std::string msg) {
    report.ok = false;
    report.violations.push_back({id, std::move(msg)});
  };

  for (const auto& [id, kind] : d.crossings) {
    if (kind.sign != 1 && kind.sign != -1) {
      fail(id, "crossing id " + std::to_string(id) +
                   (kind.classical ? " has sign outside {+1,-1}"
                                   : " has bit outside {+1,-1}"));
    }
  }

  // Tally visits per crossing id.
  std::map<int, std::vector<Role>> seen;
  for (const auto& comp : d.components) {
    for (const auto& v : comp.visits) {
      seen[v.crossing].push_back(v.role);
    }
  }

  for (const auto& [id, roles] : seen) {
    auto it = d.crossings.find(id);
    if (it == d.crossings.end()) {
      fail(id, "crossing id " + std::to_string(id) +
                   " is referenced but not declared");
      continue;
    }
    if (roles.size() != 2) {
      fail(id, "crossing id " + std::to_string(id) + " has " +
                   std::to_string(roles.size()) + " visit" +
                   (roles.size() == 1 ? "" : "s") + ", expected 2");
      continue;
    }
    if (it->second.classical) {
      bool over = (roles[0] == Role::Over && roles[1] == Role::Under) ||
                  (roles[0] == Role::Under && roles[1] == Role::Over);
      if (!over) {
        fail(id, "crossing id " + std::to_string(id) +
                     ": classical visit roles must be {Over, Under}");
      }
    } else {
      if (roles[0] != Role::FlatPass || roles[1] != Role::FlatPass) {
        fail(id, "crossing id " + std::to_string(id) +
                     ": flat visits must both have role FlatPass");
      }
    }
  }

  for (const auto& [id, kind] : d.crossings) {
    (void)kind;
    if (seen.find(id) == seen.end()) {
      fail(id,
           "crossing id " + std::to_string(id) + " has 0 visits, expected 2");
    }
  }

  return report;
}

int component_count(const Diagram& d) {
  return static_cast<int>(d.components.size());
}

int writhe(const Diagram& d) {
  int w = 0;
  for (const auto& [id, kind] : d.crossings) {
    (void)id;
    if (kind.classical) w += kind.sign;
  }
  return w;
}

Diagram forget(const Diagram& d) {
  Diagram out = d;
  for (auto& [id, kind] : out.crossings) {
    (void)id;
    if (kind.classical) kind = CrossingKind::make_flat(kind.sign);
  }
  for (auto& comp : out.components) {
    for (auto& v : comp.visits) v.role = Role::FlatPass;
  }
  return out;
}

bool equal_up_to_relabeling(const Diagram& a, const Diagram& b) {
  if (a.components.size() != b.components.size()) return false;
  if (a.crossings.size() != b.crossings.size()) return false;
  std::map<int, int> fwd, bwd;
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    const auto& va = a.components[c].visits;
    const auto& vb = b.components[c].visits;
    if (va.size() != vb.size()) return false;
    for (std::size_t i = 0; i < va.size(); ++i) {
      if (va[i].role != vb[i].role) return false;
      auto f = fwd.find(va[i].crossing);
      auto g = bwd.find(vb[i].crossing);
      if (f == fwd.end() && g == bwd.end()) {
        fwd[va[i].crossing] = vb[i].crossing;
        bwd[vb[i].crossing] = va[i].crossing;
      } else if (f == fwd.end() || g == bwd.end() ||
                 f->second != vb[i].crossing || g->second != va[i].crossing) {
        return false;
      }
    }
  }
  for (const auto& [ida, idb] : fwd) {
    auto ka = a.crossings.find(ida);
    auto kb = b.crossings.find(idb);
    if (ka == a.crossings.end() || kb == b.crossings.end()) return false;
    if (!(ka->second == kb->second)) return false;
  }
  return true;
}

Diagram relabel(const Diagram& d, const std::map<int, int>& renaming) {
  auto rename = [&renaming](int id) {
    auto it = renaming.find(id);
    return it == renaming.end() ? id : it->second;
  };
  Diagram out;
  out.components = d.components;
  for (auto& comp : out.components) {
    for (auto& v : comp.visits) v.crossing = rename(v.crossing);
  }
  for (const auto& [id, kind] : d.crossings) {
    out.crossings.emplace(rename(id), kind);
  }
  return out;
}

Diagram rotate_component(const Diagram& d, int comp, int offset) {
  Diagram out = d;
  auto& visits = out.components.at(comp).visits;
  if (visits.empty()) return out;
  int n = static_cast<int>(visits.size());
  int k = ((offset % n) + n) % n;
  std::rotate(visits.begin(), visits.begin() + k, visits.end());
  return out;
}

}  // namespace fvk
