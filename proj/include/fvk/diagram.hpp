#ifndef FVK_DIAGRAM_HPP
#define FVK_DIAGRAM_HPP

#include <map>
#include <string>
#include <vector>

namespace fvk {

// Role of a single passage of a strand through a crossing.
enum class Role { Over, Under, FlatPass };

char role_char(Role r);

// A crossing is either classical, carrying an over/under split plus a writhe
// sign, or flat, carrying only a rotation bit. Virtual crossings are never
// recorded: at Gauss-code level the detour move makes them invisible.
struct CrossingKind {
  bool classical = true;
  int sign = +1;  // writhe sign for classical, rotation bit for flat; +1 or -1

  static CrossingKind make_classical(int sign) { return {true, sign}; }
  static CrossingKind make_flat(int bit) { return {false, bit}; }
  bool operator==(const CrossingKind&) const = default;
};

struct Visit {
  int crossing = 0;
  Role role = Role::Over;
  bool operator==(const Visit&) const = default;
};

// One closed strand. An empty visit list is the distinguished marker for a
// zero-crossing unknot component.
struct Component {
  std::vector<Visit> visits;
  bool is_unknot_marker() const { return visits.empty(); }
  bool operator==(const Component&) const = default;
};

// Multi-component cyclic Gauss code over classical and flat crossings.
// Orientation is the traversal direction of each visit sequence.
struct Diagram {
  std::map<int, CrossingKind> crossings;
  std::vector<Component> components;

  bool operator==(const Diagram&) const = default;

  int classical_count() const;
  int flat_count() const;
  std::size_t total_visits() const;
  // Classical crossing ids in increasing order (the set C(D)).
  std::vector<int> classical_ids() const;
  int fresh_id() const;
};

struct Violation {
  int crossing_id = -1;  // -1 when not tied to a specific crossing
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::string to_string() const;
};

// Checks every structural invariant: each classical id appears exactly twice
// with roles {Over, Under}, each flat id exactly twice with role FlatPass,
// every referenced id is declared and vice versa, signs/bits are +-1.
ValidationReport validate(const Diagram& d);

int component_count(const Diagram& d);

// Sum of classical crossing signs; flat crossings contribute nothing.
int writhe(const Diagram& d);

// Replaces every classical crossing Classical(s) by Flat(s) and turns all
// roles into FlatPass. Idempotent.
Diagram forget(const Diagram& d);

// Structural equality modulo a bijective renaming of crossing ids.
// Component order and cyclic base points must match.
bool equal_up_to_relabeling(const Diagram& a, const Diagram& b);

// Applies an id renaming. Ids absent from the map keep their name.
Diagram relabel(const Diagram& d, const std::map<int, int>& renaming);

// Rotates the cyclic visit sequence of one component by `offset` positions.
Diagram rotate_component(const Diagram& d, int comp, int offset);

}  // namespace fvk

#endif
