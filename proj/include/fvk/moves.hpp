#ifndef FVK_MOVES_HPP
#define FVK_MOVES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fvk/diagram.hpp"

namespace fvk {

// The move system on flat-virtual diagrams. Detour moves have no
// representative here: with virtual crossings elided they are the identity.
// There is no flat first Reidemeister move.
enum class MoveKind {
  ClassicalR1Insert,
  ClassicalR1Delete,
  ClassicalR2Insert,
  ClassicalR2Delete,
  ClassicalR3,
  FlatR2Insert,
  FlatR2Delete,
  FlatR3,
  MixedR3,  // a strand with two consecutive flat crossings slides across a
            // classical crossing; the classical over/under data is kept
};

extern const std::vector<MoveKind> kAllMoveKinds;

std::string move_kind_name(MoveKind k);

// A location where a move applies. Field use depends on the kind:
//  * inserts: (comp_a, idx_a) and for the R2 family (comp_b, idx_b) are gap
//    positions (an insertion before visit idx); `sign` is the writhe sign of
//    the first new crossing (or the bit of the first new flat crossing);
//    `swapped` selects the visit order variant (kink order for R1, parallel
//    instead of antiparallel strands for the R2 family).
//  * deletes: (comp_a, idx_a) is the first position of the adjacent visit
//    pair on the first strand, (comp_b, idx_b) on the second.
//  * R3 family: three adjacent visit pairs starting at (comp_a, idx_a),
//    (comp_b, idx_b), (comp_c, idx_c). For MixedR3 the `a` passage is the
//    strand carrying the two flat crossings.
struct MoveSite {
  MoveKind kind{};
  int comp_a = 0, idx_a = 0;
  int comp_b = 0, idx_b = 0;
  int comp_c = 0, idx_c = 0;
  int sign = +1;
  bool swapped = false;

  std::string to_string() const;
};

// All sites where `kind` currently applies. Insert kinds admit sites at
// every arc position (and pair of arc positions), so the list can be large.
std::vector<MoveSite> enumerate_sites(const Diagram& d, MoveKind kind);

// Applies the move, returning the rewritten diagram. The site must be an
// element of enumerate_sites(d, site.kind); a stale or forged site throws
// std::invalid_argument.
Diagram apply(const Diagram& d, const MoveSite& site);

// Admissibility of a classical R3 triangle in Gauss-code terms. The three
// passages are labelled by their over/under hierarchy: H is over at both of
// its crossings, M at one, L at none. sigma_* is +1 when the passage meets
// the indicated crossing first (H: the H/M crossing, M: the H/M crossing,
// L: the H/L crossing), s_* are the crossing signs. A triangle is the locus
// of a planar third Reidemeister move unless the three products
//   u = sigma_H sigma_M s_HM, v = sigma_H sigma_L s_HL,
//   w = sigma_M sigma_L s_ML
// satisfy u == w and v == -u, the two combinations no arrangement of three
// oriented strands realizes. See docs/FORMATS.md for the case table.
bool classical_r3_admissible(int sigma_h, int sigma_m, int sigma_l, int s_hm,
                             int s_hl, int s_ml);

// Deterministic RNG for diagram generation and fuzzing. Thin wrapper over a
// fixed 64-bit generator with an explicit bounded-draw rule so that results
// are reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // uniform-ish draw in [0, n); n > 0
  std::uint64_t below(std::uint64_t n);
  int pick_sign();  // +1 or -1

 private:
  std::uint64_t state_;
};

// A random valid diagram with the given crossing counts: the visit multiset
// is shuffled and distributed over the components. Any Gauss code is
// realizable in the flat-virtual setting, so no planarity repair is needed.
Diagram random_diagram(Rng& rng, int n_classical, int n_flat,
                       int n_components = 1);

enum class RestrictedMode {
  Off,
  ForbidFlatR3,          // the restricted equivalence used by default
  ForbidFlatAndMixedR3,  // one-switch alternative reading
};

struct FuzzOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  int steps = 50;
  int crossing_cap = 10;  // max classical + flat during a trial
  RestrictedMode restricted = RestrictedMode::Off;
  unsigned workers = 1;   // parallel trials
  bool log_states = false;  // record the canonical X string after every step
};

struct FuzzViolation {
  std::uint64_t trial = 0;
  int step = 0;
  std::string what;
  std::string repro;       // machine-readable reproduction line
  std::string diagram;     // serialized diagram before the offending move
  std::string move;        // offending move site
};

struct FuzzReport {
  FuzzOptions options;
  int trials_run = 0;
  std::uint64_t moves_applied = 0;
  std::vector<FuzzViolation> violations;
  // per-trial move logs; filled when options.log_states is set
  std::vector<std::string> logs;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Generates random diagrams and applies random applicable moves, checking
// after every step that the diagram stays valid and that the component count
// and the flat-virtual Jones polynomial are unchanged. Failures are report
// contents, not exceptions.
FuzzReport fuzz_invariance(const FuzzOptions& options);

}  // namespace fvk

#endif
