#ifndef FVK_STATESUM_HPP
#define FVK_STATESUM_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "fvk/diagram.hpp"
#include "fvk/poly2.hpp"

namespace fvk {

// A choice of smoothing (0 or 1) at every classical crossing.
struct State {
  std::map<int, int> bits;  // classical crossing id -> 0 or 1
};

// One loop of a smoothed diagram together with the flat crossings incident
// to it. Each flat crossing is listed at most once per loop, so a flat
// self-crossing of the loop contributes a single entry.
struct Loop {
  std::vector<int> flats;  // sorted, distinct flat crossing ids
};

struct LoopSet {
  std::vector<Loop> loops;
};

struct GammaCounts {
  int gamma_even = 0;  // loops with an even number of incident flat crossings
  int gamma_odd = 0;
  int alpha = 0;  // crossings smoothed 0
  int beta = 0;   // crossings smoothed 1
};

// Resolves every classical crossing of `d` per the state and traces the
// resulting loops. The 0-smoothing is the Kauffman A-smoothing: at a
// positive crossing it joins under-in to over-out (the orientation
// preserving reconnection), at a negative crossing it joins under-in to
// over-in. Flat crossings stay transverse pass-throughs.
// Requires domain(s) == C(d); throws std::invalid_argument otherwise
// ("state/crossing-set mismatch").
LoopSet smooth(const Diagram& d, const State& s);

// Loop parities. A loop with no flat crossings counts as even.
GammaCounts gamma(const LoopSet& ls);

// The flat-virtual Jones polynomial
//   X(D) = (-a)^{-3 w(D)} * sum_s a^{alpha - beta}
//          * (-a^2 - a^-2)^{gamma_even} * b^{gamma_odd}
// over all 2^|C(D)| states. Exact; independent of crossing labels, of
// component cyclic base points and of the worker count. The exponential
// cost is the caller's concern.
Poly2 flat_virtual_jones(const Diagram& d, unsigned workers = 1);

struct StateRow {
  State state;
  GammaCounts counts;
  Poly2 contribution;  // a^{alpha-beta} (-a^2-a^-2)^{gamma_even} b^{gamma_odd}
};

// All per-state summands in lexicographic state order over sorted classical
// ids (first id most significant). The sum of contributions times the
// (-a)^{-3w} prefactor equals flat_virtual_jones. Throws CapExceededError
// when |C(d)| exceeds `cap`.
std::vector<StateRow> state_table(const Diagram& d, int cap = 24);

// (-1)^w a^{-3w}, the writhe prefactor of the state sum.
Poly2 writhe_prefactor(int w);

}  // namespace fvk

#endif
