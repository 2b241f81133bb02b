#include "fvk/statesum.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "fvk/errors.hpp"

namespace fvk {

namespace {

// Flattened visit layout with the port wiring shared by every state.
// Each visit owns two ports: IN = 2v, OUT = 2v+1. The strand arcs pair
// OUT(v) with IN(next visit on the component); a smoothing pairs ports
// inside each crossing.
struct PortGraph {
  int n_visits = 0;
  int n_markers = 0;
  std::vector<int> outside;          // port -> port, the strand arcs
  std::vector<int> inside;           // port -> port, crossing-internal arcs
  std::vector<int> flat_index;       // visit -> flat index or -1
  std::vector<int> flat_ids;         // flat index -> crossing id
  std::vector<int> classical_ids;    // sorted
  // per classical crossing: the under visit, the over visit, the sign
  struct ClassicalSlot {
    int under_visit;
    int over_visit;
    int sign;
  };
  std::vector<ClassicalSlot> classical;  // aligned with classical_ids
};

PortGraph build_port_graph(const Diagram& d) {
  ValidationReport report = validate(d);
  if (!report.ok) {
    throw ValidationError("invalid diagram: " + report.to_string());
  }
  PortGraph g;
  std::map<int, std::vector<int>> visits_of;  // crossing id -> visit indices

  for (const auto& comp : d.components) {
    if (comp.is_unknot_marker()) {
      ++g.n_markers;
      continue;
    }
    int first = g.n_visits;
    int n = static_cast<int>(comp.visits.size());
    for (int i = 0; i < n; ++i) {
      int v = first + i;
      visits_of[comp.visits[i].crossing].push_back(v);
      g.flat_index.push_back(-1);  // filled below
      ++g.n_visits;
    }
    g.outside.resize(2 * g.n_visits, -1);
    for (int i = 0; i < n; ++i) {
      int v = first + i;
      int w = first + (i + 1) % n;
      g.outside[2 * v + 1] = 2 * w;  // OUT(v) -> IN(w)
      g.outside[2 * w] = 2 * v + 1;
    }
  }
  g.inside.assign(2 * g.n_visits, -1);

  // Index crossings; wire flat pass-throughs once (they are state
  // independent), record classical slots for per-state wiring.
  std::vector<std::pair<int, Role>> role_of(g.n_visits);
  {
    int v = 0;
    for (const auto& comp : d.components) {
      for (const auto& visit : comp.visits) {
        role_of[v++] = {visit.crossing, visit.role};
      }
    }
  }
  for (const auto& [id, kind] : d.crossings) {
    const auto& vs = visits_of.at(id);
    if (kind.classical) {
      int under = role_of[vs[0]].second == Role::Under ? vs[0] : vs[1];
      int over = vs[0] == under ? vs[1] : vs[0];
      g.classical_ids.push_back(id);
      g.classical.push_back({under, over, kind.sign});
    } else {
      int fi = static_cast<int>(g.flat_ids.size());
      g.flat_ids.push_back(id);
      for (int v : vs) {
        g.flat_index[v] = fi;
        g.inside[2 * v] = 2 * v + 1;  // IN(v) <-> OUT(v)
        g.inside[2 * v + 1] = 2 * v;
      }
    }
  }
  return g;
}

inline void pair_ports(std::vector<int>& inside, int p, int q) {
  inside[p] = q;
  inside[q] = p;
}

// Wires the internal arcs of classical crossing `slot` for smoothing `bit`.
// The orientation preserving reconnection (under-in to over-out) is the
// 0-smoothing at positive crossings and the 1-smoothing at negative ones.
inline void wire_classical(std::vector<int>& inside,
                           const PortGraph::ClassicalSlot& slot, int bit) {
  int u_in = 2 * slot.under_visit, u_out = 2 * slot.under_visit + 1;
  int o_in = 2 * slot.over_visit, o_out = 2 * slot.over_visit + 1;
  bool oriented = (slot.sign > 0) == (bit == 0);
  if (oriented) {
    pair_ports(inside, u_in, o_out);
    pair_ports(inside, u_out, o_in);
  } else {
    pair_ports(inside, u_in, o_in);
    pair_ports(inside, u_out, o_out);
  }
}

// Traces all loops of the wired graph. For each loop the visitor receives
// the set of incident flat indices as a bitmask word array.
struct LoopTracer {
  const PortGraph& g;
  std::vector<int> inside;
  std::vector<char> seen;
  std::vector<std::uint64_t> mask;  // flat incidence words, reused per loop
  int mask_words;

  explicit LoopTracer(const PortGraph& graph)
      : g(graph),
        inside(graph.inside),
        seen(2 * graph.n_visits, 0),
        mask_words((static_cast<int>(graph.flat_ids.size()) + 63) / 64) {
    mask.assign(std::max(mask_words, 1), 0);
  }

  void wire(std::uint64_t state_mask) {
    for (std::size_t j = 0; j < g.classical.size(); ++j) {
      wire_classical(inside, g.classical[j],
                     static_cast<int>((state_mask >> j) & 1u));
    }
  }

  // Returns gamma counts for the currently wired state.
  GammaCounts trace_parities() {
    GammaCounts counts;
    std::fill(seen.begin(), seen.end(), 0);
    for (int start = 0; start < 2 * g.n_visits; ++start) {
      if (seen[start]) continue;
      std::fill(mask.begin(), mask.end(), 0);
      int p = start;
      do {
        seen[p] = 1;
        int q = inside[p];
        seen[q] = 1;
        int fi = g.flat_index[q >> 1];
        if (fi >= 0) mask[fi >> 6] |= std::uint64_t{1} << (fi & 63);
        p = g.outside[q];
      } while (p != start);
      int bits = 0;
      for (int wdx = 0; wdx < mask_words; ++wdx) {
        bits += __builtin_popcountll(mask[wdx]);
      }
      if (bits % 2 == 0) {
        ++counts.gamma_even;
      } else {
        ++counts.gamma_odd;
      }
    }
    counts.gamma_even += g.n_markers;
    return counts;
  }

  // Full loop sets, for the public smooth() surface.
  LoopSet trace_loops() {
    LoopSet ls;
    std::fill(seen.begin(), seen.end(), 0);
    for (int start = 0; start < 2 * g.n_visits; ++start) {
      if (seen[start]) continue;
      Loop loop;
      int p = start;
      do {
        seen[p] = 1;
        int q = inside[p];
        seen[q] = 1;
        int fi = g.flat_index[q >> 1];
        if (fi >= 0) loop.flats.push_back(g.flat_ids[fi]);
        p = g.outside[q];
      } while (p != start);
      std::sort(loop.flats.begin(), loop.flats.end());
      loop.flats.erase(std::unique(loop.flats.begin(), loop.flats.end()),
                       loop.flats.end());
      ls.loops.push_back(std::move(loop));
    }
    for (int i = 0; i < g.n_markers; ++i) ls.loops.push_back(Loop{});
    return ls;
  }
};

std::uint64_t state_to_mask(const PortGraph& g, const State& s) {
  if (s.bits.size() != g.classical_ids.size()) {
    throw std::invalid_argument("state/crossing-set mismatch");
  }
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < g.classical_ids.size(); ++j) {
    auto it = s.bits.find(g.classical_ids[j]);
    if (it == s.bits.end() || (it->second != 0 && it->second != 1)) {
      throw std::invalid_argument("state/crossing-set mismatch");
    }
    if (it->second) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

// Accumulates the bracket part of the state sum over a contiguous range of
// state masks.
Poly2 sum_range(const PortGraph& g, std::uint64_t begin, std::uint64_t end) {
  LoopTracer tracer(g);
  int n = static_cast<int>(g.classical.size());
  Poly2 total;
  for (std::uint64_t m = begin; m < end; ++m) {
    tracer.wire(m);
    GammaCounts counts = tracer.trace_parities();
    int beta = __builtin_popcountll(m);
    Poly2 term = Poly2::circle_power(counts.gamma_even);
    term.scale(1, n - 2 * beta, counts.gamma_odd);
    total += term;
  }
  return total;
}

}  // namespace

LoopSet smooth(const Diagram& d, const State& s) {
  PortGraph g = build_port_graph(d);
  LoopTracer tracer(g);
  tracer.wire(state_to_mask(g, s));
  return tracer.trace_loops();
}

GammaCounts gamma(const LoopSet& ls) {
  GammaCounts counts;
  for (const auto& loop : ls.loops) {
    if (loop.flats.size() % 2 == 0) {
      ++counts.gamma_even;
    } else {
      ++counts.gamma_odd;
    }
  }
  return counts;
}

Poly2 writhe_prefactor(int w) {
  return Poly2::monomial((w % 2 == 0) ? 1 : -1, -3 * w, 0);
}

Poly2 flat_virtual_jones(const Diagram& d, unsigned workers) {
  PortGraph g = build_port_graph(d);
  int n = static_cast<int>(g.classical.size());
  if (n >= 63) {
    throw CapExceededError("state space too large: 2^" + std::to_string(n) +
                           " states");
  }
  std::uint64_t total_states = std::uint64_t{1} << n;
  if (workers < 1) workers = 1;
  std::uint64_t nworkers = std::min<std::uint64_t>(workers, total_states);

  Poly2 bracket;
  if (nworkers <= 1) {
    bracket = sum_range(g, 0, total_states);
  } else {
    std::vector<Poly2> partial(nworkers);
    std::vector<std::thread> threads;
    std::uint64_t chunk = total_states / nworkers;
    for (std::uint64_t w = 0; w < nworkers; ++w) {
      std::uint64_t begin = w * chunk;
      std::uint64_t end = (w + 1 == nworkers) ? total_states : begin + chunk;
      threads.emplace_back(
          [&g, &partial, w, begin, end] { partial[w] = sum_range(g, begin, end); });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partial) bracket += p;
  }

  Poly2 result = bracket * writhe_prefactor(writhe(d));
  return result;
}

std::vector<StateRow> state_table(const Diagram& d, int cap) {
  PortGraph g = build_port_graph(d);
  int n = static_cast<int>(g.classical.size());
  if (n > cap) {
    throw CapExceededError("diagram has " + std::to_string(n) +
                           " classical crossings, cap is " +
                           std::to_string(cap));
  }
  LoopTracer tracer(g);
  std::vector<StateRow> rows;
  std::uint64_t total_states = std::uint64_t{1} << n;
  for (std::uint64_t lex = 0; lex < total_states; ++lex) {
    // Lexicographic order over (s(id_1), s(id_2), ...): the smallest id is
    // the most significant digit.
    std::uint64_t m = 0;
    for (int j = 0; j < n; ++j) {
      if ((lex >> (n - 1 - j)) & 1u) m |= std::uint64_t{1} << j;
    }
    tracer.wire(m);
    StateRow row;
    row.counts = tracer.trace_parities();
    row.counts.beta = __builtin_popcountll(m);
    row.counts.alpha = n - row.counts.beta;
    for (int j = 0; j < n; ++j) {
      row.state.bits[g.classical_ids[j]] = static_cast<int>((m >> j) & 1u);
    }
    row.contribution = Poly2::circle_power(row.counts.gamma_even);
    row.contribution.scale(1, row.counts.alpha - row.counts.beta,
                           row.counts.gamma_odd);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fvk
