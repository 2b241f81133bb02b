#include "fvk/moves.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fvk/diagram_io.hpp"
#include "fvk/statesum.hpp"

namespace fvk {

const std::vector<MoveKind> kAllMoveKinds = {
    MoveKind::ClassicalR1Insert, MoveKind::ClassicalR1Delete,
    MoveKind::ClassicalR2Insert, MoveKind::ClassicalR2Delete,
    MoveKind::ClassicalR3,       MoveKind::FlatR2Insert,
    MoveKind::FlatR2Delete,      MoveKind::FlatR3,
    MoveKind::MixedR3,
};

std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::ClassicalR1Insert: return "ClassicalR1Insert";
    case MoveKind::ClassicalR1Delete: return "ClassicalR1Delete";
    case MoveKind::ClassicalR2Insert: return "ClassicalR2Insert";
    case MoveKind::ClassicalR2Delete: return "ClassicalR2Delete";
    case MoveKind::ClassicalR3: return "ClassicalR3";
    case MoveKind::FlatR2Insert: return "FlatR2Insert";
    case MoveKind::FlatR2Delete: return "FlatR2Delete";
    case MoveKind::FlatR3: return "FlatR3";
    case MoveKind::MixedR3: return "MixedR3";
  }
  return "?";
}

std::string MoveSite::to_string() const {
  std::ostringstream out;
  out << move_kind_name(kind) << " a=(" << comp_a << ',' << idx_a << ")";
  switch (kind) {
    case MoveKind::ClassicalR1Insert:
    case MoveKind::ClassicalR1Delete:
      break;
    case MoveKind::ClassicalR2Insert:
    case MoveKind::ClassicalR2Delete:
    case MoveKind::FlatR2Insert:
    case MoveKind::FlatR2Delete:
      out << " b=(" << comp_b << ',' << idx_b << ")";
      break;
    case MoveKind::ClassicalR3:
    case MoveKind::FlatR3:
    case MoveKind::MixedR3:
      out << " b=(" << comp_b << ',' << idx_b << ") c=(" << comp_c << ','
          << idx_c << ")";
      break;
  }
  if (kind == MoveKind::ClassicalR1Insert ||
      kind == MoveKind::ClassicalR2Insert ||
      kind == MoveKind::FlatR2Insert) {
    out << " sign=" << (sign > 0 ? "+1" : "-1")
        << (swapped ? " swapped" : "");
  }
  return out.str();
}

bool classical_r3_admissible(int sigma_h, int sigma_m, int sigma_l, int s_hm,
                             int s_hl, int s_ml) {
  int u = sigma_h * sigma_m * s_hm;
  int v = sigma_h * sigma_l * s_hl;
  int w = sigma_m * sigma_l * s_ml;
  return !(u == w && v == -u);
}

namespace {

int comp_len(const Diagram& d, int comp) {
  return static_cast<int>(d.components[comp].visits.size());
}

// Number of arc positions on a component; a marker has one.
int gap_count(const Diagram& d, int comp) {
  int len = comp_len(d, comp);
  return len == 0 ? 1 : len;
}

bool valid_gap(const Diagram& d, int comp, int idx) {
  return comp >= 0 && comp < component_count(d) && idx >= 0 &&
         idx < gap_count(d, comp);
}

struct AdjacentPair {
  int comp = 0;
  int pos = 0;  // pair is (pos, pos+1 mod len)
  Visit first, second;
};

std::optional<AdjacentPair> pair_at(const Diagram& d, int comp, int pos) {
  if (comp < 0 || comp >= component_count(d)) return std::nullopt;
  int len = comp_len(d, comp);
  if (len < 2 || pos < 0 || pos >= len) return std::nullopt;
  const auto& visits = d.components[comp].visits;
  return AdjacentPair{comp, pos, visits[pos], visits[(pos + 1) % len]};
}

std::vector<AdjacentPair> all_adjacent_pairs(const Diagram& d) {
  std::vector<AdjacentPair> pairs;
  for (int c = 0; c < component_count(d); ++c) {
    int len = comp_len(d, c);
    for (int p = 0; p < len; ++p) {
      if (len < 2) break;
      pairs.push_back(*pair_at(d, c, p));
    }
  }
  return pairs;
}

void insert_visits(Diagram& d, int comp, int gap, const std::vector<Visit>& vs) {
  auto& visits = d.components[comp].visits;
  visits.insert(visits.begin() + gap, vs.begin(), vs.end());
}

// Removes visits at the given (comp, pos) coordinates.
void erase_visits(Diagram& d, std::vector<std::pair<int, int>> where) {
  std::sort(where.begin(), where.end(),
            [](const auto& a, const auto& b) { return a > b; });
  for (const auto& [comp, pos] : where) {
    auto& visits = d.components[comp].visits;
    visits.erase(visits.begin() + pos);
  }
}

bool is_classical(const Diagram& d, int id) {
  auto it = d.crossings.find(id);
  return it != d.crossings.end() && it->second.classical;
}

bool is_flat(const Diagram& d, int id) {
  auto it = d.crossings.find(id);
  return it != d.crossings.end() && !it->second.classical;
}

int sign_of(const Diagram& d, int id) { return d.crossings.at(id).sign; }

// ---- kink (R1) ----

bool r1_delete_matches(const Diagram& d, const MoveSite& s) {
  auto p = pair_at(d, s.comp_a, s.idx_a);
  if (!p) return false;
  if (p->first.crossing != p->second.crossing) return false;
  if (!is_classical(d, p->first.crossing)) return false;
  return (p->first.role == Role::Over && p->second.role == Role::Under) ||
         (p->first.role == Role::Under && p->second.role == Role::Over);
}

// ---- bigon (R2) family ----

// Matches the over strand pair (x Over, y Over) at site a and the under
// pair at site b: (y Under, x Under) for antiparallel strands or
// (x Under, y Under) when `swapped` (parallel strands). Signs must be
// opposite. The flat variant matches FlatPass roles and opposite bits.
bool r2_delete_matches(const Diagram& d, const MoveSite& s, bool flat) {
  auto pa = pair_at(d, s.comp_a, s.idx_a);
  auto pb = pair_at(d, s.comp_b, s.idx_b);
  if (!pa || !pb) return false;
  if (pa->comp == pb->comp && pa->pos == pb->pos) return false;
  int x = pa->first.crossing;
  int y = pa->second.crossing;
  if (x == y) return false;
  Role strand_a = flat ? Role::FlatPass : Role::Over;
  Role strand_b = flat ? Role::FlatPass : Role::Under;
  if (pa->first.role != strand_a || pa->second.role != strand_a) return false;
  if (pb->first.role != strand_b || pb->second.role != strand_b) return false;
  if (flat) {
    if (!is_flat(d, x) || !is_flat(d, y)) return false;
  } else {
    if (!is_classical(d, x) || !is_classical(d, y)) return false;
  }
  if (sign_of(d, x) != -sign_of(d, y)) return false;
  int b_first = s.swapped ? x : y;
  int b_second = s.swapped ? y : x;
  if (pb->first.crossing != b_first || pb->second.crossing != b_second)
    return false;
  // The four visits must be pairwise distinct slots. Roles already separate
  // the classical pairs; flat pairs need an explicit check.
  if (flat) {
    int len_a = static_cast<int>(d.components[pa->comp].visits.size());
    int len_b = static_cast<int>(d.components[pb->comp].visits.size());
    std::vector<std::pair<int, int>> slots = {
        {pa->comp, pa->pos},
        {pa->comp, (pa->pos + 1) % len_a},
        {pb->comp, pb->pos},
        {pb->comp, (pb->pos + 1) % len_b}};
    std::sort(slots.begin(), slots.end());
    if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
      return false;
  }
  return true;
}

// ---- triangle (R3) family ----

struct Triangle {
  AdjacentPair a, b, c;
};

std::optional<Triangle> triangle_at(const Diagram& d, const MoveSite& s) {
  auto pa = pair_at(d, s.comp_a, s.idx_a);
  auto pb = pair_at(d, s.comp_b, s.idx_b);
  auto pc = pair_at(d, s.comp_c, s.idx_c);
  if (!pa || !pb || !pc) return std::nullopt;

  // Six distinct slots.
  std::vector<std::pair<int, int>> slots;
  for (const auto* p : {&*pa, &*pb, &*pc}) {
    int len = comp_len(d, p->comp);
    slots.emplace_back(p->comp, p->pos);
    slots.emplace_back(p->comp, (p->pos + 1) % len);
  }
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
    return std::nullopt;

  // The passages must pairwise share one crossing, three crossings in all.
  auto ids_of = [](const AdjacentPair& p) {
    return std::pair<int, int>(p.first.crossing, p.second.crossing);
  };
  auto [a1, a2] = ids_of(*pa);
  auto [b1, b2] = ids_of(*pb);
  auto [c1, c2] = ids_of(*pc);
  std::vector<int> ids = {a1, a2, b1, b2, c1, c2};
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() != 3) return std::nullopt;
  if (a1 == a2 || b1 == b2 || c1 == c2) return std::nullopt;
  // each id on exactly two passages
  for (int id : ids) {
    int count = (a1 == id) + (a2 == id) + (b1 == id) + (b2 == id) +
                (c1 == id) + (c2 == id);
    if (count != 2) return std::nullopt;
  }
  return Triangle{*pa, *pb, *pc};
}

int shared_id(const AdjacentPair& p, const AdjacentPair& q) {
  if (p.first.crossing == q.first.crossing ||
      p.first.crossing == q.second.crossing)
    return p.first.crossing;
  return p.second.crossing;
}

// Over-count of a passage among its two triangle crossings.
int over_count(const AdjacentPair& p) {
  return (p.first.role == Role::Over) + (p.second.role == Role::Over);
}

bool classical_r3_matches(const Diagram& d, const MoveSite& s) {
  auto tri = triangle_at(d, s);
  if (!tri) return false;
  const AdjacentPair* ps[3] = {&tri->a, &tri->b, &tri->c};
  for (const auto* p : ps) {
    if (!is_classical(d, p->first.crossing) ||
        !is_classical(d, p->second.crossing))
      return false;
  }
  // hierarchy: over-counts must be {2,1,0}
  const AdjacentPair *h = nullptr, *m = nullptr, *l = nullptr;
  for (const auto* p : ps) {
    switch (over_count(*p)) {
      case 2: if (h) return false; h = p; break;
      case 1: if (m) return false; m = p; break;
      case 0: if (l) return false; l = p; break;
    }
  }
  if (!h || !m || !l) return false;
  int c_hm = shared_id(*h, *m);
  int c_hl = shared_id(*h, *l);
  int c_ml = shared_id(*m, *l);
  int sigma_h = h->first.crossing == c_hm ? 1 : -1;
  int sigma_m = m->first.crossing == c_hm ? 1 : -1;
  int sigma_l = l->first.crossing == c_hl ? 1 : -1;
  return classical_r3_admissible(sigma_h, sigma_m, sigma_l, sign_of(d, c_hm),
                                 sign_of(d, c_hl), sign_of(d, c_ml));
}

bool flat_r3_matches(const Diagram& d, const MoveSite& s) {
  auto tri = triangle_at(d, s);
  if (!tri) return false;
  for (const auto* p : {&tri->a, &tri->b, &tri->c}) {
    if (!is_flat(d, p->first.crossing) || !is_flat(d, p->second.crossing))
      return false;
  }
  return true;
}

bool mixed_r3_matches(const Diagram& d, const MoveSite& s) {
  auto tri = triangle_at(d, s);
  if (!tri) return false;
  // passage a carries the two flat crossings; b and c each carry the
  // classical crossing and one flat
  if (!is_flat(d, tri->a.first.crossing) ||
      !is_flat(d, tri->a.second.crossing))
    return false;
  int classical_id = -1;
  for (const auto* p : {&tri->b, &tri->c}) {
    int cl = 0;
    for (int id : {p->first.crossing, p->second.crossing}) {
      if (is_classical(d, id)) {
        ++cl;
        if (classical_id == -1) classical_id = id;
        if (classical_id != id) return false;
      } else if (!is_flat(d, id)) {
        return false;
      }
    }
    if (cl != 1) return false;
  }
  return classical_id != -1;
}

void swap_passage(Diagram& d, const AdjacentPair& p) {
  auto& visits = d.components[p.comp].visits;
  int len = static_cast<int>(visits.size());
  std::swap(visits[p.pos], visits[(p.pos + 1) % len]);
}

bool site_matches(const Diagram& d, const MoveSite& s) {
  switch (s.kind) {
    case MoveKind::ClassicalR1Insert:
      return valid_gap(d, s.comp_a, s.idx_a) && (s.sign == 1 || s.sign == -1);
    case MoveKind::ClassicalR1Delete:
      return r1_delete_matches(d, s);
    case MoveKind::ClassicalR2Insert:
    case MoveKind::FlatR2Insert:
      return valid_gap(d, s.comp_a, s.idx_a) &&
             valid_gap(d, s.comp_b, s.idx_b) &&
             !(s.comp_a == s.comp_b && s.idx_a == s.idx_b) &&
             (s.sign == 1 || s.sign == -1);
    case MoveKind::ClassicalR2Delete:
      return r2_delete_matches(d, s, /*flat=*/false);
    case MoveKind::FlatR2Delete:
      return r2_delete_matches(d, s, /*flat=*/true);
    case MoveKind::ClassicalR3:
      return classical_r3_matches(d, s);
    case MoveKind::FlatR3:
      return flat_r3_matches(d, s);
    case MoveKind::MixedR3:
      return mixed_r3_matches(d, s);
  }
  return false;
}

}  // namespace

std::vector<MoveSite> enumerate_sites(const Diagram& d, MoveKind kind) {
  std::vector<MoveSite> sites;
  auto push_if = [&d, &sites](MoveSite s) {
    if (site_matches(d, s)) sites.push_back(s);
  };

  switch (kind) {
    case MoveKind::ClassicalR1Insert: {
      for (int c = 0; c < component_count(d); ++c) {
        for (int g = 0; g < gap_count(d, c); ++g) {
          for (int sign : {+1, -1}) {
            for (bool swapped : {false, true}) {
              sites.push_back({kind, c, g, 0, 0, 0, 0, sign, swapped});
            }
          }
        }
      }
      break;
    }
    case MoveKind::ClassicalR1Delete: {
      for (const auto& p : all_adjacent_pairs(d)) {
        push_if({kind, p.comp, p.pos, 0, 0, 0, 0, +1, false});
      }
      break;
    }
    case MoveKind::ClassicalR2Insert:
    case MoveKind::FlatR2Insert: {
      for (int ca = 0; ca < component_count(d); ++ca) {
        for (int ga = 0; ga < gap_count(d, ca); ++ga) {
          for (int cb = 0; cb < component_count(d); ++cb) {
            for (int gb = 0; gb < gap_count(d, cb); ++gb) {
              if (ca == cb && ga == gb) continue;
              for (int sign : {+1, -1}) {
                for (bool swapped : {false, true}) {
                  sites.push_back({kind, ca, ga, cb, gb, 0, 0, sign, swapped});
                }
              }
            }
          }
        }
      }
      break;
    }
    case MoveKind::ClassicalR2Delete:
    case MoveKind::FlatR2Delete: {
      auto pairs = all_adjacent_pairs(d);
      for (const auto& pa : pairs) {
        for (const auto& pb : pairs) {
          for (bool swapped : {false, true}) {
            push_if({kind, pa.comp, pa.pos, pb.comp, pb.pos, 0, 0, +1,
                     swapped});
          }
        }
      }
      break;
    }
    case MoveKind::ClassicalR3:
    case MoveKind::FlatR3:
    case MoveKind::MixedR3: {
      auto pairs = all_adjacent_pairs(d);
      int n = static_cast<int>(pairs.size());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          for (int k = j + 1; k < n; ++k) {
            if (k == i) continue;
            // For ClassicalR3 and FlatR3 the three passages play symmetric
            // roles; keep i < j < k. MixedR3 distinguishes passage a.
            if (kind != MoveKind::MixedR3 && i > j) continue;
            push_if({kind, pairs[i].comp, pairs[i].pos, pairs[j].comp,
                     pairs[j].pos, pairs[k].comp, pairs[k].pos, +1, false});
          }
        }
      }
      break;
    }
  }
  return sites;
}

Diagram apply(const Diagram& d, const MoveSite& site) {
  if (!site_matches(d, site)) {
    throw std::invalid_argument("stale or invalid move site: " +
                                site.to_string());
  }
  Diagram out = d;
  switch (site.kind) {
    case MoveKind::ClassicalR1Insert: {
      int id = out.fresh_id();
      out.crossings.emplace(id, CrossingKind::make_classical(site.sign));
      std::vector<Visit> vs = {{id, Role::Over}, {id, Role::Under}};
      if (site.swapped) std::swap(vs[0], vs[1]);
      insert_visits(out, site.comp_a, site.idx_a, vs);
      break;
    }
    case MoveKind::ClassicalR1Delete: {
      auto p = *pair_at(out, site.comp_a, site.idx_a);
      int len = comp_len(out, p.comp);
      erase_visits(out, {{p.comp, p.pos}, {p.comp, (p.pos + 1) % len}});
      out.crossings.erase(p.first.crossing);
      break;
    }
    case MoveKind::ClassicalR2Insert:
    case MoveKind::FlatR2Insert: {
      bool flat = site.kind == MoveKind::FlatR2Insert;
      int x = out.fresh_id();
      int y = x + 1;
      out.crossings.emplace(x, flat ? CrossingKind::make_flat(site.sign)
                                    : CrossingKind::make_classical(site.sign));
      out.crossings.emplace(y, flat ? CrossingKind::make_flat(-site.sign)
                                    : CrossingKind::make_classical(-site.sign));
      Role ra = flat ? Role::FlatPass : Role::Over;
      Role rb = flat ? Role::FlatPass : Role::Under;
      std::vector<Visit> strand_a = {{x, ra}, {y, ra}};
      std::vector<Visit> strand_b =
          site.swapped ? std::vector<Visit>{{x, rb}, {y, rb}}
                       : std::vector<Visit>{{y, rb}, {x, rb}};
      // Insert at the later gap first so the earlier gap index stays valid.
      if (site.comp_a == site.comp_b && site.idx_a < site.idx_b) {
        insert_visits(out, site.comp_b, site.idx_b, strand_b);
        insert_visits(out, site.comp_a, site.idx_a, strand_a);
      } else {
        insert_visits(out, site.comp_a, site.idx_a, strand_a);
        insert_visits(out, site.comp_b, site.idx_b, strand_b);
      }
      break;
    }
    case MoveKind::ClassicalR2Delete:
    case MoveKind::FlatR2Delete: {
      auto pa = *pair_at(out, site.comp_a, site.idx_a);
      auto pb = *pair_at(out, site.comp_b, site.idx_b);
      int len_a = comp_len(out, pa.comp);
      int len_b = comp_len(out, pb.comp);
      erase_visits(out, {{pa.comp, pa.pos},
                         {pa.comp, (pa.pos + 1) % len_a},
                         {pb.comp, pb.pos},
                         {pb.comp, (pb.pos + 1) % len_b}});
      out.crossings.erase(pa.first.crossing);
      out.crossings.erase(pa.second.crossing);
      break;
    }
    case MoveKind::ClassicalR3:
    case MoveKind::FlatR3:
    case MoveKind::MixedR3: {
      auto tri = *triangle_at(out, site);
      swap_passage(out, tri.a);
      swap_passage(out, tri.b);
      swap_passage(out, tri.c);
      break;
    }
  }
  return out;
}

// ---- deterministic RNG (splitmix64) ----

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

int Rng::pick_sign() { return below(2) == 0 ? 1 : -1; }

Diagram random_diagram(Rng& rng, int n_classical, int n_flat,
                       int n_components) {
  Diagram d;
  std::vector<Visit> pool;
  for (int i = 0; i < n_classical; ++i) {
    int id = i + 1;
    d.crossings.emplace(id, CrossingKind::make_classical(rng.pick_sign()));
    pool.push_back({id, Role::Over});
    pool.push_back({id, Role::Under});
  }
  for (int i = 0; i < n_flat; ++i) {
    int id = n_classical + i + 1;
    d.crossings.emplace(id, CrossingKind::make_flat(rng.pick_sign()));
    pool.push_back({id, Role::FlatPass});
    pool.push_back({id, Role::FlatPass});
  }
  // Fisher-Yates
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(pool[i - 1], pool[j]);
  }
  if (n_components < 1) n_components = 1;
  d.components.resize(n_components);
  for (const auto& v : pool) {
    d.components[rng.below(n_components)].visits.push_back(v);
  }
  return d;
}

std::string FuzzReport::summary() const {
  std::ostringstream out;
  out << "trials: " << trials_run << ", moves applied: " << moves_applied
      << ", violations: " << violations.size();
  return out.str();
}

namespace {

std::string repro_line(const FuzzOptions& opt, std::uint64_t trial) {
  std::ostringstream out;
  out << "repro: seed=" << opt.seed << " trial=" << trial
      << " steps=" << opt.steps << " cap=" << opt.crossing_cap
      << " restricted="
      << (opt.restricted == RestrictedMode::Off
              ? "off"
              : (opt.restricted == RestrictedMode::ForbidFlatR3 ? "flat-r3"
                                                                : "strict"));
  return out.str();
}

struct TrialResult {
  std::vector<FuzzViolation> violations;
  std::string log;
  std::uint64_t moves = 0;
};

TrialResult run_trial(const FuzzOptions& opt, std::uint64_t trial) {
  TrialResult result;
  // distinct, reproducible stream per trial
  Rng rng(opt.seed * 0x9E3779B97F4A7C15ull + trial * 2ull + 1ull);

  std::vector<MoveKind> allowed = kAllMoveKinds;
  if (opt.restricted != RestrictedMode::Off) {
    std::erase(allowed, MoveKind::FlatR3);
    if (opt.restricted == RestrictedMode::ForbidFlatAndMixedR3) {
      std::erase(allowed, MoveKind::MixedR3);
    }
  }

  int cap = opt.crossing_cap;
  int nc = static_cast<int>(rng.below(cap + 1));
  int nf = static_cast<int>(rng.below(cap - nc + 1));
  int ncomp = 1 + static_cast<int>(rng.below(3));
  Diagram d = random_diagram(rng, nc, nf, ncomp);

  std::ostringstream log;
  log << "trial " << trial << ": start " << nc << "C+" << nf << "F, "
      << ncomp << " components\n";

  Poly2 x0 = flat_virtual_jones(d);
  int cc0 = component_count(d);
  if (opt.log_states) log << "  X = " << x0.to_string() << "\n";

  auto record = [&](int step, const std::string& what, const Diagram& before,
                    const std::string& move) {
    FuzzViolation v;
    v.trial = trial;
    v.step = step;
    v.what = what;
    v.repro = repro_line(opt, trial);
    v.diagram = serialize_diagram(before);
    v.move = move;
    result.violations.push_back(v);
  };

  for (int step = 0; step < opt.steps; ++step) {
    // Pick a kind with available sites; avoid growing past the cap unless
    // nothing else applies.
    int added = static_cast<int>(d.crossings.size());
    auto fits = [&](MoveKind k) {
      switch (k) {
        case MoveKind::ClassicalR1Insert:
          return added + 1 <= cap;
        case MoveKind::ClassicalR2Insert:
        case MoveKind::FlatR2Insert:
          return added + 2 <= cap;
        default:
          return true;
      }
    };
    std::vector<MoveKind> capped;
    for (MoveKind k : allowed) {
      if (fits(k)) capped.push_back(k);
    }

    std::optional<MoveSite> chosen;
    for (const auto& kinds : {capped, allowed}) {
      std::vector<MoveKind> candidates = kinds;
      while (!candidates.empty() && !chosen) {
        std::size_t ki = rng.below(candidates.size());
        MoveKind k = candidates[ki];
        auto sites = enumerate_sites(d, k);
        if (sites.empty()) {
          candidates.erase(candidates.begin() + ki);
          continue;
        }
        chosen = sites[rng.below(sites.size())];
      }
      if (chosen) break;
    }
    if (!chosen) {
      log << "  step " << step << ": no applicable move\n";
      break;
    }

    Diagram before = d;
    d = apply(d, *chosen);
    ++result.moves;
    log << "  step " << step << ": " << chosen->to_string() << "\n";

    auto report = validate(d);
    if (!report.ok) {
      record(step, "diagram invalid after move: " + report.to_string(),
             before, chosen->to_string());
      break;
    }
    if (component_count(d) != cc0) {
      record(step, "component count changed", before, chosen->to_string());
      break;
    }
    Poly2 x = flat_virtual_jones(d);
    if (opt.log_states) log << "  X = " << x.to_string() << "\n";
    if (x != x0) {
      record(step,
             "X changed: " + x0.to_string() + " -> " + x.to_string(),
             before, chosen->to_string());
      break;
    }
  }
  result.log = log.str();
  return result;
}

}  // namespace

FuzzReport fuzz_invariance(const FuzzOptions& options) {
  FuzzReport report;
  report.options = options;
  int trials = options.trials;
  unsigned workers = std::max(1u, options.workers);

  std::vector<TrialResult> results(trials);
  if (workers <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) results[t] = run_trial(options, t);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (int t = static_cast<int>(w); t < trials;
             t += static_cast<int>(workers)) {
          results[t] = run_trial(options, t);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  for (int t = 0; t < trials; ++t) {
    report.moves_applied += results[t].moves;
    report.logs.push_back(std::move(results[t].log));
    for (auto& v : results[t].violations) {
      report.violations.push_back(std::move(v));
    }
  }
  report.trials_run = trials;
  return report;
}

}  // namespace fvk
