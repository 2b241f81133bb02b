// Command line surface for the flat-virtual link toolkit.
//
// Exit codes: 0 ok, 1 usage or fuzz violations, 2 parse error,
// 3 validation error, 4 crossing cap exceeded, 5 genericity violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <thread>

#include "fvk/curve_io.hpp"
#include "fvk/diagram_io.hpp"
#include "fvk/errors.hpp"
#include "fvk/moves.hpp"
#include "fvk/phimap.hpp"
#include "fvk/statesum.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCap = 4;
constexpr int kExitGenericity = 5;

struct Options {
  int cap = 24;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text";
};

fvk::Diagram load_validated(const std::string& path) {
  fvk::Diagram d = fvk::read_diagram_file(path);
  auto report = fvk::validate(d);
  if (!report.ok) {
    throw fvk::ValidationError(report.to_string());
  }
  return d;
}

void check_cap(const fvk::Diagram& d, int cap) {
  if (d.classical_count() > cap) {
    throw fvk::CapExceededError(
        "diagram has " + std::to_string(d.classical_count()) +
        " classical crossings, cap is " + std::to_string(cap) +
        " (raise with --cap)");
  }
}

std::string state_bits(const fvk::State& s) {
  std::string bits;
  for (const auto& [id, bit] : s.bits) {
    (void)id;
    bits += static_cast<char>('0' + bit);
  }
  return bits.empty() ? "-" : bits;
}

void print_poly(const fvk::Poly2& p, const Options& opt, std::ostream& out) {
  if (opt.format == "records") {
    for (const auto& [key, coeff] : p.terms()) {
      out << "term " << coeff << ' ' << key.first << ' ' << key.second
          << "\n";
    }
  } else {
    out << p.to_string() << "\n";
  }
}

int run_invariant(const std::string& path, const Options& opt, bool table) {
  fvk::Diagram d = load_validated(path);
  check_cap(d, opt.cap);
  if (table) {
    auto rows = fvk::state_table(d, opt.cap);
    std::cout << "# state columns: classical ids ascending\n";
    for (const auto& row : rows) {
      std::cout << state_bits(row.state) << " alpha=" << row.counts.alpha
                << " beta=" << row.counts.beta
                << " gamma_even=" << row.counts.gamma_even
                << " gamma_odd=" << row.counts.gamma_odd << " term="
                << row.contribution.to_string() << "\n";
    }
  }
  print_poly(fvk::flat_virtual_jones(d, opt.workers), opt, std::cout);
  return 0;
}

int run_phi(const std::string& path, const Options& opt,
            const std::string& out_path, bool invariant) {
  fvk::CurveFile cf = fvk::read_curve_file(path);
  fvk::PhiResult result = fvk::phi(cf.curve, cf.group);
  std::string text = fvk::serialize_diagram(result.diagram);
  std::string note =
      std::string("# restricted-eligible: ") +
      (result.restricted_eligible ? "true" : "false") + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    out << text << note;
  } else {
    std::cout << text << note;
  }
  if (invariant) {
    check_cap(result.diagram, opt.cap);
    print_poly(fvk::flat_virtual_jones(result.diagram, opt.workers), opt,
               std::cout);
  }
  return 0;
}

int run_fuzz(const fvk::FuzzOptions& fo, bool verbose) {
  fvk::FuzzReport report = fvk::fuzz_invariance(fo);
  std::cout << report.summary() << "\n";
  if (verbose) {
    for (const auto& log : report.logs) std::cout << log;
  }
  for (const auto& v : report.violations) {
    std::cout << "violation at trial " << v.trial << " step " << v.step
              << ": " << v.what << "\n";
    std::cout << v.repro << "\n";
    std::cout << "move: " << v.move << "\n";
    std::cout << "diagram before move:\n" << v.diagram;
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat-virtual link diagrams: invariants, curve maps, moves"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--cap", opt.cap, "state-sum crossing cap")
      ->capture_default_str();
  app.add_option("--workers", opt.workers, "parallel state-sum workers")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  std::string diagram_path, curve_path, out_path;
  bool table = false, chain_invariant = false;

  auto* inv = app.add_subcommand("invariant",
                                 "flat-virtual Jones polynomial of a diagram");
  inv->add_option("file", diagram_path, "diagram file")->required();
  inv->add_flag("--table", table, "print the per-state table");

  auto* phi = app.add_subcommand("phi", "flat-virtual diagram of a curve");
  phi->add_option("file", curve_path, "curve file")->required();
  phi->add_option("-o,--output", out_path, "write the diagram here");
  phi->add_flag("--invariant", chain_invariant,
                "also print the invariant of the result");

  fvk::FuzzOptions fo;
  fo.workers = opt.workers;
  bool restricted = false, strict = false, verbose = false;
  auto* fuzz = app.add_subcommand("fuzz", "move-invariance fuzzing");
  fuzz->add_option("--seed", fo.seed, "random seed")->capture_default_str();
  fuzz->add_option("--trials", fo.trials, "number of trials")
      ->capture_default_str();
  fuzz->add_option("--steps", fo.steps, "moves per trial")
      ->capture_default_str();
  fuzz->add_option("--crossings", fo.crossing_cap, "crossing cap per diagram")
      ->capture_default_str();
  fuzz->add_flag("--restricted", restricted,
                 "forbid the all-flat third Reidemeister move");
  fuzz->add_flag("--restricted-strict", strict,
                 "also forbid the mixed third Reidemeister move");
  fuzz->add_flag("-v,--verbose", verbose, "print per-trial move logs");

  auto* forget = app.add_subcommand("forget", "make all crossings flat");
  forget->add_option("file", diagram_path, "diagram file")->required();

  auto* components = app.add_subcommand("components", "component count");
  components->add_option("file", diagram_path, "diagram file")->required();

  auto* writhe_cmd = app.add_subcommand("writhe", "sum of classical signs");
  writhe_cmd->add_option("file", diagram_path, "diagram file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) return run_invariant(diagram_path, opt, table);
    if (phi->parsed()) {
      fvk::Diagram dummy;
      return run_phi(curve_path, opt, out_path, chain_invariant);
    }
    if (fuzz->parsed()) {
      fo.workers = opt.workers;
      fo.restricted = strict ? fvk::RestrictedMode::ForbidFlatAndMixedR3
                             : (restricted ? fvk::RestrictedMode::ForbidFlatR3
                                           : fvk::RestrictedMode::Off);
      return run_fuzz(fo, verbose);
    }
    if (forget->parsed()) {
      fvk::Diagram d = load_validated(diagram_path);
      std::cout << fvk::serialize_diagram(fvk::forget(d));
      return 0;
    }
    if (components->parsed()) {
      fvk::Diagram d = load_validated(diagram_path);
      std::cout << fvk::component_count(d) << "\n";
      return 0;
    }
    if (writhe_cmd->parsed()) {
      fvk::Diagram d = load_validated(diagram_path);
      std::cout << fvk::writhe(d) << "\n";
      return 0;
    }
  } catch (const fvk::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const fvk::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fvk::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const fvk::GenericityError& e) {
    std::cerr << "genericity violation: " << e.what() << "\n";
    return kExitGenericity;
  }
  return 1;
}
