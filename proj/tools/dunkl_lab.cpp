// dunkl_lab: verification suites, transforms of CSV samples, atom fixtures and
// report merging. Exit status: 0 success, 1 failed checks, 2 usage or parse
// error, 3 numerical error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dunkl/errors.hpp"
#include "dunkl/hardy.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/suites.hpp"
#include "dunkl/transform.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace dunkl;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

// Dense per-axis plans are N x N complex matrices; these keep a run within a few GB.
constexpr int max_nodes_per_axis = 4096;
constexpr std::size_t max_grid_nodes = std::size_t{1} << 20;

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

// Either a file or stdout for "-".
template <class F>
void emit(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  body(out);
}

std::vector<double> broadcast_k(std::vector<double> k, int d) {
  if (k.size() == 1 && d > 1) k.assign(d, k[0]);
  if (static_cast<int>(k.size()) != d)
    throw UsageError("k needs 1 or " + std::to_string(d) + " entries, got " + std::to_string(k.size()));
  return k;
}

void check_grid_caps(int d, int panels, int nodes_per_panel) {
  if (panels < 1 || nodes_per_panel < 2) throw UsageError("grid needs panels >= 1 and nodes_per_panel >= 2");
  const long per_axis = static_cast<long>(panels) * nodes_per_panel;
  if (per_axis > max_nodes_per_axis)
    throw UsageError("grid has " + std::to_string(per_axis) + " nodes per axis; the cap is " +
                     std::to_string(max_nodes_per_axis));
  double total = 1.0;
  for (int a = 0; a < d; ++a) total *= static_cast<double>(per_axis);
  if (total > static_cast<double>(max_grid_nodes))
    throw UsageError("grid has " + shortest(total) + " nodes; the cap is " + std::to_string(max_grid_nodes));
}

void check_grid_caps(const QuadratureGrid& g) {
  if (g.size() > max_grid_nodes)
    throw UsageError("grid has " + std::to_string(g.size()) + " nodes; the cap is " + std::to_string(max_grid_nodes));
  for (const auto& axis : g.axes())
    if (axis.size() > static_cast<std::size_t>(max_nodes_per_axis))
      throw UsageError("grid has " + std::to_string(axis.size()) + " nodes on one axis; the cap is " +
                       std::to_string(max_nodes_per_axis));
}

ordered_json params_json(const DunklParams& p) { return {{"d", p.d}, {"k", p.k}}; }

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string config_path;
  std::optional<int> d;
  std::vector<double> k;
  std::vector<std::string> suites;
  std::vector<std::uint64_t> seeds;
  std::optional<int> atom_count;
  std::vector<std::string> tolerance_overrides;
  std::optional<double> half_width;
  std::optional<int> panels;
  std::optional<int> nodes_per_panel;
  std::string output_dir;
  std::string format;
  std::optional<int> workers;
  bool no_timestamp = false;
};

std::string report_to_csv(const VerificationReport& r) {
  std::ostringstream s;
  s << "suite,d,k,check,seed,computed,bound,tolerance,relation,pass,note\n";
  std::string ks;
  for (std::size_t i = 0; i < r.k.size(); ++i) ks += (i ? ";" : "") + shortest(r.k[i]);
  for (const auto& c : r.checks) {
    std::string note = c.note;
    for (char& ch : note)
      if (ch == ',' || ch == '\n') ch = ';';
    const char* rel = c.relation == Relation::le ? "le" : c.relation == Relation::ge ? "ge" : "info";
    s << r.suite << ',' << r.d << ',' << ks << ',' << c.name << ',' << (c.seed ? std::to_string(*c.seed) : "")
      << ',' << shortest(c.computed) << ',' << shortest(c.bound) << ',' << shortest(c.tolerance) << ',' << rel
      << ',' << (c.pass ? "true" : "false") << ',' << note << '\n';
  }
  return s.str();
}

int cmd_verify(const VerifyArgs& args) {
  SuiteConfig base;
  std::vector<std::vector<double>> k_sets;
  std::vector<std::string> suites{"all"};
  std::string out_dir = "reports";
  std::string format = "json";
  int workers = static_cast<int>(worker_count());

  if (!args.config_path.empty()) {
    ordered_json cfg;
    try {
      cfg = ordered_json::parse(read_file(args.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(args.config_path + ": " + e.what(), 0);
    }
    try {
      if (cfg.contains("params")) {
        const auto& p = cfg["params"];
        base.d = p.value("d", base.d);
        if (p.contains("k")) {
          const auto& k = p["k"];
          if (k.is_number()) {
            k_sets.push_back({k.get<double>()});
          } else if (!k.empty() && k[0].is_array()) {
            for (const auto& set : k) k_sets.push_back(set.get<std::vector<double>>());
          } else {
            k_sets.push_back(k.get<std::vector<double>>());
          }
        }
      }
      if (cfg.contains("grid")) {
        const auto& g = cfg["grid"];
        base.half_width = g.value("half_width", base.half_width);
        base.panels = g.value("panels", base.panels);
        base.nodes_per_panel = g.value("nodes_per_panel", base.nodes_per_panel);
      }
      if (cfg.contains("suites")) suites = cfg["suites"].get<std::vector<std::string>>();
      if (cfg.contains("seeds")) base.seeds = cfg["seeds"].get<std::vector<std::uint64_t>>();
      base.atom_count = cfg.value("atom_count", base.atom_count);
      if (cfg.contains("tolerances")) base.tolerances = cfg["tolerances"].get<std::map<std::string, double>>();
      if (cfg.contains("output")) {
        out_dir = cfg["output"].value("dir", out_dir);
        format = cfg["output"].value("format", format);
      }
      workers = cfg.value("workers", workers);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(args.config_path + ": " + e.what(), 0);
    }
  }

  if (args.d) base.d = *args.d;
  if (!args.k.empty()) k_sets = {args.k};
  if (!args.suites.empty()) suites = args.suites;
  if (!args.seeds.empty()) base.seeds = args.seeds;
  if (args.atom_count) base.atom_count = *args.atom_count;
  if (args.half_width) base.half_width = *args.half_width;
  if (args.panels) base.panels = *args.panels;
  if (args.nodes_per_panel) base.nodes_per_panel = *args.nodes_per_panel;
  if (!args.output_dir.empty()) out_dir = args.output_dir;
  if (!args.format.empty()) format = args.format;
  if (args.workers) workers = *args.workers;
  for (const auto& t : args.tolerance_overrides) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tolerance expects NAME=VALUE, got " + t);
    try {
      base.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--tolerance: bad value in " + t);
    }
  }

  if (base.d < 1) throw UsageError("d must be at least 1");
  if (k_sets.empty()) k_sets = {{0.0}, {0.5}, {1.0}};
  for (auto& k : k_sets) {
    k = broadcast_k(k, base.d);
    for (double v : k)
      if (!(v >= 0.0)) throw UsageError("multiplicities must be nonnegative");
  }
  if (base.seeds.empty()) throw UsageError("at least one seed is required");
  if (base.atom_count < 0) throw UsageError("atom_count must be nonnegative");
  if (!(base.half_width > 0.0)) throw UsageError("grid half_width must be positive");
  check_grid_caps(base.d, base.panels, base.nodes_per_panel);
  for (const auto& [name, tol] : base.tolerances)
    if (!(tol > 0.0)) throw UsageError("tolerance for " + name + " must be positive");
  if (format != "json" && format != "csv") throw UsageError("output format must be json or csv");
  if (workers < 1) workers = 1;
  for (const auto& s : suites) {
    if (s == "all") continue;
    if (!is_suite(s)) throw UsageError("unknown suite '" + s + "'");
    if (!suite_supports(s, base.d))
      throw UsageError("suite '" + s + "' does not run in dimension " + std::to_string(base.d));
  }

  int failed_reports = 0, total_reports = 0;
  std::vector<std::string> failures;
  for (const auto& k : k_sets) {
    SuiteConfig cfg = base;
    cfg.k = k;
    const auto reports = run_suites(suites, cfg, workers);
    for (const auto& r : reports) {
      ++total_reports;
      std::string tag = "d" + std::to_string(r.d) + "_k";
      for (std::size_t i = 0; i < r.k.size(); ++i) tag += (i ? "_" : "") + shortest(r.k[i]);
      const fs::path file = fs::path(out_dir) / (r.suite + "_" + tag + "." + format);
      write_file(file, format == "json" ? report_to_json(r, args.no_timestamp ? std::string{} : utc_timestamp())
                                        : report_to_csv(r));
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " " << tag << " (" << r.checks.size()
                << " checks) -> " << file.string() << "\n";
      if (!r.passed()) {
        ++failed_reports;
        for (const auto& c : r.checks) {
          if (c.pass) continue;
          std::ostringstream line;
          line << r.suite << " " << tag << " " << c.name << ": computed " << shortest(c.computed) << ", bound "
               << shortest(c.bound) << ", tolerance " << shortest(c.tolerance);
          if (c.seed) line << ", seed " << *c.seed;
          failures.push_back(line.str());
        }
      }
    }
  }
  std::cout << total_reports - failed_reports << "/" << total_reports << " reports passed\n";
  if (!failures.empty()) {
    std::cout << "failing checks:\n";
    for (const auto& f : failures) std::cout << "  " << f << "\n";
    return exit_check_failed;
  }
  return exit_ok;
}

// ---------------------------------------------------------------- transform / sample

std::optional<std::string> comment_value(const std::vector<std::string>& comments, const std::string& key) {
  const std::string prefix = key + ":";
  for (const auto& c : comments)
    if (c.rfind(prefix, 0) == 0) {
      const auto b = c.find_first_not_of(" \t", prefix.size());
      return b == std::string::npos ? std::string{} : c.substr(b);
    }
  return std::nullopt;
}

GridPtr grid_from_spec(const std::string& json) {
  const GridSpec spec = grid_spec_from_json(json);
  if (spec.panels < 1 || spec.nodes_per_panel < 2) throw UsageError("grid descriptor has an empty layout");
  const auto params = make_params(spec.d, spec.k);
  auto g = QuadratureGrid::build(params, spec);
  check_grid_caps(*g);
  return g;
}

struct TransformArgs {
  std::string input;
  std::string output;
  std::string direction = "forward";
  std::string grid_path;
  std::vector<double> k;
  std::string plan_cache;
};

TransformPlan make_plan(const DunklParams& params, GridPtr source, GridPtr target, const std::string& cache_dir) {
  if (cache_dir.empty()) return TransformPlan(params, source, target);
  // Named by the grid fingerprints; load() still checks the stored key.
  const fs::path file = fs::path(cache_dir) / ("plan_" + hex64(source->fingerprint() ^ (target->fingerprint() * 31)) + ".bin");
  if (fs::exists(file)) {
    try {
      return TransformPlan::load(file.string(), params, source, target);
    } catch (const ParseError& e) {
      std::cerr << "warning: ignoring plan cache " << file.string() << ": " << e.what() << "\n";
    }
  }
  TransformPlan plan(params, source, target);
  fs::create_directories(cache_dir);
  plan.save(file.string());
  return plan;
}

int cmd_transform(const TransformArgs& args) {
  if (args.direction != "forward" && args.direction != "inverse")
    throw UsageError("direction must be forward or inverse");
  CsvTable table;
  {
    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw UsageError("cannot open " + args.input);
    table = read_csv(in);
  }
  const bool forward = args.direction == "forward";
  const std::string flag_grid = args.grid_path.empty() ? std::string{} : read_file(args.grid_path);

  // The source grid of the transform pair: the --grid file, the file's metadata, or
  // the default box for the CSV's dimension.
  GridPtr source, target;
  if (!flag_grid.empty()) {
    source = grid_from_spec(flag_grid);
  } else if (auto s = comment_value(table.comments, forward ? "grid" : "source_grid")) {
    source = grid_from_spec(*s);
  } else if (forward) {
    std::vector<double> k = args.k.empty() ? std::vector<double>{0.0} : args.k;
    const auto params = make_params(table.d, broadcast_k(k, table.d));
    source = QuadratureGrid::symmetric_box(params, 12.0, {32, 64, 0.0});
    check_grid_caps(*source);
  } else {
    throw UsageError("inverse transform needs the source grid (--grid or a '# source_grid:' line)");
  }
  const auto& spec = source->spec();
  const DunklParams params = make_params(spec.d, spec.k);
  if (!args.k.empty() && broadcast_k(args.k, spec.d) != spec.k)
    throw UsageError("--k disagrees with the multiplicities recorded in the grid");
  if (table.d != spec.d)
    throw ParseError("CSV has dimension " + std::to_string(table.d) + ", grid has " + std::to_string(spec.d), 1);

  if (!forward) {
    if (auto t = comment_value(table.comments, "grid")) target = grid_from_spec(*t);
  }
  if (!target) target = default_target_grid(params, *source);
  check_grid_caps(*target);

  const TransformPlan plan = make_plan(params, source, target, args.plan_cache);
  const SampledFunction in = bind_to_grid(table, forward ? source : target);
  const SampledFunction out = forward ? plan.forward(in) : plan.inverse(in);
  const GridPtr& out_grid = forward ? target : source;

  std::vector<std::string> comments{
      "params: " + params_json(params).dump(),
      "direction: " + args.direction,
      "grid: " + grid_spec_to_json(out_grid->spec()),
      "source_grid: " + grid_spec_to_json(source->spec()),
      "grid_hash: " + hex64(out_grid->fingerprint()),
  };
  emit(args.output, [&](std::ostream& os) { write_csv(os, out, comments); });
  return exit_ok;
}

struct SampleArgs {
  int d = 1;
  std::vector<double> k{0.0};
  std::string function = "gaussian";
  double half_width = 12.0;
  int panels = 32;
  int nodes_per_panel = 64;
  std::string output;
};

int cmd_sample(const SampleArgs& args) {
  if (args.d < 1) throw UsageError("d must be at least 1");
  check_grid_caps(args.d, args.panels, args.nodes_per_panel);
  const auto params = make_params(args.d, broadcast_k(args.k, args.d));
  const auto grid = QuadratureGrid::symmetric_box(params, args.half_width, {args.panels, args.nodes_per_panel, 0.0});
  PointFunction f;
  if (args.function == "gaussian") {
    // Fixed by the transform for every k.
    f = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return Complex(std::exp(-0.5 * r2));
    };
  } else if (args.function == "odd") {
    f = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return Complex(x[0] * std::exp(-0.5 * r2));
    };
  } else if (args.function == "shifted") {
    f = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += (v - 0.7) * (v - 0.7);
      return Complex((1.0 + x[0]) * std::exp(-r2));
    };
  } else {
    throw UsageError("unknown function '" + args.function + "' (gaussian, odd, shifted)");
  }
  const auto s = SampledFunction::sample(grid, f);
  std::vector<std::string> comments{
      "params: " + params_json(params).dump(),
      "function: " + args.function,
      "grid: " + grid_spec_to_json(grid->spec()),
      "grid_hash: " + hex64(grid->fingerprint()),
  };
  emit(args.output, [&](std::ostream& os) { write_csv(os, s, comments); });
  return exit_ok;
}

// ---------------------------------------------------------------- atoms

struct AtomsArgs {
  std::string mode = "random";
  int d = 1;
  std::vector<double> k{0.0};
  int count = 10;
  int J = 20;
  std::uint64_t seed = 1;
  double radius = 1.0;
  std::string output_dir = "atoms";
};

int cmd_atoms(const AtomsArgs& args) {
  if (args.d < 1 || args.d > 2) throw UsageError("atom fixtures are available for d = 1, 2");
  if (args.count < 0 || args.J < 0) throw UsageError("count and J must be nonnegative");
  const auto params = make_params(args.d, broadcast_k(args.k, args.d));
  const fs::path dir(args.output_dir);
  fs::create_directories(dir);

  ordered_json manifest;
  manifest["mode"] = args.mode;
  manifest["params"] = params_json(params);
  ordered_json entries = ordered_json::array();
  double coefficient_sum = 0.0;
  int written = 0, skipped = 0, invalid = 0;

  auto write_atom = [&](const Atom& atom, Complex coefficient, int index, const std::string& label) {
    std::ostringstream name;
    name << "atom_" << std::setw(4) << std::setfill('0') << index;
    ordered_json side;
    side["index"] = index;
    side["center"] = atom.center;
    side["radius"] = atom.radius;
    side["params"] = params_json(params);
    side["seed"] = atom.seed;
    side["coefficient"] = {coefficient.real(), coefficient.imag()};
    side["l2_norm"] = atom.l2_norm;
    side["validated"] = atom.validated;
    side["source"] = label;
    std::vector<std::string> comments{
        "params: " + params_json(params).dump(),
        "grid: " + grid_spec_to_json(atom.values.grid()->spec()),
        "grid_hash: " + hex64(atom.values.grid()->fingerprint()),
    };
    std::ostringstream csv;
    write_csv(csv, atom.values, comments);
    write_file(dir / (name.str() + ".csv"), csv.str());
    write_file(dir / (name.str() + ".json"), side.dump(2) + "\n");
    side["file"] = name.str() + ".csv";
    entries.push_back(side);
    coefficient_sum += std::abs(coefficient);
    ++written;
    if (!atom.validated) ++invalid;
  };

  if (args.mode == "random") {
    RandomAtomOptions options;
    options.radius = args.radius;
    for (int i = 0; i < args.count; ++i) {
      const std::uint64_t seed = args.seed * 1000003ULL + static_cast<std::uint64_t>(i);
      Atom atom = random_atom(params, seed, options);
      if (atom.degenerate) {
        std::cerr << "warning: atom " << i << " (seed " << seed << ") is degenerate; skipped\n";
        ++skipped;
        continue;
      }
      write_atom(atom, 1.0, i, "random");
    }
    manifest["seed"] = args.seed;
    manifest["requested"] = args.count;
  } else if (args.mode == "example31") {
    AtomicDecomposition dec;
    if (args.J > 0) dec = example31_family(params, args.J, default_shell_profile(params), &skipped);
    if (skipped > 0) std::cerr << "warning: " << skipped << " degenerate shell atoms skipped\n";
    int i = 0;
    for (const auto& t : dec.terms) write_atom(t.atom, t.coefficient, i++, "shell");
    manifest["J"] = args.J;
    manifest["bound"] = example31_bound(params);
    manifest["truncation_error"] = dec.truncation_error;
  } else {
    throw UsageError("mode must be random or example31");
  }
  manifest["count"] = written;
  manifest["skipped"] = skipped;
  manifest["coefficient_sum"] = coefficient_sum;
  manifest["atoms"] = std::move(entries);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << written << " atoms written to " << dir.string() << " (" << skipped << " skipped, " << invalid
            << " failed validation)\n";
  return invalid > 0 ? exit_check_failed : exit_ok;
}

// ---------------------------------------------------------------- report-merge

int cmd_report_merge(const std::vector<std::string>& inputs, const std::string& output) {
  std::vector<std::string> docs;
  for (const auto& path : inputs) docs.push_back(read_file(path));
  const std::string merged = merge_report_documents(docs);
  emit(output, [&](std::ostream& os) { os << merged; });
  const auto j = ordered_json::parse(merged);
  return j.value("pass", false) ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl harmonic analysis on Z_2^d: transforms, Hardy-space atoms and verification suites"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites and write one report per suite");
  verify->add_option("--config", va.config_path, "JSON run configuration (flags override it)")->check(CLI::ExistingFile);
  verify->add_option("--d", va.d, "Dimension");
  verify->add_option("--k", va.k, "Multiplicities, one value or d values")->delimiter(',');
  verify->add_option("--suites", va.suites, "Suite names or 'all'")->delimiter(',');
  verify->add_option("--seeds", va.seeds, "Seeds")->delimiter(',');
  verify->add_option("--atoms", va.atom_count, "Random atoms per atom suite");
  verify->add_option("--tolerance", va.tolerance_overrides, "NAME=VALUE tolerance override ('*' for all)");
  verify->add_option("--half-width", va.half_width, "Transform grid half width");
  verify->add_option("--panels", va.panels, "Transform grid panels per axis");
  verify->add_option("--nodes-per-panel", va.nodes_per_panel, "Gauss nodes per panel");
  verify->add_option("--output", va.output_dir, "Report directory (default: reports)");
  verify->add_option("--format", va.format, "json or csv");
  verify->add_option("--workers", va.workers, "Concurrent suites (default: DUNKL_LAB_WORKERS or cores)");
  verify->add_flag("--no-timestamp", va.no_timestamp, "Omit generated_at for byte-identical reports");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Dunkl transform of CSV samples");
  transform->add_option("input", ta.input, "Input CSV")->required();
  transform->add_option("-o,--output", ta.output, "Output CSV (default: stdout)");
  transform->add_option("--direction", ta.direction, "forward or inverse");
  transform->add_option("--grid", ta.grid_path, "Source grid descriptor (JSON)")->check(CLI::ExistingFile);
  transform->add_option("--k", ta.k, "Multiplicities when the input carries no grid")->delimiter(',');
  transform->add_option("--plan-cache", ta.plan_cache, "Directory for cached transform plans");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Write a test function sampled on a box grid");
  sample->add_option("--d", sa.d, "Dimension");
  sample->add_option("--k", sa.k, "Multiplicities")->delimiter(',');
  sample->add_option("--function", sa.function, "gaussian, odd or shifted");
  sample->add_option("--half-width", sa.half_width, "Box half width");
  sample->add_option("--panels", sa.panels, "Panels per axis");
  sample->add_option("--nodes-per-panel", sa.nodes_per_panel, "Gauss nodes per panel");
  sample->add_option("-o,--output", sa.output, "Output CSV (default: stdout)");

  AtomsArgs aa;
  auto* atoms = app.add_subcommand("atoms", "Emit validated atom fixtures and a manifest");
  atoms->add_option("--mode", aa.mode, "random or example31");
  atoms->add_option("--d", aa.d, "Dimension");
  atoms->add_option("--k", aa.k, "Multiplicities")->delimiter(',');
  atoms->add_option("--count", aa.count, "Number of random atoms");
  atoms->add_option("--J", aa.J, "Number of shells");
  atoms->add_option("--seed", aa.seed, "Base seed");
  atoms->add_option("--radius", aa.radius, "Random atom radius");
  atoms->add_option("--output", aa.output_dir, "Output directory");

  std::vector<std::string> merge_inputs;
  std::string merge_output;
  auto* merge = app.add_subcommand("report-merge", "Merge JSON reports into one document");
  merge->add_option("inputs", merge_inputs, "Report files")->required()->check(CLI::ExistingFile);
  merge->add_option("-o,--output", merge_output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*transform) return cmd_transform(ta);
    if (*sample) return cmd_sample(sa);
    if (*atoms) return cmd_atoms(aa);
    if (*merge) return cmd_report_merge(merge_inputs, merge_output);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_usage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_usage;
}
