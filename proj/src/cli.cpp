#include "sumsetlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sumsetlab/factor_system.hpp"
#include "sumsetlab/proof_replay.hpp"
#include "sumsetlab/report_json.hpp"

namespace sumsetlab::cli {

std::vector<Element> parse_element_list(const std::string& text, std::size_t order) {
  std::vector<Element> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned long long v = 0;
    const auto* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (item.empty() || ec != std::errc{} || ptr != end)
      throw std::invalid_argument("'" + item + "' is not an element index");
    if (v >= order)
      throw std::invalid_argument("element " + item + " is out of range for a group of order " + std::to_string(order));
    out.push_back(static_cast<Element>(v));
  }
  return out;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  bool json = false;
  std::string out_path;
  std::optional<unsigned> workers;
  bool timing = false;

  // verify
  std::string theorem = "cd";
  std::string mode = "exhaustive";
  std::optional<std::size_t> max_a, max_b, sum_cap;
  std::optional<std::uint64_t> seed, count;
  std::string sizes;
  std::size_t exhaustive_limit = 11;

  // decompose
  std::string kernel;
  std::string reps;
  std::optional<std::uint64_t> rep_seed;
  std::string set;

  // extremal
  std::optional<std::size_t> limit;

  // trace
  std::string set_a, set_b;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--group", o.group, "Group spec, e.g. cyclic:7, quaternion, frobenius:7:3:2, table:PATH")
      ->required();
  sub->add_flag("--json", o.json, "Emit the JSON report");
  sub->add_option("--out", o.out_path, "Write the report to PATH instead of standard output");
  sub->add_option("--workers", o.workers, "Worker threads (default: SUMSETLAB_WORKERS or machine parallelism)");
}

unsigned resolve_workers(const Options& o) {
  if (o.workers) return *o.workers;
  if (const char* env = std::getenv("SUMSETLAB_WORKERS")) {
    unsigned v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("SUMSETLAB_WORKERS must be an integer");
    return v;
  }
  return 0;
}

Theorem parse_theorem(const std::string& s) {
  if (s == "cd") return Theorem::kCauchyDavenport;
  if (s == "eh") return Theorem::kErdosHeilbronn;
  throw UsageError("--theorem must be cd or eh");
}

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& s) {
  const auto parts = parse_element_list(s, std::numeric_limits<std::size_t>::max());
  if (parts.size() != 2) throw UsageError("--sizes expects two comma-separated integers");
  return {parts[0], parts[1]};
}

std::string format_set(const SubsetMask& m) {
  std::string s = "{";
  bool first = true;
  m.for_each([&](Element e) {
    s += (first ? "" : ",") + std::to_string(e);
    first = false;
  });
  return s + "}";
}

void print_check(std::ostream& os, const BoundCheck& c) {
  os << "  A = " << format_set(c.a) << "  B = " << format_set(c.b) << "  |A*B| = " << c.product_size
     << "  bound = " << c.bound << '\n';
}

int cmd_verify(const Options& o, const FiniteGroup& g, std::ostream& os, const Verifier& verifier) {
  const Theorem theorem = parse_theorem(o.theorem);
  RunOptions run{};
  run.workers = resolve_workers(o);
  run.exhaustive_limit = o.exhaustive_limit;

  VerificationReport report;
  if (o.mode == "exhaustive") {
    report = verifier.exhaustive(g, theorem, std::nullopt, run);
  } else if (o.mode == "capped") {
    if (!o.max_a && !o.max_b && !o.sum_cap) throw UsageError("capped mode needs --max-a, --max-b or --sum-cap");
    report = verifier.exhaustive(g, theorem, SizeCaps{o.max_a, o.max_b, o.sum_cap}, run);
  } else if (o.mode == "sampled") {
    if (!o.seed || !o.count) throw UsageError("sampled mode requires --seed and --count");
    SamplingPlan plan{*o.seed, *o.count, SamplingPlan::Distribution::kUniformNonempty, 1, 1};
    if (!o.sizes.empty()) {
      std::tie(plan.size_a, plan.size_b) = parse_sizes(o.sizes);
      plan.distribution = SamplingPlan::Distribution::kFixedSizes;
    }
    report = verifier.sampled(g, theorem, plan, run);
  } else {
    throw UsageError("--mode must be exhaustive, capped or sampled");
  }

  if (o.json) {
    os << to_json(report, o.timing).dump(2) << '\n';
  } else {
    os << "group: " << report.group_label << " (order " << report.group_order << ", p(G) = " << report.p_g << ")\n"
       << "theorem: " << theorem_name(report.theorem) << "  mode: " << mode_name(report.mode) << '\n'
       << "pairs checked: " << report.pairs_checked << '\n'
       << "violations: " << report.violation_count << '\n';
    for (const auto& v : report.violations) print_check(os, v);
    os << "extremal pairs: " << report.extremal_count << '\n';
    for (const auto& w : report.extremal_witnesses) print_check(os, w);
    os << "wall time: " << std::fixed << std::setprecision(3) << report.wall_time.count() << " s\n";
  }
  return report.violation_count > 0 ? kViolationFound : kSuccess;
}

int cmd_decompose(const Options& o, const FiniteGroup& g, std::ostream& os) {
  Subgroup k = o.kernel.empty()
                   ? choose_decomposition_subgroup(g)
                   : generated_subgroup(g, SubsetMask::from_elements(g.order(), parse_element_list(o.kernel, g.order())));
  if (!is_normal(g, k)) throw UsageError("--kernel does not generate a normal subgroup");
  if (!o.reps.empty() && o.rep_seed) throw UsageError("--reps and --rep-seed are mutually exclusive");
  RepPolicy policy = RepPolicy::lowest_index();
  if (!o.reps.empty()) policy = RepPolicy::explicit_reps(parse_element_list(o.reps, g.order()));
  if (o.rep_seed) policy = RepPolicy::seeded_random(*o.rep_seed);

  const Decomposition d = build_factor_system(g, k, policy);
  const IsomorphismCheck iso = verify_isomorphism(d.fs, d.psi);
  std::optional<SubsetDecomposition> subset;
  if (!o.set.empty())
    subset = decompose_subset(d.fs, d.psi, SubsetMask::from_elements(g.order(), parse_element_list(o.set, g.order())));

  if (o.json) {
    Json j = to_json(d.fs, d.psi);
    j["isomorphism_verified"] = iso.ok;
    if (subset) j["subset"] = to_json(*subset);
    os << j.dump(2) << '\n';
  } else {
    os << "group: " << g.label() << " (order " << g.order() << ")\n"
       << "kernel K: " << format_set(k.members) << " (order " << k.order() << ")\n"
       << "quotient G/K: order " << d.fs.quotient_order() << '\n';
    for (std::size_t h = 0; h < d.fs.quotient_order(); ++h)
      os << "  coset " << h << ": rep " << d.fs.reps[h] << "  "
         << format_set(SubsetMask::from_elements(g.order(), std::span<const Element>(d.fs.cosets[h]))) << '\n';
    os << "psi:\n";
    for (Element x = 0; x < g.order(); ++x)
      os << "  " << x << " -> (" << d.fs.kernel_elements[d.psi.forward[x].kernel] << ", " << d.psi.forward[x].coset
         << ")\n";
    os << "isomorphism verified: " << (iso.ok ? "yes" : "NO (" + iso.reason + ")") << '\n';
    if (subset) {
      os << "S^1 (kernel elements):";
      subset->first.for_each([&](Element kk) { os << ' ' << d.fs.kernel_elements[kk]; });
      os << "\nS^2 (cosets): " << format_set(subset->second) << "\nblock sizes:";
      for (const auto& b : subset->blocks) os << ' ' << b.size;
      os << '\n';
    }
  }
  return iso.ok ? kSuccess : kUsageError;
}

int cmd_extremal(const Options& o, const FiniteGroup& g, std::ostream& os) {
  if (o.sizes.empty()) throw UsageError("extremal requires --sizes A,B");
  ExtremalSearch search;
  std::tie(search.size_a, search.size_b) = parse_sizes(o.sizes);
  search.limit = o.limit;
  const ExtremalResult r = find_extremal(g, search);
  if (o.json) {
    os << to_json(r, g).dump(2) << '\n';
  } else {
    os << "group: " << g.label() << "  sizes (" << search.size_a << "," << search.size_b << ")  bound " << r.bound
       << '\n'
       << "extremal pairs: " << r.pairs.size() << (r.truncated ? " (truncated)" : "") << " of " << r.pairs_searched
       << " searched\n";
    for (std::size_t i = 0; i < r.pairs.size() && i < 10; ++i)
      os << "  A = " << format_set(r.pairs[i].a) << "  B = " << format_set(r.pairs[i].b) << '\n';
  }
  return kSuccess;
}

void print_trace(std::ostream& os, const ProofTrace& t, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << t.group_label << ": A = " << format_set(t.a) << "  B = " << format_set(t.b) << "  |A*B| = "
     << t.product_size << " >= " << t.traced_bound << '\n';
  if (t.base_case) {
    os << pad << "  base case (" << t.base_reason << ")\n";
    return;
  }
  os << pad << "  |K| = " << t.kernel.size() << "  |G/K| = " << t.quotient_order << "  alpha = " << t.alpha
     << "  beta = " << t.beta << (t.swapped ? "  (sides swapped)" : "") << '\n';
  for (const auto& bc : t.block_checks) {
    os << pad << "  block " << bc.pivot_coset << " x " << bc.other_coset << ": " << bc.product_size
       << " >= " << bc.lower_bound << (bc.holds ? "" : "  FAILED") << '\n';
    for (const auto& sub : bc.kernel_trace) print_trace(os, sub, depth + 2);
  }
  const auto& q = t.quotient_check;
  os << pad << "  quotient: |A^2 B^2| = " << q.product_size << " >= " << q.lower_bound << '\n';
  os << pad << "  disjoint pivot-row cosets: " << t.disjointness_check.distinct_cosets << " of "
     << t.disjointness_check.expected << '\n';
  const auto& f = t.final_chain;
  os << pad << "  chain: " << f.direct << " >= " << f.block_sum << " >= " << f.block_bound << " = " << f.closed_form
     << " >= " << f.target << '\n';
}

int cmd_trace(const Options& o, const FiniteGroup& g, std::ostream& os, std::ostream& err) {
  if (o.set_a.empty() || o.set_b.empty()) throw UsageError("trace requires --set-a and --set-b");
  const auto a = SubsetMask::from_elements(g.order(), parse_element_list(o.set_a, g.order()));
  const auto b = SubsetMask::from_elements(g.order(), parse_element_list(o.set_b, g.order()));
  try {
    const ProofTrace t = replay_solvable_proof(g, a, b);
    if (o.json)
      os << to_json(t).dump(2) << '\n';
    else
      print_trace(os, t, 0);
    return kSuccess;
  } catch (const ProofReplayError& e) {
    err << "error: " << e.what() << '\n';
    if (o.json) os << to_json(e.trace()).dump(2) << '\n';
    return kViolationFound;
  }
}

int cmd_validate(const Options& o, std::ostream& os) {
  const GroupSpec spec = parse_group_spec(o.group);
  const CayleyTable table =
      spec.kind == GroupKind::kTable ? read_cayley_table(*spec.table_source) : build_group(spec).cayley_table();
  const ValidationReport report = validate_table(table);
  if (o.json) {
    Json j = to_json(report);
    j["group"] = o.group;
    j["order"] = table.order;
    os << j.dump(2) << '\n';
  } else {
    os << o.group << " (order " << table.order << "): " << (report.ok() ? "valid group" : "NOT a group") << '\n';
    for (const auto& v : report.violations) os << "  " << axiom_name(v.axiom) << ": " << v.message << '\n';
    if (!report.associativity_checked) os << "  associativity not checked (order above cap)\n";
  }
  return report.ok() ? kSuccess : kUsageError;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, const Verifier& verifier) {
  CLI::App app{"sumsetlab: sumsets, factor systems and Cauchy-Davenport checks in finite groups"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Check the CD or EH bound over many subset pairs");
  add_common(verify, o);
  verify->add_option("--theorem", o.theorem, "cd or eh");
  verify->add_option("--mode", o.mode, "exhaustive, capped or sampled");
  verify->add_option("--max-a", o.max_a, "Capped mode: largest |A|");
  verify->add_option("--max-b", o.max_b, "Capped mode: largest |B|");
  verify->add_option("--sum-cap", o.sum_cap, "Capped mode: largest |A|+|B|");
  verify->add_option("--seed", o.seed, "Sampled mode: generator seed");
  verify->add_option("--count", o.count, "Sampled mode: number of pairs");
  verify->add_option("--sizes", o.sizes, "Sampled mode: fixed sizes A,B");
  verify->add_option("--exhaustive-limit", o.exhaustive_limit, "Largest order enumerated without caps");
  verify->add_flag("--timing", o.timing, "Include wall time in the JSON report");

  auto* decompose = app.add_subcommand("decompose", "Build the factor system of G over a normal subgroup K");
  add_common(decompose, o);
  decompose->add_option("--kernel", o.kernel, "Generators of K (default: derived subgroup policy)");
  decompose->add_option("--reps", o.reps, "Explicit coset representatives, one per coset");
  decompose->add_option("--rep-seed", o.rep_seed, "Seeded random coset representatives");
  decompose->add_option("--set", o.set, "Also decompose this subset into coordinates");

  auto* extremal = app.add_subcommand("extremal", "List pairs attaining the CD bound with equality");
  add_common(extremal, o);
  extremal->add_option("--sizes", o.sizes, "Set sizes A,B")->required();
  extremal->add_option("--limit", o.limit, "Stop after this many pairs");

  auto* trace = app.add_subcommand("trace", "Replay the solvable-group induction on concrete sets");
  add_common(trace, o);
  trace->add_option("--set-a", o.set_a, "Elements of A")->required();
  trace->add_option("--set-b", o.set_b, "Elements of B")->required();

  auto* validate = app.add_subcommand("validate", "Check the group axioms of a spec or table file");
  add_common(validate, o);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path);
      if (!file) throw UsageError("cannot open '" + o.out_path + "' for writing");
    }
    std::ostream& os = o.out_path.empty() ? out : file;
    if (*validate) return cmd_validate(o, os);
    const FiniteGroup g = build_group(o.group);
    if (*verify) return cmd_verify(o, g, os, verifier);
    if (*decompose) return cmd_decompose(o, g, os);
    if (*extremal) return cmd_extremal(o, g, os);
    return cmd_trace(o, g, os, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  static const Verifier engine;
  return run(args, out, err, engine);
}

}  // namespace sumsetlab::cli
