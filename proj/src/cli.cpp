#include "sephash/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "sephash/bounds.hpp"
#include "sephash/constructions.hpp"
#include "sephash/hamming.hpp"
#include "sephash/hypergraph.hpp"
#include "sephash/matrix_io.hpp"
#include "sephash/sumfree.hpp"
#include "sephash/verifier.hpp"

namespace sephash::cli {

namespace {

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto field = std::string_view(text).substr(pos, comma - pos);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw UsageError(std::string("malformed ") + what + " '" + text + "': expected comma-separated integers");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (auto v : parse_int_list(text, what)) {
    if (v < 0) throw UsageError(std::string(what) + " must be non-negative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& items, const char* sep, std::int64_t shift = 0) {
  std::string text;
  for (std::size_t i = 0; i < items.size(); ++i)
    text += (i ? sep : "") + std::to_string(static_cast<std::int64_t>(items[i]) + shift);
  return text;
}

std::string join_sets(const std::vector<std::vector<std::size_t>>& sets) {
  std::string text;
  for (std::size_t i = 0; i < sets.size(); ++i) text += (i ? "|" : "") + join(sets[i], ",", 1);
  return text;
}

std::string vertex_list(const Violation& v, const char* sep) {
  std::string text;
  for (std::size_t i = 0; i < v.parts.size(); ++i)
    text += (i ? sep : "") + std::to_string(v.parts[i] + 1) + ":" + std::to_string(v.values[i]);
  return text;
}

// Stable key=value fields for a witness, 1-based.
std::string porcelain_witness(const Violation& v) {
  std::string text = "kind=" + std::string(to_string(v.kind));
  switch (v.kind) {
    case ViolationKind::unseparated:
    case ViolationKind::repeated_restriction:
      text += " witness=" + join_sets(v.sets);
      break;
    case ViolationKind::pair_agreement:
      text += " witness=" + join_sets(v.sets) + " rows=" + join(v.values, ",", 1);
      break;
    case ViolationKind::ipp_ambiguous:
      text += " word=" + join(v.values, ",") + " witness=" + join_sets(v.sets);
      break;
    case ViolationKind::triangle:
    case ViolationKind::rainbow_cycle:
      text += " witness=" + join_sets(v.sets);
      if (!v.parts.empty()) text += " vertices=" + vertex_list(v, ",");
      break;
    case ViolationKind::dense_edges:
      text += " witness=" + join_sets(v.sets) + " span=" + join(v.values, ",");
      break;
    case ViolationKind::equation_solution:
      text += " equation=" + std::to_string(v.equation + 1) + " values=" + join(v.values, ",");
      break;
  }
  return text;
}

std::string describe_hyper(const Violation& v) {
  std::ostringstream out;
  out << "violation: " << to_string(v.kind) << '\n';
  switch (v.kind) {
    case ViolationKind::pair_agreement:
      out << "  edges {" << join(v.sets.at(0), ",", 1) << "} share vertices in parts " << join(v.values, ",", 1)
          << '\n';
      break;
    case ViolationKind::triangle:
      out << "  edges {" << join(v.sets.at(0), ",", 1) << "}\n  shared vertices (part:symbol): "
          << vertex_list(v, " ") << '\n';
      break;
    case ViolationKind::rainbow_cycle:
      if (v.parts.empty()) {
        out << "  Hamming vertices (base-q index): " << join(v.sets.at(0), " -> ") << "\n  colors: "
            << join(v.values, ",") << '\n';
      } else {
        out << "  edges in cycle order: " << join(v.sets.at(0), " -> ", 1)
            << "\n  joint vertices (part:symbol): " << vertex_list(v, " ") << '\n';
      }
      break;
    case ViolationKind::dense_edges:
      out << "  edges {" << join(v.sets.at(0), ",", 1) << "} span only " << v.values.at(0) << " vertices\n";
      break;
    default:
      out << "  " << porcelain_witness(v) << '\n';
  }
  return out.str();
}

CodeMatrix load_input(const std::string& path) {
  try {
    return load_matrix(path);
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit_matrix(const CodeMatrix& m, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_matrix(out, m);
  } else {
    save_matrix(path, m);
  }
}

// Report lines go to stdout when the matrix is written to a file, else stderr.
std::ostream& report_stream(const std::string& path, std::ostream& out, std::ostream& err) {
  return path.empty() ? err : out;
}

EquationSystem parse_system(const std::string& spec) {
  if (spec == "2sf") return two_sum_free_system();
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "rsf" && !arg.empty()) {
    const auto r = parse_int_list(arg, "r");
    if (r.size() != 1) throw UsageError("rsf:R takes one integer");
    return r_sum_free_system(static_cast<int>(r[0]));
  }
  if (head == "rset" && !arg.empty()) {
    const auto tangents = parse_int_list(arg, "tangent set");
    return r_set_sum_free_system(tangents);
  }
  if (head == "phf4" && !arg.empty()) {
    const auto mu = parse_int_list(arg, "mu");
    if (mu.size() != 1) throw UsageError("phf4:MU takes one integer");
    return phf4_system(mu[0]);
  }
  throw UsageError("unknown equation system '" + spec + "' (use 2sf, rsf:R, rset:B1,B2,..., phf4:MU)");
}

struct Options {
  // shared
  std::string file, output;
  bool porcelain = false;
  std::size_t threads = 0;
  // construct / bound
  std::size_t N = 0;
  std::uint64_t q = 0;
  std::string tangents, multipliers;
  std::string type;
  bool table = false;
  // verify
  std::size_t phf_t = 0, ipp_t = 0;
  // reduce
  std::size_t target_rows = 0;
  std::string chosen_rows;
  std::size_t decrement = 1;
  // sumfree
  std::int64_t limit = -1;
  std::string system = "2sf", method = "greedy", check_set;
  bool print_system = false;
  // hyper
  bool linear = false, triangle = false, rainbow = false;
  std::string gve;
  std::size_t r = 0, budget = kDefaultExtractionBudget, k = 0;
  std::uint64_t seed = 0;
};

int cmd_construct(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  CodeMatrix m;
  std::ostringstream info;
  if (which == "hamming") {
    m = hamming_projection_phf(o.N, o.q);
    info << "hamming projection family: " << o.N + 1 << "-perfect\n";
  } else if (which == "gm") {
    m = gm_code(GMParams{o.q, parse_int_list(o.tangents, "B"), parse_int_list(o.multipliers, "M")});
  } else {
    const auto c = which == "phf3" ? phf3_construct(o.q) : phf4_construct(o.q);
    m = c.matrix;
    info << "B = {" << join(c.params.tangents, ",") << "}\n";
    if (which == "phf4") info << "mu = " << c.mu << '\n';
    info << "M = {" << join(c.params.multipliers, ",") << "} within 0.." << c.multiplier_limit << '\n';
    if (c.degenerate) info << "warning: degenerate, multiplier range is {0}\n";
  }
  emit_matrix(m, o.output, out);
  auto& report = report_stream(o.output, out, err);
  report << "matrix: " << m.rows() << " rows, " << m.cols() << " columns, alphabet " << m.alphabet_size() << '\n'
         << info.str();
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const int modes = !o.type.empty() + (o.phf_t != 0) + (o.ipp_t != 0);
  if (modes != 1) throw UsageError("verify needs exactly one of --type, --phf, --ipp");
  const auto m = load_input(o.file);
  VerifyOptions options{o.threads};
  VerifyReport report;
  std::string check;
  if (!o.type.empty()) {
    const auto type = SepType::parse(o.type);
    report = verify_shf(m, type, options);
    check = "check=shf type=" + type.to_string();
  } else if (o.phf_t) {
    report = verify_phf(m, o.phf_t, options);
    check = "check=phf t=" + std::to_string(o.phf_t);
  } else {
    report = verify_ipp(m, o.ipp_t);
    check = "check=ipp t=" + std::to_string(o.ipp_t);
  }

  if (o.porcelain) {
    out << "verdict=" << (report.pass ? "pass" : "fail") << ' ' << check << " rows=" << m.rows()
        << " cols=" << m.cols() << " q=" << m.alphabet_size();
    if (report.vacuous) out << " vacuous=1";
    if (report.violation) out << ' ' << porcelain_witness(*report.violation);
    out << '\n';
  } else {
    out << (report.pass ? "PASS" : "FAIL") << ": " << check.substr(6) << " on " << m.rows() << "x" << m.cols()
        << " matrix over " << m.alphabet_size() << " symbols\n";
    if (report.vacuous) out << "vacuous: fewer columns than the type needs\n";
    if (report.violation) out << describe_violation(m, *report.violation);
    out << "tuples examined: " << report.stats.tuples_examined << '\n';
  }
  return report.pass ? kExitOk : kExitViolation;
}

int cmd_bound(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  const auto type = SepType::parse(o.type);
  auto evaluate = [&](std::uint64_t q) {
    return which == "johnson" ? johnson_bound(o.N, q, type) : trung_bound(q, type);
  };
  if (o.table) {
    out << "q\t" << which << '\n';
    for (std::uint64_t q = 2; q <= o.q; ++q) out << q << '\t' << evaluate(q).value << '\n';
    return kExitOk;
  }
  const auto result = evaluate(o.q);
  if (o.porcelain) {
    out << "bound=" << result.value << " formula=" << to_string(result.formula)
        << " side_condition=" << (result.side_condition_fails ? "fails" : result.assumes_side_condition ? "assumed" : "holds")
        << '\n';
  } else {
    out << result.value << '\n';
    for (const auto& note : result.assumptions()) err << "note: " << note << '\n';
  }
  return kExitOk;
}

int cmd_reduce(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  const auto m = load_input(o.file);
  auto& report = report_stream(o.output, out, err);
  if (which == "unique") {
    const auto result = remove_unique_coordinate_columns(m);
    emit_matrix(result.matrix, o.output, out);
    report << "removed columns (deletion order): " << join(result.removed, " ", 1) << '\n'
           << "remaining columns: " << result.matrix.cols() << '\n';
  } else if (which == "group") {
    const auto grouped = group_coordinates(m, o.target_rows);
    emit_matrix(grouped, o.output, out);
    report << "grouped " << m.rows() << " rows into " << grouped.rows() << ", alphabet " << grouped.alphabet_size()
           << '\n';
  } else {
    const auto type = SepType::parse(o.type);
    std::vector<std::size_t> rows;
    for (auto r : parse_count_list(o.chosen_rows, "rows")) {
      if (r < 1) throw UsageError("row indices are 1-based");
      rows.push_back(r - 1);
    }
    if (o.decrement < 1) throw UsageError("--decrement is 1-based");
    const auto step = johnson_reduce(m, type, rows, o.decrement - 1);
    emit_matrix(step.matrix, o.output, out);
    report << "representatives: " << join(step.representatives, " ", 1) << '\n'
           << "type: " << step.type.to_string() << '\n';
    if (step.exhausted) report << "exhausted: at most u-1 columns remain, no claim on the remainder\n";
  }
  return kExitOk;
}

int cmd_sumfree(const Options& o, std::ostream& out, std::ostream& err) {
  const auto system = parse_system(o.system);
  if (o.print_system) {
    out << system.to_string();
    return kExitOk;
  }
  if (!o.check_set.empty()) {
    const auto set = parse_int_list(o.check_set, "set");
    const auto hit = find_solution(set, system);
    if (o.porcelain) {
      out << "verdict=" << (hit ? "fail" : "pass") << " check=sumfree";
      if (hit) out << ' ' << porcelain_witness(*hit);
      out << '\n';
    } else if (hit) {
      out << "FAIL: equation " << hit->equation + 1 << " (" << join(system.equations()[hit->equation], " ")
          << ") has the solution (" << join(hit->values, ",") << ")\n";
    } else {
      out << "PASS: no nontrivial solution\n";
    }
    return hit ? kExitViolation : kExitOk;
  }
  if (o.limit < 0) throw UsageError("sumfree needs --limit, --check or --print-system");
  AvoidingSet set;
  if (o.method == "behrend") {
    if (o.system != "2sf") throw UsageError("the behrend method only targets the 2sf system");
    set = behrend_set(o.limit);
  } else if (o.method == "greedy") {
    set = greedy_avoiding_set(o.limit, system);
  } else if (o.method == "max") {
    set = max_avoiding_set(o.limit, system);
  } else {
    throw UsageError("unknown method '" + o.method + "' (use behrend, greedy, max)");
  }
  if (o.porcelain) {
    out << "size=" << set.elements.size() << " limit=" << set.limit << " elements=" << join(set.elements, ",")
        << '\n';
  } else {
    // One integer per line, so the output is itself a set file.
    for (auto x : set.elements) out << x << '\n';
    err << "size: " << set.elements.size() << '\n';
  }
  return kExitOk;
}

int cmd_hyper(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  if (which == "hamming-check") {
    const auto hit = hamming_rainbow_check(o.k, o.q);
    if (o.porcelain) {
      out << "verdict=" << (hit ? "fail" : "pass") << " check=hamming k=" << o.k << " q=" << o.q;
      if (hit) out << ' ' << porcelain_witness(*hit);
      out << '\n';
    } else {
      out << (hit ? "FAIL" : "PASS") << ": H(" << o.k << "," << o.q << ") "
          << (hit ? "has a cycle with distinct colors\n" : "has no cycle with distinct colors\n");
      if (hit) out << describe_hyper(*hit);
    }
    return hit ? kExitViolation : kExitOk;
  }

  if (which == "extract") {
    EdgeList h;
    try {
      h = load_edge_list(o.file);
    } catch (const UsageError& e) {
      throw UsageError(o.file + ": " + e.what());
    }
    if (o.r != 0 && o.r != h.r)
      throw UsageError("--r " + std::to_string(o.r) + " does not match the file's uniformity " + std::to_string(h.r));
    const auto result = extract_partite(h, o.seed, o.budget);
    emit_matrix(result.graph.to_matrix(), o.output, out);
    auto& report = report_stream(o.output, out, err);
    report << "kept edges: " << result.kept.size() << " of " << h.edges.size() << " (target " << result.target
           << ")\n";
    for (std::size_t p = 0; p < result.members.size(); ++p)
      report << "part " << p + 1 << ": " << join(result.members[p], " ") << '\n';
    if (result.below_target) report << "warning: below target after " << o.budget << " partitions\n";
    return kExitOk;
  }

  const int modes = o.linear + o.triangle + o.rainbow + !o.gve.empty();
  if (modes != 1) throw UsageError("hyper check needs exactly one of --linear, --triangle, --rainbow, --gve");
  const auto g = PartiteHypergraph::from_matrix(load_input(o.file));
  std::optional<Violation> hit;
  std::string check;
  if (o.linear) {
    hit = find_nonlinear_pair(g);
    check = "linear";
  } else if (o.triangle) {
    hit = find_triangle(g);
    check = "triangle-free";
  } else if (o.rainbow) {
    hit = find_rainbow_cycle(g);
    check = "rainbow-free";
  } else {
    const auto ve = parse_count_list(o.gve, "--gve");
    if (ve.size() != 2) throw UsageError("--gve takes V,E");
    hit = find_dense_edges(g, ve[0], ve[1], o.threads);
    check = "gve-free v=" + std::to_string(ve[0]) + " e=" + std::to_string(ve[1]);
  }
  if (o.porcelain) {
    out << "verdict=" << (hit ? "fail" : "pass") << " check=" << check;
    if (hit) out << ' ' << porcelain_witness(*hit);
    out << '\n';
  } else {
    out << (hit ? "FAIL" : "PASS") << ": " << check << " (" << g.parts() << " parts of size " << g.part_size()
        << ", " << g.edge_count() << " edges)\n";
    if (hit) out << describe_hyper(*hit);
  }
  return hit ? kExitViolation : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and check separating and perfect hash families", "sephash"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Write the matrix here"); };
  auto add_porcelain = [&](CLI::App* sub) {
    sub->add_flag("--porcelain", o.porcelain, "One key=value line, stable across releases");
  };

  auto* construct = app.add_subcommand("construct", "Generate a hash family matrix");
  construct->require_subcommand(1);
  for (const char* name : {"hamming", "gm", "phf3", "phf4"}) {
    auto* sub = construct->add_subcommand(name);
    if (std::string(name) == "hamming") sub->add_option("--N", o.N, "Rows (N >= 2)")->required();
    sub->add_option("--q", o.q, "Alphabet parameter")->required();
    if (std::string(name) == "gm") {
      sub->add_option("--B", o.tangents, "Tangent set b1,b2,...")->required();
      sub->add_option("--M", o.multipliers, "Multiplier set")->required();
    }
    add_output(sub);
    sub->callback([&, name] { action = [&, name] { return cmd_construct(name, o, out, err); }; });
  }
  construct->description(
      "hamming: (N+1)-PHF from hypercube projections; gm: algebraic code over Z_q; phf3/phf4: algebraic 3-/4-PHF");

  auto* verify = app.add_subcommand("verify", "Brute-force check of a matrix file");
  verify->add_option("--file", o.file, "Matrix file")->required();
  verify->add_option("--type", o.type, "Separation type w1,w2,...");
  verify->add_option("--phf", o.phf_t, "Perfect hashing strength t");
  verify->add_option("--ipp", o.ipp_t, "Identifiable parent property strength t");
  verify->add_option("--threads", o.threads, "Worker threads (default: all cores)");
  add_porcelain(verify);
  verify->callback([&] { action = [&] { return cmd_verify(o, out); }; });

  auto* bound = app.add_subcommand("bound", "Evaluate an upper bound on the number of columns");
  bound->require_subcommand(1);
  for (const char* name : {"johnson", "trung"}) {
    auto* sub = bound->add_subcommand(name);
    if (std::string(name) == "johnson") sub->add_option("--N", o.N, "Rows")->required();
    sub->add_option("--q", o.q, "Alphabet size (upper end with --table)")->required();
    sub->add_option("--type", o.type, "Separation type w1,w2,...")->required();
    sub->add_flag("--table", o.table, "TSV over q = 2..Q");
    add_porcelain(sub);
    sub->callback([&, name] { action = [&, name] { return cmd_bound(name, o, out, err); }; });
  }

  auto* reduce = app.add_subcommand("reduce", "Transform a matrix file");
  reduce->require_subcommand(1);
  {
    auto* unique = reduce->add_subcommand("unique", "Delete columns owning a unique coordinate");
    auto* group = reduce->add_subcommand("group", "Merge rows into super-symbols");
    group->add_option("--rows", o.target_rows, "Rows after grouping")->required();
    auto* johnson = reduce->add_subcommand("johnson", "One deletion round of the Johnson-type recursion");
    johnson->add_option("--type", o.type, "Separation type of the input")->required();
    johnson->add_option("--rows", o.chosen_rows, "Rows to drop, 1-based r1,r2,...")->required();
    johnson->add_option("--decrement", o.decrement, "1-based index of the weight to decrement (sorted order)");
    for (auto* sub : {unique, group, johnson}) {
      sub->add_option("--file", o.file, "Matrix file")->required();
      add_output(sub);
      const std::string name = sub->get_name();
      sub->callback([&, name] { action = [&, name] { return cmd_reduce(name, o, out, err); }; });
    }
  }

  auto* sumfree = app.add_subcommand("sumfree", "Sets of integers avoiding linear equations");
  sumfree->add_option("--limit", o.limit, "Search within 0..limit");
  sumfree->add_option("--system", o.system, "2sf | rsf:R | rset:B1,B2,... | phf4:MU")->capture_default_str();
  sumfree->add_option("--method", o.method, "behrend | greedy | max")->capture_default_str();
  sumfree->add_option("--check", o.check_set, "Test the set s1,s2,... instead of building one");
  sumfree->add_flag("--print-system", o.print_system, "Print the equations, one per line");
  add_porcelain(sumfree);
  sumfree->callback([&] { action = [&] { return cmd_sumfree(o, out, err); }; });

  auto* hyper = app.add_subcommand("hyper", "Hypergraph views and checks");
  hyper->require_subcommand(1);
  {
    auto* check = hyper->add_subcommand("check", "Check the partite hypergraph of a matrix file");
    check->add_option("--file", o.file, "Matrix file")->required();
    check->add_flag("--linear", o.linear, "Edges pairwise share at most one vertex");
    check->add_flag("--triangle", o.triangle, "No triangle (3 parts only)");
    check->add_flag("--rainbow", o.rainbow, "No rainbow cycle (linear input only)");
    check->add_option("--gve", o.gve, "V,E: no E edges spanned by V vertices or fewer");
    check->add_option("--threads", o.threads, "Worker threads for --gve");
    add_porcelain(check);
    check->callback([&] { action = [&] { return cmd_hyper("check", o, out, err); }; });

    auto* extract = hyper->add_subcommand("extract", "Largest partite subhypergraph over random partitions");
    extract->add_option("--file", o.file, "Edge list (HG r n m)")->required();
    extract->add_option("--r", o.r, "Uniformity (must match the file)");
    extract->add_option("--seed", o.seed, "Random seed")->required();
    extract->add_option("--budget", o.budget, "Number of partitions tried")->capture_default_str();
    add_output(extract);
    extract->callback([&] { action = [&] { return cmd_hyper("extract", o, out, err); }; });

    auto* hamming = hyper->add_subcommand("hamming-check", "Look for a cycle with distinct colors in H(k,q)");
    hamming->add_option("--k", o.k, "Dimension")->required();
    hamming->add_option("--q", o.q, "Alphabet size")->required();
    add_porcelain(hamming);
    hamming->callback([&] { action = [&] { return cmd_hyper("hamming-check", o, out, err); }; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    // Help of the deepest parsed subcommand.
    const CLI::App* target = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const auto* sub : target->get_subcommands()) {
        target = sub;
        descended = true;
        break;
      }
    }
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun 'sephash --help' for usage\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sephash::cli
