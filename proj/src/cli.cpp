#include "mdse/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "mdse/bench.hpp"
#include "mdse/document.hpp"
#include "mdse/error.hpp"
#include "mdse/generator.hpp"
#include "mdse/inference.hpp"
#include "mdse/priors.hpp"
#include "mdse/validation.hpp"

namespace mdse::cli {

namespace {

std::string format_fixed(double value, std::chars_format fmt, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, fmt, precision);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string shape_line(const GraphShape& s) {
  return "shape: n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) + " i=" +
         std::to_string(s.i) + " k=" + std::to_string(s.k) + " e=" + std::to_string(s.e) +
         " v=" + std::to_string(s.v);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotValid: return kExitValidation;
    case ErrorCode::ZeroEvidence:
    case ErrorCode::ValueExceedsOne: return kExitNumeric;
    default: return kExitUsage;
  }
}

MdseGraph load(const std::string& path) {
  return load_graph_file(path, ConstructionChecks::Deferred);
}

struct Options {
  std::string file;
  std::string out_file;
  bool strict = false;
  std::uint32_t event = 0;
  std::uint32_t group = 0;
  std::string mode = "or";
  bool checked = false;
  bool expanded = false;
  bool all = false;
  GeneratorConfig gen;
  std::string sizes = "64:32:0.25,128:64:0.125,256:128:0.0625,512:256:0.03125,1024:512:0.015625";
  std::string op = "mixture";
  std::uint64_t bench_seed = 0;
  std::string csv_file;
  std::size_t repetitions = bench::kDefaultRepetitions;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const MdseGraph graph = load(o.file);
  const auto report = validate(graph, o.strict ? ValidationMode::Strict : ValidationMode::Relaxed);
  out << "mode: " << to_string(report.mode) << "\n";
  out << shape_line(graph.shape()) << "\n";
  out << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) {
    std::string where = "graph";
    if (v.edge) {
      where = "edge " + std::to_string(*v.edge);
    } else if (v.vertex) {
      where = "vertex " + std::to_string(v.vertex->value);
    }
    out << "  " << v.rule << "\t" << where << "\t" << v.message << "\n";
  }
  out << "result: " << (report.passed ? "passed" : "failed") << "\n";
  return report.passed ? kExitOk : kExitValidation;
}

int cmd_infer(const Options& o, std::ostream& out) {
  const MdseGraph graph = load(o.file);
  const NodeId target{o.event};
  QueryResult result;
  if (o.expanded) {
    result = prob_event_expanded(graph, target);
    if (o.checked && !result.in_range) {
      fail(ErrorCode::ValueExceedsOne, "event probability evaluates to " +
                                           format_fixed(result.value, std::chars_format::general, 17) +
                                           ", above 1");
    }
  } else {
    ProbQuery q;
    q.target = target;
    q.mode = o.mode == "and" ? CombineMode::AndProduct : CombineMode::OrMixture;
    q.normalization = o.checked ? Normalization::Checked : Normalization::Literal;
    result = prob_event(graph, q);
  }
  out << format_probability(result.value) << "\n";
  out << "formula: " << to_string(result.formula) << "\n";
  out << "in_range: " << (result.in_range ? "true" : "false") << "\n";
  out << "terms: " << result.terms.size() << "\n";
  out << "  source\tvia\tcontribution\n";
  for (const auto& t : result.terms) {
    out << "  " << t.source.value << "\t" << (t.via ? std::to_string(t.via->value) : "-") << "\t"
        << format_probability(t.contribution) << "\n";
  }
  return kExitOk;
}

int cmd_posterior(const Options& o, std::ostream& out) {
  const MdseGraph graph = load(o.file);
  const auto post = posterior_for_event(graph, GroupId{o.group}, NodeId{o.event});
  out << "group: " << post.group.value << "\n";
  out << "event: " << o.event << "\n";
  out << "  hypothesis\tposterior\n";
  std::size_t best = 0;
  for (std::size_t j = 0; j < post.entries.size(); ++j) {
    out << "  " << post.entries[j].hypothesis.value << "\t"
        << format_probability(post.entries[j].probability) << "\n";
    if (post.entries[j].probability > post.entries[best].probability) best = j;
  }
  out << "map: " << post.entries[best].hypothesis.value << "\n";
  return kExitOk;
}

int cmd_update(const Options& o, std::ostream& out) {
  const MdseGraph graph = load(o.file);
  const MdseGraph updated = update_group(graph, GroupId{o.group}, NodeId{o.event});
  save_graph_file(o.out_file, updated);
  out << "group " << o.group << " priors:";
  for (const auto& h : updated.group(GroupId{o.group}).members) {
    out << " " << format_probability(h.prior);
  }
  out << "\nwrote " << o.out_file << "\n";
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const MdseGraph graph = generate_graph(o.gen);
  if (o.out_file.empty()) {
    out << serialize_graph(graph);
    return kExitOk;
  }
  save_graph_file(o.out_file, graph);
  out << shape_line(graph.shape()) << "\n";
  out << "wrote " << o.out_file << "\n";
  return kExitOk;
}

int cmd_oracle_check(const Options& o, std::ostream& out) {
  const MdseGraph graph = load(o.file);
  if (!graph.relaxed_valid()) {
    fail(ErrorCode::NotValid, "graph fails relaxed validation");
  }
  const auto report = run_oracle_check(graph, o.all);
  out << "  check\ttarget\tgroup\tinference\toracle\tdelta\n";
  for (const auto& row : report.rows) {
    out << "  " << row.check << "\t" << row.target.value << "\t"
        << (row.group ? std::to_string(row.group->value) : "-") << "\t"
        << format_probability(row.inference) << "\t" << format_probability(row.oracle) << "\t"
        << format_fixed(row.delta, std::chars_format::scientific, 3) << "\n";
  }
  out << "comparisons: " << report.rows.size() << "\n";
  out << "max_delta: " << format_fixed(report.max_delta, std::chars_format::scientific, 3) << "\n";
  out << "result: " << (report.passed ? "agree" : "disagree") << "\n";
  return report.passed ? kExitOk : kExitOracleDisagreement;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const auto sizes = bench::parse_sizes(o.sizes);
  const auto op = bench::parse_op(o.op);
  const auto points = bench::run_scaling_bench(sizes, o.bench_seed, op, o.repetitions);
  const std::string csv = bench::to_csv(points);
  out << "op: " << bench::to_string(op) << "\n" << csv;
  if (!points.empty()) {
    try {
      const auto fit = bench::fit_scaling_exponent(points, bench::SizeAxis::Edges);
      out << "fit(edges): exponent=" << format_fixed(fit.exponent, std::chars_format::fixed, 3)
          << " r2=" << format_fixed(fit.r_squared, std::chars_format::fixed, 3) << "\n";
    } catch (const Error& e) {
      out << "fit(edges): skipped (" << e.what() << ")\n";
    }
  }
  if (!o.csv_file.empty()) {
    std::ofstream f(o.csv_file, std::ios::binary | std::ios::trunc);
    if (!(f << csv)) fail(ErrorCode::IoError, "cannot write " + o.csv_file);
  }
  return kExitOk;
}

}  // namespace

std::string format_probability(double value) {
  return format_fixed(value, std::chars_format::fixed, 9);
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypothesis/event graph toolkit", "mdse"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check graph structure");
  validate_cmd->add_option("file", o.file, "Graph file (.mdse)")->required();
  validate_cmd->add_flag("--strict", o.strict, "Also enforce degree bounds and minimum size");

  auto* infer_cmd = app.add_subcommand("infer", "Probability of one event");
  infer_cmd->add_option("file", o.file)->required();
  infer_cmd->add_option("--event", o.event, "Event vertex id")->required();
  infer_cmd->add_option("--mode", o.mode, "or | and")->check(CLI::IsMember({"or", "and"}));
  infer_cmd->add_flag("--checked", o.checked, "Fail when the value exceeds 1");
  infer_cmd->add_flag("--expanded", o.expanded, "Use the fully expanded mixture sum");

  auto* posterior_cmd = app.add_subcommand("posterior", "Posterior of a group given an event");
  posterior_cmd->add_option("file", o.file)->required();
  posterior_cmd->add_option("--group", o.group, "Group index")->required();
  posterior_cmd->add_option("--event", o.event, "Observed event id")->required();

  auto* update_cmd = app.add_subcommand("update", "Replace a group's priors by its posterior");
  update_cmd->add_option("file", o.file)->required();
  update_cmd->add_option("--group", o.group)->required();
  update_cmd->add_option("--event", o.event)->required();
  update_cmd->add_option("--out", o.out_file)->required();

  auto* generate_cmd = app.add_subcommand("generate", "Deterministic random graph");
  generate_cmd->add_option("--seed", o.gen.seed)->required();
  generate_cmd->add_option("--n-star", o.gen.n_star_events);
  generate_cmd->add_option("--n-prime", o.gen.n_prime_events);
  generate_cmd->add_option("--groups-star", o.gen.groups_star);
  generate_cmd->add_option("--groups-prime", o.gen.groups_prime);
  generate_cmd->add_option("--max-group-size", o.gen.max_group_size);
  generate_cmd->add_option("--density", o.gen.edge_density);
  generate_cmd->add_flag("--fixed-group-size", o.gen.fixed_group_size);
  bool relaxed = false;
  generate_cmd->add_flag("--relaxed", relaxed, "Only require Relaxed validity");
  generate_cmd->add_option("--out", o.out_file, "Output file (stdout if omitted)");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare inference with brute force");
  oracle_cmd->add_option("file", o.file)->required();
  oracle_cmd->add_flag("--all", o.all, "Also check total probabilities and posteriors");

  auto* bench_cmd = app.add_subcommand("bench", "Scaling benchmark");
  bench_cmd->add_option("--sizes", o.sizes, "n:m:density[,n:m:density...]");
  bench_cmd->add_option("--op", o.op, "full-probability-all-events | posterior | mixture");
  bench_cmd->add_option("--seed", o.bench_seed);
  bench_cmd->add_option("--csv", o.csv_file);
  bench_cmd->add_option("--repetitions", o.repetitions);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) {
      err << sub->help();
    }
    return kExitUsage;
  }
  o.gen.strict = !relaxed;

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (infer_cmd->parsed()) return cmd_infer(o, out);
    if (posterior_cmd->parsed()) return cmd_posterior(o, out);
    if (update_cmd->parsed()) return cmd_update(o, out);
    if (generate_cmd->parsed()) return cmd_generate(o, out);
    if (oracle_cmd->parsed()) return cmd_oracle_check(o, out);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mdse::cli
