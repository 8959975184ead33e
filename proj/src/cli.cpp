#include "aoe/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoe/bench.hpp"
#include "aoe/canonicalize.hpp"
#include "aoe/io.hpp"
#include "aoe/oracle.hpp"
#include "aoe/reachability.hpp"
#include "aoe/simplify.hpp"
#include "aoe/timeline.hpp"

namespace aoe {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + path);
  f << text;
}

// `simplify` accepts either format; an AoN document is expanded first.
AoeGraph load_as_aoe(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("tasks")) return expand_aon(parse_aon(text));
  return parse_aoe(text);
}

const char* kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Rule1Forward: return "rule1f merge";
    case RuleKind::Rule1Backward: return "rule1b merge";
    case RuleKind::Rule2: return "rule2 remove";
    case RuleKind::Rule3: return "rule3 merge";
  }
  return "?";
}

std::string format_trace(const std::vector<RuleApplication>& trace) {
  std::ostringstream os;
  for (const RuleApplication& r : trace)
    os << kind_name(r.kind) << ' ' << r.u << ' ' << r.v << '\n';
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"activity-on-edge project graph tools"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, trace_path, durations_path, levels_path;
  std::string engine = "optimized";
  int tasks = 0;
  int max_tasks = 400;
  double density = 0.2;
  std::uint64_t seed = 1;

  CLI::App* expand = app.add_subcommand("expand", "expand an AoN file to a canonical AOE");
  expand->add_option("aon", in_path, "AoN JSON file")->required();
  expand->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* simplify = app.add_subcommand("simplify", "simplify an AOE (or AoN) file");
  simplify->add_option("input", in_path, "AOE or AoN JSON file")->required();
  simplify->add_option("--engine", engine, "naive|optimized (default optimized)")
      ->check(CLI::IsMember({"naive", "optimized"}));
  simplify->add_option("--trace", trace_path, "write the rewrite trace to a file");
  simplify->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* check = app.add_subcommand("check", "test two AOE files for equivalence");
  check->add_option("first", in_path, "AOE JSON file")->required();
  check->add_option("second", in_path2, "AOE JSON file")->required();

  CLI::App* minimize = app.add_subcommand("minimize", "expand an AoN file and simplify");
  minimize->add_option("aon", in_path, "AoN JSON file")->required();
  minimize->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* levels = app.add_subcommand("levels", "schedule an AOE under task durations");
  levels->add_option("aoe", in_path, "AOE JSON file")->required();
  levels->add_option("--durations", durations_path, "JSON object of durations")
      ->required();
  levels->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* dot = app.add_subcommand("dot", "emit Graphviz DOT for an AOE file");
  dot->add_option("aoe", in_path, "AOE JSON file")->required();
  dot->add_option("--levels", levels_path, "timeline JSON to annotate levels");
  dot->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* gen = app.add_subcommand("gen", "generate a random AoN project");
  gen->add_option("--tasks", tasks, "number of tasks")->required();
  gen->add_option("--density", density, "pair probability (default 0.2)");
  gen->add_option("--seed", seed, "random seed (default 1)");
  gen->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "time both engines over growing sizes");
  bench->add_option("--max-tasks", max_tasks, "largest size (default 400)");
  bench->add_option("--density", density, "pair probability (default 0.2)");
  bench->add_option("--seed", seed, "random seed (default 1)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("aoemin");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (expand->parsed()) {
      write_output(out_path, emit_aoe(expand_aon(parse_aon(read_file(in_path)))), out);
      return 0;
    }
    if (simplify->parsed()) {
      const AoeGraph g = load_as_aoe(read_file(in_path));
      const SimplifyResult res =
          engine == "naive" ? simplify_naive(g) : simplify_optimized(g);
      if (!trace_path.empty())
        write_output(trace_path, format_trace(res.trace), out);
      write_output(out_path, emit_aoe(res.graph), out);
      return 0;
    }
    if (check->parsed()) {
      const AoeGraph g = parse_aoe(read_file(in_path));
      const AoeGraph h = parse_aoe(read_file(in_path2));
      const bool eq = equivalent(g, h);
      out << (eq ? "equivalent" : "not equivalent") << "\n";
      return eq ? 0 : 1;
    }
    if (minimize->parsed()) {
      const AoeGraph g = expand_aon(parse_aon(read_file(in_path)));
      write_output(out_path, emit_aoe(simplify_optimized(g).graph), out);
      return 0;
    }
    if (levels->parsed()) {
      const AoeGraph g = parse_aoe(read_file(in_path));
      const DurationMap d = parse_durations(read_file(durations_path));
      write_output(out_path, emit_timeline(schedule(g, d)), out);
      return 0;
    }
    if (dot->parsed()) {
      const AoeGraph g = parse_aoe(read_file(in_path));
      if (levels_path.empty()) {
        write_output(out_path, emit_dot(g), out);
      } else {
        const Timeline t = parse_timeline(read_file(levels_path));
        write_output(out_path, emit_dot(g, &t), out);
      }
      return 0;
    }
    if (gen->parsed()) {
      const PosetSpec p = random_poset(tasks, density, seed);
      write_output(out_path, emit_aon(p.to_aon()), out);
      return 0;
    }
    if (bench->parsed()) {
      out << format_bench_table(run_bench(max_tasks, density, seed));
      return 0;
    }
  } catch (const AoeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace aoe
