// schlice :: command-line front end
//
// Subcommands: check, paths, exec, project, check-pfds, check-ds,
// find-slices, gen-3sat, round-trip, corpus. Exit status 0 means the
// analysis completed with ACCEPT/true where a verdict applies, 1 means it
// completed with REJECT/false, 2 means a usage or input error. The
// SCHLICE_BUDGET environment variable overrides the lattice-search budget.
#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schlice/corpus.hpp"
#include "schlice/gadget.hpp"
#include "schlice/parse.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/reduce.hpp"
#include "schlice/sat.hpp"
#include "schlice/slice.hpp"

namespace schlice::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ParsedSchema load_schema(const std::string& file, std::ostream& err) {
  ParsedSchema parsed = parse_schema(read_file(file));
  if (!parsed.linearity.ok) {
    err << "warning: " << file << " is not linear; repeated:";
    for (const auto& name : parsed.linearity.repeated) err << " " << name;
    err << "\n";
  }
  return parsed;
}

// Inline path text wins over a path file, with a warning.
inline Path load_path(const std::string& inline_text, const std::string& file,
                      const SchemaPtr& schema, std::ostream& err) {
  if (!inline_text.empty() && !file.empty())
    err << "warning: both --path and --path-file given; inline path wins\n";
  if (!inline_text.empty()) return parse_path(inline_text, schema);
  if (!file.empty()) return parse_path(read_file(file), schema);
  throw PathError("a path is required (--path or --path-file)");
}

inline std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Trailing label of the schema, for the end-slice convention.
inline std::optional<std::string> trailing_label(const SchemaPtr& schema) {
  if (schema->kind() == NodeKind::Label) return schema->name();
  if (schema->kind() == NodeKind::Seq && schema->children().back()->kind() == NodeKind::Label)
    return schema->children().back()->name();
  return std::nullopt;
}

inline std::string resolve_label(const std::string& flag, const SchemaPtr& schema) {
  if (!flag.empty()) return flag;
  if (auto label = trailing_label(schema)) return *label;
  throw CriterionError("no --label given and the schema does not end with one");
}

inline int default_budget() {
  if (const char* env = std::getenv("SCHLICE_BUDGET")) {
    int value = std::atoi(env);
    if (value > 0) return value;
  }
  return 24;
}

inline std::string symbol_set_line(const std::set<std::string>& symbols) {
  std::string line = "{";
  bool first = true;
  for (const auto& name : symbols) {
    if (!first) line += ",";
    line += name;
    first = false;
  }
  return line + "}";
}

inline void dump_verdict(const SliceVerdict& verdict, const TermStore& store,
                         bool machine, std::ostream& out) {
  out << verdict.machine_line(store) << "\n";
  if (machine) return;
  if (verdict.accepted) {
    for (const auto& tau : verdict.taus) {
      out << "  compatible path: " << print_path(tau.tau)
          << (tau.terminal ? " (terminal)" : " (cut at cap)") << "\n";
      out << "    reducible prefix of length " << tau.prefix_len << " via "
          << tau.steps.size() << " reduction step(s)\n";
      std::istringstream steps(print_reduction_steps(tau.steps));
      std::string line;
      while (std::getline(steps, line)) out << "    " << line << "\n";
    }
    return;
  }
  switch (verdict.kind) {
    case SliceVerdict::Reject::Mismatch:
      out << "  variable " << verdict.var << " defines "
          << store.to_string(verdict.got) << " in the slice but "
          << store.to_string(verdict.expected) << " along the criterion path\n";
      if (!verdict.failing_path.empty())
        out << "  on compatible path: " << print_path(verdict.failing_path) << "\n";
      break;
    case SliceVerdict::Reject::Consequence:
      out << "  " << verdict.missing->to_string(store)
          << " is forced by the projected path (predicate letter #"
          << verdict.missing_pos << ") but not by the criterion path\n";
      break;
    case SliceVerdict::Reject::Path:
      out << "  compatible maximal path with no reducible labeled prefix: "
          << print_path(verdict.failing_path) << "\n";
      break;
    default:
      break;
  }
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"linear schema slicing toolkit"};
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "machine"}));

  std::string schema_file, quotient_file, path_text, path_file, vars_csv, label;
  std::string cnf_file, out_prefix, mode = "pfds", want = "exists";
  std::size_t max_len = 8;
  int budget = detail::default_budget();
  bool definitional = false;

  CLI::App* cmd_check = app.add_subcommand("check", "parse a schema and report linearity");
  cmd_check->add_option("--schema", schema_file)->required();

  CLI::App* cmd_paths = app.add_subcommand("paths", "enumerate bounded paths");
  cmd_paths->add_option("--schema", schema_file)->required();
  cmd_paths->add_option("--max-len", max_len);

  CLI::App* cmd_exec = app.add_subcommand("exec", "final terms and consequences of a path");
  cmd_exec->add_option("--schema", schema_file)->required();
  cmd_exec->add_option("--path", path_text);
  cmd_exec->add_option("--path-file", path_file);
  cmd_exec->add_option("--vars", vars_csv);

  CLI::App* cmd_project = app.add_subcommand("project", "project a path onto a quotient");
  cmd_project->add_option("--schema", schema_file)->required();
  cmd_project->add_option("--quotient", quotient_file)->required();
  cmd_project->add_option("--path", path_text);
  cmd_project->add_option("--path-file", path_file);

  auto add_criterion_flags = [&](CLI::App* cmd, bool with_quotient) {
    cmd->add_option("--schema", schema_file)->required();
    if (with_quotient) cmd->add_option("--quotient", quotient_file)->required();
    cmd->add_option("--path", path_text);
    cmd->add_option("--path-file", path_file);
    cmd->add_option("--vars", vars_csv)->required();
    cmd->add_option("--label", label);
  };
  CLI::App* cmd_pfds = app.add_subcommand("check-pfds", "path-faithful dynamic slice check");
  add_criterion_flags(cmd_pfds, true);
  cmd_pfds->add_flag("--definitional", definitional,
                     "use the definitional compatible-path check");
  CLI::App* cmd_ds = app.add_subcommand("check-ds", "dynamic slice check");
  add_criterion_flags(cmd_ds, true);

  CLI::App* cmd_find = app.add_subcommand("find-slices", "search the quotient lattice");
  add_criterion_flags(cmd_find, false);
  cmd_find->add_option("--mode", mode)->check(CLI::IsMember({"pfds", "ds"}));
  cmd_find->add_option("--want", want)->check(CLI::IsMember({"exists", "minimal"}));
  cmd_find->add_option("--budget", budget);

  CLI::App* cmd_gen = app.add_subcommand("gen-3sat", "emit the 3SAT reduction gadget");
  cmd_gen->add_option("--cnf", cnf_file)->required();
  cmd_gen->add_option("--out", out_prefix)->required();

  CLI::App* cmd_round = app.add_subcommand("round-trip", "gadget existence vs brute-force SAT");
  cmd_round->add_option("--cnf", cnf_file)->required();
  cmd_round->add_option("--budget", budget);

  app.add_subcommand("corpus", "run the built-in worked examples");

  // app-level flags like --format may follow the subcommand
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("schlice");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    int code = app.exit(e, sink, sink);
    (code == 0 ? out : err) << sink.str();
    return code == 0 ? 0 : 2;
  }

  const bool machine = format == "machine";
  TermStore store;
  try {
    if (cmd_check->parsed()) {
      ParsedSchema parsed = parse_schema(detail::read_file(schema_file));
      if (parsed.linearity.ok) {
        out << (machine ? "linear" : "linear schema, ")
            << (machine ? std::string() : std::to_string(site_count(parsed.schema)) + " sites")
            << "\n";
        return 0;
      }
      out << (machine ? "nonlinear" : "not linear; repeated:");
      for (const auto& name : parsed.linearity.repeated) out << " " << name;
      out << "\n";
      return 1;
    }

    if (cmd_paths->parsed()) {
      ParsedSchema parsed = detail::load_schema(schema_file, err);
      for (const EnumeratedPath& p : enumerate_paths(parsed.schema, max_len))
        out << (p.terminal ? "terminal" : "prefix") << "\t" << print_path(p.path) << "\n";
      return 0;
    }

    if (cmd_exec->parsed()) {
      ParsedSchema parsed = detail::load_schema(schema_file, err);
      Path path = detail::load_path(path_text, path_file, parsed.schema, err);
      require_valid_path(parsed.schema, path, "exec");
      HerbrandState state = run_predicate_free(store, path);
      std::vector<std::string> vars = detail::split_csv(vars_csv);
      if (vars.empty())
        vars.assign(parsed.symbols.variables().begin(), parsed.symbols.variables().end());
      for (const auto& v : vars) {
        if (machine)
          out << "final " << v << "=" << store.to_string(state.get(store, v)) << "\n";
        else
          out << v << " = " << store.to_string(state.get(store, v)) << "\n";
      }
      std::vector<Consequence> facts = consequences_of_word(store, path);
      if (!machine && !facts.empty()) out << "consequences:\n";
      for (const Consequence& c : facts)
        out << (machine ? "consequence " : "  ") << c.to_string(store) << "\n";
      return 0;
    }

    if (cmd_project->parsed()) {
      ParsedSchema parsed = detail::load_schema(schema_file, err);
      ParsedSchema quotient = detail::load_schema(quotient_file, err);
      Path path = detail::load_path(path_text, path_file, parsed.schema, err);
      out << print_path(project(parsed.schema, quotient.schema, path)) << "\n";
      return 0;
    }

    if (cmd_pfds->parsed() || cmd_ds->parsed()) {
      ParsedSchema parsed = detail::load_schema(schema_file, err);
      ParsedSchema quotient = detail::load_schema(quotient_file, err);
      Path path = detail::load_path(path_text, path_file, parsed.schema, err);
      SliceCriterion crit =
          make_criterion(store, parsed.schema, path, detail::split_csv(vars_csv),
                         detail::resolve_label(label, parsed.schema));
      SliceVerdict verdict;
      if (cmd_ds->parsed())
        verdict = check_ds(store, crit, quotient.schema);
      else if (definitional)
        verdict = check_pfds_definitional(store, crit, quotient.schema);
      else
        verdict = check_pfds(store, crit, quotient.schema);
      detail::dump_verdict(verdict, store, machine, out);
      return verdict.accepted ? 0 : 1;
    }

    if (cmd_find->parsed()) {
      ParsedSchema parsed = detail::load_schema(schema_file, err);
      Path path = detail::load_path(path_text, path_file, parsed.schema, err);
      SliceCriterion crit =
          make_criterion(store, parsed.schema, path, detail::split_csv(vars_csv),
                         detail::resolve_label(label, parsed.schema));
      FindSlicesOptions options;
      options.mode = mode == "ds" ? SliceMode::Ds : SliceMode::Pfds;
      options.want = want == "minimal" ? SliceWant::AllMinimal : SliceWant::ExistsNonTrivial;
      options.budget_sites = budget;
      FindSlicesReport report = find_slices(store, crit, options);
      if (options.want == SliceWant::ExistsNonTrivial) {
        out << "exists " << (report.exists ? "true" : "false") << "\n";
        if (report.witness)
          out << "witness " << detail::symbol_set_line(report.witness->retained_symbols)
              << "\n";
        if (!machine && report.witness) out << print_schema(report.witness->schema);
        return report.exists ? 0 : 1;
      }
      for (const FoundSlice& f : report.minimal)
        out << detail::symbol_set_line(f.retained_symbols) << "\n";
      return 0;
    }

    if (cmd_gen->parsed()) {
      Cnf3 cnf = parse_dimacs(detail::read_file(cnf_file));
      GadgetInstance g = generate_3sat_gadget(cnf);
      std::ofstream(out_prefix + ".schema") << print_schema(g.schema);
      std::ofstream(out_prefix + ".path") << print_path(g.rho) << "\n";
      std::ofstream(out_prefix + ".criterion")
          << "label=" << g.label << "\nvars=" << g.criterion_var << "\n";
      out << "wrote " << out_prefix << ".schema " << out_prefix << ".path "
          << out_prefix << ".criterion (" << g.body_entries << " loop entries)\n";
      return 0;
    }

    if (cmd_round->parsed()) {
      Cnf3 cnf = parse_dimacs(detail::read_file(cnf_file));
      RoundTripReport report = round_trip(store, cnf, budget);
      out << "sat=" << (report.sat.satisfiable ? "true" : "false")
          << " pfds=" << (report.pfds_exists ? "true" : "false")
          << " ds=" << (report.ds_exists ? "true" : "false");
      if (report.sat.satisfiable)
        out << " witness=" << (report.witness_checked ? "ok" : "bad");
      out << " agree=" << (report.agree ? "true" : "false") << "\n";
      return report.agree ? 0 : 1;
    }

    // corpus
    std::vector<CorpusResult> results = run_corpus(store);
    bool all = true;
    for (const CorpusResult& r : results) {
      out << (r.pass ? "PASS" : "FAIL") << " " << r.name;
      if (!machine) out << " - " << r.detail;
      out << "\n";
      all = all && r.pass;
    }
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace schlice::cli
