#include "autostruct/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <ostream>

#include "autostruct/aut_format.hpp"
#include "autostruct/error.hpp"
#include "autostruct/manifest.hpp"
#include "autostruct/order_analysis.hpp"
#include "autostruct/structure_analysis.hpp"

namespace autostruct {

namespace {

struct Invocation {
  std::string structure;
  std::string formula;
  std::string formula_file;
  std::string output;
  std::string dot;
  std::string path;
  std::string order = "Le";
  std::size_t count = 10;
  std::size_t state_cap = CompileOptions{}.state_cap;
  std::size_t iter_cap = 64;
};

void add_caps(CLI::App* app, Invocation& inv) {
  app->add_option("--state-cap", inv.state_cap, "Largest intermediate automaton, in states")
      ->capture_default_str();
  app->add_option("--iter-cap", inv.iter_cap,
                  "Cap on ≡_F quotient iterations and CNF depth (order), or on the B_ω^n index (ba)")
      ->capture_default_str();
}

void add_structure(CLI::App* app, Invocation& inv) {
  app->add_option("structure", inv.structure, ".astruct manifest")->required()->check(CLI::ExistingFile);
}

void add_formula(CLI::App* app, Invocation& inv) {
  auto* text = app->add_option("formula", inv.formula, "Formula text");
  auto* file = app->add_option("-f,--formula-file", inv.formula_file, "Read the formula from a file")
                   ->check(CLI::ExistingFile);
  text->excludes(file);
}

CompileOptions compile_options(const Invocation& inv) { return CompileOptions{inv.state_cap}; }

std::string formula_text(const Invocation& inv) {
  if (inv.formula_file.empty()) {
    if (inv.formula.empty()) throw InvalidArgument("a formula is required, as text or with --formula-file");
    return inv.formula;
  }
  auto text = read_text_file(inv.formula_file);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

Presentation structure(const Invocation& inv) { return load_structure(inv.structure, compile_options(inv)); }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

int cmd_decide(const Invocation& inv, std::ostream& out) {
  const bool truth = decide(structure(inv), formula_text(inv), compile_options(inv));
  out << (truth ? "true" : "false") << '\n';
  return truth ? exit_true : exit_false;
}

int cmd_compile(const Invocation& inv, std::ostream& out, std::ostream& err) {
  auto f = compile(structure(inv), formula_text(inv), compile_options(inv));
  if (f.is_sentence()) {
    err << "error: the formula is a sentence (" << (f.truth ? "true" : "false") << "); use decide\n";
    return exit_error;
  }
  write_text_file(inv.output, format_aut(*f.relation));
  if (!inv.dot.empty()) write_text_file(inv.dot, to_dot(f.relation->dfa(), "relation"));
  out << "states: " << f.relation->dfa().num_states() << '\n';
  out << "variables:";
  for (const auto& v : f.variables) out << ' ' << v;
  out << '\n';
  return exit_true;
}

int cmd_witness(const Invocation& inv, std::ostream& out) {
  auto p = structure(inv);
  const auto text = formula_text(inv);
  auto w = witness(p, text, inv.count, compile_options(inv));
  if (inv.count == 0) return exit_true;
  if (w.rows.empty()) return exit_false;
  for (const auto& row : w.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << w.variables[i] << '=' << quoted(row[i]);
    out << '\n';
  }
  return exit_true;
}

int cmd_order(const Invocation& inv, std::ostream& out) {
  OrderOptions o;
  o.order = inv.order;
  o.iteration_cap = inv.iter_cap;
  o.compile = compile_options(inv);
  out << format_report(analyze_order(structure(inv), o));
  return exit_true;
}

int cmd_tree(const Invocation& inv, std::ostream& out) {
  TreeOptions o;
  o.order = inv.order;
  o.compile = compile_options(inv);
  auto r = analyze_tree(structure(inv), o);
  out << "tree: true\n";
  out << "finitely_branching: " << (r.finitely_branching ? "true" : "false") << '\n';
  out << "infinite: " << (r.infinite ? "true" : "false") << '\n';
  if (!r.path) {
    out << "koenig_path: none\n";
  } else if (inv.path.empty()) {
    out << "koenig_path: found\n";
  } else {
    write_text_file(inv.path, format_aut(*r.path));
    out << "koenig_path: " << inv.path << '\n';
  }
  return exit_true;
}

int cmd_ba(const Invocation& inv, std::ostream& out) {
  BooleanOptions o;
  o.index_cap = static_cast<unsigned>(std::min<std::size_t>(inv.iter_cap, 62));
  o.compile = compile_options(inv);
  auto p = structure(inv);
  check_boolean_algebra(p, o);
  out << "boolean_algebra: true\n";
  const auto n = bomega_index(p, o);
  out << "ba_index: " << n << '\n';
  if (n == 0)
    if (auto atoms = atom_count(p, o)) out << "atoms: " << *atoms << '\n';
  return exit_true;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for automatic structures", "autostruct"};
  app.require_subcommand(1);
  Invocation inv;
  std::function<int()> run;

  auto* decide_cmd = app.add_subcommand("decide", "Decide a first-order sentence (exit 0 true, 1 false)");
  add_structure(decide_cmd, inv);
  add_formula(decide_cmd, inv);
  add_caps(decide_cmd, inv);
  decide_cmd->final_callback([&] { run = [&] { return cmd_decide(inv, out); }; });

  auto* compile_cmd = app.add_subcommand("compile", "Write the automaton of a formula's satisfying tuples");
  add_structure(compile_cmd, inv);
  add_formula(compile_cmd, inv);
  compile_cmd->add_option("-o,--output", inv.output, "Output .aut file")->required();
  compile_cmd->add_option("--dot", inv.dot, "Also write a Graphviz file");
  add_caps(compile_cmd, inv);
  compile_cmd->final_callback([&] { run = [&] { return cmd_compile(inv, out, err); }; });

  auto* witness_cmd = app.add_subcommand("witness", "Print length-lexicographically least satisfying tuples");
  add_structure(witness_cmd, inv);
  add_formula(witness_cmd, inv);
  witness_cmd->add_option("-n,--count", inv.count, "Number of tuples")->capture_default_str();
  add_caps(witness_cmd, inv);
  witness_cmd->final_callback([&] { run = [&] { return cmd_witness(inv, out); }; });

  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a linear order, tree or Boolean algebra");
  analyze_cmd->require_subcommand(1);
  auto* order_cmd = analyze_cmd->add_subcommand("order", "CB rank, scatteredness, ordinals and their CNF");
  auto* tree_cmd = analyze_cmd->add_subcommand("tree", "Branching and the leftmost infinite path");
  auto* ba_cmd = analyze_cmd->add_subcommand("ba", "Boolean algebra axioms and the B_ω^n index");
  for (auto* c : {order_cmd, tree_cmd, ba_cmd}) {
    add_structure(c, inv);
    add_caps(c, inv);
  }
  for (auto* c : {order_cmd, tree_cmd})
    c->add_option("--order", inv.order, "Name of the order relation")->capture_default_str();
  tree_cmd->add_option("--path", inv.path, "Write the path automaton here");
  order_cmd->final_callback([&] { run = [&] { return cmd_order(inv, out); }; });
  tree_cmd->final_callback([&] { run = [&] { return cmd_tree(inv, out); }; });
  ba_cmd->final_callback([&] { run = [&] { return cmd_ba(inv, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_true;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_true;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }

  if (!run) return exit_error;
  try {
    return run();
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << '\n';
    if (!e.axiom().empty()) err << "failed axiom: " << e.axiom() << '\n';
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    if (!e.subformula().empty()) err << "in subformula: " << e.subformula() << '\n';
  } catch (const std::bad_alloc&) {
    err << "error: out of memory; lower --state-cap\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_error;
}

}  // namespace autostruct
