// wlgnn command line front end. Vertex numbers on the command line and in
// output are 1-based, matching the graph file format.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "wlgnn/evaluate.hpp"
#include "wlgnn/express.hpp"
#include "wlgnn/fragment.hpp"
#include "wlgnn/gc2_compiler.hpp"
#include "wlgnn/gnn.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/model_io.hpp"
#include "wlgnn/report.hpp"
#include "wlgnn/sexpr.hpp"
#include "wlgnn/suites.hpp"
#include "wlgnn/synthesize.hpp"
#include "wlgnn/wl.hpp"
#include "wlgnn/wl_gnn.hpp"

using namespace wlgnn;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string tuple_text(const Colouring& c, std::size_t idx) {
  const auto t = c.tuple(idx);
  if (t.size() == 1) return std::to_string(t[0] + 1);
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + ")";
}

// One line per round, then the requested detail. Classes are numbered by
// first occurrence so the report does not depend on interner state.
void emit_run(const WlRun& r, const std::string& emit, std::ostream& os) {
  auto classes = [&](const Colouring& c) {
    const auto canon = canonical_partition(c.ids);
    const auto parts = partition_classes(c.ids);
    for (const auto& part : parts) {
      os << "  class " << canon[part.front()] << ":";
      for (auto idx : part) os << ' ' << tuple_text(c, idx);
      os << '\n';
    }
  };
  for (std::size_t t = 0; t <= r.last_round(); ++t) {
    os << "round " << t << ": " << class_count(r.at(t)) << " classes\n";
    if (emit == "trace") classes(r.at(t));
  }
  if (r.stable_round) os << "stable at round " << *r.stable_round << (r.stability_verified ? " (verified)" : "") << '\n';
  if (emit == "partition") classes(r.final());
  if (emit == "hat") {
    const auto canon = canonical_partition(r.final().ids);
    std::map<std::uint32_t, std::size_t> sizes;
    for (auto c : canon) ++sizes[c];
    os << "hat:";
    for (const auto& [c, m] : sizes) os << " " << c << "^" << m;
    os << '\n';
  }
}

std::string row_text(const FeatureMap& z, std::size_t v) {
  std::string s;
  for (std::size_t i = 0; i < z.dim; ++i) {
    if (i) s += ' ';
    if (z.mode == NumericMode::Rational) s += to_string(z.exact[v][i]);
    else {
      std::ostringstream os;
      os.precision(17);
      os << z.approx[v][i];
      s += os.str();
    }
  }
  return s;
}

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--assign", "expected var=vertex, got '" + item + "'");
    const long v = std::stol(item.substr(eq + 1));
    if (v < 1) throw CLI::ValidationError("--assign", "vertices are numbered from 1");
    a[item.substr(0, eq)] = static_cast<Vertex>(v - 1);
  }
  return a;
}

std::vector<Graph> read_corpus_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".gr") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Graph> out;
  for (const auto& f : files) out.push_back(read_graph_file(f));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weisfeiler-Leman, counting logic and GNN toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // cr / wl / owl
  struct RefineArgs {
    std::string graph, rounds = "auto", emit = "partition";
    std::size_t k = 1;
  };
  std::vector<std::pair<std::string, Algorithm>> algos{
      {"cr", Algorithm::ColourRefinement}, {"wl", Algorithm::WL}, {"owl", Algorithm::OWL}};
  std::map<std::string, RefineArgs> refine_args;
  for (const auto& [name, algo] : algos) {
    auto& a = refine_args[name];
    auto* cmd = app.add_subcommand(name, "run " + algorithm_name(algo, algo == Algorithm::OWL ? 2 : 1) + " style refinement");
    cmd->add_option("--graph", a.graph, "graph file")->required()->check(CLI::ExistingFile);
    if (algo != Algorithm::ColourRefinement) cmd->add_option("-k", a.k, "tuple arity")->check(CLI::PositiveNumber);
    cmd->add_option("--rounds", a.rounds, "round count or 'auto'");
    cmd->add_option("--emit", a.emit, "partition, trace or hat")->check(CLI::IsMember({"partition", "trace", "hat"}));
    cmd->callback([&, algo = algo, name = name] {
      const auto& a = refine_args[name];
      const Graph g = read_graph_file(a.graph);
      WlOptions o;
      if (a.rounds != "auto") {
        o.max_rounds = std::stoul(a.rounds);
        o.stop_when_stable = false;
      }
      const WlRun r = algo == Algorithm::ColourRefinement ? colour_refinement(g, o)
                      : algo == Algorithm::WL            ? wl(g, a.k, o)
                                                         : owl(g, a.k, o);
      emit_run(r, a.emit, std::cout);
    });
  }

  // logic
  auto* logic = app.add_subcommand("logic", "counting-logic tools");
  logic->require_subcommand(1);
  std::string ev_formula, ev_graph, ev_assign;
  auto* eval = logic->add_subcommand("eval", "evaluate a formula on a graph");
  eval->add_option("-f", ev_formula, "formula file (s-expression)")->required()->check(CLI::ExistingFile);
  eval->add_option("-g", ev_graph, "graph file")->required()->check(CLI::ExistingFile);
  eval->add_option("--assign", ev_assign, "x=3,y=1 (1-based vertices)");
  eval->callback([&] {
    const Formula f = parse_formula(read_text(ev_formula));
    const Graph g = read_graph_file(ev_graph);
    Assignment a = ev_assign.empty() ? Assignment{} : parse_assignment(ev_assign);
    std::vector<std::string> open;
    for (const auto& v : f->free)
      if (!a.contains(v)) open.push_back(v);
    if (open.empty()) {
      std::cout << (evaluate(f, g, a) ? "true" : "false") << '\n';
    } else if (open.size() == 1) {
      for (Vertex v = 0; v < g.order(); ++v) {
        a[open[0]] = v;
        std::cout << open[0] << "=" << v + 1 << ": " << (evaluate(f, g, a) ? "true" : "false") << '\n';
      }
    } else {
      throw CLI::ValidationError("--assign", "more than one free variable left unassigned");
    }
  });
  std::string sy_g, sy_h, sy_out;
  std::size_t sy_v = 1, sy_w = 1, sy_t = 1;
  auto* synth = logic->add_subcommand("synth", "synthesize a guarded formula separating two vertices");
  synth->add_option("-g", sy_g, "first graph")->required()->check(CLI::ExistingFile);
  synth->add_option("-v", sy_v, "vertex of the first graph")->required()->check(CLI::PositiveNumber);
  synth->add_option("-G", sy_h, "second graph")->required()->check(CLI::ExistingFile);
  synth->add_option("-V", sy_w, "vertex of the second graph")->required()->check(CLI::PositiveNumber);
  synth->add_option("-t", sy_t, "refinement rounds")->required();
  synth->add_option("-o", sy_out, "output formula file");
  synth->callback([&] {
    const Graph g = read_graph_file(sy_g), h = read_graph_file(sy_h);
    if (sy_v > g.order() || sy_w > h.order()) throw CLI::ValidationError("-v/-V", "vertex out of range");
    const auto r = synthesize_distinguishing_formula(g, static_cast<Vertex>(sy_v - 1), h, static_cast<Vertex>(sy_w - 1), sy_t);
    if (!r.distinguished) {
      std::cout << "not distinguished after " << sy_t << " rounds\n";
      exit_code = 1;
      return;
    }
    const auto text = to_sexpr(r.formula);
    if (sy_out.empty()) std::cout << text << '\n';
    else write_text(sy_out, text + "\n");
    std::cout << "rank " << r.rank << ", dag nodes " << r.dag_nodes << ", tree nodes " << r.tree_nodes << '\n';
  });

  // gnn run
  auto* gnn = app.add_subcommand("gnn", "GNN simulator");
  gnn->require_subcommand(1);
  std::string gr_model, gr_graph;
  std::uint64_t gr_seed = 1;
  std::size_t gr_trials = 1;
  auto* grun = gnn->add_subcommand("run", "run a model file on a graph");
  grun->add_option("--model", gr_model, "model JSON")->required()->check(CLI::ExistingFile);
  grun->add_option("--graph", gr_graph, "graph file")->required()->check(CLI::ExistingFile);
  grun->add_option("--seed", gr_seed, "seed for random node initialisation");
  grun->add_option("--trials", gr_trials, "number of random trials")->check(CLI::PositiveNumber);
  grun->callback([&] {
    const GnnModel m = read_model_file(gr_model);
    const Graph g = read_graph_file(gr_graph);
    const std::size_t trials = m.rni_padding ? gr_trials : 1;
    for (std::size_t t = 0; t < trials; ++t) {
      RunOptions o;
      o.seed = trials > 1 ? trial_seed(gr_seed, t, 0) : gr_seed;
      const auto r = run(m, g, o);
      if (trials > 1) std::cout << "trial " << t << '\n';
      for (Vertex v = 0; v < g.order(); ++v) std::cout << v + 1 << ": " << row_text(r.vertex_output, v) << '\n';
      if (r.graph_output_exact || r.graph_output_approx) {
        FeatureMap gm;
        gm.mode = m.mode;
        if (r.graph_output_exact) {
          gm.dim = r.graph_output_exact->size();
          gm.exact.push_back(*r.graph_output_exact);
        } else {
          gm.dim = r.graph_output_approx->size();
          gm.approx.push_back(*r.graph_output_approx);
        }
        std::cout << "graph: " << row_text(gm, 0) << '\n';
      }
    }
  });

  // build wl-gnn
  auto* build = app.add_subcommand("build", "constructive model builders");
  build->require_subcommand(1);
  std::size_t b_n = 0, b_labels = 0;
  bool b_global = false;
  std::string b_out;
  auto* bwl = build->add_subcommand("wl-gnn", "GNN whose features track colour refinement (or wl^1 with --global-readout)");
  bwl->add_option("-n", b_n, "maximum graph order")->required()->check(CLI::PositiveNumber);
  bwl->add_option("--labels", b_labels, "number of vertex labels");
  bwl->add_flag("--global-readout", b_global, "use global readout to follow wl^1");
  bwl->add_option("-o", b_out, "output model file")->required();
  bwl->callback([&] {
    write_model_file(b_global ? build_wl1_gnn(b_n, b_labels) : build_wl_gnn(b_n, b_labels), b_out);
  });

  // compile
  std::string c_formula, c_out, c_corpus;
  std::size_t c_labels = 0;
  auto* comp = app.add_subcommand("compile", "compile a guarded two-variable counting formula to a GNN");
  comp->add_option("-f", c_formula, "formula file")->required()->check(CLI::ExistingFile);
  comp->add_option("-o", c_out, "output model file")->required();
  comp->add_option("--labels", c_labels, "number of vertex labels (raised to cover the formula)");
  comp->add_option("--certify", c_corpus, "directory of .gr files to certify against")->check(CLI::ExistingDirectory);
  comp->callback([&] {
    const Formula f = parse_formula(read_text(c_formula));
    // The model's input width must cover every label the corpus uses.
    const std::vector<Graph> corpus = c_corpus.empty() ? std::vector<Graph>{} : read_corpus_dir(c_corpus);
    std::size_t labels = c_labels;
    for (const auto& g : corpus) labels = std::max(labels, g.label_count());
    const auto c = compile_formula(f, labels);
    write_model_file(c.model, c_out);
    std::cout << "plan: " << c.plan.labels << " labels, " << c.plan.operation_count() << " operations, "
              << c.model.layers.size() << " layers\n";
    if (c_corpus.empty()) return;
    const auto cert = certify(c, corpus);
    if (cert.pass) {
      std::cout << "certified on " << cert.graphs << " graphs, " << cert.vertices << " vertices, " << cert.checks
                << " checks" << (cert.vacuous ? " (vacuous: empty corpus)" : "") << '\n';
    } else {
      const auto& fl = *cert.failure;
      std::cout << "certification failed: graph " << fl.graph << " vertex " << fl.vertex + 1 << " layer " << fl.layer
                << " coordinate " << fl.coordinate << " (" << fl.subformula << ") expected " << fl.expected << " got "
                << fl.got << '\n';
      exit_code = 1;
    }
  });

  // verify
  std::vector<std::string> v_suites;
  bool v_all = false, v_fault = false, v_timings = false;
  std::size_t v_n = 0, v_trials = 0;
  std::uint64_t v_seed = 1;
  std::string v_emit = "text", v_out, v_dump = "counterexamples";
  auto* ver = app.add_subcommand("verify", "run property suites");
  auto* suite_opt = ver->add_option("--suite", v_suites, "suite id (repeatable)");
  ver->add_flag("--all", v_all, "run every suite")->excludes(suite_opt);
  ver->add_option("--n", v_n, "graph order bound (0 = suite default)");
  ver->add_option("--trials", v_trials, "trial count (0 = suite default)");
  ver->add_option("--seed", v_seed, "random seed");
  ver->add_option("--emit", v_emit, "text or json");
  ver->add_option("--out", v_out, "write the report to a file");
  ver->add_option("--dump-dir", v_dump, "directory for counterexample graphs");
  ver->add_flag("--timings", v_timings, "include timings in the report");
  ver->add_flag("--inject-fault", v_fault, "deliberately break the compiled model (compile-exact only)");
  ver->callback([&] {
    const auto format = parse_report_format(v_emit);
    if (v_all)
      for (const auto& s : suite_catalogue()) v_suites.push_back(s.id);
    if (v_suites.empty()) throw CLI::ValidationError("verify", "give --suite ID or --all");
    std::vector<SuiteSpec> specs;
    for (const auto& id : v_suites) {
      SuiteSpec s;
      s.id = id;
      s.n = v_n;
      s.trials = v_trials;
      s.seed = v_seed;
      s.inject_fault = v_fault;
      s.dump_dir = std::filesystem::path(v_dump);
      specs.push_back(std::move(s));
    }
    const auto reports = run_suites(specs);
    if (v_out.empty()) std::cout << emit_report(reports, format, v_timings);
    else write_report(reports, format, v_out, v_timings);
    if (!all_passed(reports)) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
