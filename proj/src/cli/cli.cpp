#include "tropmod/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "tropmod/error.hpp"
#include "tropmod/graphs/graph_io.hpp"
#include "tropmod/graphs/isomorphism.hpp"
#include "tropmod/io/json_io.hpp"
#include "tropmod/markings/marking.hpp"
#include "tropmod/markings/teichmuller.hpp"
#include "tropmod/moduli/moduli.hpp"
#include "tropmod/torelli/torelli.hpp"
#include "tropmod/voronoi/delone.hpp"
#include "tropmod/voronoi/reduction.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

namespace tropmod {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("bad_json", path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io_error", "cannot write '" + path + "'");
  out << text;
}

// Fills slots 0..n-1 with f(i) on up to `jobs` threads; results are merged by
// index, so the output does not depend on the thread count.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

json delone_to_json(const DeloneSubdivision& d) {
  json cells = json::array(), adjacency = json::array();
  for (const auto& c : d.cells) {
    json vs = json::array();
    for (const auto& v : c.vertices) vs.push_back(to_json(v));
    cells.push_back(vs);
  }
  for (const auto& a : d.adjacency) {
    json facet = json::array();
    for (const auto& v : a.facet) facet.push_back(to_json(v));
    adjacency.push_back({{"a", a.a}, {"b", a.b}, {"shift", to_json(a.shift)}, {"facet", facet}});
  }
  return {{"cells", cells}, {"adjacency", adjacency}};
}

json vectors_to_json(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

struct Options {
  std::string output;
  std::uint64_t seed = 1;
  int jobs = 1;
  int genus = 2;
  bool pure = false;
  std::string dot;
  std::string graph, marking, lengths, form, form_a, form_b, fan, action, sigma = "V";
  int depth = 1;
  std::size_t check = 0;
};

json cmd_enumerate(const Options& o) {
  const Catalogue full = enumerate_stable(o.genus);
  const Catalogue c = o.pure ? pure_part(full) : full;
  json j = catalogue_to_json(c);
  std::vector<std::size_t> aut(c.size());
  parallel_for(c.size(), o.jobs, [&](std::size_t i) { aut[i] = automorphisms(c.graphs[i]).size(); });
  for (std::size_t i = 0; i < c.size(); ++i) j["classes"][i]["automorphisms"] = aut[i];
  if (!o.dot.empty()) write_text(o.dot, hasse_dot(c));
  return j;
}

json cmd_jacobian(const Options& o) {
  const TropicalJacobian t = jacobian(graph_from_json(read_json(o.graph)), rat_vector_from_json(read_json(o.lengths)));
  return {{"genus", t.genus}, {"rank", t.rank}, {"form", to_json(t.block_form)}};
}

json cmd_period(const Options& o) {
  const WeightedGraph g = graph_from_json(read_json(o.graph));
  const Marking m = marking_from_json(g, read_json(o.marking));
  const PeriodMatrixMap p = period_on_cell(m);
  const QuadForm q = marked_period(m, rat_vector_from_json(read_json(o.lengths)));
  json petals = json::array();
  for (const auto& path : m.petals) petals.push_back(render_path(m.target, path));
  return {{"period", to_json(q)}, {"petal_matrix", to_json(p.b)}, {"petals", petals}};
}

json cmd_torelli(const Options& o) {
  const TorelliClass t = torelli_class(graph_from_json(read_json(o.graph)), rat_vector_from_json(read_json(o.lengths)));
  return {{"jacobian", to_json(t.jacobian)}, {"definite", to_json(t.definite)}, {"tag", t.tag}};
}

json cmd_minvec(const Options& o) {
  const MinVecSet s = min_vectors(form_from_json(read_json(o.form)));
  return {{"mu", to_json(s.mu)}, {"vectors", vectors_to_json(s.vectors)}};
}

json cmd_perfect_cone(const Options& o) {
  const QuadForm q = form_from_json(read_json(o.form));
  return {{"perfect", is_perfect(q)}, {"cone", cone_to_json(perfect_cone(q))}};
}

json cmd_delone(const Options& o) { return delone_to_json(delone(form_from_json(read_json(o.form)))); }

json cmd_secondary_cone(const Options& o) {
  const QuadForm q = form_from_json(read_json(o.form));
  if (!is_positive_definite(q)) return {{"cone", cone_to_json(secondary_cone_of_form(q))}};
  const SecondaryCone s = secondary_cone(delone(q));
  return {{"cone", cone_to_json(s.cone)},
          {"equalities", vectors_to_json(s.equalities)},
          {"inequalities", vectors_to_json(s.inequalities)}};
}

json cmd_reduce2(const Options& o) {
  const FormReduction r = reduce_binary(form_from_json(read_json(o.form)));
  return {{"h", to_json(r.h)}, {"reduced", to_json(r.reduced)}};
}

json cmd_gl_equiv(const Options& o) {
  const auto h = gl_equivalent(form_from_json(read_json(o.form_a)), form_from_json(read_json(o.form_b)));
  return {{"equivalent", h.has_value()}, {"h", h ? to_json(*h) : json(nullptr)}};
}

json cmd_patch(const Options& o) {
  const TeichmullerPatch p = teichmuller_patch(o.genus, {o.depth});
  json cells = json::array();
  for (const auto& c : p.cells)
    cells.push_back({{"graph", graph_to_json(c.marking.base())}, {"marking", marking_to_json(c.marking)}});
  return {{"fan", fan_to_json(p.fan)}, {"action", action_to_json(p.action)}, {"cells", cells}};
}

json cmd_quotient(const Options& o) {
  const json fj = read_json(o.fan);
  StackyFan fan;
  AdmissibleAction act;
  if (o.action.empty()) {
    if (!fj.contains("fan") || !fj.contains("action"))
      throw Error("bad_json", "without --action the fan file must hold \"fan\" and \"action\"");
    fan = fan_from_json(fj["fan"]);
    act = action_from_json(fj["action"]);
  } else {
    fan = fan_from_json(fj);
    act = action_from_json(read_json(o.action));
  }
  check_action(fan, act);
  const Quotient q = stratified_quotient(fan, act);
  json out = {{"fan", fan_to_json(q.fan)}, {"cell_class", q.cell_class}, {"representative", q.representative}};
  if (o.check > 0) {
    const BijectionReport r = quotient_point_bijection_check(fan, act, q, sample_points(fan, act, o.check, o.seed));
    out["bijection"] = {{"ok", r.ok}, {"samples", r.samples}, {"orbits", r.orbits}, {"witness", r.witness}};
  }
  return out;
}

json cmd_compat(const Options& o) {
  const Sigma sigma = o.sigma == "P" ? Sigma::perfect : Sigma::voronoi;
  if (sigma == Sigma::voronoi && o.genus > 3) throw Error("out_of_scope", "Voronoi compatibility needs genus <= 3");
  if (sigma == Sigma::perfect && o.genus != 2) throw Error("out_of_scope", "perfect compatibility needs genus 2");
  const Catalogue c = enumerate_stable(o.genus);
  std::vector<CompatResult> results(c.size());
  parallel_for(c.size(), o.jobs, [&](std::size_t i) { results[i] = compat_check(standard_marking(c.graphs[i]), sigma); });
  json cells = json::array();
  bool ok = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const CompatResult& r = results[i];
    ok = ok && r.ok;
    cells.push_back({{"class", i},
                     {"key", c.keys[i]},
                     {"ok", r.ok},
                     {"sample", to_json(r.sample)},
                     {"generators", vectors_to_json(r.generators)},
                     {"witness", cone_to_json(r.witness)},
                     {"counterexample", r.counterexample}});
  }
  return {{"genus", o.genus}, {"sigma", o.sigma}, {"ok", ok}, {"cells", cells}};
}

json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on tropical moduli, marked graphs and Voronoi decompositions", "tropmod"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "Write the JSON result to this file");
  app.add_option("--seed", o.seed, "Seed for sampling");
  app.add_option("--jobs", o.jobs, "Worker threads for bulk runs")->check(CLI::PositiveNumber);

  std::map<std::string, std::function<json(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<json(const Options&)> f) {
    handlers[name] = std::move(f);
    return app.add_subcommand(name, help);
  };
  auto genus_opt = [&](CLI::App* s) { s->add_option("--genus", o.genus, "Genus")->required()->check(CLI::PositiveNumber); };
  auto form_opt = [&](CLI::App* s) { s->add_option("-q,--form", o.form, "Form JSON")->required(); };

  CLI::App* e = sub("enumerate", "Stable weighted graphs of a genus", cmd_enumerate);
  genus_opt(e);
  e->add_flag("--pure", o.pure, "Only weight-zero graphs");
  e->add_option("--dot", o.dot, "Write the specialization Hasse diagram as DOT");
  CLI::App* jac = sub("jacobian", "Tropical Jacobian of a metric graph", cmd_jacobian);
  jac->add_option("-i,--graph", o.graph, "Graph JSON")->required();
  jac->add_option("-l,--lengths", o.lengths, "Edge lengths JSON")->required();
  CLI::App* per = sub("period", "Period matrix of a marked metric graph", cmd_period);
  per->add_option("-i,--graph", o.graph, "Graph JSON")->required();
  per->add_option("-m,--marking", o.marking, "Marking JSON")->required();
  per->add_option("-l,--lengths", o.lengths, "Edge lengths JSON")->required();
  CLI::App* tor = sub("torelli", "Torelli class of a metric graph", cmd_torelli);
  tor->add_option("-i,--graph", o.graph, "Graph JSON")->required();
  tor->add_option("-l,--lengths", o.lengths, "Edge lengths JSON")->required();
  form_opt(sub("minvec", "Minimal vectors of a definite form", cmd_minvec));
  form_opt(sub("perfect-cone", "Cone spanned by the minimal vectors", cmd_perfect_cone));
  form_opt(sub("delone", "Delone subdivision of a definite form", cmd_delone));
  form_opt(sub("secondary-cone", "Secondary cone of a semidefinite form", cmd_secondary_cone));
  form_opt(sub("reduce2", "Reduction of a binary form into the principal cone", cmd_reduce2));
  CLI::App* gl = sub("gl-equiv", "Integral equivalence of two forms", cmd_gl_equiv);
  gl->add_option("-a", o.form_a, "First form JSON")->required();
  gl->add_option("-b", o.form_b, "Second form JSON")->required();
  CLI::App* q = sub("quotient", "Stratified quotient of a fan by an action", cmd_quotient);
  q->add_option("--fan", o.fan, "Fan JSON, or an object with \"fan\" and \"action\"")->required();
  q->add_option("--action", o.action, "Action JSON");
  q->add_option("--check", o.check, "Sample this many points and check the quotient bijection");
  CLI::App* pa = sub("patch", "Finite patch of marked cells with its Nielsen action", cmd_patch);
  genus_opt(pa);
  pa->add_option("--depth", o.depth, "Nielsen word length of the seeds")->check(CLI::NonNegativeNumber);
  CLI::App* cc = sub("compat-check", "Compatibility of the period map with a decomposition", cmd_compat);
  genus_opt(cc);
  cc->add_option("--sigma", o.sigma, "V (Voronoi) or P (perfect)")->check(CLI::IsMember({"V", "P"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "tropmod: " << ex.what() << "\n" << "run 'tropmod --help' for usage\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const std::string text = handlers.at(name)(o).dump(2) + "\n";
    if (o.output.empty())
      out << text;
    else
      write_text(o.output, text);
    return 0;
  } catch (const Error& ex) {
    out << error_json(ex.code(), ex.what()).dump(2) << "\n";
  } catch (const std::exception& ex) {
    out << error_json("internal", ex.what()).dump(2) << "\n";
  }
  return 1;
}

}  // namespace tropmod
