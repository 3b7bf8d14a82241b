// robpareto command-line tool: classification, scalarized solves, p-sweeps,
// phantom generation and run reports.
//
// Exit codes: 0 success, 2 input error, 3 empty or degenerate model,
// 4 I/O failure, 1 internal solver failure.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robpareto/robpareto.hpp"

namespace fs = std::filesystem;
using namespace robpareto;

namespace {

struct Globals {
  double step = 0.05;
  double eq_tol = 1e-9;
  double strict_tol = 1e-9;
  std::uint64_t seed = 0;
  std::string emit;

  [[nodiscard]] Tolerances tolerances() const { return {eq_tol, strict_tol}; }
};

struct Source {
  std::string builtin;
  std::string instance;
  std::string phantom;

  [[nodiscard]] std::string describe() const {
    if (!builtin.empty()) return "builtin:" + builtin;
    if (!instance.empty()) return "file:" + instance;
    return "phantom:" + phantom;
  }
};

/// Wall-clock and provenance of one run, written as manifest.json.
struct RunManifest {
  std::string command;
  std::string source;
  std::vector<std::string> scalarizers;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  [[nodiscard]] Json to_json(const Globals& g) const {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return Json{{"command", command},
                {"instance_source", source},
                {"scalarizers", scalarizers},
                {"step", g.step},
                {"tolerances", {{"eq_tol", g.eq_tol}, {"strict_tol", g.strict_tol}}},
                {"seed", g.seed},
                {"threads", thread_count()},
                {"outputs", outputs},
                {"wall_clock_seconds", elapsed}};
  }
};

PhantomConfig phantom_config_from_json(const Json& j) {
  PhantomConfig cfg;
  if (!j.is_object()) throw ParseError("phantom config must be a JSON object");
  auto span = [](const Json& s) {
    if (!s.is_array() || s.size() != 2) throw ParseError("spans are [lo, hi] index pairs");
    return Span{s[0].get<int>(), s[1].get<int>()};
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "grid_points") cfg.grid_points = v.get<int>();
      else if (key == "spots") cfg.spots = v.get<int>();
      else if (key == "target") cfg.target = span(v);
      else if (key == "rectum") cfg.rectum = span(v);
      else if (key == "prescribed_dose") cfg.prescribed_dose = v.get<double>();
      else if (key == "weights") {
        const auto w = v.get<std::vector<double>>();
        if (w.size() != 3) throw ParseError("weights are [w_T, w_R, w_U]");
        cfg.w_target = w[0];
        cfg.w_rectum = w[1];
        cfg.w_unclassified = w[2];
      } else if (key == "shifts") cfg.shifts = v.get<std::vector<int>>();
      else if (key == "sigma") cfg.sigma = v.get<double>();
      else if (key == "lattice_divisions") cfg.lattice_divisions = v.get<int>();
      else if (key == "dose_scale") cfg.dose_scale = v.get<double>();
      else throw ParseError("unknown phantom config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("phantom config: ") + e.what());
  }
  return cfg;
}

PhantomConfig load_phantom_config(const std::string& spec) {
  if (spec.empty() || spec == "default") return {};
  try {
    return phantom_config_from_json(Json::parse(read_file(spec)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(spec + ": " + e.what());
  }
}

/// Loads the selected instance; a document with an ambiguity set is reduced
/// to its robust counterpart.
InstanceDocument load_source(const Source& src, const Globals& g) {
  const int chosen = !src.builtin.empty() + !src.instance.empty() + !src.phantom.empty();
  if (chosen != 1) throw ParseError("give exactly one of --builtin, --instance, --phantom");
  if (!src.builtin.empty()) return {builtin_instance(src.builtin, g.step), std::nullopt, std::nullopt};
  if (!src.phantom.empty()) return {generate(load_phantom_config(src.phantom)), std::nullopt, std::nullopt};
  return load_instance(src.instance);
}

Instance working_instance(const InstanceDocument& doc, const Globals& g) {
  if (!doc.ambiguity) return doc.instance;
  std::cerr << "note: classifying the distributionally robust counterpart\n";
  return to_robust(doc.instance, *doc.ambiguity, doc.constraint, g.tolerances());
}

void add_source_options(CLI::App* cmd, Source& src, bool allow_phantom) {
  cmd->add_option("--builtin", src.builtin, "Builtin instance (problem-1, problem-2)");
  cmd->add_option("--instance", src.instance, "Instance JSON file");
  if (allow_phantom) cmd->add_option("--phantom", src.phantom, "Phantom config JSON file, or 'default'");
}

fs::path emit_path(const Globals& g, const std::string& name) {
  const fs::path dir(g.emit);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + g.emit + "'");
  return dir / name;
}

void write_output(RunManifest& m, const fs::path& path, const std::string& content) {
  write_file_atomic(path, content);
  m.outputs.push_back(path.string());
}

void finish(RunManifest& m, const Globals& g) {
  if (g.emit.empty()) return;
  const auto path = emit_path(g, "manifest.json");
  m.outputs.push_back(path.string());
  write_file_atomic(path, m.to_json(g).dump(2) + "\n");
}

ObjectiveImage solution_image(const Instance& inst, const Candidate& best) {
  if (!inst.is_table() && !best.x.empty()) return image_at(inst, best.x);
  return image(inst, best.id);
}

int run_classify(const Source& src, const std::string& save, const std::string& out, const Globals& g) {
  RunManifest m{"classify", src.describe(), {}, {}};
  const auto doc = load_source(src, g);
  if (!save.empty()) {
    save_instance(doc.instance, save, doc.ambiguity);
    m.outputs.push_back(save);
  }
  const std::string csv = to_csv(classify(working_instance(doc, g), g.tolerances()));
  if (!out.empty()) write_output(m, out, csv);
  if (!g.emit.empty()) write_output(m, emit_path(g, "classify.csv"), csv);
  std::cout << csv;
  finish(m, g);
  return 0;
}

int run_scalarize(const Source& src, const std::string& spec, bool trace, std::size_t passes, const Globals& g) {
  RunManifest m{"scalarize", src.describe(), {spec}, {}};
  const auto doc = load_source(src, g);
  const Instance inst = working_instance(doc, g);
  const Scalarizer u = make_scalarizer(spec, inst);
  SolveOptions opt;
  opt.refine_passes = passes;
  const SolveResult res = minimize_scalarized(inst, u, opt);
  std::string csv = csv_row({"candidate", "value", "method", "evaluations"});
  csv += csv_row({res.best.id, format_number(res.value), to_string(res.method), std::to_string(res.evaluations)});
  if (trace) {
    csv += "\n" + csv_row({"scenario", "u"});
    for (const auto& p : solution_image(inst, res.best).points) csv += csv_row({p.scenario, format_number(u(p.value))});
  }
  if (!g.emit.empty()) write_output(m, emit_path(g, "scalarize.csv"), csv);
  std::cout << csv;
  finish(m, g);
  return 0;
}

int run_sweep(const Source& src, const std::vector<std::string>& ps, const std::string& w, const std::string& ref,
              bool scaled, const Globals& g) {
  if (ps.empty()) throw ParseError("--p needs at least one value");
  for (const auto& p : ps) {
    if (p.empty()) throw ParseError("--p holds an empty value");
  }
  RunManifest m{"sweep", src.describe(), {}, {}};
  const auto doc = load_source(src, g);
  Instance inst = working_instance(doc, g);
  if (scaled || !src.phantom.empty()) inst = with_scaled_objectives(inst, objective_maxima(inst));

  std::vector<Scalarizer> family;
  for (const auto& p : ps) family.push_back(make_scalarizer("pnorm:p=" + p + ",w=" + w + ",ref=" + ref, inst));
  for (const auto& u : family) m.scalarizers.push_back(u.label());

  std::string csv = csv_row({"p", "candidate", "value", "method", "evaluations", "radius_inf", "radius_1"});
  const auto results = sweep_front(inst, family);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i].second;
    const auto img = solution_image(inst, res.best);
    csv += csv_row({ps[i], res.best.id, format_number(res.value), to_string(res.method),
                    std::to_string(res.evaluations), format_number(radius_inf(img)), format_number(radius_1(img))});
    if (!g.emit.empty()) {
      const std::string stem = "sweep_p" + ps[i];
      write_output(m, emit_path(g, stem + ".csv"), image_csv(img));
      if (inst.n() == 2) {
        write_output(m, emit_path(g, stem + ".svg"),
                     image_svg(img, family[i], res.value, "optimal f(x;S), " + family[i].label()));
      }
    }
  }
  if (!g.emit.empty()) write_output(m, emit_path(g, "sweep.csv"), csv);
  std::cout << csv;
  finish(m, g);
  return 0;
}

int run_phantom(const std::string& config, const std::string& out, const Globals& g) {
  RunManifest m{"phantom", "phantom:" + (config.empty() ? std::string("default") : config), {}, {}};
  const Instance inst = generate(load_phantom_config(config));
  const std::string text = to_json(inst).dump(2) + "\n";
  if (!out.empty()) write_output(m, out, text);
  if (!g.emit.empty()) write_output(m, emit_path(g, "phantom.json"), text);
  if (out.empty()) std::cout << text;
  finish(m, g);
  return 0;
}

int run_report(const Source& src, const std::vector<std::string>& specs, const Globals& g) {
  RunManifest m{"report", src.describe(), specs, {}};
  const auto doc = load_source(src, g);
  const Instance inst = working_instance(doc, g);
  const auto report = classify(inst, g.tolerances());
  std::cout << "instance: " << src.describe() << "\n"
            << "objectives: " << inst.n() << "\n"
            << "scenarios: " << inst.scenarios().size() << "\n"
            << "candidates: " << inst.candidates().size() << "\n"
            << "robust_efficient: " << report.efficient(EfficiencyLabel::robust).size() << "\n"
            << "convex_hull_efficient: " << report.efficient(EfficiencyLabel::convex_hull).size() << "\n"
            << "objectivewise_efficient: " << report.efficient(EfficiencyLabel::objectivewise).size() << "\n"
            << "set_valued_minimizers: " << report.efficient(EfficiencyLabel::set_valued).size() << "\n";
  for (const auto& spec : specs) {
    const auto res = minimize_scalarized(inst, make_scalarizer(spec, inst));
    std::cout << "minimize " << spec << ": candidate " << res.best.id << ", value " << format_number(res.value)
              << " (" << to_string(res.method) << ")\n";
  }
  if (!g.emit.empty()) write_output(m, emit_path(g, "classify.csv"), to_csv(report));
  finish(m, g);
  std::cout << m.to_json(g).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust multiobjective efficiency and scalarization"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--step", g.step, "Simplex lattice step for builtin instances")->capture_default_str();
  app.add_option("--eq-tol", g.eq_tol, "Componentwise comparison tolerance")->capture_default_str();
  app.add_option("--strict-tol", g.strict_tol, "Minimum total improvement for dominance")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed recorded in the run manifest")->capture_default_str();
  app.add_option("--emit", g.emit, "Directory for output files and manifest.json");

  Source src;
  auto* classify_cmd = app.add_subcommand("classify", "Label candidates as robust / convex hull / objectivewise efficient");
  std::string save, out;
  add_source_options(classify_cmd, src, true);
  classify_cmd->add_option("--save-instance", save, "Write the loaded instance as JSON");
  classify_cmd->add_option("--out", out, "Write the CSV report to a file");

  auto* scalarize_cmd = app.add_subcommand("scalarize", "Minimize a worst-case scalarized objective");
  std::string spec;
  bool trace = false;
  std::size_t passes = 2;
  add_source_options(scalarize_cmd, src, true);
  scalarize_cmd->add_option("--u", spec, "Scalarizer, e.g. wsum:w=0.5,0.5 or pnorm:p=2,w=1,ref=0")->required();
  scalarize_cmd->add_flag("--trace", trace, "Print per-scenario scalar values at the optimum");
  scalarize_cmd->add_option("--refine-passes", passes, "Local refinement passes after a sweep")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Solve the p-norm scalarization for several p");
  std::vector<std::string> ps;
  std::string weights = "1", ref = "0";
  bool scaled = false;
  add_source_options(sweep_cmd, src, true);
  sweep_cmd->add_option("--p", ps, "Comma-separated p values (inf allowed)")->required()->delimiter(',')->expected(0, -1);
  sweep_cmd->add_option("--w", weights, "Objective weights")->capture_default_str();
  sweep_cmd->add_option("--ref", ref, "Reference point")->capture_default_str();
  sweep_cmd->add_flag("--scaled", scaled, "Scale each objective by its maximum (always on for phantoms)");

  auto* phantom_cmd = app.add_subcommand("phantom", "Generate the 1-D phantom instance as JSON");
  std::string config, phantom_out;
  phantom_cmd->add_option("--config", config, "Phantom config JSON file (default settings otherwise)");
  phantom_cmd->add_option("--out", phantom_out, "Output file (stdout otherwise)");

  auto* report_cmd = app.add_subcommand("report", "Summarize an instance and print the run manifest");
  std::vector<std::string> report_specs;
  add_source_options(report_cmd, src, true);
  report_cmd->add_option("--u", report_specs, "Scalarizers to minimize (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) return run_classify(src, save, out, g);
    if (*scalarize_cmd) return run_scalarize(src, spec, trace, passes, g);
    if (*sweep_cmd) return run_sweep(src, ps, weights, ref, scaled, g);
    if (*phantom_cmd) return run_phantom(config, phantom_out, g);
    if (*report_cmd) return run_report(src, report_specs, g);
  } catch (const EmptyFeasibleSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
