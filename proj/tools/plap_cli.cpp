// Batch driver for the p-Laplacian eigenvalue computations: configure a
// domain and a list of p values, run CDM / CMPA / the radial method /
// reference constants / symmetry comparisons, and write CSV tables, field
// files and a manifest describing the run.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plap/analysis.hpp"
#include "plap/fields.hpp"
#include "plap/io.hpp"
#include "plap/radial.hpp"
#include "plap/reference.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plap;

namespace {

struct Options {
  std::string config_path;
  std::string domain = "square";
  std::vector<double> p_list;
  int triangles = 20000;
  int refine_steps = 0;
  double r_override = 0.0;
  std::string em = "two-bump";
  std::string out_dir = "out";
  int threads = 1;
  long seed = 0;
  std::string sym_class = "S1";
  double dt0 = 0.5;
  double w_tol_cdm = 1e-6;
  double w_tol_cmpa = 1e-3;
  double al_tol = 1e-8;
  int cdm_max_iter = 200;
  int cmpa_max_iter = 5000;
  int path_points = 21;
  int radial_intervals = 1000;
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string p_tag(double p) {
  std::string s = fmt6(p);
  for (char& c : s)
    if (c == '.') c = '-';
  return s;
}

DomainSpec domain_from_name(const std::string& name) {
  if (name == "disk") return DomainSpec::disk(1.0);
  if (name == "square") return DomainSpec::rectangle(2.0, 2.0);
  if (name == "rectangle") return DomainSpec::rectangle(2.0, 1.75);
  if (name == "rectangle-1.9") return DomainSpec::rectangle(2.0, 1.9);
  if (name == "rectangle-1.6") return DomainSpec::rectangle(2.0, 1.6);
  if (name == "triangle1") return DomainSpec::iso_triangle(1.0, 1.0);
  if (name == "triangle34") return DomainSpec::iso_triangle(1.0, 0.75);
  if (name == "equilateral") return DomainSpec::equi_triangle(1.0);
  throw std::invalid_argument("unknown domain name: " + name);
}

DomainSpec domain_from_json(const json& j) {
  if (j.is_string()) return domain_from_name(j.get<std::string>());
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "disk") return DomainSpec::disk(j.value("radius", 1.0));
  if (shape == "rectangle")
    return DomainSpec::rectangle(j.at("a").get<double>(), j.at("b").get<double>());
  if (shape == "iso_triangle")
    return DomainSpec::iso_triangle(j.at("base").get<double>(), j.at("height").get<double>());
  if (shape == "equi_triangle") return DomainSpec::equi_triangle(j.at("side").get<double>());
  throw std::invalid_argument("unknown shape in config: " + shape);
}

SymmetryKind class_from_name(const std::string& name) {
  if (name == "S1") return SymmetryKind::S1;
  if (name == "S2") return SymmetryKind::S2;
  if (name == "SE") return SymmetryKind::SE;
  if (name == "SO") return SymmetryKind::SO;
  if (name == "CenterOdd") return SymmetryKind::CenterOdd;
  throw std::invalid_argument("unknown symmetry class: " + name);
}

void check_p_range(const std::vector<double>& ps, json& notes) {
  for (double p : ps) {
    if (p < 1.05 || p > 12.0)
      throw std::invalid_argument("p = " + fmt6(p) + " outside the supported [1.05, 12]");
    if (p < 1.1 || p > 10.0) {
      std::cerr << "warning: p = " << fmt6(p)
                << " lies outside the validated range [1.1, 10]\n";
      notes.push_back("p " + fmt6(p) + " outside validated range [1.1, 10]");
    }
  }
}

struct PerPResult {
  double p = 0.0;
  std::optional<double> lambda1, lambda2, lambda_class, defect;
  int cdm_iterations = 0;
  int cmpa_iterations = 0;
  double w_norm_cdm = 0.0, w_norm_cmpa = 0.0;
  std::string error;
  double wall_ms = 0.0;
  std::vector<IterRecord> cdm_history;
  std::vector<CmpaTracePoint> cmpa_trace;
  FeFunction u1, u2;
};

CdmConfig make_cdm_cfg(const Options& o) {
  CdmConfig cfg;
  cfg.dt0 = o.dt0;
  cfg.w_tol = o.w_tol_cdm;
  cfg.max_iter = o.cdm_max_iter;
  cfg.al.tol = o.al_tol;
  cfg.al.r = o.r_override;
  return cfg;
}

CmpaConfig make_cmpa_cfg(const Options& o) {
  CmpaConfig cfg;
  cfg.P = o.path_points;
  cfg.w_tol = o.w_tol_cmpa;
  cfg.max_iter = o.cmpa_max_iter;
  cfg.al.tol = o.al_tol;
  cfg.al.r = o.r_override;
  return cfg;
}

FeFunction load_or_preset_em(const Mesh& mesh, const std::string& em) {
  if (em == "two-bump" || em == "ring" || em == "asym") return em_preset(mesh, em);
  std::ifstream in(em);
  if (!in) throw std::runtime_error("cannot open e_M file: " + em);
  return read_field(in, mesh);
}

PerPResult run_single(const Mesh& mesh, double p, const Options& opts, bool want_second) {
  PerPResult res;
  res.p = p;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    FemSpace space(mesh, p, make_cdm_cfg(opts).al);
    EigenpairResult first = run_cdm(space, bump_e0(mesh), make_cdm_cfg(opts));
    res.lambda1 = first.lambda;
    res.cdm_iterations = first.iterations;
    res.w_norm_cdm = first.w_norm_final;
    res.cdm_history = first.history;
    res.u1 = first.u;
    if (first.status != SolveStatus::Converged)
      res.error = "cdm did not converge (status " +
                  std::to_string(static_cast<int>(first.status)) + ")";
    if (want_second && res.error.empty()) {
      const FeFunction eM = load_or_preset_em(mesh, opts.em);
      CmpaConfig ccfg = make_cmpa_cfg(opts);
      FemSpace cspace(mesh, p, ccfg.al);
      CmpaResult second = run_cmpa(cspace, first.u, eM, ccfg);
      res.lambda2 = second.eigenpair.lambda;
      res.cmpa_iterations = second.eigenpair.iterations;
      res.w_norm_cmpa = second.eigenpair.w_norm_final;
      res.cmpa_trace = second.trace;
      res.u2 = second.eigenpair.u;
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

// Runs one job per p with at most opts.threads workers; results keep the
// order of the p list, so outputs do not depend on scheduling.
std::vector<PerPResult> run_all(const Mesh& mesh, const Options& opts, bool want_second) {
  std::vector<PerPResult> results(opts.p_list.size());
  const int workers = std::max(1, opts.threads);
  std::size_t next = 0;
  while (next < opts.p_list.size()) {
    const std::size_t batch = std::min<std::size_t>(workers, opts.p_list.size() - next);
    std::vector<std::future<PerPResult>> futs;
    for (std::size_t k = 0; k < batch; ++k) {
      const double p = opts.p_list[next + k];
      futs.push_back(std::async(std::launch::async,
                                [&, p] { return run_single(mesh, p, opts, want_second); }));
    }
    for (std::size_t k = 0; k < batch; ++k) results[next + k] = futs[k].get();
    next += batch;
  }
  return results;
}

json mesh_json(const Mesh& mesh) {
  MeshMetrics mm = mesh_metrics(mesh);
  return {{"h", mm.h},
          {"triangles", mm.n_triangles},
          {"free_vertices", mm.n_free_vertices},
          {"area", mm.area}};
}

struct OutputTracker {
  fs::path dir;
  std::vector<std::string> files;
  std::ofstream open(const std::string& name) {
    files.push_back(name);
    return std::ofstream(dir / name);
  }
};

void write_run_outputs(OutputTracker& out, const PerPResult& r, const Mesh& mesh) {
  const std::string tag = "p_" + p_tag(r.p);
  if (!r.cdm_history.empty()) {
    auto os = out.open("cdm_history_" + tag + ".csv");
    os << "iter,I,w_norm,dt\n";
    for (std::size_t k = 0; k < r.cdm_history.size(); ++k)
      os << k + 1 << "," << fmt6(r.cdm_history[k].I) << ","
         << fmt6(r.cdm_history[k].w_norm) << "," << fmt6(r.cdm_history[k].dt) << "\n";
  }
  if (!r.cmpa_trace.empty()) {
    auto os = out.open("cmpa_trace_" + tag + ".csv");
    os << "iter,max_I\n";
    for (const auto& t : r.cmpa_trace) os << t.iter << "," << fmt6(t.max_I) << "\n";
  }
  if (r.u1.mesh) {
    {
      auto os = out.open("u1_" + tag + ".field");
      write_field(os, r.u1);
    }
    auto os = out.open("u1_" + tag + ".vtk");
    write_vtk(os, mesh, r.u1, "u1");
  }
  if (r.u2.mesh) {
    {
      auto os = out.open("u2_" + tag + ".field");
      write_field(os, r.u2);
    }
    auto os = out.open("u2_" + tag + ".vtk");
    write_vtk(os, mesh, r.u2, "u2");
  }
  if (!r.error.empty()) {
    auto os = out.open("diagnostics_" + tag + ".txt");
    os << "p " << fmt6(r.p) << "\n" << r.error << "\n";
  }
}

json results_json(const std::vector<PerPResult>& results) {
  json arr = json::array();
  for (const auto& r : results) {
    json e = {{"p", r.p},
              {"cdm_iterations", r.cdm_iterations},
              {"w_norm_cdm", r.w_norm_cdm},
              {"wall_ms", r.wall_ms}};
    if (r.lambda1) e["lambda1"] = *r.lambda1;
    if (r.lambda2) e["lambda2"] = *r.lambda2;
    if (r.lambda_class) e["lambda_class"] = *r.lambda_class;
    if (r.defect) e["defect"] = *r.defect;
    if (r.cmpa_iterations > 0) {
      e["cmpa_iterations"] = r.cmpa_iterations;
      e["w_norm_cmpa"] = r.w_norm_cmpa;
    }
    if (!r.error.empty()) e["error"] = r.error;
    arr.push_back(e);
  }
  return arr;
}

void write_manifest(OutputTracker& out, const json& config_echo, const Mesh* mesh,
                    const std::vector<PerPResult>& results, const json& notes) {
  json m;
  m["config"] = config_echo;
  if (mesh) m["mesh"] = mesh_json(*mesh);
  m["results"] = results_json(results);
  m["notes"] = notes;
  out.files.push_back("manifest.json");
  m["outputs"] = out.files;
  std::ofstream os(out.dir / "manifest.json");
  os << m.dump(2) << "\n";
}

json config_echo(const Options& o, const std::string& command) {
  return {{"command", command}, {"domain", o.domain},       {"p", o.p_list},
          {"triangles", o.triangles}, {"refine", o.refine_steps}, {"r", o.r_override},
          {"em", o.em},           {"out", o.out_dir},       {"threads", o.threads},
          {"seed", o.seed},       {"dt0", o.dt0},           {"w_tol_cdm", o.w_tol_cdm},
          {"w_tol_cmpa", o.w_tol_cmpa}, {"al_tol", o.al_tol}};
}

Mesh build_run_mesh(const Options& opts, const DomainSpec& spec) {
  Mesh mesh = build_domain(spec, opts.triangles);
  for (int k = 0; k < opts.refine_steps; ++k) mesh = refine(mesh);
  return mesh;
}

int cmd_eigen(const Options& opts, bool want_second, bool sweep) {
  json notes = json::array();
  check_p_range(opts.p_list, notes);
  const DomainSpec spec = domain_from_name(opts.domain);
  const Mesh mesh = build_run_mesh(opts, spec);

  OutputTracker out{fs::path(opts.out_dir), {}};
  fs::create_directories(out.dir);
  const std::vector<PerPResult> results = run_all(mesh, opts, want_second);
  for (const auto& r : results) write_run_outputs(out, r, mesh);

  if (sweep || results.size() > 1) {
    auto os = out.open("eigenvalues.csv");
    os << (want_second ? "p,lambda1,lambda2\n" : "p,lambda1\n");
    for (const auto& r : results) {
      os << fmt6(r.p) << ",";
      os << (r.lambda1 ? fmt6(*r.lambda1) : "");
      if (want_second) os << "," << (r.lambda2 ? fmt6(*r.lambda2) : "");
      os << "\n";
    }
  }
  write_manifest(out, config_echo(opts, sweep ? "sweep" : (want_second ? "second" : "first")),
                 &mesh, results, notes);
  for (const auto& r : results) {
    std::cout << "p=" << fmt6(r.p);
    if (r.lambda1) std::cout << " lambda1=" << fmt6(*r.lambda1);
    if (r.lambda2) std::cout << " lambda2=" << fmt6(*r.lambda2);
    if (!r.error.empty()) std::cout << " error=\"" << r.error << "\"";
    std::cout << "\n";
  }
  return 0;
}

int cmd_radial(const Options& opts) {
  json notes = json::array();
  check_p_range(opts.p_list, notes);
  RadialMesh mesh{opts.radial_intervals};
  OutputTracker out{fs::path(opts.out_dir), {}};
  fs::create_directories(out.dir);

  std::vector<PerPResult> results(opts.p_list.size());
  for (std::size_t i = 0; i < opts.p_list.size(); ++i) {
    PerPResult& r = results[i];
    r.p = opts.p_list[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CdmConfig ccfg = make_cdm_cfg(opts);
      CmpaConfig mcfg = make_cmpa_cfg(opts);
      RadialCmpaResult rr = run_radial_cmpa(mesh, r.p, ccfg, mcfg);
      r.lambda1 = rr.first.lambda;
      r.lambda2 = rr.second.lambda;
      r.cdm_iterations = rr.first.iterations;
      r.cmpa_iterations = rr.second.iterations;
      auto os = out.open("profile_p_" + p_tag(r.p) + ".csv");
      os << "r,u\n";
      os.precision(10);
      for (int k = 0; k <= mesh.n; ++k)
        os << fmt6(mesh.node(k)) << ","
           << fmt6(k < mesh.n ? rr.second.u[k] : 0.0) << "\n";
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  auto os = out.open("eigenvalues_radial.csv");
  os << "p,lambda1,lambda2_rad\n";
  for (const auto& r : results) {
    os << fmt6(r.p) << "," << (r.lambda1 ? fmt6(*r.lambda1) : "") << ","
       << (r.lambda2 ? fmt6(*r.lambda2) : "") << "\n";
  }
  write_manifest(out, config_echo(opts, "radial"), nullptr, results, notes);
  return 0;
}

int cmd_reference(const Options& opts) {
  const DomainSpec spec = domain_from_name(opts.domain);
  OutputTracker out{fs::path(opts.out_dir), {}};
  fs::create_directories(out.dir);
  AsymptoticConstants c = reference_constants(spec);
  auto os = out.open("reference.csv");
  os << "constant,value\n";
  os << "h1," << fmt6(c.h1) << "\n";
  if (c.h2) os << "h2," << fmt6(*c.h2) << "\n";
  os << "Lambda1," << fmt6(c.Lambda1) << "\n";
  if (c.Lambda2) os << "Lambda2," << fmt6(*c.Lambda2) << "\n";
  if (spec.shape == Shape::Disk) {
    DiskConstants dc = disk_constants();
    os << "h2_rad," << fmt6(dc.h2_rad) << "\n";
    os << "Lambda2_rad," << fmt6(dc.Lambda2_rad) << "\n";
  }
  write_manifest(out, config_echo(opts, "reference"), nullptr, {}, json::array());
  return 0;
}

int cmd_symmetry(const Options& opts) {
  json notes = json::array();
  check_p_range(opts.p_list, notes);
  const DomainSpec spec = domain_from_name(opts.domain);
  const SymmetryKind kind = class_from_name(opts.sym_class);
  const Mesh mesh = build_run_mesh(opts, spec);
  const SymmetryClass cls = make_symmetry_class(spec, kind);

  OutputTracker out{fs::path(opts.out_dir), {}};
  fs::create_directories(out.dir);
  std::vector<PerPResult> results = run_all(mesh, opts, /*want_second=*/true);
  for (auto& r : results) {
    if (!r.error.empty()) continue;
    try {
      ConstrainedEigenResult c = constrained_eigen_with_symmetry(
          spec, kind, r.p, opts.triangles / 2, make_cdm_cfg(opts), make_cmpa_cfg(opts));
      r.lambda_class = c.eigenpair.lambda;
      if (r.u2.mesh) r.defect = symmetry_defect(r.u2, cls);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  }
  for (const auto& r : results) write_run_outputs(out, r, mesh);

  auto os = out.open("symmetry.csv");
  os << "p,lambda2,lambda_" << opts.sym_class << ",defect_" << opts.sym_class << "\n";
  for (const auto& r : results) {
    os << fmt6(r.p) << "," << (r.lambda2 ? fmt6(*r.lambda2) : "") << ","
       << (r.lambda_class ? fmt6(*r.lambda_class) : "") << ","
       << (r.defect ? fmt6(*r.defect) : "") << "\n";
  }
  write_manifest(out, config_echo(opts, "symmetry"), &mesh, results, notes);
  return 0;
}

void apply_config_file(Options& opts) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in) throw std::runtime_error("cannot open config: " + opts.config_path);
  json cfg = json::parse(in);
  if (cfg.contains("domain")) {
    if (cfg["domain"].is_string())
      opts.domain = cfg["domain"].get<std::string>();
    else
      throw std::runtime_error("config: inline domain objects go under \"domain_spec\"");
  }
  if (cfg.contains("p")) opts.p_list = cfg["p"].get<std::vector<double>>();
  if (cfg.contains("triangles")) opts.triangles = cfg["triangles"].get<int>();
  if (cfg.contains("refine")) opts.refine_steps = cfg["refine"].get<int>();
  if (cfg.contains("r")) opts.r_override = cfg["r"].get<double>();
  if (cfg.contains("em")) opts.em = cfg["em"].get<std::string>();
  if (cfg.contains("out")) opts.out_dir = cfg["out"].get<std::string>();
  if (cfg.contains("threads")) opts.threads = cfg["threads"].get<int>();
  if (cfg.contains("seed")) opts.seed = cfg["seed"].get<long>();
  if (cfg.contains("class")) opts.sym_class = cfg["class"].get<std::string>();
  if (cfg.contains("dt0")) opts.dt0 = cfg["dt0"].get<double>();
  if (cfg.contains("w_tol_cdm")) opts.w_tol_cdm = cfg["w_tol_cdm"].get<double>();
  if (cfg.contains("w_tol_cmpa")) opts.w_tol_cmpa = cfg["w_tol_cmpa"].get<double>();
  if (cfg.contains("al_tol")) opts.al_tol = cfg["al_tol"].get<double>();
  if (cfg.contains("cdm_max_iter")) opts.cdm_max_iter = cfg["cdm_max_iter"].get<int>();
  if (cfg.contains("cmpa_max_iter")) opts.cmpa_max_iter = cfg["cmpa_max_iter"].get<int>();
  if (cfg.contains("path_points")) opts.path_points = cfg["path_points"].get<int>();
  if (cfg.contains("radial_intervals"))
    opts.radial_intervals = cfg["radial_intervals"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-Laplacian eigenvalue computations on planar domains"};
  app.require_subcommand(1);

  Options opts;
  std::string p_arg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON config file (flags win)");
    cmd->add_option("--domain", opts.domain, "domain name");
    cmd->add_option("--p", p_arg, "comma-separated p values");
    cmd->add_option("--triangles", opts.triangles, "target triangle count");
    cmd->add_option("--refine", opts.refine_steps, "uniform refinement steps");
    cmd->add_option("--r", opts.r_override, "penalty parameter override (0 = auto)");
    cmd->add_option("--em", opts.em, "e_M preset name or field file");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker cap for the p sweep");
    cmd->add_option("--seed", opts.seed, "seed recorded in the manifest");
    cmd->add_option("--dt0", opts.dt0, "initial CDM step");
    cmd->add_option("--w-tol-cdm", opts.w_tol_cdm, "CDM convergence tolerance");
    cmd->add_option("--w-tol-cmpa", opts.w_tol_cmpa, "CMPA convergence tolerance");
    cmd->add_option("--al-tol", opts.al_tol, "inner solver residual tolerance");
    cmd->add_option("--path-points", opts.path_points, "CMPA path points");
    cmd->add_option("--radial-intervals", opts.radial_intervals, "radial subintervals");
  };

  CLI::App* c_first = app.add_subcommand("first", "first eigenpair by CDM");
  CLI::App* c_second = app.add_subcommand("second", "first and second eigenpairs");
  CLI::App* c_sweep = app.add_subcommand("sweep", "p sweep writing eigenvalues.csv");
  CLI::App* c_radial = app.add_subcommand("radial", "radial method on the disk");
  CLI::App* c_ref = app.add_subcommand("reference", "asymptotic reference constants");
  CLI::App* c_sym = app.add_subcommand("symmetry", "second eigenpair vs symmetry class");
  for (CLI::App* c : {c_first, c_second, c_sweep, c_radial, c_ref, c_sym}) add_common(c);
  c_sym->add_option("--class", opts.sym_class, "symmetry class: S1|S2|SE|SO|CenterOdd");

  // The config file provides defaults and flags win, so load it before the
  // parse overwrites anything.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") opts.config_path = argv[i + 1];
  try {
    apply_config_file(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!p_arg.empty()) {
      opts.p_list.clear();
      std::stringstream ss(p_arg);
      std::string item;
      while (std::getline(ss, item, ',')) opts.p_list.push_back(std::stod(item));
    }
    if (opts.p_list.empty() && !c_ref->parsed()) {
      // An empty p list is legal: tables come out with headers only.
      std::cerr << "note: empty p list\n";
    }

    if (c_first->parsed()) return cmd_eigen(opts, false, true);
    if (c_second->parsed()) return cmd_eigen(opts, true, true);
    if (c_sweep->parsed()) return cmd_eigen(opts, true, true);
    if (c_radial->parsed()) return cmd_radial(opts);
    if (c_ref->parsed()) return cmd_reference(opts);
    if (c_sym->parsed()) return cmd_symmetry(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
