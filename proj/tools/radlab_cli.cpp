#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "radlab/acceptance.hpp"
#include "radlab/capacity.hpp"
#include "radlab/green.hpp"
#include "radlab/hardy.hpp"
#include "radlab/report.hpp"
#include "radlab/scenario.hpp"
#include "radlab/solver.hpp"
#include "radlab/spectral.hpp"
#include "radlab/yamabe.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace radlab;

namespace {

struct Flags {
  std::string scenario;
  std::string out = "radlab-out";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

std::string out_path(const Flags& f, const std::string& name) {
  std::error_code ec;
  fs::create_directories(f.out, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + f.out + ": " + ec.message());
  return (fs::path(f.out) / name).string();
}

void emit(const Flags& f, const std::string& name, const json& j) {
  const std::string path = out_path(f, name);
  write_text(path, to_report_text(j));
  std::cout << "wrote " << path << "\n";
}

std::string row(std::initializer_list<double> v) {
  std::string s;
  char buf[32];
  bool first = true;
  for (double x : v) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    s += (first ? "" : ",") + std::string(buf);
    first = false;
  }
  return s + "\n";
}

json to_json(const DiscreteFunction& f) { return json(f.values); }

json grid_json(const RadialMesh& mesh) { return json(mesh.nodes()); }

DirichletOptions solve_options(const ConfigNode& n, const Flags& f) {
  DirichletOptions o;
  o.tol = f.tol.value_or(n.positive("tol", o.tol));
  o.max_iterations = static_cast<int>(n.integer("max_iterations", o.max_iterations));
  if (o.max_iterations < 1) n.child("max_iterations").error("must be >= 1");
  return o;
}

ConfigNode open(const Flags& f, nlohmann::json& holder) {
  holder = load_json_file(f.scenario);
  ConfigNode root(holder, "");
  check_schema(root);
  return root;
}

int cmd_hardy_table(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto t = root.maybe("hardy_table").value_or(ConfigNode(nlohmann::json::object(), "hardy_table"));
  const auto k = mm.warping().kappa();
  const double rmin = t.positive("r_min", 1e-2), rmax = t.positive("r_max", k && *k > 0.0 ? 50.0 / *k : 100.0);
  if (!(rmax > rmin)) t.child("r_max").error("must exceed r_min");
  const long n = t.integer("points", 200);
  if (n < 2) t.child("points").error("must be >= 2");
  const double p = mm.p();
  const double lim = k ? chi_limit(mm.alpha(), p, *k) : 0.0;
  std::string csv = "r,chi,r_pow_p_chi,limit\n";
  double last = 0.0;
  for (double r : log_grid(rmin, rmax, static_cast<int>(n))) {
    last = chi_general(mm, r);
    csv += row({r, last, last * std::pow(r, p), lim});
  }
  const std::string path = out_path(f, "hardy_table.csv");
  write_text(path, csv);
  std::cout << "wrote " << path << "\n";
  json j = report_header("hardy-table");
  j["m"] = mm.m();
  j["p"] = p;
  j["alpha"] = mm.alpha();
  j["limit"] = lim;
  j["r_max"] = rmax;
  j["chi_at_r_max"] = last;
  j["points"] = n;
  emit(f, "hardy_table.json", j);
  return 0;
}

int cmd_green(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto t = root.maybe("green").value_or(ConfigNode(nlohmann::json::object(), "green"));
  const auto rep = is_subcritical_model(mm);
  json j = report_header("green");
  j["verdict"] = std::string(to_string(rep.verdict));
  j["radii"] = rep.radii;
  j["log_chunks"] = rep.log_chunks;
  j["ratios"] = rep.ratios;
  const auto cls = green_asymptotic_class(mm);
  j["asymptotic_class"] = cls == GreenAsymptoticClass::bounded ? "bounded" : cls == GreenAsymptoticClass::logarithmic ? "logarithmic" : "power";
  if (rep.verdict == Integrability::integrable) {
    const double rmin = t.positive("r_min", 0.05), rmax = t.positive("r_max", 10.0);
    if (!(rmax > rmin)) t.child("r_max").error("must exceed r_min");
    std::string csv = "r,G,abs_dG,green_hardy_weight,chi\n";
    for (double r : log_grid(rmin, rmax, static_cast<int>(t.integer("points", 100))))
      csv += row({r, green_kernel(mm, r), green_kernel_derivative_abs(mm, r), green_hardy_weight(mm, r), chi_general(mm, r)});
    const std::string path = out_path(f, "green.csv");
    write_text(path, csv);
    std::cout << "wrote " << path << "\n";
  }
  emit(f, "green.json", j);
  return 0;
}

RadialFn potential_of(const ConfigNode& root, const ModelManifold& mm) {
  if (auto v = root.maybe("potential")) return parse_profile(*v, &mm);
  return [](double) { return 0.0; };
}

int cmd_tone(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto mesh = parse_domain(root.child("domain"), mm);
  const auto V = potential_of(root, mm);
  const auto t = fundamental_tone(mesh, mesh.sample_quad(V));
  json j = report_header("tone");
  j["lambda"] = t.lambda;
  j["method"] = t.method;
  j["iterations"] = t.iterations;
  j["residual"] = t.residual;
  write_csv(out_path(f, "eigenfunction.csv"), mesh, t.eigenfunction, "r,phi");
  emit(f, "tone.json", j);
  return 0;
}

SupersolutionDatum datum_of(const ConfigNode& root, const ModelManifold& mm) {
  if (auto d = root.maybe("datum")) return {"configured", parse_profile(*d, &mm), {}};
  return {};
}

std::vector<RadialMesh> annulus_ladder(const ConfigNode& root, const ModelManifold& mm) {
  const auto ln = root.child("ladder");
  const auto spec = parse_ladder(ln);
  if (!(spec.inner > 0.0)) ln.child("inner").error("capacity ladders need an inner radius > 0");
  return build_ladder(mm, spec);
}

json capacity_json(const GlobalCapacity& gc) {
  json rungs = json::array();
  for (std::size_t j = 0; j < gc.values.size(); ++j) {
    json r;
    r["outer"] = gc.radii[j];
    r["value"] = gc.values[j];
    r["flux_value"] = gc.flux_values[j];
    rungs.push_back(r);
  }
  json j;
  j["inner"] = gc.rungs.front().inner;
  j["rungs"] = rungs;
  j["estimate"] = gc.estimate;
  j["non_increasing"] = gc.non_increasing;
  j["capacitors_ordered"] = gc.capacitors_ordered;
  return j;
}

int cmd_capacity(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto ladder = annulus_ladder(root, mm);
  const auto gc = global_capacity(ladder, potential_of(root, mm), datum_of(root, mm));
  json j = report_header("capacity");
  j["capacity"] = capacity_json(gc);
  std::string csv = "outer,value,flux_value\n";
  for (std::size_t k = 0; k < gc.values.size(); ++k) csv += row({gc.radii[k], gc.values[k], gc.flux_values[k]});
  write_text(out_path(f, "capacity.csv"), csv);
  write_csv(out_path(f, "capacitor.csv"), ladder.back(), gc.rungs.back().capacitor, "r,u");
  emit(f, "capacity.json", j);
  return 0;
}

int cmd_classify(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto ladder = annulus_ladder(root, mm);
  ClassifyOptions opt;
  if (auto c = root.maybe("classify")) {
    opt.stabilization = c->positive("stabilization", opt.stabilization);
    opt.floor_fraction = c->positive("floor_fraction", opt.floor_fraction);
    opt.reference_radius = c->nonnegative("reference_radius", 0.0);
  }
  const auto rep = classify_criticality(ladder, potential_of(root, mm), datum_of(root, mm), opt);
  json j = report_header("classify");
  j["verdict"] = to_string(rep.verdict);
  j["tones"] = rep.tones;
  if (rep.verdict != Criticality::negative) {
    j["capacity"] = capacity_json(rep.capacity);
    j["ratios"] = rep.ratios;
    j["extrapolated"] = rep.extrapolated;
    j["floor"] = rep.floor;
    j["null_sequence_energies"] = rep.null_sequence_energies;
    write_csv(out_path(f, "ground_state.csv"), ladder.back(), rep.ground_state, "r,eta");
  }
  emit(f, "classify.json", j);
  std::cout << "verdict: " << to_string(rep.verdict) << "\n";
  return 0;
}

json solve_json(const SolveReport& s) {
  json j;
  j["epsilon"] = s.epsilon;
  j["delta"] = s.delta;
  j["bounds"] = {{"lower", s.lower_bound}, {"upper", s.upper_bound}};
  j["iterations"] = s.iterations;
  j["iteration_trace"] = s.trace_sup;
  j["step_trace"] = s.trace_step;
  j["residual"] = s.residual;
  j["monotone"] = s.monotone;
  j["bracketed"] = s.bracketed;
  j["domain_sequence"] = s.domain_sequence;
  j["solution_sup"] = s.solution.max();
  j["solution_inf"] = s.solution.min();
  return j;
}

RadialFn gap_weight(const ModelManifold& mm, const RadialFn& a, double theta, double core) {
  auto chi = PotentialProfile::hardy(mm, 1.0, core);
  return [chi, a, theta](double r) { return theta * std::max(chi(r) - a(r), 0.0); };
}

int cmd_solve(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto ladder = build_ladder(mm, parse_ladder(root.child("ladder")));
  const auto s = root.child("solve");
  const auto a = parse_profile(s.child("a"), &mm), b = parse_profile(s.child("b"), &mm);
  const auto F = parse_nonlinearity(s.child("nonlinearity"));
  const auto L = parse_window(s.child("window"));
  const double theta = s.positive("theta", 1.0), core = s.nonnegative("hardy_core", 0.05);
  const RadialFn W = gap_weight(mm, a, theta, core);
  MonotoneOptions mo;
  mo.solve = solve_options(s, f);
  const std::string mode = s.text("mode", "monotone");
  json j = report_header("solve");
  j["mode"] = mode;
  j["grid"] = grid_json(ladder.back());
  if (mode == "monotone") {
    const double eps = s.positive("epsilon");
    const RadialFn bplus = [b](double r) { return std::max(b(r), 0.0); };
    const auto est = compute_delta(ladder, a, bplus, F, eps, L, W, mo.solve);
    mo.delta = est.delta;
    mo.upper_bound = est.C;
    const auto rep = monotone_iteration(ladder.back(), a, b, F, eps, L, W, mo);
    j["report"] = solve_json(rep);
    j["report"]["domain_sequence"] = [&] {
      json d = json::array();
      for (const auto& m : ladder) d.push_back(m.outer());
      return d;
    }();
    j["solution"] = to_json(rep.solution);
    write_csv(out_path(f, "solution.csv"), ladder.back(), rep.solution, "r,u");
  } else if (mode == "multi") {
    const long k = s.integer("k_max", 3);
    if (k < 1) s.child("k_max").error("must be >= 1");
    MultiSolutionOptions opt;
    opt.epsilon0 = s.positive("epsilon", opt.epsilon0);
    opt.monotone = mo;
    const auto sols = multi_solution_sequence(ladder, a, b, F, L, W, static_cast<int>(k), opt);
    json arr = json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) {
      json r = solve_json(sols[i]);
      r["solution"] = to_json(sols[i].solution);
      arr.push_back(r);
      write_csv(out_path(f, "solution_" + std::to_string(i) + ".csv"), ladder.back(), sols[i].solution, "r,u");
    }
    j["reports"] = arr;
  } else {
    s.child("mode").error("expected 'monotone' or 'multi'");
  }
  emit(f, "solve.json", j);
  return 0;
}

json conformal_json(const ConformalReport& r) {
  json j;
  j["C1"] = r.C1;
  j["C2"] = r.C2;
  j["inf_u"] = r.inf_u;
  j["sup_u"] = r.sup_u;
  j["uniform_equivalence"] = r.uniform_equivalence;
  j["rung_radii"] = r.rung_radii;
  j["rung_inf"] = r.rung_inf;
  j["rung_sup"] = r.rung_sup;
  j["ladder_stable"] = r.ladder_stable;
  j["solve"] = solve_json(r.solve);
  return j;
}

int cmd_yamabe(const Flags& f) {
  nlohmann::json h;
  const auto root = open(f, h);
  const auto mm = parse_model(root.child("model"));
  const auto y = root.child("yamabe");
  YamabeProblem yp;
  yp.m = mm.m();
  yp.s = parse_profile(y.child("s"), &mm);
  yp.s_tilde = parse_profile(y.child("s_tilde"), &mm);
  if (y.has("s_tilde_plus_support")) yp.s_tilde_plus_support = y.positive("s_tilde_plus_support");
  if (y.has("s_support")) yp.s_support = y.positive("s_support");
  const auto ladder = build_ladder(mm, parse_ladder(root.child("ladder")));
  const auto L = parse_window(y.child("window"));
  PrescribedOptions po;
  po.theta = y.positive("theta", po.theta);
  po.hardy_core = y.positive("hardy_core", po.hardy_core);
  po.monotone.solve = solve_options(y, f);
  json j = report_header("yamabe");
  j["m"] = yp.m;
  j["c_m"] = yp.c_m();
  j["sigma"] = yp.sigma();
  const auto sub = conformal_laplacian_subcritical(yp, mm);
  j["conformal_laplacian"] = {{"verdict", to_string(sub.verdict)},
                              {"max_ratio", sub.max_ratio},
                              {"used_fallback", sub.used_fallback}};
  if (sub.verdict != ConformalVerdict::subcritical) {
    emit(f, "yamabe.json", j);
    fail(ErrorCode::NotCoercive, "conformal Laplacian is not subcritical (" + std::string(to_string(sub.verdict)) + ")");
  }
  const std::string mode = y.text("mode", "single");
  if (mode == "single") {
    const auto rep = run_prescribed_curvature(yp, ladder, y.positive("epsilon"), L, po);
    j["report"] = conformal_json(rep);
    write_csv(out_path(f, "conformal_factor.csv"), ladder.back(), rep.u, "r,u");
  } else if (mode == "sequence") {
    const long k = y.integer("k_max", 3);
    if (k < 1) y.child("k_max").error("must be >= 1");
    const auto reps = run_prescribed_curvature_sequence(yp, ladder, L, static_cast<int>(k), po, y.positive("epsilon", 0.5));
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(conformal_json(r));
    j["reports"] = arr;
  } else {
    y.child("mode").error("expected 'single' or 'sequence'");
  }
  emit(f, "yamabe.json", j);
  return 0;
}

int cmd_verify(const Flags& f) {
  std::uint64_t seed = f.seed.value_or(1);
  if (!f.scenario.empty()) {
    nlohmann::json h;
    const auto root = open(f, h);
    if (!f.seed) seed = parse_seed(root);
  }
  const auto rs = acceptance::run_all(seed, [](const acceptance::CriterionResult& r) {
    std::cout << acceptance::format_line(r) << std::endl;
  });
  json j = report_header("verify");
  j["seed"] = seed;
  json arr = json::array();
  for (const auto& r : rs) {
    if (r.id == 12) continue;  // wall-clock dependent
    arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"known_unattainable", r.known_unattainable}});
  }
  j["criteria"] = arr;
  j["acceptable"] = acceptance::acceptable(rs);
  emit(f, "verify.json", j);
  return acceptance::acceptable(rs) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial model-manifold lab: Hardy weights, capacities, tones and prescribed curvature"};
  app.require_subcommand(1);
  Flags flags;
  long seed = -1;
  double tol = -1.0;
  auto add_common = [&](CLI::App* sc, bool scenario_required) {
    auto* opt = sc->add_option("scenario", flags.scenario, "scenario JSON file");
    if (scenario_required) opt->required();
    sc->add_option("--out", flags.out, "output directory")->capture_default_str();
    sc->add_option("--seed", seed, "random seed (overrides the scenario)")->check(CLI::NonNegativeNumber);
    sc->add_option("--tol", tol, "solver tolerance on the scaled residual")->check(CLI::PositiveNumber);
  };
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
    bool needs_scenario;
  };
  const Entry entries[] = {
      {"hardy-table", "tabulate the sharp Hardy weight of a model", cmd_hardy_table, true},
      {"green", "Green-kernel integrability and samples", cmd_green, true},
      {"tone", "fundamental tone on a ball or annulus", cmd_tone, true},
      {"capacity", "capacities along an exhaustion ladder", cmd_capacity, true},
      {"classify", "subcritical / critical classification", cmd_classify, true},
      {"solve", "monotone scheme or multi-solution sequence", cmd_solve, true},
      {"yamabe", "prescribed scalar curvature pipeline", cmd_yamabe, true},
      {"verify", "acceptance suite with a pass/fail table", cmd_verify, false},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sc = app.add_subcommand(e.name, e.help);
    add_common(sc, e.needs_scenario);
    subs.emplace_back(sc, &e);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (seed >= 0) flags.seed = static_cast<std::uint64_t>(seed);
  if (tol > 0.0) flags.tol = tol;
  for (auto [sc, e] : subs) {
    if (!sc->parsed()) continue;
    try {
      return e->run(flags);
    } catch (const Error& err) {
      std::cerr << "error: " << err.what() << "\n";
      return err.code() == ErrorCode::ConfigError ? 2 : 1;
    } catch (const std::exception& err) {
      std::cerr << "error: " << err.what() << "\n";
      return 1;
    }
  }
  return 2;
}
