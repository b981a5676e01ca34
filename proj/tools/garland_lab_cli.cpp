// Command-line front end. Talks to the library only through garland_lab.h.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "garland_lab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefused = 2;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(gl_status s) {
  if (s != GL_OK) throw Failure(std::string(gl_status_name(s)) + ": " + gl_last_error());
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  gl_string_free(s);
  return out;
}

Json take_json(char* s) { return Json::parse(take(s)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("i/o error: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GraphHandle {
  gl_graph* g = nullptr;
  ~GraphHandle() { gl_graph_free(g); }
};

struct ComplexHandle {
  gl_complex* c = nullptr;
  ~ComplexHandle() { gl_complex_free(c); }
};

bool is_complex_catalog(const std::string& name) {
  return name == "torus" || name == "tetrahedron" || name == "octahedron" || name == "icosahedron";
}

void load_complex(const std::string& spec, ComplexHandle& h) {
  if (is_complex_catalog(spec)) check(gl_complex_catalog(spec.c_str(), &h.c));
  else check(gl_complex_load(spec.c_str(), &h.c));
}

// "euclidean:N", "tree:<file>" or a JSON space file.
std::string space_json(const std::string& spec) {
  if (spec.rfind("euclidean:", 0) == 0) {
    return Json{{"type", "euclidean"}, {"dim", std::stoul(spec.substr(10))}}.dump();
  }
  if (spec.rfind("tree:", 0) == 0) {
    std::istringstream in(slurp(spec.substr(5)));
    std::string line;
    Json edges = Json::array();
    std::size_t vertices = 0;
    bool header = false;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream f(line);
      std::string key;
      if (!(f >> key)) continue;
      if (!header) {
        if (key != "tree") throw Failure("parse error: " + spec.substr(5) + ": expected a 'tree' file");
        header = true;
      } else if (key == "v") {
        f >> vertices;
      } else if (key == "e") {
        std::size_t u = 0, v = 0;
        double len = 1.0;
        f >> u >> v;
        if (!(f >> len)) len = 1.0;
        edges.push_back({u, v, len});
      }
    }
    return Json{{"type", "tree"}, {"vertices", vertices}, {"edges", edges}}.dump();
  }
  return slurp(spec);
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("GARLAND_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Failure("invalid argument: GARLAND_LAB_SEED is not an integer");
    }
  }
  return 0;
}

struct Output {
  std::string path;
  std::string format = "json";

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure("i/o error: cannot write " + path);
    out << text;
  }
};

// Commands without randomness still echo the seed they would have used.
std::string wrap(const std::string& command, Json config, const Json& report) {
  if (!config.contains("seed")) {
    Json seed = 0;
    if (const char* env = std::getenv("GARLAND_LAB_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        seed = std::string(env);
      }
    }
    config["seed"] = seed;
  }
  Json j{{"tool", "garland-lab"}, {"version", gl_version()}, {"command", command}, {"config", config},
         {"report", report}};
  return j.dump(2) + "\n";
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete harmonic maps, spectral gaps and fixed-point certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gl_version()));
  Output output;
  app.add_option("-o,--output", output.path, "Write the report to a file instead of stdout");

  int exit_code = kExitOk;
  std::string command;
  Json config;
  Json report;
  std::string raw;  // non-JSON output (CSV, text)

  // spectra ---------------------------------------------------------------
  auto* spectra = app.add_subcommand("spectra", "Spectral gap of graphs (files, 'cycle', 'incidence', or a complex link)");
  std::vector<std::string> spectra_inputs;
  std::size_t spectra_k = 0, spectra_closed = 0;
  unsigned spectra_p = 2, spectra_trace = 0;
  std::string spectra_map;
  spectra->add_option("inputs", spectra_inputs, "Graph files, or 'cycle' (with --k), 'incidence' (with --p)");
  spectra->add_option("--k", spectra_k, "Cycle length for 'cycle'");
  spectra->add_option("--p", spectra_p, "Prime for 'incidence'");
  spectra->add_option("--closed-form", spectra_closed, "Print 1 - cos(2π/k) for the given k");
  spectra->add_option("--trace-k", spectra_trace, "Also report the trace-method lower bound with this k");
  spectra->add_option("--map", spectra_map, "Map JSON: also report its Rayleigh quotients");

  // garland ---------------------------------------------------------------
  auto* garland = app.add_subcommand("garland", "Fixed-point certificates and Garland identity/inequality reports");
  std::string garland_action, garland_complex, garland_target = "hilbert", garland_map, garland_cocycle;
  double garland_delta = 0.0, garland_lambda = std::numeric_limits<double>::quiet_NaN();
  bool garland_lattice = false;
  unsigned jobs = 1;
  garland->add_option("action", garland_action, "certify | identity | inequality")
      ->required()
      ->check(CLI::IsMember({"certify", "identity", "inequality"}));
  garland->add_option("complex", garland_complex, "Complex file or torus/tetrahedron/octahedron/icosahedron")->required();
  garland->add_option("--target", garland_target, "hilbert | in")->check(CLI::IsMember({"hilbert", "in"}));
  garland->add_option("--delta", garland_delta, "IN bound δ for --target in");
  garland->add_option("--map", garland_map, "Map JSON (default: twisted harmonic map of the cocycle)");
  garland->add_option("--cocycle", garland_cocycle, "Cocycle JSON");
  garland->add_flag("--lattice", garland_lattice, "Use the lattice cocycle of the 3x3 torus");
  garland->add_option("--lambda", garland_lambda, "λ for the inequality (default: smallest link gap)");
  garland->add_option("--jobs", jobs, "Worker threads");

  // flow ------------------------------------------------------------------
  auto* flow = app.add_subcommand("flow", "Mayer-style descent flow; CSV trace of step, energy, laplacian norm");
  std::string flow_complex, flow_target = "euclidean:1", flow_map, flow_cocycle;
  double flow_eta = 0.5, flow_floor = 0.0;
  std::size_t flow_iterations = 500;
  std::uint64_t flow_seed_value = 0;
  bool flow_lattice = false;
  flow->add_option("complex", flow_complex, "Complex file or catalog name")->required();
  flow->add_option("--target", flow_target, "euclidean:N, tree:<file> or a space JSON file");
  flow->add_option("--map", flow_map, "Start map JSON (default: random start from the seed)");
  flow->add_option("--cocycle", flow_cocycle, "Cocycle JSON (Euclidean targets)");
  flow->add_flag("--lattice", flow_lattice, "Use the lattice cocycle of the 3x3 torus");
  flow->add_option("--eta", flow_eta, "Step fraction in (0, 1]");
  flow->add_option("--iterations", flow_iterations, "Maximum number of sweeps");
  flow->add_option("--energy-floor", flow_floor, "Stop once the energy is at or below this value");
  auto* flow_seed = flow->add_option("--seed", flow_seed_value, "Seed of the random start (env GARLAND_LAB_SEED)");
  flow->add_option("--format", output.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  flow->add_option("--jobs", jobs, "Worker threads");

  // wirtinger ---------------------------------------------------------------
  auto* wirtinger = app.add_subcommand("wirtinger", "Wirtinger inequalities and loop-family certificates");
  std::size_t wir_k = 0, wir_enumerate = 0;
  std::string wir_map, wir_target, wir_certificate, wir_averaged, wir_graph;
  std::uint64_t wir_seed_value = 0;
  wirtinger->add_option("--check", wir_k, "Check E1/Ej >= W(k,1)/W(k,j) for a map of the k-cycle");
  wirtinger->add_option("--map", wir_map, "Cycle map JSON (default: regular k-gon, or random with --target)");
  wirtinger->add_option("--target", wir_target, "Random map into euclidean:N or tree:<file>");
  auto* wir_seed = wirtinger->add_option("--seed", wir_seed_value, "Seed for --target");
  wirtinger->add_option("--certificate", wir_certificate, "Loop family JSON for the loop-family bound");
  wirtinger->add_option("--averaged", wir_averaged, "Cycle family JSON for the averaging bound");
  wirtinger->add_option("--enumerate", wir_enumerate, "List all simple cycles of this length");
  wirtinger->add_option("--graph", wir_graph, "Host graph file, or incidence:<p> / cycle:<k>");

  // incidence ---------------------------------------------------------------
  auto* incidence = app.add_subcommand("incidence", "Projective-plane incidence graphs");
  unsigned inc_p = 2;
  bool inc_census = false, inc_fh = false;
  std::string inc_export;
  incidence->add_option("--p", inc_p, "Prime field order")->required();
  incidence->add_flag("--census", inc_census, "Building-embedding distance census and Rayleigh quotients");
  incidence->add_flag("--feit-higman", inc_fh, "Compare the eigensolved gap with both readings of the formula");
  incidence->add_option("--export-graph", inc_export, "Write the incidence graph in the text format");

  // random-graph --------------------------------------------------------------
  auto* rgraph = app.add_subcommand("random-graph", "Permutation-model 2d-regular graphs");
  std::size_t rg_n = 0, rg_d = 0, rg_samples = 1;
  double rg_c = 0.0;
  unsigned rg_trace = 0;
  std::uint64_t rg_seed_value = 0;
  rgraph->add_option("--n", rg_n, "Vertex count")->required();
  rgraph->add_option("--d", rg_d, "Permutation count")->required();
  rgraph->add_option("--samples", rg_samples, "Number of samples");
  auto* rg_seed = rgraph->add_option("--seed", rg_seed_value, "Seed (env GARLAND_LAB_SEED)");
  rgraph->add_option("--c", rg_c, "Friedman constant c");
  rgraph->add_option("--trace-k", rg_trace, "Also compute the trace-method bound with this k");
  rgraph->add_option("--format", output.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  rgraph->add_option("--jobs", jobs, "Worker threads");

  // random-group --------------------------------------------------------------
  auto* rgroup = app.add_subcommand("random-group", "Density-model presentations and the spectral (T) verdict");
  std::size_t grp_m = 0, grp_samples = 1;
  double grp_density = 0.0;
  std::string grp_rule = "geometric";
  bool grp_relators = false;
  std::uint64_t grp_seed_value = 0;
  rgroup->add_option("--m", grp_m, "Generator count")->required();
  rgroup->add_option("--density", grp_density, "Density d in (0, 1)")->required();
  rgroup->add_option("--samples", grp_samples, "Number of samples");
  auto* grp_seed = rgroup->add_option("--seed", grp_seed_value, "Seed (env GARLAND_LAB_SEED)");
  rgroup->add_option("--link-rule", grp_rule, "geometric | literal")->check(CLI::IsMember({"geometric", "literal"}));
  rgroup->add_flag("--relators", grp_relators, "Include the sampled relators");
  rgroup->add_option("--format", output.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  rgroup->add_option("--jobs", jobs, "Worker threads");

  // in-bounds ---------------------------------------------------------------
  auto* inb = app.add_subcommand("in-bounds", "Izeki-Nayatani bounds and ratios");
  double inb_p = 0.0, inb_lambda = 0.0, inb_in = 0.0;
  std::string inb_points;
  auto* inb_p_opt = inb->add_option("--p", inb_p, "Building lower bound (√p−1)²/(2(p−√p+1))");
  auto* inb_lambda_opt = inb->add_option("--lambda", inb_lambda, "Scalar gap for (1 − IN)·λ");
  auto* inb_in_opt = inb->add_option("--in", inb_in, "IN bound δ");
  inb->add_option("--points", inb_points, "JSON {space, points, weights?, phi?}: ratio of a re-embedding");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*spectra) {
      command = "spectra";
      config = {{"inputs", spectra_inputs}};
      if (spectra_closed > 0) {
        double v = 0.0;
        check(gl_cycle_gap_closed_form(spectra_closed, &v));
        config["closed_form"] = spectra_closed;
        report = {{"k", spectra_closed}, {"lambda", v}};
      } else {
        if (spectra_inputs.empty()) throw Failure("invalid argument: no input graph");
        Json reports = Json::array();
        for (const auto& in : spectra_inputs) {
          GraphHandle h;
          if (in == "cycle") {
            config["k"] = spectra_k;
            check(gl_graph_catalog("cycle", spectra_k, &h.g));
          } else if (in == "incidence") {
            config["p"] = spectra_p;
            check(gl_graph_catalog("incidence", spectra_p, &h.g));
          } else {
            check(gl_graph_load(in.c_str(), &h.g));
          }
          char* s = nullptr;
          check(gl_spectral_gap(h.g, &s));
          Json r = take_json(s);
          r = Json{{"input", in}, {"lambda", r["lambda"]}, {"connected", r["connected"]}, {"method", r["method"]},
                   {"spectrum", r["spectrum"]}};
          if (spectra_trace > 0 && r["connected"].get<bool>()) {
            double b = 0.0;
            check(gl_trace_bound(h.g, spectra_trace, &b));
            r["trace_k"] = spectra_trace;
            r["trace_bound"] = b;
          }
          if (!spectra_map.empty()) {
            check(gl_rayleigh(h.g, slurp(spectra_map).c_str(), &s));
            r["map"] = take_json(s);
          }
          reports.push_back(r);
        }
        if (spectra_trace > 0) config["trace_k"] = spectra_trace;
        if (!spectra_map.empty()) config["map"] = spectra_map;
        report = reports.size() == 1 ? reports[0] : reports;
      }
    } else if (*garland) {
      command = "garland";
      config = {{"action", garland_action}, {"complex", garland_complex}};
      ComplexHandle h;
      load_complex(garland_complex, h);
      std::string cocycle_text;
      if (garland_lattice) {
        char* s = nullptr;
        check(gl_torus_lattice_cocycle(&s));
        cocycle_text = take(s);
        config["cocycle"] = "lattice";
      } else if (!garland_cocycle.empty()) {
        cocycle_text = slurp(garland_cocycle);
        config["cocycle"] = garland_cocycle;
      }
      const std::string map_text = garland_map.empty() ? "" : slurp(garland_map);
      if (!garland_map.empty()) config["map"] = garland_map;
      const char* map_arg = map_text.empty() ? nullptr : map_text.c_str();
      const char* cocycle_arg = cocycle_text.empty() ? nullptr : cocycle_text.c_str();
      char* s = nullptr;
      if (garland_action == "certify") {
        config["target"] = garland_target;
        if (garland_target == "in") config["delta"] = garland_delta;
        int granted = 0;
        check(gl_certify(h.c, garland_target.c_str(), garland_delta, jobs, &s, &granted));
        report = take_json(s);
        if (!granted) exit_code = kExitRefused;
      } else if (garland_action == "identity") {
        if (!map_arg && !cocycle_arg) throw Failure("invalid argument: identity needs --map or a cocycle");
        check(gl_garland_identity(h.c, map_arg, cocycle_arg, &s));
        report = take_json(s);
      } else {
        if (!map_arg && !cocycle_arg) throw Failure("invalid argument: inequality needs --map or a cocycle");
        if (!std::isnan(garland_lambda)) config["lambda"] = garland_lambda;
        check(gl_garland_inequality(h.c, map_arg, cocycle_arg, garland_lambda, &s));
        report = take_json(s);
      }
    } else if (*flow) {
      command = "flow";
      const std::uint64_t seed = resolve_seed(flow_seed, flow_seed_value);
      config = {{"complex", flow_complex}, {"eta", flow_eta}, {"iterations", flow_iterations},
                {"energy_floor", flow_floor}, {"seed", seed}, {"format", output.format}};
      ComplexHandle h;
      load_complex(flow_complex, h);
      std::string cocycle_text;
      if (flow_lattice) {
        char* s = nullptr;
        check(gl_torus_lattice_cocycle(&s));
        cocycle_text = take(s);
        config["cocycle"] = "lattice";
        if (flow_target == "euclidean:1") flow_target = "euclidean:2";
      } else if (!flow_cocycle.empty()) {
        cocycle_text = slurp(flow_cocycle);
        config["cocycle"] = flow_cocycle;
      }
      std::string map_text;
      if (!flow_map.empty()) {
        map_text = slurp(flow_map);
        config["map"] = flow_map;
      } else {
        config["target"] = flow_target;
        char* s = nullptr;
        check(gl_random_map(space_json(flow_target).c_str(), gl_complex_vertex_count(h.c), seed, &s));
        map_text = take(s);
      }
      const Json options{{"eta", flow_eta}, {"iterations", flow_iterations}, {"energy_floor", flow_floor}, {"jobs", jobs}};
      char* s = nullptr;
      check(gl_flow(h.c, map_text.c_str(), cocycle_text.empty() ? nullptr : cocycle_text.c_str(),
                    options.dump().c_str(), &s));
      report = take_json(s);
      if (output.format == "csv") {
        std::ostringstream os;
        os << "step,energy,laplacian_norm\n";
        for (const auto& st : report["steps"]) {
          os << st["step"].get<std::size_t>() << "," << number(st["energy"].get<double>()) << ","
             << number(st["laplacian_norm"].get<double>()) << "\n";
        }
        raw = os.str();
      }
    } else if (*wirtinger) {
      command = "wirtinger";
      config = Json::object();
      auto load_graph = [&](GraphHandle& g) {
        if (wir_graph.empty()) throw Failure("invalid argument: --graph is required");
        if (wir_graph.rfind("incidence:", 0) == 0) check(gl_graph_catalog("incidence", std::stoul(wir_graph.substr(10)), &g.g));
        else if (wir_graph.rfind("cycle:", 0) == 0) check(gl_graph_catalog("cycle", std::stoul(wir_graph.substr(6)), &g.g));
        else check(gl_graph_load(wir_graph.c_str(), &g.g));
        config["graph"] = wir_graph;
      };
      char* s = nullptr;
      if (wir_k > 0) {
        config["check"] = wir_k;
        std::string map_text;
        if (!wir_map.empty()) {
          map_text = slurp(wir_map);
          config["map"] = wir_map;
        } else if (!wir_target.empty()) {
          const std::uint64_t seed = resolve_seed(wir_seed, wir_seed_value);
          config["target"] = wir_target;
          config["seed"] = seed;
          check(gl_random_map(space_json(wir_target).c_str(), wir_k, seed, &s));
          map_text = take(s);
        } else {
          config["map"] = "regular polygon";
          check(gl_regular_polygon_map(wir_k, &s));
          map_text = take(s);
        }
        int pass = 0;
        check(gl_wirtinger_check(map_text.c_str(), &s, &pass));
        report = take_json(s);
        if (!pass) exit_code = kExitRefused;
      } else if (!wir_certificate.empty()) {
        GraphHandle g;
        load_graph(g);
        config["certificate"] = wir_certificate;
        int above = 0;
        check(gl_loop_certificate(g.g, slurp(wir_certificate).c_str(), &s, &above));
        report = take_json(s);
        if (!above) exit_code = kExitRefused;
      } else if (!wir_averaged.empty()) {
        GraphHandle g;
        load_graph(g);
        config["averaged"] = wir_averaged;
        check(gl_averaged_certificate(g.g, slurp(wir_averaged).c_str(), &s));
        report = take_json(s);
        if (!(report["bound"].get<double>() > 0.5)) exit_code = kExitRefused;
      } else if (wir_enumerate > 0) {
        GraphHandle g;
        load_graph(g);
        config["enumerate"] = wir_enumerate;
        check(gl_enumerate_cycles(g.g, wir_enumerate, &s));
        report = take_json(s);
      } else {
        throw Failure("invalid argument: give --check, --certificate, --averaged or --enumerate");
      }
    } else if (*incidence) {
      command = "incidence";
      config = {{"p", inc_p}, {"census", inc_census}, {"feit_higman", inc_fh}};
      char* s = nullptr;
      check(gl_incidence_summary(inc_p, &s));
      report = take_json(s);
      if (inc_census) {
        check(gl_incidence_census(inc_p, &s));
        report["census"] = take_json(s);
      }
      if (inc_fh) {
        check(gl_feit_higman(inc_p, &s));
        report["feit_higman"] = take_json(s);
      }
      if (!inc_export.empty()) {
        GraphHandle g;
        check(gl_graph_catalog("incidence", inc_p, &g.g));
        check(gl_graph_to_text(g.g, &s));
        std::ofstream out(inc_export, std::ios::binary);
        if (!out) throw Failure("i/o error: cannot write " + inc_export);
        out << take(s);
        config["export_graph"] = inc_export;
      }
    } else if (*rgraph) {
      command = "random-graph";
      const std::uint64_t seed = resolve_seed(rg_seed, rg_seed_value);
      config = {{"n", rg_n}, {"d", rg_d}, {"samples", rg_samples}, {"seed", seed}, {"c", rg_c},
                {"trace_k", rg_trace}, {"format", output.format}};
      Json options = config;
      options["jobs"] = jobs;
      char* s = nullptr;
      check(gl_random_graph(options.dump().c_str(), &s));
      report = take_json(s);
      if (output.format == "csv") {
        std::ostringstream os;
        os << "sample,lambda" << (rg_trace > 0 ? ",trace_bound" : "") << "\n";
        const auto& lambdas = report["lambdas"];
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
          os << i << "," << number(lambdas[i].get<double>());
          if (rg_trace > 0) os << "," << number(report["trace_bounds"][i].get<double>());
          os << "\n";
        }
        raw = os.str();
        Json summary = report;
        summary.erase("lambdas");
        summary.erase("trace_bounds");
        std::cerr << wrap(command, config, summary);
      }
    } else if (*rgroup) {
      command = "random-group";
      const std::uint64_t seed = resolve_seed(grp_seed, grp_seed_value);
      config = {{"m", grp_m}, {"density", grp_density}, {"samples", grp_samples}, {"seed", seed},
                {"link_rule", grp_rule}, {"format", output.format}};
      Json options = config;
      options["jobs"] = jobs;
      options["include_relators"] = grp_relators;
      char* s = nullptr;
      check(gl_random_group(options.dump().c_str(), &s));
      report = take_json(s);
      if (output.format == "csv") {
        std::ostringstream os;
        os << "sample,seed,relators,connected,lambda,certified\n";
        for (const auto& row : report["per_sample"]) {
          os << row["sample"].get<std::size_t>() << "," << row["seed"].get<std::uint64_t>() << ","
             << row["relators"].get<std::size_t>() << "," << (row["connected"].get<bool>() ? 1 : 0) << ","
             << number(row["lambda"].get<double>()) << "," << (row["certified"].get<bool>() ? 1 : 0) << "\n";
        }
        raw = os.str();
        Json summary = report;
        summary.erase("per_sample");
        std::cerr << wrap(command, config, summary);
      }
    } else if (*inb) {
      command = "in-bounds";
      Json options = Json::object();
      if (inb_p_opt->count()) options["p"] = inb_p;
      if (inb_in_opt->count()) options["in"] = inb_in;
      if (inb_lambda_opt->count()) options["lambda"] = inb_lambda;
      config = options;
      if (!inb_points.empty()) {
        config["points"] = inb_points;
        const Json given = Json::parse(slurp(inb_points));
        for (auto& [key, value] : given.items()) options[key] = value;
      }
      char* s = nullptr;
      check(gl_in_bounds(options.dump().c_str(), &s));
      report = take_json(s);
    }

    output.write(raw.empty() ? wrap(command, config, report) : raw);
    return exit_code;
  } catch (const Failure& e) {
    std::cerr << "garland-lab: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "garland-lab: " << e.what() << "\n";
    return kExitError;
  }
}
