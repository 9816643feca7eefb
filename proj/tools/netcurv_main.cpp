// netcurv command line: validate, curvature, mu, verify-thm1, double,
// refine, theta-check, generate.  Machine-readable output goes to files
// (or stdout with --stdout); one human summary line goes to stdout.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "netcurv/direction.hpp"
#include "netcurv/double_cover.hpp"
#include "netcurv/examples.hpp"
#include "netcurv/graph.hpp"
#include "netcurv/io_util.hpp"
#include "netcurv/parallel.hpp"
#include "netcurv/refinement.hpp"
#include "netcurv/theta.hpp"
#include "netcurv/vertex_curvature.hpp"

namespace {

using namespace netcurv;

constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;
constexpr int kExitUsage = 64;

void emit(const std::string& text, const std::string& path, bool to_stdout) {
  if (to_stdout) {
    std::cout << text;
    return;
  }
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

UnitVector parse_direction(const std::string& text) {
  std::istringstream in(text);
  double x, y, z;
  char c1 = 0, c2 = 0;
  if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
    throw BadParameter("--direction expects x,y,z");
  return UnitVector::normalize({x, y, z});
}

int run(int argc, char** argv) {
  CLI::App app{"net total curvature of piecewise-linear spatial graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string in_path, out_path, csv_path;
  std::uint64_t seed = 1;
  int threads = 0;
  bool to_stdout = false;
  app.add_option("--seed", seed, "random seed for sampling subcommands");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_flag("--stdout", to_stdout, "write the machine-readable report to stdout");

  auto* validate = app.add_subcommand("validate", "parse and validate a graph file");
  validate->add_option("--in", in_path, "graph JSON")->required();

  auto* curvature = app.add_subcommand("curvature", "per-vertex curvature report and totals");
  std::string method = "exact";
  std::int64_t samples = 200000;
  curvature->add_option("--in", in_path, "graph JSON")->required();
  curvature->add_option("--method", method, "exact | quadrature")
      ->check(CLI::IsMember({"exact", "quadrature"}));
  curvature->add_option("--samples", samples, "quadrature samples");
  curvature->add_option("--out", out_path, "JSON report path");
  curvature->add_option("--csv", csv_path, "CSV report path");

  auto* mu = app.add_subcommand("mu", "multiplicity for one direction or a direction lattice");
  std::string direction_arg;
  std::int64_t lattice = 0;
  mu->add_option("--in", in_path, "graph JSON")->required();
  mu->add_option("--direction", direction_arg, "direction as x,y,z");
  mu->add_option("--lattice", lattice, "Fibonacci lattice size");
  mu->add_option("--out", out_path, "report path (JSON for --direction, CSV for --lattice)");

  auto* thm1 = app.add_subcommand("verify-thm1", "compare exact N with the sphere integral of mu");
  thm1->add_option("--in", in_path, "graph JSON")->required();
  thm1->add_option("--samples", samples, "Monte-Carlo samples");
  thm1->add_option("--out", out_path, "JSON report path");

  auto* dbl = app.add_subcommand("double", "edge-doubled graph traversals");
  bool enumerate = false, allow_self = false;
  dbl->add_option("--in", in_path, "graph JSON")->required();
  dbl->add_flag("--enumerate", enumerate, "minimize half curvature over all pairings");
  dbl->add_flag("--allow-self", allow_self, "admit self-pairs when enumerating");
  dbl->add_option("--out", out_path, "witness pairing JSON path");

  auto* refine = app.add_subcommand("refine", "net curvature of nested inscriptions");
  std::string parametric;
  int levels = 8;
  refine->add_option("--parametric", parametric,
                     "circle_diameter_theta | trefoil_theta | twisted_two_chord");
  refine->add_option("--in", in_path, "polygonal graph JSON to re-inscribe");
  refine->add_option("--levels", levels, "maximum dyadic level");
  refine->add_option("--out", out_path, "CSV path");

  auto* theta = app.add_subcommand("theta-check", "theta-graph curvature bounds");
  theta->add_option("--in", in_path, "graph JSON")->required();
  theta->add_option("--samples", samples, "direction samples for min mu");
  theta->add_option("--out", out_path, "JSON report path");

  auto* generate = app.add_subcommand("generate", "write a built-in example graph");
  std::string example;
  ExampleParams params;
  generate->add_option("--example", example, "example name")->required();
  generate->add_option("--n", params.n, "sampling density");
  generate->add_option("--d", params.d, "ray count (coplanar_star)");
  generate->add_option("--alpha", params.alpha, "tilt angle (valence4_star)");
  generate->add_option("--twists", params.twists, "chord twists (two_chord)");
  generate->add_option("--out", out_path, "graph JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  set_thread_count(threads);

  if (validate->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    std::cout << "valid: " << g.vertices().size() << " vertices, " << g.edges().size()
              << " edges, " << topological_vertices(g).size() << " topological\n";
    return 0;
  }

  if (curvature->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    const CurvatureReport report = graph_curvature_report(g);
    double n_value = report.N;
    if (method == "quadrature")
      n_value = net_total_curvature(g, CurvatureMethod::quadrature, samples, seed);
    emit(report_to_json(report), out_path, to_stdout);
    if (!csv_path.empty()) emit(report_to_csv(report), csv_path, false);
    std::cout << "N = " << fmt17(n_value) << " (" << method << ")\n";
    return 0;
  }

  if (mu->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    if (!direction_arg.empty()) {
      const DirectionReport report = mu_of_direction(g, parse_direction(direction_arg));
      emit(direction_report_to_json(report), out_path, to_stdout);
      std::cout << "mu = " << report.mu.str() << "\n";
      return 0;
    }
    if (lattice > 0) {
      const auto map = sphere_map(g, lattice);
      emit(sphere_map_to_csv(map), out_path, to_stdout);
      std::int64_t flagged = 0;
      for (const auto& s : map) flagged += s.degenerate ? 1 : 0;
      std::cout << "lattice " << lattice << ", " << flagged << " degenerate\n";
      return 0;
    }
    throw BadParameter("mu: need --direction or --lattice");
  }

  if (thm1->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    const double exact = net_total_curvature(g);
    const MuIntegral integral = integrate_mu(g, samples, seed);
    // absolute slack covers the zero-variance case (mu constant a.e.)
    const bool pass = std::fabs(exact - integral.N_estimate) <= 3.0 * integral.stderr_ + 1e-9;
    std::ostringstream report;
    report << "{\"N_exact\":" << fmt17(exact) << ",\"N_estimate\":" << fmt17(integral.N_estimate)
           << ",\"stderr\":" << fmt17(integral.stderr_) << ",\"samples\":" << integral.samples
           << ",\"rejected\":" << integral.rejected << ",\"seed\":" << integral.seed
           << ",\"pass_3sigma\":" << (pass ? "true" : "false") << "}\n";
    emit(report.str(), out_path, to_stdout);
    std::cout << "N_exact = " << fmt17(exact) << ", N_estimate = " << fmt17(integral.N_estimate)
              << " +- " << fmt17(integral.stderr_) << " -> " << (pass ? "PASS" : "FAIL")
              << " at 3 sigma\n";
    return 0;
  }

  if (dbl->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    const DoubledGraph d = double_graph(g);
    if (enumerate) {
      const MinHalfCurvature min = min_half_curvature(g, allow_self);
      emit(pairing_to_json(d, min.witness), out_path, to_stdout);
      std::cout << "min half curvature = " << fmt17(min.value)
                << " (N = " << fmt17(net_total_curvature(g)) << ")\n";
      return 0;
    }
    const Parameterization euler = euler_circuit(d);
    emit(pairing_to_json(d, euler.pairing), out_path, to_stdout);
    std::cout << "euler circuit: " << euler.walks.front().size()
              << " steps, C = " << fmt17(euler.total_curvature)
              << ", C/2 = " << fmt17(0.5 * euler.total_curvature) << "\n";
    return 0;
  }

  if (refine->parsed()) {
    ParametricGraph pg;
    if (!parametric.empty())
      pg = make_parametric_example(parametric);
    else if (!in_path.empty())
      pg = parametric_from_polyline(load_graph_file(in_path));
    else
      throw BadParameter("refine: need --parametric or --in");
    const auto rows = approximate_net_curvature(pg, levels);
    emit(levels_to_csv(rows), out_path, to_stdout);
    std::cout << "N(level " << rows.back().level << ") = " << fmt17(rows.back().N) << "\n";
    return 0;
  }

  if (theta->parsed()) {
    const SpatialGraph g = load_graph_file(in_path);
    const ThetaReport report = check_theta_bounds(g, samples, seed);
    emit(theta_report_to_json(report), out_path, to_stdout);
    std::cout << "N = " << fmt17(report.N) << ", min mu = " << report.min_mu_sampled.str()
              << ", 3pi bound " << (report.passes_3pi ? "ok" : "VIOLATED") << "\n";
    return 0;
  }

  if (generate->parsed()) {
    const SpatialGraph g = generate_example(example, params);
    save_graph_file(g, out_path);
    std::cout << "wrote " << example << " to " << out_path << "\n";
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const NotTheta& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const BadParameter& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}
