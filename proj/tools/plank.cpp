#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <variant>

#include "plank/io.hpp"
#include "plank/solver.hpp"
#include "plank/svg.hpp"
#include "plank/verify.hpp"

namespace {

using plank::Error;
using plank::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitSolver = 2;
constexpr int kExitParse = 3;

struct SolveFlags {
  std::string input;
  std::string output;
  double tol = 1e-10;
  int max_iter = 10000;
  long max_flips = 1'000'000;
  std::string strategy = "replicate";
  std::string sheet_resolution = "auto";
  std::uint64_t seed = 42;
  bool shrink_boundary = false;
};

void emit(const nlohmann::json& j, const std::string& output) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    plank::write_text_file(output, text);
}

int resolution_from_flag(const std::string& flag) {
  if (flag == "auto") return plank::kAutoResolution;
  try {
    const int n = std::stoi(flag);
    if (n < 1) throw std::invalid_argument("non-positive");
    return n;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "--sheet-resolution: expected \"auto\" or a positive integer");
  }
}

int run_solve(const SolveFlags& flags) {
  const plank::ScalingConfig config{flags.tol, flags.max_iter, 1.0};
  const int resolution = resolution_from_flag(flags.sheet_resolution);
  const plank::Strategy strategy = flags.strategy == "direct"
                                       ? plank::Strategy::DirectWeighted
                                       : plank::Strategy::Replicate;

  plank::Instance inst = plank::parse_instance(plank::load_json_file(flags.input));

  if (std::holds_alternative<plank::PlankSystem>(inst)) {
    plank::PlankSystem sys = std::get<plank::PlankSystem>(std::move(inst));
    const plank::Index n = sys.A.rows();
    const bool equal_width =
        ((sys.w.array() - 1.0 / static_cast<double>(n)).abs() <= 1e-12).all();

    plank::Solution sol;
    if (equal_width) {
      sol = plank::solve_equal_width(sys.A, sys.m, config, flags.max_flips);
    } else {
      if (sys.w.sum() >= 1.0) {
        if (!flags.shrink_boundary)
          throw Error(ErrorCode::InsufficientSlack,
                      "sum of half-widths is at the boundary; rerun with --shrink-boundary "
                      "or shrink w yourself");
        std::cerr << "warning: shrinking half-widths by 1e-6 to leave replication slack\n";
        sys.w *= 1.0 - 1e-6;
      }
      sol = plank::solve_general(sys, strategy, resolution, config, flags.max_flips);
    }
    emit(plank::matrix_solution_to_json(sol), flags.output);
    return kExitOk;
  }

  const plank::GeometryInstance geo = std::get<plank::GeometryInstance>(std::move(inst));
  plank::HomothetResult res =
      plank::solve_homothet(geo.body, geo.hyperplanes, config, flags.max_flips);
  emit(plank::homothet_to_json(res), flags.output);
  return kExitOk;
}

void print_report(const plank::VerificationReport& report) {
  std::printf("feasible: %s\n", report.feasible ? "yes" : "no");
  std::printf("worst margin slack: %.3e\n", report.worst_margin_slack);
  std::printf("l1 slack: %.3e\n", report.l1_slack);
  std::printf("l2sq slack: %.3e\n", report.l2sq_slack);
  std::printf("weighted slack: %.3e\n", report.weighted_slack);
  for (const auto& f : report.failures)
    std::printf("violated %s (deficit %.3e)\n", f.constraint.c_str(), f.deficit);
}

int run_verify(const std::string& instance_path, const std::string& solution_path, double tol) {
  plank::Instance inst = plank::parse_instance(plank::load_json_file(instance_path));
  const nlohmann::json sol_j = plank::load_json_file(solution_path);

  plank::VerificationReport report;
  if (std::holds_alternative<plank::PlankSystem>(inst)) {
    report = plank::check_solution(std::get<plank::PlankSystem>(inst),
                                   plank::parse_matrix_solution(sol_j), tol);
  } else {
    const auto& geo = std::get<plank::GeometryInstance>(inst);
    report = plank::check_homothet(geo.body, geo.hyperplanes, plank::parse_homothet(sol_j), tol);
  }
  print_report(report);
  return report.feasible ? kExitOk : kExitInfeasible;
}

int run_symmetrize(const std::string& input, const std::string& output, double tol, int max_iter) {
  plank::Instance inst = plank::parse_instance(plank::load_json_file(input));
  if (!std::holds_alternative<plank::PlankSystem>(inst))
    throw Error(ErrorCode::ParseError, "symmetrize expects a matrix-kind instance");
  const plank::ScalingConfig config{tol, max_iter, 1.0};
  const plank::SymmetrizationResult sym =
      plank::symmetrize(std::get<plank::PlankSystem>(inst).A, config);
  emit(plank::symmetrization_to_json(sym), output);
  return sym.residual <= tol ? kExitOk : kExitSolver;
}

int run_demo_svg(const std::string& input, const std::string& out_path, double tol, int max_iter,
                 long max_flips) {
  plank::Instance inst = plank::parse_instance(plank::load_json_file(input));
  if (!std::holds_alternative<plank::GeometryInstance>(inst))
    throw Error(ErrorCode::ParseError, "demo-svg expects a geometry-kind instance");
  const auto& geo = std::get<plank::GeometryInstance>(inst);
  if (geo.body.dim() != 2)
    throw Error(ErrorCode::InvalidDimension, "demo-svg: instance must be 2-D");
  const plank::ScalingConfig config{tol, max_iter, 1.0};
  const plank::HomothetResult res =
      plank::solve_homothet(geo.body, geo.hyperplanes, config, max_flips);
  plank::write_text_file(out_path, plank::render_homothet_svg(geo.body, geo.hyperplanes, res));
  return kExitOk;
}

int run_davenport(int k) {
  std::printf("n 2^-n 1/(n+1)\n");
  for (int n = 0; n <= k; ++n) {
    const auto [pigeonhole, homothet] = plank::davenport_comparison(n);
    std::printf("%d %.7g %.7g\n", n, pigeonhole, homothet);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plank: constructive solver for symmetric plank systems"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("input", solve_flags.input, "instance JSON path")->required();
  solve->add_option("--output", solve_flags.output, "write the solution here instead of stdout");
  solve->add_option("--tol", solve_flags.tol, "scaling tolerance");
  solve->add_option("--max-iter", solve_flags.max_iter, "scaling iteration budget");
  solve->add_option("--max-flips", solve_flags.max_flips, "sign flip budget");
  solve->add_option("--strategy", solve_flags.strategy, "replicate|direct")
      ->check(CLI::IsMember({"replicate", "direct"}));
  solve->add_option("--sheet-resolution", solve_flags.sheet_resolution, "auto or a positive integer");
  solve->add_option("--seed", solve_flags.seed, "seed for randomized restarts");
  solve->add_flag("--shrink-boundary", solve_flags.shrink_boundary,
                  "shrink boundary-case widths by 1e-6 instead of failing");

  std::string verify_instance, verify_solution;
  double verify_tol = 1e-9;
  CLI::App* verify = app.add_subcommand("verify", "re-check a solution against its instance");
  verify->add_option("instance", verify_instance, "instance JSON path")->required();
  verify->add_option("solution", verify_solution, "solution JSON path")->required();
  verify->add_option("--tol", verify_tol, "feasibility tolerance");

  std::string sym_input, sym_output;
  double sym_tol = 1e-10;
  int sym_max_iter = 10000;
  CLI::App* symmetrize = app.add_subcommand("symmetrize", "emit theta, U, H for a matrix instance");
  symmetrize->add_option("input", sym_input, "instance JSON path")->required();
  symmetrize->add_option("--output", sym_output, "write the result here instead of stdout");
  symmetrize->add_option("--tol", sym_tol, "scaling tolerance");
  symmetrize->add_option("--max-iter", sym_max_iter, "scaling iteration budget");

  std::string svg_input, svg_out;
  CLI::App* demo = app.add_subcommand("demo-svg", "render a 2-D instance and its homothet");
  demo->add_option("input", svg_input, "instance JSON path")->required();
  demo->add_option("--out", svg_out, "output SVG path")->required();

  int davenport_k = 0;
  CLI::App* davenport = app.add_subcommand("davenport", "pigeonhole comparison table");
  davenport->add_option("--n", davenport_k, "table rows 0..n")->required()
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  const bool in_verify = verify->parsed();
  try {
    if (solve->parsed()) return run_solve(solve_flags);
    if (in_verify) return run_verify(verify_instance, verify_solution, verify_tol);
    if (symmetrize->parsed()) return run_symmetrize(sym_input, sym_output, sym_tol, sym_max_iter);
    if (demo->parsed()) return run_demo_svg(svg_input, svg_out, 1e-10, 10000, 1'000'000);
    if (davenport->parsed()) return run_davenport(davenport_k);
  } catch (const Error& e) {
    nlohmann::json err{{"error", plank::to_string(e.code())}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    if (e.code() == ErrorCode::ParseError) return kExitParse;
    if (in_verify && e.code() == ErrorCode::InvalidDimension) return kExitParse;
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
