// Convergence study driver: one CSV row per refinement level.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <dpg/study.hpp>

int main(int argc, char** argv)
{
  dpg::StudyConfig cfg;
  double d = 0.0;

  CLI::App app{"DPG domain-scaling convergence study"};
  const std::map<std::string, dpg::Problem> problems{{"poisson", dpg::Problem::poisson},
                                                     {"plate", dpg::Problem::plate}};
  const std::map<std::string, dpg::BcLayout> layouts{{"dirichlet", dpg::BcLayout::dirichlet},
                                                     {"mixed", dpg::BcLayout::mixed}};
  const std::map<std::string, dpg::NormMode> norms{{"standard", dpg::NormMode::standard},
                                                   {"scaled", dpg::NormMode::scaled}};
  app.add_option("--problem", cfg.problem, "poisson or plate")
      ->required()
      ->transform(CLI::CheckedTransformer(problems, CLI::ignore_case));
  app.add_option("--gamma", cfg.gamma, "reaction coefficient (poisson)")->capture_default_str();
  app.add_option("--r1", cfg.r1, "domain length in x")->capture_default_str();
  app.add_option("--r2", cfg.r2, "domain length in y")->capture_default_str();
  app.add_option("--bc", cfg.bc, "dirichlet (clamped for the plate) or mixed")
      ->transform(CLI::CheckedTransformer(layouts, CLI::ignore_case));
  app.add_option("--norm", cfg.norm, "standard or scaled test norm")
      ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
  auto* d_opt = app.add_option("--d", d, "test-norm scaling override");
  app.add_option("--levels", cfg.levels, "number of refinement levels")->capture_default_str();
  app.add_option("--ny0", cfg.ny0, "cells in y on the coarsest mesh")->capture_default_str();
  app.add_option("--out", cfg.out, "CSV output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (*d_opt) {
    cfg.d_override = d;
  }

  std::vector<dpg::StudyRow> rows;
  try {
    dpg::validate(cfg);
    rows = dpg::run_study(cfg);
  } catch (const dpg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.out.empty()) {
    dpg::write_csv(std::cout, cfg, rows);
  } else {
    std::ofstream os(cfg.out);
    if (!os) {
      std::cerr << "cannot open " << cfg.out << '\n';
      return 1;
    }
    dpg::write_csv(os, cfg, rows);
  }
  return 0;
}
