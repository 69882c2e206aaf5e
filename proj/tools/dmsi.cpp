// dmsi: plan, verify, and simulate minimum-delay coded broadcasts to clients
// with side information.

#include <CLI11.hpp>
#include <iostream>

#include "dmsi/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Minimum-delay coded broadcast planner"};
  app.require_subcommand(1);

  dmsi::cli::PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Build the optimal assignment and a decodable code");
  plan_cmd->add_option("instance", plan.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--field-degree", plan.field_degree, "Use GF(2^e) instead of the default")
      ->check(CLI::Range(1, 16));
  plan_cmd->add_option("--seed", plan.seed, "Seed for the code construction");
  plan_cmd->add_option("--output,-o", plan.output, "Where to write the plan JSON");

  dmsi::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a plan: column weights, min-cut, decodability");
  verify_cmd->add_option("instance", verify.instance)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("plan", verify.plan)->required()->check(CLI::ExistingFile);

  dmsi::cli::OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustively search for the minimum total delay");
  oracle_cmd->add_option("instance", oracle.instance)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--budget", oracle.budget, "Maximum search nodes");
  oracle_cmd->add_option("--m-cap", oracle.m_cap, "Largest row count to search");
  oracle_cmd->add_flag("--parallel", oracle.parallel, "Split the search across threads");
  oracle_cmd->add_option("--output,-o", oracle.output, "Where to write the result JSON");

  dmsi::cli::SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Encode, broadcast, and decode random payloads");
  simulate_cmd->add_option("instance", simulate.instance)->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("plan", simulate.plan)->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--seed,--payload-seed", simulate.payload_seed, "Seed for the payloads");
  simulate_cmd->add_option("--payload", simulate.payload, "JSON array of n original symbols")
      ->check(CLI::ExistingFile);

  dmsi::cli::TransformOptions transform;
  auto* transform_cmd = app.add_subcommand("transform", "Trace the rewrite of an assignment into the optimal one");
  transform_cmd->add_option("instance", transform.instance)->required()->check(CLI::ExistingFile);
  transform_cmd->add_option("matrix", transform.matrix)->required()->check(CLI::ExistingFile);
  transform_cmd->add_flag("--auto-reduce", transform.auto_reduce,
                          "Clear surplus ones first so every column weight equals its want count");

  CLI11_PARSE(app, argc, argv);

  if (*plan_cmd) {
    return dmsi::cli::cmd_plan(plan, std::cout, std::cerr);
  }
  if (*verify_cmd) {
    return dmsi::cli::cmd_verify(verify, std::cout, std::cerr);
  }
  if (*oracle_cmd) {
    return dmsi::cli::cmd_oracle(oracle, std::cout, std::cerr);
  }
  if (*simulate_cmd) {
    return dmsi::cli::cmd_simulate(simulate, std::cout, std::cerr);
  }
  return dmsi::cli::cmd_transform(transform, std::cout, std::cerr);
}
