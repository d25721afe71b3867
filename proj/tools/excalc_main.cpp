#include <CLI11.hpp>
#include <iostream>

#include "excalc/commands.hpp"

using namespace excalc;

int main(int argc, char** argv) {
  CLI::App app{"excalc: exterior calculus on singular analytic varieties"};
  app.require_subcommand(1);

  CliOptions opt;
  std::vector<std::string> paramDefs;
  app.add_option("--scene", opt.scenePath, "scene JSON file");
  app.add_option("--tol", opt.tol, "quadrature tolerance (default 1e-9)");
  app.add_option("--seed", opt.seed, "sampling seed (default 0x5EED)");
  app.add_option("--param,-P", paramDefs,
                 "scene parameter override, e.g. -P d=3");
  bool wantJson = false;
  app.add_flag("--json", wantJson, "JSON report (default)");
  app.add_flag("--table", opt.table, "table rendering instead of JSON");

  auto* chern = app.add_subcommand("chern", "integrate the Chern form");
  chern->add_option("--q", opt.q, "class degree (default 1)");

  auto* bott = app.add_subcommand("bott-diff",
                                  "check the Bott difference identity");
  bott->add_option("--q", opt.q, "class degree (default 1)");
  bott->add_option("--trials", opt.trials, "sample points (default 30)");

  auto* cech = app.add_subcommand("cech", "Cech-de Rham operations");
  cech->require_subcommand(1);
  auto* cechVerify =
      cech->add_subcommand("verify", "cocycle / honeycomb / collation checks");
  cechVerify->add_option("--q", opt.q, "class degree (default 1)");

  auto* residue = app.add_subcommand("residue", "residue computations");
  residue->require_subcommand(1);
  residue->add_subcommand("index", "Bochner-Martinelli index");
  residue->add_subcommand("camacho-sad", "Camacho-Sad residue");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* vrt = verify->add_subcommand("residue-theorem",
                                     "localized vs global Chern numbers");
  vrt->add_option("--q", opt.q, "class degree (default 1)");
  auto* vst = verify->add_subcommand("stokes", "random Stokes checks");
  vst->add_option("--trials", opt.trials, "number of trials (default 30)");

  auto* ext = app.add_subcommand("extendability", "extendable cohomology");
  ext->require_subcommand(1);
  auto* bh = ext->add_subcommand("bloom-herrera",
                                 "Bloom-Herrera obstruction");
  bh->add_option("--max-degree", opt.maxDegree,
                 "truncation degree (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (auto* top : app.get_subcommands()) {
    opt.command.push_back(top->get_name());
    for (auto* sub : top->get_subcommands())
      opt.command.push_back(sub->get_name());
  }

  try {
    std::optional<Scene> scene;
    if (!opt.scenePath.empty()) {
      for (auto& d : paramDefs) {
        size_t eq = d.find('=');
        if (eq == std::string::npos)
          throw SceneError("bad --param '" + d + "', expected key=value");
        opt.params[d.substr(0, eq)] = std::stod(d.substr(eq + 1));
      }
      scene = loadScene(opt.scenePath, opt.params);
    }
    CommandResult res = runCommand(scene ? &*scene : nullptr, opt);
    if (opt.table)
      std::cout << renderTable(res.report);
    else
      std::cout << res.report.dump(2) << "\n";
    return res.exitCode;
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExcalcError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
