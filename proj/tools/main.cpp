#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mapcone/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mapping cone homotopy structures: build, compare, check"};
  app.require_subcommand(1);
  mapcone::JobSpec spec;

  auto add_input = [&spec](CLI::App* cmd) {
    cmd->add_option("--fixture", spec.fixture, "built-in fixture name");
    cmd->add_option("--file", spec.file, "input document path");
    cmd->add_option("--morphism", spec.morphism, "morphism label in the document");
  };
  auto add_artin = [&spec](CLI::App* cmd) {
    cmd->add_option("--artin", spec.artin, "coefficient ring: eps2, eps3, eps4, twovars");
  };

  CLI::App* check = app.add_subcommand("check-dgla", "verify the axioms of everything in the input");
  add_input(check);

  CLI::App* cone = app.add_subcommand("cone", "brackets induced on the mapping cone");
  add_input(cone);
  cone->add_option("--max-arity", spec.max_arity, "highest bracket arity (default 4)");
  cone->add_option("--format", spec.format, "text or json");

  CLI::App* cmp = app.add_subcommand("compare-transfer",
                                     "closed formulas vs recursion vs tree sum");
  add_input(cmp);
  cmp->add_option("--max-arity", spec.max_arity, "highest bracket arity (default 4)");

  CLI::App* axioms = app.add_subcommand("check-linfty", "square-zero identities on the cone");
  add_input(axioms);
  axioms->add_option("--up-to", spec.up_to, "highest arity checked (default 4)");

  CLI::App* bern = app.add_subcommand("bernoulli", "coefficient table from the interval recursion");
  bern->add_option("--n", spec.bernoulli_n, "table size (default 12)");

  CLI::App* mc = app.add_subcommand("mc-check", "deformation equations for a candidate pair");
  add_input(mc);
  add_artin(mc);
  mc->add_option("--x", spec.x_label, "element label for the degree-1 part (default x)");
  mc->add_option("--a", spec.a_label, "element label for the degree-0 part (default a)");

  CLI::App* gauge = app.add_subcommand("gauge-check", "verify a gauge witness between two pairs");
  add_input(gauge);
  add_artin(gauge);
  gauge->add_option("--x", spec.x_label, "first pair, degree-1 part");
  gauge->add_option("--a", spec.a_label, "first pair, degree-0 part");
  gauge->add_option("--x1", spec.x1_label, "second pair, degree-1 part");
  gauge->add_option("--a1", spec.a1_label, "second pair, degree-0 part");
  gauge->add_option("--l", spec.l_label, "witness, degree 0 on the source side");
  gauge->add_option("--b", spec.b_label, "witness, degree -1 on the target side");

  CLI::App* homotopy = app.add_subcommand("homotopy-build",
                                          "interval path from a pair and a gauge witness");
  add_input(homotopy);
  add_artin(homotopy);
  homotopy->add_option("--x", spec.x_label, "starting pair, degree-1 part");
  homotopy->add_option("--a", spec.a_label, "starting pair, degree-0 part");
  homotopy->add_option("--l", spec.l_label, "gauge, degree 0 on the source side");
  homotopy->add_option("--b", spec.b_label, "gauge, degree -1 on the target side");

  CLI::App* fixtures = app.add_subcommand("fixtures", "list or export the built-in fixtures");
  fixtures->add_option("--export", spec.export_name, "write one fixture as a text document");

  CLI11_PARSE(app, argc, argv);
  spec.command = app.get_subcommands().front()->get_name();
  return mapcone::run(spec, std::cout, std::cerr);
}
