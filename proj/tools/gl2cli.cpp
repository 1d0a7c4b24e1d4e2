#include <CLI11.hpp>

#include <iostream>

#include "gl2/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact representation-theory computations for GL2 over finite local rings"};
  app.require_subcommand(1);

  gl2::RunConfig cfg;
  std::string flavor = "zmod";
  std::string verb;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime residue characteristic");
    sub->add_option("--ell", cfg.ell, "ring length");
    sub->add_option("--flavor", flavor, "ring flavor: zmod | tpoly");
    sub->add_option("--t", cfg.t, "degeneracy parameter t in [0, ell]");
    sub->add_option("--chi", cfg.chi, "central character index (default: sweep)");
    sub->add_option("--chi1", cfg.chi1, "first unit character index");
    sub->add_option("--chi2", cfg.chi2, "second unit character index");
    sub->add_option("--chip", cfg.chiprime, "extension character index");
    sub->add_option("--seed", cfg.seed, "random seed for spectral steps");
    sub->add_option("--budget-elems", cfg.budget_elems, "group enumeration budget");
    sub->add_option("--max-spectral-dim", cfg.max_spectral_dim,
                    "largest algebra dimension for the spectral step");
    sub->add_option("--format", cfg.format, "output format: json | md");
  };

  for (const char* v :
       {"ring-info", "table1", "construct-ss", "construct-sns", "hom", "dgg-hom", "dgg",
        "endo", "a-bound", "strong-gelfand", "w-check", "gg-free", "cor16"}) {
    CLI::App* sub = app.add_subcommand(v, "");
    add_common(sub);
    if (std::string(v) == "hom" || std::string(v) == "dgg-hom") {
      sub->add_option("--h1", cfg.h1, "first subgroup (for trivial characters)");
      sub->add_option("--phi1", cfg.phi1,
                      "first character, e.g. tensor:chi=0,t=1 | borel:chi1=0,chi2=1 | "
                      "triple:chi=0,chip=0,t=1 | psit:t=2 | triv");
      sub->add_option("--h2", cfg.h2, "second subgroup");
      sub->add_option("--phi2", cfg.phi2, "second character");
    }
    sub->callback([v, &verb]() { verb = v; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.flavor = gl2::flavor_from_string(flavor);
    gl2::Report rep = gl2::run_verb(verb, cfg);
    std::cout << gl2::emit(rep, cfg.format);
    return rep.exit_code;
  } catch (const gl2::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 2;
  } catch (const gl2::BadParam& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const gl2::BadIndex& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
