// gpi: isomorphism testing for groups given by Cayley tables.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "gpi/build.hpp"
#include "gpi/cli.hpp"
#include "gpi/io.hpp"

using namespace gpi;

namespace {

void emit(const RunReport& r, bool json) {
  if (json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isomorphism testing for groups given by Cayley tables"};
  app.require_subcommand(1);
  bool json = false;
  int guard = kDefaultGuard;
  std::uint64_t seed = 1;
  int workers = 1;
  app.add_flag("--json", json, "Print the report as JSON");
  app.add_option("--guard-order", guard, "Largest order the oracle accepts");
  app.add_option("--seed", seed, "Seed for relabeling, corpus sampling and profiling");
  app.add_option("--workers", workers, "Worker threads for parallel kernels")->check(CLI::PositiveNumber);

  std::string f1, f2, strategy = "auto";
  auto* iso = app.add_subcommand("iso", "Decide whether two groups are isomorphic");
  iso->add_option("first", f1)->required();
  iso->add_option("second", f2)->required();
  iso->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"auto", "coprime", "central", "centrad", "oracle"}));

  auto* classify = app.add_subcommand("classify", "List the supported classes a group lies in");
  classify->add_option("file", f1)->required();

  std::string desc, out;
  bool relabel = false;
  auto* build = app.add_subcommand("build", "Build a group from a descriptor and write its table");
  build->add_option("descriptor", desc)->required();
  build->add_option("-o,--output", out)->required();
  build->add_flag("--relabel", relabel, "Apply a seeded random relabeling");

  std::string corpus_spec = "coprime";
  bool expect = true;
  auto* corpus = app.add_subcommand("corpus", "Write a corpus of tables and a manifest");
  corpus->add_option("spec", corpus_spec, "coprime, central, or a file with one descriptor per line");
  corpus->add_option("-o,--output", out)->required();
  corpus->add_flag("!--no-expected", expect, "Skip the oracle expectations");

  auto* oracle = app.add_subcommand("oracle", "Brute-force isomorphism or automorphism count");
  oracle->add_option("first", f1)->required();
  oracle->add_option("second", f2);

  auto* codeq = app.add_subcommand("codeq", "Permutation equivalence of two linear codes");
  codeq->add_option("first", f1)->required();
  codeq->add_option("second", f2)->required();

  std::vector<int> ms{8, 12, 16};
  int d = 3, p = 2;
  auto* profile = app.add_subcommand("profile", "Work and span of code equivalence against code length");
  profile->add_option("--m", ms)->delimiter(',');
  profile->add_option("--d", d);
  profile->add_option("--p", p);

  CLI11_PARSE(app, argc, argv);
  exec::set_workers(workers);

  try {
    if (*iso) {
      auto r = cmd_iso(parse_cayley(f1), parse_cayley(f2), strategy, guard);
      r.command = "iso " + f1 + " " + f2 + " --strategy=" + strategy;
      emit(r, json);
    } else if (*classify) {
      auto r = cmd_classify(parse_cayley(f1));
      r.command = "classify " + f1;
      emit(r, json);
    } else if (*build) {
      CayleyTable G = build_group(desc);
      if (relabel) G = relabel_group(G, seed);
      write_cayley(G, out);
      if (json)
        std::cout << nlohmann::ordered_json{{"command", "build"}, {"descriptor", desc}, {"order", G.order()},
                                            {"output", out}}
                         .dump(2)
                  << "\n";
      else
        std::cout << "wrote " << out << " (order " << G.order() << ")\n";
    } else if (*corpus) {
      Corpus c = corpus_spec == "coprime"   ? coprime_corpus(seed)
                 : corpus_spec == "central" ? central_corpus()
                                            : corpus_from_lines(read_file(corpus_spec));
      if (expect) oracle_expectations(c, guard);
      write_corpus(c, out);
      std::cout << "wrote " << c.groups.size() << " groups and " << c.pairs.size() << " pairs to " << out << "\n";
    } else if (*oracle) {
      RunReport r;
      if (f2.empty()) {
        r = cmd_oracle_aut(parse_cayley(f1), guard);
        r.command = "oracle " + f1;
      } else {
        r = cmd_iso(parse_cayley(f1), parse_cayley(f2), "oracle", guard);
        r.command = "oracle " + f1 + " " + f2;
      }
      emit(r, json);
    } else if (*codeq) {
      auto r = cmd_codeq(parse_code(f1), parse_code(f2));
      r.command = "codeq " + f1 + " " + f2;
      emit(r, json);
    } else if (*profile) {
      emit(cmd_profile(ms, d, p, seed), json);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
