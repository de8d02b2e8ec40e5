// Writes self-contained offline corpora (dataset + SQLite files + scripted
// mock backend fixtures) so the harness can be exercised without a live
// model server.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "demo_corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Build offline demo corpora for the sqlplan harness"};
  std::string out;
  std::string suite = "e2e";
  app.add_option("--out", out, "target directory")->required();
  app.add_option("--suite", suite, "e2e | intrinsic | sweep | dominance | all")
      ->check(CLI::IsMember({"e2e", "intrinsic", "sweep", "dominance", "all"}));
  CLI11_PARSE(app, argc, argv);

  try {
    using namespace sqlplan::demo;
    if (suite == "e2e" || suite == "all") {
      write_e2e_corpus(suite == "all" ? out + "/e2e" : out);
      std::printf("e2e corpus ready (config.e2e.json)\n");
    }
    if (suite == "intrinsic" || suite == "all") {
      write_intrinsic_corpus(suite == "all" ? out + "/intrinsic" : out);
      std::printf("intrinsic corpus ready (config.intrinsic.json)\n");
    }
    if (suite == "sweep" || suite == "all") {
      write_sweep_corpus(suite == "all" ? out + "/sweep" : out);
      std::printf("sweep corpus ready (config.sweep.json)\n");
    }
    if (suite == "dominance" || suite == "all") {
      write_dominance_corpus(suite == "all" ? out + "/dominance" : out);
      std::printf("dominance corpus ready (config.dominance.json)\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
