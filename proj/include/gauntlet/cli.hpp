#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gauntlet/corpus.hpp"
#include "gauntlet/loo.hpp"
#include "gauntlet/perturb.hpp"
#include "gauntlet/report.hpp"
#include "gauntlet/search.hpp"

namespace gauntlet {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitIo = 3,
  kExitInfeasible = 4,
};

int exit_code_for(ErrorCode code);

struct RunConfig {
  std::string command;  // score | loo | perturb | search-ss | vocab
  std::string hyps;
  std::vector<std::string> refs;
  std::string train;
  std::string objective = "bleu4";
  std::string probe_config;
  std::vector<std::string> embeddings;
  std::string synonyms;
  std::string stoplist;
  std::optional<double> baseline;
  std::optional<std::uint64_t> seed;
  bool naive = false;
  bool embed_idf = false;
  bool lowercase = false;
  std::string format = "table";  // json | table | both
  std::string out;
  std::string corpus_out;
  unsigned threads = 0;

  // Required inputs for the command are present and readable. Throws
  // kInvalidInput or kIo.
  void validate() const;
};

MetricReport cmd_score(const RunConfig& cfg);

struct LooRun {
  LooResult rvr;
  std::optional<LooResult> svr;
};
LooRun cmd_loo(const RunConfig& cfg);

PerturbOutcome cmd_perturb(const RunConfig& cfg);

SearchResult cmd_search_ss(const RunConfig& cfg);

// Entire command line: parses flags, runs the command, writes the report to
// --out (atomically) or `out`, and maps failures onto exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace gauntlet
