#include "gauntlet/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "gauntlet/format.hpp"
#include "gauntlet/io.hpp"

namespace gauntlet {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kFractionUnreachable: return kExitInfeasible;
    default: return kExitValidation;
  }
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
}

struct LoadedReferences {
  MultiReferences refs;
  std::vector<std::string> ids;  // explicit ids or 1-based line numbers
  bool has_ids = false;
};

std::vector<std::string> line_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
  return ids;
}

bool file_is_jsonl(const std::string& path) { return is_jsonl(read_lines(path)); }

std::vector<std::vector<Sentence>> read_parallel(const RunConfig& cfg) {
  std::vector<std::vector<Sentence>> corpora;
  for (const auto& p : cfg.refs) {
    if (file_is_jsonl(p)) {
      invalid(p + ": parallel reference corpora must be plain text");
    }
    corpora.push_back(read_plain_corpus(p, cfg.lowercase));
  }
  return corpora;
}

LoadedReferences load_references(const RunConfig& cfg) {
  LoadedReferences out;
  if (cfg.refs.size() == 1 && file_is_jsonl(cfg.refs.front())) {
    const EvalCorpus corpus = read_references_jsonl(cfg.refs.front(), cfg.lowercase);
    if (corpus.size() == 0) {
      throw Error(ErrorCode::kEmptyCorpus, cfg.refs.front() + ": no instances");
    }
    out.refs = corpus.references();
    for (const auto& inst : corpus.instances()) out.ids.push_back(inst.id);
    out.has_ids = true;
    return out;
  }
  auto corpora = read_parallel(cfg);
  if (corpora.front().empty()) {
    throw Error(ErrorCode::kEmptyCorpus, cfg.refs.front() + ": no sentences");
  }
  const ReferenceBundle bundle(std::move(corpora));
  out.refs = bundle.references_excluding(bundle.num_corpora());
  out.ids = line_ids(out.refs.size());
  return out;
}

ScoreConfig score_config(const RunConfig& cfg,
                         std::optional<double> file_baseline = std::nullopt) {
  ScoreConfig sc;
  if (!cfg.synonyms.empty()) {
    sc.meteor.synonyms =
        std::make_shared<SynonymLexicon>(read_synonym_lexicon(cfg.synonyms));
  }
  sc.embed_use_idf = cfg.embed_idf;
  if (cfg.baseline) {
    sc.embed_baseline = *cfg.baseline;
  } else if (file_baseline) {
    sc.embed_baseline = *file_baseline;
  }
  if (!(sc.embed_baseline >= 0.0 && sc.embed_baseline < 1.0)) {
    invalid("baseline must lie in [0,1)");
  }
  return sc;
}

std::vector<EmbeddedSentence> embedded_in_order(const EmbeddingFile& f,
                                                std::size_t expected,
                                                const std::string& path) {
  if (f.records.size() != expected) {
    invalid(path + ": " + std::to_string(f.records.size()) +
            " embedding records, expected " + std::to_string(expected));
  }
  std::vector<EmbeddedSentence> out;
  for (const auto& r : f.records) out.push_back(r.sentence);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  static const std::map<std::string, int> kCommands{
      {"score", 0}, {"loo", 1}, {"perturb", 2}, {"search-ss", 3}, {"vocab", 4}};
  if (!kCommands.count(command)) invalid("unknown command '" + command + "'");
  if (format != "json" && format != "table" && format != "both") {
    invalid("format must be json, table or both");
  }
  auto need = [&](bool ok, const char* what) {
    if (!ok) invalid(command + " requires " + what);
  };
  if (command == "score") {
    need(!hyps.empty(), "--hyps");
    need(!refs.empty(), "--refs");
  } else if (command == "loo") {
    need(refs.size() >= 2, "at least two --refs files");
  } else if (command == "perturb") {
    need(refs.size() >= 2, "at least two --refs files (R1 first)");
    need(!probe_config.empty(), "--probe-config");
  } else if (command == "search-ss") {
    need(!train.empty(), "--train");
    need(!refs.empty(), "--refs");
  } else if (command == "vocab") {
    need(!train.empty() || !refs.empty(), "--train or --refs");
  }
  std::vector<std::string> paths = refs;
  for (const auto* p : {&hyps, &train, &probe_config, &synonyms, &stoplist}) {
    if (!p->empty()) paths.push_back(*p);
  }
  paths.insert(paths.end(), embeddings.begin(), embeddings.end());
  for (const auto& p : paths) require_readable(p);
}

MetricReport cmd_score(const RunConfig& cfg) {
  cfg.validate();
  const LoadedReferences refs = load_references(cfg);
  const HypothesisFile hypf = read_hypotheses(cfg.hyps, cfg.lowercase);

  std::vector<Sentence> hyps;
  if (hypf.ids && refs.has_ids) {
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < hypf.ids->size(); ++i) {
      if (!by_id.emplace((*hypf.ids)[i], i).second) {
        invalid("duplicate hypothesis id '" + (*hypf.ids)[i] + "'");
      }
    }
    std::unordered_map<std::string, std::size_t> ref_index;
    for (std::size_t i = 0; i < refs.ids.size(); ++i) ref_index.emplace(refs.ids[i], i);
    for (const auto& id : *hypf.ids) {
      if (!ref_index.count(id)) {
        invalid("hypothesis id '" + id + "' not found in references");
      }
    }
    for (const auto& id : refs.ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) invalid("reference id '" + id + "' has no hypothesis");
      hyps.push_back(hypf.sentences[it->second]);
    }
  } else {
    if (hypf.sentences.size() != refs.refs.size()) {
      invalid(std::to_string(hypf.sentences.size()) + " hypotheses but " +
              std::to_string(refs.refs.size()) + " reference instances");
    }
    hyps = hypf.sentences;
  }

  if (cfg.embeddings.empty()) return score_all(hyps, refs.refs, score_config(cfg));
  if (cfg.embeddings.size() != 2) {
    invalid("score takes two --embeddings files: hypotheses, then references");
  }
  const EmbeddingFile hyp_emb = read_embeddings(cfg.embeddings[0]);
  const EmbeddingFile ref_emb = read_embeddings(cfg.embeddings[1]);
  std::unordered_map<std::string, const EmbeddedSentence*> hyp_by_id;
  std::unordered_map<std::string, std::vector<EmbeddedSentence>> refs_by_id;
  for (const auto& r : hyp_emb.records) hyp_by_id.emplace(r.id, &r.sentence);
  for (const auto& r : ref_emb.records) refs_by_id[r.id].push_back(r.sentence);
  EmbeddingInputs emb;
  for (const auto& id : refs.ids) {
    auto h = hyp_by_id.find(id);
    if (h == hyp_by_id.end()) invalid("no hypothesis embedding for id '" + id + "'");
    auto r = refs_by_id.find(id);
    if (r == refs_by_id.end()) invalid("no reference embeddings for id '" + id + "'");
    emb.hyps.push_back(*h->second);
    emb.refs.push_back(r->second);
  }
  const auto baseline = hyp_emb.baseline ? hyp_emb.baseline : ref_emb.baseline;
  return score_all(hyps, refs.refs, score_config(cfg, baseline), &emb);
}

LooRun cmd_loo(const RunConfig& cfg) {
  cfg.validate();
  const ReferenceBundle bundle(read_parallel(cfg));
  std::optional<std::vector<Sentence>> sys;
  if (!cfg.hyps.empty()) sys = read_hypotheses(cfg.hyps, cfg.lowercase).sentences;

  std::optional<LooEmbeddings> emb;
  std::optional<double> file_baseline;
  if (!cfg.embeddings.empty()) {
    const std::size_t want = bundle.num_corpora() + (sys ? 1 : 0);
    if (cfg.embeddings.size() != want) {
      invalid("loo takes one --embeddings file per --refs file" +
              std::string(sys ? ", then one for --hyps" : ""));
    }
    emb.emplace();
    for (std::size_t k = 0; k < cfg.embeddings.size(); ++k) {
      const EmbeddingFile f = read_embeddings(cfg.embeddings[k]);
      if (!file_baseline) file_baseline = f.baseline;
      auto sents = embedded_in_order(f, bundle.num_instances(), cfg.embeddings[k]);
      if (k < bundle.num_corpora()) {
        emb->corpora.push_back(std::move(sents));
      } else {
        emb->system = std::move(sents);
      }
    }
  }
  const ScoreConfig sc = score_config(cfg, file_baseline);
  LooEmbeddings rvr_emb;
  if (emb) rvr_emb.corpora = emb->corpora;
  LooRun run;
  run.rvr = leave_one_out(bundle, std::nullopt, sc, emb ? &rvr_emb : nullptr);
  if (sys) {
    run.svr = leave_one_out(bundle, std::span<const Sentence>(*sys), sc,
                            emb ? &*emb : nullptr);
  }
  return run;
}

PerturbOutcome cmd_perturb(const RunConfig& cfg) {
  cfg.validate();
  PerturbSpec spec = read_probe_config(cfg.probe_config);
  if (cfg.seed) spec.seed = *cfg.seed;
  if (!cfg.stoplist.empty()) spec.stoplist = read_stoplist(cfg.stoplist);
  if (spec.mode == PerturbMode::kRandomContent && spec.stoplist.empty()) {
    std::ifstream probe(cfg.probe_config);
    json j;
    probe >> j;
    if (cfg.stoplist.empty() && !j.contains("stoplist_file")) {
      invalid("random_content mode requires a stoplist (--stoplist or stoplist_file)");
    }
  }
  const ReferenceBundle bundle(read_parallel(cfg));
  const std::vector<Sentence>& r1 = bundle.corpus(0);
  MultiReferences heldout(bundle.num_instances());
  for (std::size_t i = 0; i < heldout.size(); ++i) {
    for (std::size_t c = 1; c < bundle.num_corpora(); ++c) {
      heldout[i].push_back(bundle.corpus(c)[i]);
    }
  }
  Vocabulary vocab = cfg.train.empty()
                         ? build_vocabulary(r1)
                         : build_vocabulary(read_plain_corpus(cfg.train, cfg.lowercase));
  PerturbOutcome outcome =
      perturb_and_score(r1, heldout, spec, &vocab, score_config(cfg));
  if (!cfg.corpus_out.empty()) {
    write_file_atomic(cfg.corpus_out, corpus_to_text(outcome.perturbed));
  }
  return outcome;
}

SearchResult cmd_search_ss(const RunConfig& cfg) {
  cfg.validate();
  const auto train = read_plain_corpus(cfg.train, cfg.lowercase);
  if (train.empty()) throw Error(ErrorCode::kEmptyCorpus, cfg.train + ": empty training corpus");
  const LoadedReferences refs = load_references(cfg);
  SearchConfig sc;
  sc.objective = parse_metric(cfg.objective);
  sc.naive = cfg.naive;
  sc.threads = cfg.threads;
  sc.score = score_config(cfg);
  return search_representative_sentence(train, refs.refs, sc);
}

namespace {

std::string render(const RunConfig& cfg, const std::string& table,
                   const json& j) {
  if (cfg.format == "json") return j.dump(2) + "\n";
  if (cfg.format == "table") return table;
  return table + "\n" + j.dump(2) + "\n";
}

std::string execute(const RunConfig& cfg) {
  if (cfg.command == "score") {
    const auto r = cmd_score(cfg);
    return render(cfg, format_report_table(r), json(r));
  }
  if (cfg.command == "loo") {
    const auto r = cmd_loo(cfg);
    json j{{"rvr", r.rvr}};
    if (r.svr) j["svr"] = *r.svr;
    return render(cfg, format_loo_table(r.rvr, r.svr), j);
  }
  if (cfg.command == "perturb") {
    const auto r = cmd_perturb(cfg);
    return render(cfg, format_perturb_table(r), json(r));
  }
  if (cfg.command == "search-ss") {
    const auto r = cmd_search_ss(cfg);
    return render(cfg, format_search_row(r), json(r));
  }
  // vocab
  cfg.validate();
  std::vector<Sentence> corpus;
  if (!cfg.train.empty()) {
    corpus = read_plain_corpus(cfg.train, cfg.lowercase);
  } else {
    for (auto& c : read_parallel(cfg)) {
      corpus.insert(corpus.end(), c.begin(), c.end());
    }
  }
  std::ostringstream tsv;
  write_vocabulary_tsv(tsv, build_vocabulary(corpus));
  return tsv.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Stress tests for n-gram and embedding text-generation metrics",
               "metric-gauntlet"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--refs", cfg.refs,
                    "Reference file: one JSONL file, or repeat for parallel "
                    "plain-text corpora");
    sub->add_option("--synonyms", cfg.synonyms, "Synonym lexicon for METEOR");
    sub->add_option("--baseline", cfg.baseline, "Embedding F rescaling baseline");
    sub->add_flag("--embed-idf", cfg.embed_idf, "Weight embedding F by idf");
    sub->add_option("--format", cfg.format, "json, table or both")
        ->check(CLI::IsMember({"json", "table", "both"}));
    sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
    sub->add_flag("--lowercase", cfg.lowercase, "Lowercase ASCII input");
  };

  auto* score = app.add_subcommand("score", "Score hypotheses against references");
  common(score);
  score->add_option("--hyps", cfg.hyps, "Hypotheses (JSONL or plain text)");
  score->add_option("--embeddings", cfg.embeddings,
                    "Hypothesis then reference embedding files");

  auto* loo = app.add_subcommand("loo", "Leave-one-out reference scoring");
  common(loo);
  loo->add_option("--hyps", cfg.hyps, "System output for SYS-vs-REF");
  loo->add_option("--embeddings", cfg.embeddings,
                  "One embedding file per --refs file, then one for --hyps");

  auto* perturb_cmd = app.add_subcommand("perturb", "Perturb R1 and rescore it");
  common(perturb_cmd);
  perturb_cmd->add_option("--probe-config", cfg.probe_config, "Probe JSON config");
  perturb_cmd->add_option("--train", cfg.train, "Corpus for threshold vocabularies");
  perturb_cmd->add_option("--stoplist", cfg.stoplist, "Function-word stoplist");
  perturb_cmd->add_option("--seed", cfg.seed, "Random seed (default 0)");
  perturb_cmd->add_option("--corpus-out", cfg.corpus_out,
                          "Write the perturbed corpus here");

  auto* search = app.add_subcommand("search-ss", "Single representative sentence search");
  common(search);
  search->add_option("--train", cfg.train, "Candidate sentences, one per line");
  search->add_option("--objective", cfg.objective, "Metric to maximise")
      ->check(CLI::IsMember({"bleu1", "bleu2", "bleu3", "bleu4", "meteor",
                             "rouge_l", "cider_d"}));
  search->add_flag("--naive", cfg.naive, "Score every candidate without the index");
  search->add_option("--seed", cfg.seed, "Accepted for symmetry; the search is deterministic");

  auto* vocab = app.add_subcommand("vocab", "Export a token frequency table");
  common(vocab);
  vocab->add_option("--train", cfg.train, "Corpus to count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.threads = thread_cap_from_env();

  try {
    const std::string text = execute(cfg);
    if (cfg.out.empty()) {
      out << text;
    } else {
      write_file_atomic(cfg.out, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace gauntlet
