#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/corpus.hpp"
#include "gauntlet/embedding.hpp"
#include "gauntlet/meteor.hpp"
#include "gauntlet/perturb.hpp"

namespace gauntlet {

namespace fs = std::filesystem;

// All lines of a UTF-8 text file without their terminators (a trailing
// newline does not produce an extra empty line). Throws kIo.
std::vector<std::string> read_lines(const fs::path& path);

// True when the first non-blank line opens a JSON object.
bool is_jsonl(const std::vector<std::string>& lines);

// One sentence per line; blank lines are rejected with kEmptySentence.
std::vector<Sentence> read_plain_corpus(const fs::path& path, bool lowercase);

// Hypotheses as JSON Lines {"id", "hyp"} or plain text. Plain-text input has
// no ids.
struct HypothesisFile {
  std::vector<Sentence> sentences;
  std::optional<std::vector<std::string>> ids;
};
HypothesisFile read_hypotheses(const fs::path& path, bool lowercase);

// JSON Lines {"id": string, "refs": [string, ...]}.
EvalCorpus read_references_jsonl(const fs::path& path, bool lowercase);

SynonymLexicon read_synonym_lexicon(const fs::path& path);

// Whitespace-separated tokens, any layout.
std::set<Token, std::less<>> read_stoplist(const fs::path& path);

struct EmbeddingRecord {
  std::string id;
  EmbeddedSentence sentence;
};

// JSON Lines {"id", "tokens", "vectors", "idf"?}; an optional header line
// {"baseline": b} without an id may come first.
struct EmbeddingFile {
  std::optional<double> baseline;
  std::vector<EmbeddingRecord> records;
};
EmbeddingFile read_embeddings(const fs::path& path);

// {"mode", "targets", "replacement", "T", "fraction", "seed",
// "stoplist_file"}; a relative stoplist path is resolved against
// `base_dir`.
PerturbSpec parse_probe_config(const nlohmann::json& j, const fs::path& base_dir);
PerturbSpec read_probe_config(const fs::path& path);

// token<TAB>count, descending count then lexicographic.
void write_vocabulary_tsv(std::ostream& out, const Vocabulary& vocab);

// One sentence per line, tokens joined by single spaces.
std::string corpus_to_text(const std::vector<Sentence>& corpus);

// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const fs::path& path, const std::string& content);

}  // namespace gauntlet
