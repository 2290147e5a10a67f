#include "gauntlet/io.hpp"

#include <fstream>
#include <sstream>

namespace gauntlet {

using nlohmann::json;

namespace {

std::string location(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

json parse_json_line(const fs::path& path, std::size_t line_no,
                     const std::string& line) {
  try {
    json j = json::parse(line);
    if (!j.is_object()) {
      throw Error(ErrorCode::kInvalidInput,
                  location(path, line_no) + ": expected a JSON object");
    }
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                location(path, line_no) + ": " + e.what());
  }
}

Sentence sentence_at(const fs::path& path, std::size_t line_no,
                     const std::string& text, bool lowercase) {
  try {
    return normalize_tokens(text, lowercase);
  } catch (const Error& e) {
    throw Error(e.code(), location(path, line_no) + ": " + e.what());
  }
}

const json& field(const fs::path& path, std::size_t line_no, const json& j,
                  const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kInvalidInput, location(path, line_no) +
                                              ": missing field \"" + key + "\"");
  }
  return *it;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n\v\f") == std::string::npos;
}

}  // namespace

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());
  return lines;
}

bool is_jsonl(const std::vector<std::string>& lines) {
  for (const auto& l : lines) {
    const auto p = l.find_first_not_of(" \t");
    if (p == std::string::npos) continue;
    return l[p] == '{';
  }
  return false;
}

std::vector<Sentence> read_plain_corpus(const fs::path& path, bool lowercase) {
  const auto lines = read_lines(path);
  std::vector<Sentence> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.push_back(sentence_at(path, i + 1, lines[i], lowercase));
  }
  return out;
}

HypothesisFile read_hypotheses(const fs::path& path, bool lowercase) {
  const auto lines = read_lines(path);
  HypothesisFile out;
  if (!is_jsonl(lines)) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out.sentences.push_back(sentence_at(path, i + 1, lines[i], lowercase));
    }
    return out;
  }
  out.ids.emplace();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const json j = parse_json_line(path, i + 1, lines[i]);
    const json& id = field(path, i + 1, j, "id");
    const json& hyp = field(path, i + 1, j, "hyp");
    if (!id.is_string() || !hyp.is_string()) {
      throw Error(ErrorCode::kInvalidInput,
                  location(path, i + 1) + ": \"id\" and \"hyp\" must be strings");
    }
    out.ids->push_back(id.get<std::string>());
    out.sentences.push_back(
        sentence_at(path, i + 1, hyp.get<std::string>(), lowercase));
  }
  return out;
}

EvalCorpus read_references_jsonl(const fs::path& path, bool lowercase) {
  const auto lines = read_lines(path);
  std::vector<EvalInstance> instances;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const json j = parse_json_line(path, i + 1, lines[i]);
    const json& id = field(path, i + 1, j, "id");
    const json& refs = field(path, i + 1, j, "refs");
    if (!id.is_string() || !refs.is_array() || refs.empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  location(path, i + 1) +
                      ": need string \"id\" and non-empty \"refs\" array");
    }
    EvalInstance inst;
    inst.id = id.get<std::string>();
    for (const auto& r : refs) {
      if (!r.is_string()) {
        throw Error(ErrorCode::kInvalidInput,
                    location(path, i + 1) + ": references must be strings");
      }
      inst.refs.push_back(
          sentence_at(path, i + 1, r.get<std::string>(), lowercase));
    }
    instances.push_back(std::move(inst));
  }
  return EvalCorpus(std::move(instances));
}

SynonymLexicon read_synonym_lexicon(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return SynonymLexicon::parse(in);
}

std::set<Token, std::less<>> read_stoplist(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::set<Token, std::less<>> out;
  for (Token t; in >> t;) out.insert(t);
  return out;
}

EmbeddingFile read_embeddings(const fs::path& path) {
  const auto lines = read_lines(path);
  EmbeddingFile out;
  bool first = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const json j = parse_json_line(path, i + 1, lines[i]);
    if (first && !j.contains("id") && j.contains("baseline")) {
      if (!j["baseline"].is_number()) {
        throw Error(ErrorCode::kInvalidInput,
                    location(path, i + 1) + ": baseline must be a number");
      }
      out.baseline = j["baseline"].get<double>();
      first = false;
      continue;
    }
    first = false;
    try {
      EmbeddingRecord rec;
      rec.id = field(path, i + 1, j, "id").get<std::string>();
      rec.sentence.tokens =
          field(path, i + 1, j, "tokens").get<std::vector<std::string>>();
      const auto rows = field(path, i + 1, j, "vectors")
                            .get<std::vector<std::vector<double>>>();
      const std::size_t dim = rows.empty() ? 0 : rows.front().size();
      rec.sentence.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                                  static_cast<Eigen::Index>(dim));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim) {
          throw Error(ErrorCode::kEmbeddingDim,
                      location(path, i + 1) + ": ragged vectors");
        }
        for (std::size_t c = 0; c < dim; ++c) {
          rec.sentence.vectors(static_cast<Eigen::Index>(r),
                               static_cast<Eigen::Index>(c)) = rows[r][c];
        }
      }
      if (j.contains("idf") && !j["idf"].is_null()) {
        const auto w = j["idf"].get<std::vector<double>>();
        rec.sentence.idf = Eigen::Map<const Eigen::VectorXd>(
            w.data(), static_cast<Eigen::Index>(w.size()));
      }
      rec.sentence.validate();
      out.records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  location(path, i + 1) + ": " + e.what());
    }
  }
  return out;
}

PerturbSpec parse_probe_config(const json& j, const fs::path& base_dir) {
  try {
    if (!j.is_object()) {
      throw Error(ErrorCode::kInvalidInput, "probe config must be an object");
    }
    PerturbSpec spec;
    spec.mode = parse_perturb_mode(j.at("mode").get<std::string>());
    if (j.contains("targets")) {
      spec.targets = j["targets"].get<std::vector<std::string>>();
    }
    if (j.contains("replacement")) {
      spec.replacement = j["replacement"].get<std::string>();
    }
    if (j.contains("T")) {
      const auto t = j["T"].get<long long>();
      if (t < 1) throw Error(ErrorCode::kInvalidInput, "T must be >= 1");
      spec.threshold = static_cast<std::size_t>(t);
    }
    if (j.contains("fraction")) spec.target_fraction = j["fraction"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("stoplist_file")) {
      fs::path p = j["stoplist_file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      spec.stoplist = read_stoplist(p);
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("invalid probe config: ") + e.what());
  }
}

PerturbSpec read_probe_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                path.string() + ": " + e.what());
  }
  return parse_probe_config(j, path.parent_path());
}

void write_vocabulary_tsv(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& [token, count] : vocab.sorted_by_frequency()) {
    out << token << '\t' << count << '\n';
  }
}

std::string corpus_to_text(const std::vector<Sentence>& corpus) {
  std::string out;
  for (const auto& s : corpus) {
    out += s.str();
    out += '\n';
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(ErrorCode::kIo, "error writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move output into " + path.string());
  }
}

}  // namespace gauntlet
