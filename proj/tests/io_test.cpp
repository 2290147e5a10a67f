#include <gtest/gtest.h>

#include <sstream>

#include "gauntlet/io.hpp"
#include "tempdir.hpp"

namespace gauntlet {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidInput;
}

TEST(ReadLines, TrailingNewlineAndCrlf) {
  TempDir d;
  EXPECT_EQ(read_lines(d.write("a.txt", "x y\r\nz\n")),
            (std::vector<std::string>{"x y", "z"}));
  EXPECT_EQ(read_lines(d.write("b.txt", "x")), (std::vector<std::string>{"x"}));
}

TEST(ReadLines, MissingFileIsIo) {
  EXPECT_EQ(code_of([] { read_lines("/nonexistent/dir/file.txt"); }), ErrorCode::kIo);
}

TEST(ReadPlainCorpus, BlankLineRejected) {
  TempDir d;
  const auto p = d.write("c.txt", "a b\n\nc\n");
  try {
    read_plain_corpus(p, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySentence);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
  }
}

TEST(ReadHypotheses, JsonlAndPlain) {
  TempDir d;
  const auto j = read_hypotheses(
      d.write("h.jsonl", "{\"id\": \"1\", \"hyp\": \"A dog\"}\n{\"id\": \"2\", \"hyp\": \"cat\"}\n"),
      true);
  ASSERT_TRUE(j.ids.has_value());
  EXPECT_EQ(*j.ids, (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(j.sentences[0], (Sentence{"a", "dog"}));

  const auto p = read_hypotheses(d.write("h.txt", "a dog\ncat\n"), false);
  EXPECT_FALSE(p.ids.has_value());
  EXPECT_EQ(p.sentences.size(), 2u);
}

TEST(ReadHypotheses, MalformedJson) {
  TempDir d;
  const auto p = d.write("h.jsonl", "{\"id\": \"1\", \"hyp\": \n");
  EXPECT_EQ(code_of([&] { read_hypotheses(p, false); }), ErrorCode::kInvalidInput);
}

TEST(ReadReferences, Jsonl) {
  TempDir d;
  const auto c = read_references_jsonl(
      d.write("r.jsonl", "{\"id\": \"a\", \"refs\": [\"x y\", \"z\"]}\n{\"id\": \"b\", \"refs\": [\"q\"]}\n"),
      false);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.find("a")->refs.size(), 2u);
  const auto dup = d.write("dup.jsonl", "{\"id\": \"a\", \"refs\": [\"x\"]}\n{\"id\": \"a\", \"refs\": [\"y\"]}\n");
  EXPECT_EQ(code_of([&] { read_references_jsonl(dup, false); }), ErrorCode::kInvalidInput);
}

TEST(ReadEmbeddings, HeaderAndRecords) {
  TempDir d;
  const auto e = read_embeddings(d.write(
      "e.jsonl",
      "{\"baseline\": 0.83}\n"
      "{\"id\": \"1\", \"tokens\": [\"a\", \"b\"], \"vectors\": [[1, 0], [0, 1]], \"idf\": [1.5, 2]}\n"));
  EXPECT_EQ(e.baseline, 0.83);
  ASSERT_EQ(e.records.size(), 1u);
  EXPECT_EQ(e.records[0].sentence.dim(), 2);
  EXPECT_EQ(e.records[0].sentence.idf->size(), 2);

  const auto bad = d.write("bad.jsonl",
                           "{\"id\": \"1\", \"tokens\": [\"a\", \"b\"], \"vectors\": [[1, 0], [0, 1, 2]]}\n");
  EXPECT_EQ(code_of([&] { read_embeddings(bad); }), ErrorCode::kEmbeddingDim);
}

TEST(ProbeConfig, ParsesEveryMode) {
  TempDir d;
  d.write("stop.txt", "a the\nof\n");
  const auto targeted = parse_probe_config(
      nlohmann::json::parse(R"({"mode": "targeted", "targets": ["man", "a"]})"), d.root());
  EXPECT_EQ(targeted.mode, PerturbMode::kTargeted);
  EXPECT_EQ(targeted.targets.size(), 2u);
  EXPECT_EQ(targeted.replacement, "UNK");

  const auto thr = parse_probe_config(nlohmann::json::parse(R"({"mode": "threshold", "T": 5})"),
                                      d.root());
  EXPECT_EQ(thr.threshold, 5u);

  const auto rnd = parse_probe_config(
      nlohmann::json::parse(
          R"({"mode": "random_content", "fraction": 0.2, "seed": 7, "stoplist_file": "stop.txt"})"),
      d.root());
  EXPECT_EQ(rnd.seed, 7u);
  EXPECT_EQ(rnd.stoplist.size(), 3u);

  const auto swap = parse_probe_config(
      nlohmann::json::parse(R"({"mode": "swap", "targets": ["woman"], "replacement": "man"})"),
      d.root());
  EXPECT_EQ(swap.replacement, "man");

  EXPECT_EQ(code_of([&] {
              parse_probe_config(nlohmann::json::parse(R"({"mode": "random_content", "fraction": 1.5})"),
                                 d.root());
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([&] {
              parse_probe_config(nlohmann::json::parse(R"({"mode": "nope"})"), d.root());
            }),
            ErrorCode::kInvalidInput);
}

TEST(Writers, VocabularyTsvAndCorpusText) {
  Vocabulary v;
  v.add(Sentence{"b", "a", "a"});
  std::ostringstream out;
  write_vocabulary_tsv(out, v);
  EXPECT_EQ(out.str(), "a\t2\nb\t1\n");
  EXPECT_EQ(corpus_to_text({{"a", "b"}, {"c"}}), "a b\nc\n");
}

TEST(Writers, AtomicWriteReplaces) {
  TempDir d;
  const auto p = d.path("out.txt");
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  EXPECT_EQ(slurp(p), "two");
  EXPECT_FALSE(std::filesystem::exists(p + ".tmp"));
}

}  // namespace
}  // namespace gauntlet
