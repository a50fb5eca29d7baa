// Copyright 2026 The lexctc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexctc/io.hpp"
#include "lexctc/synth.hpp"
#include "lexctc_cli.hpp"
#include "oracles.hpp"

namespace lexctc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lexctc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_file(path("dict.txt"), "# tiny lexicon\nadvocaat\nafdeeling\nboek\nbrief\nkerk\n\nstad\n");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::vector<std::string> matrices(const std::string& sub) const {
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(dir_ / sub)) out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
  }

  fs::path dir_;
};

std::vector<std::string> column(const std::string& text, std::size_t k) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < k; ++i) start = line.find('\t', start) + 1;
    out.push_back(line.substr(start, line.find('\t', start) - start));
  }
  return out;
}

TEST_F(CliTest, NoiselessBestPathStripsSeparator) {
  RecognizerSim sim;
  sim.alphabet = Alphabet(U"abcdefgiklnorstv", U'|');
  const auto m = emit(sim, U"advocaat", CodingScheme::extra_separator(U'|'));
  write_file(path("advocaat.mat"), serialize_matrix(m, sim.alphabet.labels()));
  const auto r = run({"decode", "--mode", "bestpath", "--scheme", "extrasep", path("advocaat.mat")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(column(r.out, 1), std::vector<std::string>{"advocaat"});
  const auto w = run({"decode", "--dict", path("dict.txt"), "--scheme", "extrasep", path("advocaat.mat")});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(column(w.out, 1), std::vector<std::string>{"advocaat"});
  EXPECT_LE(std::stod(column(w.out, 2)[0]), 1.0);
}

TEST_F(CliTest, TinyMatrixMatchesExhaustiveOracle) {
  write_file(path("tiny.mat"),
             "3 3\nab\n0.4 0.35 0.25\n0.3 0.3 0.4\n0.2 0.5 0.3\n");
  write_file(path("tiny_dict.txt"), "ab\nba\nb\n");
  const auto r = run({"decode", "--dict", path("tiny_dict.txt"), "--width", "100", path("tiny.mat")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = parse_matrix(read_file(path("tiny.mat"))).matrix;
  const auto oracle = testing::constrained_argmax(m, U"ab", {U"ab", U"ba", U"b"}, U"");
  EXPECT_EQ(column(r.out, 1)[0], u32_to_utf8(oracle.labeling));
  EXPECT_NEAR(std::stod(column(r.out, 2)[0]), oracle.probability, 1e-11);
}

TEST_F(CliTest, SynthDecodeEnsembleEvalPipeline) {
  auto s = run({"synth", "--dict", path("dict.txt"), "--n-words", "30", "--noise", "0.3", "--members",
                "3", "--seed", "4", "--scheme", "extrasep", "--out-dir", path("syn")});
  ASSERT_EQ(s.code, 0) << s.err;
  std::vector<std::string> outputs;
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::string> args{"decode", "--dict", path("dict.txt"), "--scheme", "extrasep",
                                  "--max-words", "1", "--terminal-separator"};
    for (const auto& m : matrices("syn/member_" + std::to_string(k))) args.push_back(m);
    const auto d = run(args);
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(run(args).out, d.out) << "decode must be deterministic";
    outputs.push_back(path("dec" + std::to_string(k) + ".tsv"));
    write_file(outputs.back(), d.out);
  }
  // One recognizer: the ensemble repeats the decoder's labels.
  const auto single = run({"ensemble", outputs[0]});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_EQ(column(single.out, 1), column(read_file(outputs[0]), 1));

  const auto voted = run({"ensemble", outputs[0], outputs[1], outputs[2]});
  ASSERT_EQ(voted.code, 0) << voted.err;
  write_file(path("voted.tsv"), voted.out);
  const auto from_dirs = run({"ensemble", "--dict", path("dict.txt"), "--scheme", "extrasep",
                              "--max-words", "1", "--terminal-separator", "--matrix-dir",
                              path("syn/member_1"), "--matrix-dir", path("syn/member_2"),
                              "--matrix-dir", path("syn/member_3")});
  ASSERT_EQ(from_dirs.code, 0) << from_dirs.err;
  EXPECT_EQ(column(from_dirs.out, 1), column(voted.out, 1));

  const auto e = run({"eval", path("voted.tsv"), path("syn/manifest.tsv"), "--train-vocab",
                      path("dict.txt"), "--out-dir", path("report")});
  ASSERT_EQ(e.code, 0) << e.err;
  const auto kv = read_file(path("report/report.kv"));
  EXPECT_NE(kv.find("samples 30\n"), std::string::npos);
  EXPECT_NE(kv.find("oov_count 0\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("report/report.txt")));
}

TEST_F(CliTest, EnsembleNamesFirstMisalignedSample) {
  write_file(path("r1.tsv"), "x/s1.mat\tab\t0.5\nx/s2.mat\tcd\t0.5\n");
  write_file(path("r2.tsv"), "y/s1.mat\tab\t0.5\ny/s3.mat\tcd\t0.5\n");
  const auto r = run({"ensemble", path("r1.tsv"), path("r2.tsv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'s2'"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalReportsAccuracy) {
  write_file(path("p.txt"), "Abc\nde\n");
  write_file(path("g.txt"), "abc\nDE\n");
  auto r = run({"eval", path("p.txt"), path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("word_accuracy 0.0000"), std::string::npos);
  r = run({"eval", path("p.txt"), path("g.txt"), "--case-insensitive"});
  EXPECT_NE(r.out.find("word_accuracy 100.0000"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  write_file(path("ok.mat"), "1 3\nab\n0.2 0.3 0.5\n");
  write_file(path("bad.mat"), "1 3\nab\n0.2 0.3\n");
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"decode", path("ok.mat")}).code, 1);  // words mode needs --dict
  EXPECT_EQ(run({"decode", "--mode", "nonsense", path("ok.mat")}).code, 1);
  const auto bad = run({"decode", "--mode", "bestpath", path("bad.mat")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"decode", "--mode", "bestpath", path("missing.mat")}).code, 2);
  EXPECT_EQ(run({"decode", "--mode", "bestpath", "--scheme", "extrasep", "--sep", "#", path("ok.mat")}).code, 3);
  EXPECT_EQ(run({"decode", "--mode", "bestpath", "--sep", "|", path("ok.mat")}).code, 3);
  EXPECT_EQ(run({"decode", "--mode", "bestpath", path("ok.mat")}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, LanguageModelModesRun) {
  write_file(path("m.mat"), "3 3\nab\n0.4 0.35 0.25\n0.3 0.3 0.4\n0.2 0.5 0.3\n");
  write_file(path("d.txt"), "ab\nba\nb\n");
  for (const char* mode : {"ngrams", "ngrams-forecast", "ngrams-forecast-sample"}) {
    const auto r = run({"decode", "--dict", path("d.txt"), "--mode", mode, "--order", "3",
                        "--sample-size", "1", "--seed", "5", path("m.mat")});
    EXPECT_EQ(r.code, 0) << mode << ": " << r.err;
    EXPECT_EQ(run({"decode", "--dict", path("d.txt"), "--mode", mode, "--order", "3",
                   "--sample-size", "1", "--seed", "5", path("m.mat")}).out,
              r.out);
  }
}

TEST_F(CliTest, ReproduceTrendsIsDeterministic) {
  const std::vector<std::string> args{"reproduce-trends", "--seed", "3", "--trials", "1",
                                      "--test-words", "40", "--members", "3"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("members  words-concise  bestpath"), std::string::npos);
}

}  // namespace
}  // namespace lexctc
