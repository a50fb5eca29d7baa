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


// Command-line front end: decode, ensemble, eval, synth and reproduce-trends.
// Kept in a header so tests can drive it in-process.
#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lexctc/coding_scheme.hpp"
#include "lexctc/ctc.hpp"
#include "lexctc/ensemble.hpp"
#include "lexctc/error.hpp"
#include "lexctc/eval.hpp"
#include "lexctc/experiments.hpp"
#include "lexctc/io.hpp"
#include "lexctc/language_model.hpp"
#include "lexctc/prefix_tree.hpp"
#include "lexctc/random.hpp"
#include "lexctc/synth.hpp"
#include "lexctc/unicode.hpp"
#include "lexctc/word_beam_search.hpp"

namespace lexctc::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitConfig = 3;

/// Raised for invocations that parse but make no sense (e.g. a dictionary
/// mode without --dict).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct DecodeOptions {
  std::string dict;
  std::string corpus;
  std::string mode = "words";
  std::size_t width = 25;
  std::string scheme = "plain";
  std::string sep;
  std::size_t order = 2;
  double smoothing_k = 1.0;
  std::size_t sample_size = 20;
  std::uint64_t seed = 0;
  std::string nonword_chars;
  std::size_t max_words = 0;
  bool terminal_separator = false;
};

inline void add_decode_options(CLI::App* app, DecodeOptions& o) {
  app->add_option("--dict", o.dict, "Dictionary file (one word per line)");
  app->add_option("--corpus", o.corpus, "LM training words (default: the dictionary)");
  app->add_option("--mode", o.mode, "Decoder")
      ->check(CLI::IsMember({"bestpath", "words", "ngrams", "ngrams-forecast",
                             "ngrams-forecast-sample"}))
      ->capture_default_str();
  app->add_option("--width", o.width, "Beam width")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--scheme", o.scheme, "Label coding scheme")
      ->check(CLI::IsMember({"plain", "extrasep"}))
      ->capture_default_str();
  app->add_option("--sep", o.sep, "Separator character (default: last alphabet character)");
  app->add_option("--order", o.order, "N-gram order")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--smoothing-k", o.smoothing_k, "Add-k smoothing constant")->capture_default_str();
  app->add_option("--sample-size", o.sample_size, "Completions sampled per forecast")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--seed", o.seed, "Seed for forecast sampling")->capture_default_str();
  app->add_option("--nonword-chars", o.nonword_chars,
                  "Alphabet characters that separate words (the separator always does)");
  app->add_option("--max-words", o.max_words, "Maximum words per labeling (0 = unlimited)")
      ->capture_default_str();
  app->add_flag("--terminal-separator", o.terminal_separator,
                "Extra-separator scheme: the separator may only close the last word");
}

inline std::string format_likelihood(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

inline char32_t single_char(const std::string& s, const char* what) {
  const auto u = utf8_to_u32(s);
  if (u.size() != 1) throw ConfigError(std::string(what) + " must be exactly one character");
  return u.front();
}

/// Decoding context for one matrix alphabet; rebuilt only when the alphabet
/// written in the matrix files changes.
class Decoder {
 public:
  explicit Decoder(const DecodeOptions& o) : opts_(o) {
    if (o.mode != "bestpath" && o.dict.empty())
      throw UsageError("--dict is required for --mode " + o.mode);
    if (o.scheme == "plain" && !o.sep.empty()) throw ConfigError("--sep needs --scheme extrasep");
    if (o.scheme == "plain" && o.terminal_separator)
      throw ConfigError("--terminal-separator needs --scheme extrasep");
    scheme_kind_ = o.mode == "bestpath" ? std::nullopt : parse_scoring_kind(o.mode);
    if (!o.dict.empty()) dict_ = parse_word_list(read_file(o.dict));
    if (!o.corpus.empty()) corpus_ = parse_word_list(read_file(o.corpus));
  }

  /// Decodes one matrix file; `index` keys the sampling stream so results do
  /// not depend on which other files are decoded.
  std::vector<Decoded> decode(const MatrixFile& f, std::size_t index, std::size_t nbest = 1) {
    prepare(f.labels);
    std::vector<Decoded> out;
    if (!search_) {
      out.push_back(best_path_decode(f.matrix, ctx_->alphabet));
    } else {
      Rng rng(derive_seed(opts_.seed, index));
      out = search_->decode_nbest(f.matrix, nbest, &rng);
    }
    for (auto& d : out) d.text = decode_label(d.text, ctx_->scheme).word;
    return out;
  }

 private:
  struct Context {
    std::u32string labels;
    Alphabet alphabet;
    CodingScheme scheme = CodingScheme::plain();
    PrefixTree tree;
    std::optional<NgramModel> lm;
  };

  void prepare(const std::u32string& labels) {
    if (ctx_ && ctx_->labels == labels) return;
    search_.reset();
    auto ctx = std::make_unique<Context>();
    ctx->labels = labels;
    if (opts_.scheme == "extrasep") {
      if (labels.empty()) throw ConfigError("empty alphabet cannot carry a separator");
      const char32_t sep = opts_.sep.empty() ? labels.back() : single_char(opts_.sep, "--sep");
      if (labels.back() != sep)
        throw ConfigError("matrix alphabet does not end with separator U+" + codepoint_hex(sep));
      ctx->alphabet = Alphabet(labels.substr(0, labels.size() - 1), sep);
      ctx->scheme = CodingScheme::extra_separator(sep);
    } else {
      ctx->alphabet = Alphabet(labels);
    }
    if (scheme_kind_) {
      const CharSet requested(utf8_to_u32(opts_.nonword_chars));
      std::u32string word_chars, nonword;
      for (char32_t c : ctx->alphabet.characters())
        (requested.contains(c) ? nonword : word_chars) += c;
      if (auto sep = ctx->scheme.separator()) nonword += *sep;
      ctx->tree = PrefixTree::build(dict_, CharSet(word_chars), CharSet(nonword));
      ScoringMode mode;
      switch (*scheme_kind_) {
        case ScoringKind::words: mode = ScoringMode::words(); break;
        case ScoringKind::ngrams: mode = ScoringMode::ngrams(); break;
        case ScoringKind::ngrams_forecast: mode = ScoringMode::ngrams_forecast(); break;
        case ScoringKind::ngrams_forecast_sample:
          mode = ScoringMode::ngrams_forecast_sample(opts_.sample_size, opts_.seed);
          break;
      }
      if (mode.uses_lm())
        ctx->lm = NgramModel::train(corpus_.empty() ? dict_ : corpus_, opts_.order,
                                    opts_.smoothing_k, word_chars);
      GrammarOptions grammar;
      grammar.max_words = opts_.max_words;
      if (opts_.terminal_separator) grammar.terminator = ctx->scheme.separator();
      ctx_ = std::move(ctx);
      search_ = std::make_unique<WordBeamSearch>(ctx_->alphabet, ctx_->tree,
                                                 ctx_->lm ? &*ctx_->lm : nullptr, opts_.width,
                                                 mode, grammar);
      return;
    }
    ctx_ = std::move(ctx);
  }

  DecodeOptions opts_;
  std::optional<ScoringKind> scheme_kind_;
  std::vector<std::u32string> dict_;
  std::vector<std::u32string> corpus_;
  std::unique_ptr<Context> ctx_;
  std::unique_ptr<WordBeamSearch> search_;
};

/// Reads a matrix file, attributing parse errors to the file.
inline MatrixFile load_matrix(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_matrix(text);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline std::string sample_id(const std::string& path) { return fs::path(path).stem().string(); }

inline std::vector<std::string> list_matrices(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mat") paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  return paths;
}

inline void run_decode(const DecodeOptions& o, const std::vector<std::string>& paths,
                       std::ostream& out) {
  Decoder decoder(o);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto d = decoder.decode(load_matrix(paths[i]), i).front();
    out << paths[i] << '\t' << escape_labels(d.text) << '\t' << format_likelihood(d.likelihood)
        << '\n';
  }
}

struct Sample {
  std::string id;
  std::vector<Hypothesis> ranked;  // best first
};

/// Reads "path TAB label TAB likelihood" lines written by decode.
inline std::vector<Sample> read_decode_output(const std::string& path) {
  const auto text = read_file(path);
  std::vector<Sample> out;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string::npos ? text.size() : nl;
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw FormatError(path + ": expected \"path<TAB>label<TAB>likelihood\"", line_no);
    const std::string lik(line.substr(t2 + 1));
    char* stop = nullptr;
    const double p = std::strtod(lik.c_str(), &stop);
    if (lik.empty() || stop != lik.c_str() + lik.size())
      throw FormatError(path + ": bad likelihood \"" + lik + "\"", line_no);
    Hypothesis h{u32_to_utf8(unescape_labels(line.substr(t1 + 1, t2 - t1 - 1), line_no)), p};
    out.push_back({sample_id(std::string(line.substr(0, t1))), {std::move(h)}});
  }
  return out;
}

/// Checks that every recognizer lists the same samples in the same order.
inline void check_alignment(const std::vector<std::vector<Sample>>& members,
                            const std::vector<std::string>& sources) {
  const auto& ref = members.front();
  for (std::size_t m = 1; m < members.size(); ++m) {
    const auto& cur = members[m];
    const std::size_t n = std::min(ref.size(), cur.size());
    for (std::size_t i = 0; i < n; ++i)
      if (cur[i].id != ref[i].id)
        throw FormatError("misaligned recognizers: sample " + std::to_string(i + 1) + " is '" +
                          ref[i].id + "' in " + sources[0] + " but '" + cur[i].id + "' in " +
                          sources[m]);
    if (cur.size() != ref.size()) {
      const bool ref_longer = ref.size() > cur.size();
      const auto& id = ref_longer ? ref[n].id : cur[n].id;
      throw FormatError("misaligned recognizers: sample '" + id + "' appears in " +
                        (ref_longer ? sources[0] : sources[m]) + " but not in " +
                        (ref_longer ? sources[m] : sources[0]));
    }
  }
}

struct EnsembleOptions {
  DecodeOptions decode;
  std::vector<std::string> inputs;
  std::vector<std::string> matrix_dirs;
  std::string rule = "plurality";
  std::size_t nbest = 1;
};

inline void run_ensemble(const EnsembleOptions& o, std::ostream& out) {
  if (o.inputs.empty() == o.matrix_dirs.empty())
    throw UsageError("give either decode output files or --matrix-dir directories");
  std::vector<std::vector<Sample>> members;
  std::vector<std::string> sources;
  if (!o.inputs.empty()) {
    if (o.nbest != 1) throw UsageError("--nbest needs --matrix-dir");
    for (const auto& p : o.inputs) {
      members.push_back(read_decode_output(p));
      sources.push_back(p);
    }
  } else {
    Decoder decoder(o.decode);
    for (const auto& dir : o.matrix_dirs) {
      std::vector<Sample> samples;
      const auto paths = list_matrices(dir);
      for (std::size_t i = 0; i < paths.size(); ++i) {
        Sample s{sample_id(paths[i]), {}};
        for (auto& d : decoder.decode(load_matrix(paths[i]), i, o.nbest))
          s.ranked.push_back({u32_to_utf8(d.text), d.likelihood});
        samples.push_back(std::move(s));
      }
      members.push_back(std::move(samples));
      sources.push_back(dir);
    }
  }
  check_alignment(members, sources);
  const VotingRule rule = o.rule == "borda" ? VotingRule::borda : VotingRule::plurality;
  for (std::size_t i = 0; i < members.front().size(); ++i) {
    std::vector<std::vector<Hypothesis>> ballots;
    for (const auto& m : members) ballots.push_back(m[i].ranked);
    const auto r = vote(ballots, rule);
    out << members.front()[i].id << '\t' << escape_labels(utf8_to_u32(r.winner.text)) << '\t'
        << r.votes << '\t' << format_likelihood(r.winner.likelihood) << '\n';
  }
}

struct LabeledLine {
  std::optional<std::string> id;
  std::string label;
};

/// Prediction / ground-truth lines: "id TAB label [TAB ...]" or a bare label.
inline std::vector<LabeledLine> read_labeled(const std::string& path) {
  const auto text = read_file(path);
  std::vector<LabeledLine> out;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string::npos ? text.size() : nl;
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    if (t1 == std::string_view::npos) {
      out.push_back({std::nullopt, u32_to_utf8(unescape_labels(line, line_no))});
    } else {
      const auto t2 = line.find('\t', t1 + 1);
      const auto label = line.substr(t1 + 1, t2 == std::string_view::npos ? t2 : t2 - t1 - 1);
      out.push_back({sample_id(std::string(line.substr(0, t1))),
                     u32_to_utf8(unescape_labels(label, line_no))});
    }
  }
  return out;
}

struct EvalOptions {
  std::string predictions;
  std::string ground_truth;
  std::string train_vocab;
  bool case_insensitive = false;
  std::string out_dir;
  std::size_t max_confusions = 50;
};

inline void run_eval(const EvalOptions& o, std::ostream& out) {
  const auto preds = read_labeled(o.predictions);
  const auto gts = read_labeled(o.ground_truth);
  const bool keyed = std::all_of(preds.begin(), preds.end(), [](auto& l) { return l.id.has_value(); }) &&
                     std::all_of(gts.begin(), gts.end(), [](auto& l) { return l.id.has_value(); });
  std::vector<std::string> p, g;
  if (keyed) {
    std::map<std::string, std::string> by_id;
    for (const auto& l : preds)
      if (!by_id.emplace(*l.id, l.label).second)
        throw FormatError("duplicate prediction for sample '" + *l.id + "'");
    for (const auto& l : gts) {
      auto it = by_id.find(*l.id);
      if (it == by_id.end()) throw FormatError("no prediction for sample '" + *l.id + "'");
      p.push_back(it->second);
      g.push_back(l.label);
    }
    if (p.size() != preds.size()) throw FormatError("predictions contain samples not in the ground truth");
  } else {
    if (preds.size() != gts.size())
      throw FormatError(std::to_string(preds.size()) + " predictions for " +
                        std::to_string(gts.size()) + " ground-truth lines");
    for (const auto& l : preds) p.push_back(l.label);
    for (const auto& l : gts) g.push_back(l.label);
  }
  std::optional<std::vector<std::string>> vocab;
  if (!o.train_vocab.empty()) {
    vocab.emplace();
    for (const auto& w : parse_word_list(read_file(o.train_vocab))) vocab->push_back(u32_to_utf8(w));
  }
  std::optional<std::span<const std::string>> vocab_span;
  if (vocab) vocab_span = std::span<const std::string>(*vocab);
  const auto report = evaluate(p, g, o.case_insensitive, vocab_span, o.max_confusions);
  if (o.out_dir.empty()) {
    out << format_table(report) << '\n' << format_kv(report);
    return;
  }
  fs::create_directories(o.out_dir);
  write_file((fs::path(o.out_dir) / "report.txt").string(), format_table(report));
  write_file((fs::path(o.out_dir) / "report.kv").string(), format_kv(report));
  out << "word_accuracy " << detail::fixed(report.word_accuracy) << '\n';
}

struct SynthOptions {
  std::string dict;
  std::size_t n_words = 100;
  double noise = 0.3;
  std::size_t members = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string scheme = "plain";
  std::string sep;
  double jitter = 0.03;
  double confusion_spread = 1.0;
  std::size_t frames_per_char = 4;
};

inline void run_synth(const SynthOptions& o, std::ostream& out) {
  if (o.noise < 0.0 || o.noise > 1.0) throw ConfigError("--noise must lie in [0, 1]");
  auto dict = parse_word_list(read_file(o.dict));
  if (dict.empty()) throw InputError("dictionary " + o.dict + " has no words");
  std::u32string chars;
  for (const auto& w : dict) chars += w;
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  CodingScheme scheme = CodingScheme::plain();
  if (o.scheme == "extrasep") {
    std::optional<char32_t> sep;
    if (o.sep.empty()) {
      sep = select_separator(chars);
      if (!sep) throw ConfigError("every separator candidate occurs in the dictionary; pass --sep");
    } else {
      sep = single_char(o.sep, "--sep");
    }
    scheme = CodingScheme::extra_separator(*sep);
  } else if (!o.sep.empty()) {
    throw ConfigError("--sep needs --scheme extrasep");
  }
  RecognizerSim proto;
  proto.alphabet = augment_alphabet(Alphabet(chars), scheme);
  proto.noise_level = o.noise;
  proto.confusion_spread = o.confusion_spread;
  proto.frames_per_char = o.frames_per_char;
  const auto sims = make_ensemble(proto, o.seed, o.members, o.jitter);

  Rng pick(derive_seed(o.seed, 0x5e1ec7));
  std::vector<std::string> ids;
  std::vector<std::u32string> words;
  std::string manifest;
  char id[32];
  for (std::size_t i = 0; i < o.n_words; ++i) {
    std::snprintf(id, sizeof id, "w%06zu", i);
    ids.emplace_back(id);
    words.push_back(dict[uniform_below(pick, dict.size())]);
    manifest += ids.back() + '\t' + escape_labels(words.back()) + '\n';
  }
  fs::create_directories(o.out_dir);
  write_file((fs::path(o.out_dir) / "manifest.tsv").string(), manifest);
  const auto labels = proto.alphabet.labels();
  for (std::size_t m = 0; m < sims.size(); ++m) {
    const auto dir = fs::path(o.out_dir) / ("member_" + std::to_string(m + 1));
    fs::create_directories(dir);
    RecognizerSim sample = sims[m];
    for (std::size_t i = 0; i < words.size(); ++i) {
      sample.seed = derive_seed(sims[m].seed, i);
      write_file((dir / (ids[i] + ".mat")).string(),
                 serialize_matrix(emit(sample, words[i], scheme), labels));
    }
  }
  out << "wrote " << words.size() << " samples x " << sims.size() << " recognizers to "
      << o.out_dir << '\n';
}

struct TrendOptions {
  TrendConfig config;
  std::string out;
};

inline void run_reproduce_trends(const TrendOptions& o, std::ostream& out) {
  const auto text = format_trends(run_trends(o.config));
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

/// Entry point; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lexicon-constrained CTC decoding, ensemble voting and evaluation", "lexctc"};
  app.require_subcommand(1);

  DecodeOptions decode;
  std::vector<std::string> decode_paths;
  auto* dec = app.add_subcommand("decode", "Decode posterior matrix files");
  add_decode_options(dec, decode);
  dec->add_option("matrices", decode_paths, "Matrix files")->required();

  EnsembleOptions ens;
  auto* en = app.add_subcommand("ensemble", "Vote over several recognizers");
  add_decode_options(en, ens.decode);
  en->add_option("inputs", ens.inputs, "Decode output files, one per recognizer");
  en->add_option("--matrix-dir", ens.matrix_dirs, "Matrix directory per recognizer (repeatable)");
  en->add_option("--rule", ens.rule, "Voting rule")
      ->check(CLI::IsMember({"plurality", "borda"}))
      ->capture_default_str();
  en->add_option("--nbest", ens.nbest, "Ranked hypotheses per recognizer (borda, --matrix-dir)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EvalOptions ev;
  auto* evc = app.add_subcommand("eval", "Score predictions against ground truth");
  evc->add_option("predictions", ev.predictions, "Prediction file")->required();
  evc->add_option("ground_truth", ev.ground_truth, "Ground-truth file")->required();
  evc->add_option("--train-vocab", ev.train_vocab, "Training vocabulary for the OOV/INV split");
  evc->add_flag("--case-insensitive", ev.case_insensitive, "Fold case before comparing");
  evc->add_option("--out-dir", ev.out_dir, "Write report.txt and report.kv here");
  evc->add_option("--max-confusions", ev.max_confusions, "Confusion pairs to list")
      ->capture_default_str();

  SynthOptions sy;
  auto* syc = app.add_subcommand("synth", "Write synthetic recognizer output");
  syc->add_option("--dict", sy.dict, "Dictionary to draw words from")->required();
  syc->add_option("--n-words", sy.n_words, "Number of samples")->capture_default_str();
  syc->add_option("--noise", sy.noise, "Expected mass taken from the peak")->capture_default_str();
  syc->add_option("--members", sy.members, "Number of recognizers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  syc->add_option("--seed", sy.seed, "Seed")->capture_default_str();
  syc->add_option("--out-dir", sy.out_dir, "Output directory")->required();
  syc->add_option("--scheme", sy.scheme, "Label coding scheme")
      ->check(CLI::IsMember({"plain", "extrasep"}))
      ->capture_default_str();
  syc->add_option("--sep", sy.sep, "Separator (default: first unused of | # ~ ¤)");
  syc->add_option("--jitter", sy.jitter, "Per-recognizer noise jitter")->capture_default_str();
  syc->add_option("--confusion-spread", sy.confusion_spread, "Concentration of leaked mass")
      ->capture_default_str();
  syc->add_option("--frames-per-char", sy.frames_per_char, "Frames per character")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  TrendOptions tr;
  auto* trc = app.add_subcommand("reproduce-trends", "Synthetic ensemble and coding-scheme report");
  trc->add_option("--seed", tr.config.seed, "Seed")->capture_default_str();
  trc->add_option("--out", tr.out, "Write the report here instead of stdout");
  trc->add_option("--trials", tr.config.trials, "Independent ensembles")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trc->add_option("--test-words", tr.config.test_words, "Test samples per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trc->add_option("--members", tr.config.max_members, "Largest ensemble")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trc->add_option("--noise", tr.config.noise, "Recognizer noise")->capture_default_str();
  trc->add_option("--width", tr.config.width, "Beam width")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<const char*> argv{"lexctc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dec->parsed()) run_decode(decode, decode_paths, out);
    else if (en->parsed()) run_ensemble(ens, out);
    else if (evc->parsed()) run_eval(ev, out);
    else if (syc->parsed()) run_synth(sy, out);
    else if (trc->parsed()) run_reproduce_trends(tr, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CapacityError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace lexctc::cli
