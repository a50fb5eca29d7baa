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


// Text file formats: posterior matrix files and word lists.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lexctc/ctc.hpp"
#include "lexctc/error.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// A posterior matrix together with the column labels it was written with
/// (every non-blank column in order; the blank column is implicit and last).
struct MatrixFile {
  std::u32string labels;
  PosteriorMatrix matrix;
};

/// Escapes backslash and whitespace so the label line survives line- and
/// space-oriented tooling.
inline std::string escape_labels(std::u32string_view labels) {
  std::string out;
  for (char32_t c : labels) {
    switch (c) {
      case U'\\': out += "\\\\"; break;
      case U' ': out += "\\s"; break;
      case U'\t': out += "\\t"; break;
      case U'\n': out += "\\n"; break;
      case U'\r': out += "\\r"; break;
      default: append_utf8(out, c);
    }
  }
  return out;
}

inline std::u32string unescape_labels(std::string_view line, std::size_t line_no) {
  std::string raw;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '\\') {
      raw += line[i];
      continue;
    }
    if (++i == line.size()) throw FormatError("dangling backslash in alphabet line", line_no);
    switch (line[i]) {
      case '\\': raw += '\\'; break;
      case 's': raw += ' '; break;
      case 't': raw += '\t'; break;
      case 'n': raw += '\n'; break;
      case 'r': raw += '\r'; break;
      default:
        throw FormatError(std::string("unknown escape \\") + line[i] + " in alphabet line", line_no);
    }
  }
  try {
    return utf8_to_u32(raw);
  } catch (const InputError& e) {
    throw FormatError(e.what(), line_no);
  }
}

/// "T C" header, escaped label line, then T rows of C numbers. %.17g makes the
/// round trip exact.
inline std::string serialize_matrix(const PosteriorMatrix& m, std::u32string_view labels) {
  if (labels.size() + 1 != m.columns())
    throw InputError("matrix has " + std::to_string(m.columns()) + " columns but " +
                     std::to_string(labels.size()) + " labels (plus blank)");
  std::string out = std::to_string(m.frames()) + " " + std::to_string(m.columns()) + "\n";
  out += escape_labels(labels) + "\n";
  char buf[32];
  for (std::size_t t = 0; t < m.frames(); ++t) {
    const auto row = m.row(t);
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      if (c > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  std::size_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + static_cast<std::size_t>(ch - '0');
    if (v > (std::size_t{1} << 40)) return false;
  }
  out = v;
  return true;
}

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace detail

inline MatrixFile parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(detail::strip_cr(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  if (lines.empty()) throw FormatError("empty matrix file", 1);
  const auto header = detail::split_spaces(lines[0]);
  std::size_t frames = 0, columns = 0;
  if (header.size() != 2 || !detail::parse_size(header[0], frames) ||
      !detail::parse_size(header[1], columns))
    throw FormatError("expected header \"T C\"", 1);
  if (frames < 1 || columns < 2) throw FormatError("need T >= 1 and C >= 2", 1);
  if (lines.size() < 2) throw FormatError("missing alphabet line", 2);
  MatrixFile file;
  file.labels = unescape_labels(lines[1], 2);
  if (file.labels.size() + 1 != columns)
    throw FormatError("alphabet has " + std::to_string(file.labels.size()) +
                          " characters but C = " + std::to_string(columns) + " (expected C - 1)",
                      2);
  std::vector<double> data;
  data.reserve(frames * columns);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t line_no = t + 3;
    if (line_no > lines.size()) throw FormatError("expected " + std::to_string(frames) + " rows", line_no);
    const auto fields = detail::split_spaces(lines[line_no - 1]);
    if (fields.size() != columns)
      throw FormatError("expected " + std::to_string(columns) + " values, found " +
                            std::to_string(fields.size()),
                        line_no);
    for (auto f : fields) {
      const std::string s(f);
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size()) throw FormatError("not a number: " + s, line_no);
      data.push_back(v);
    }
  }
  for (std::size_t i = frames + 2; i < lines.size(); ++i)
    if (!lines[i].empty()) throw FormatError("unexpected content after the last row", i + 1);
  try {
    file.matrix = PosteriorMatrix(frames, columns, std::move(data));
  } catch (const InputError& e) {
    // Row errors name the frame; point at its line.
    const std::string what = e.what();
    std::size_t line_no = 3;
    if (what.rfind("frame ", 0) == 0) line_no += std::stoul(what.substr(6));
    throw FormatError(what, line_no);
  }
  return file;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("failed writing " + path);
}

/// One word per line; '#' comment lines and blank lines are skipped, and a
/// word may not contain whitespace.
inline std::vector<std::u32string> parse_word_list(std::string_view text) {
  std::vector<std::u32string> words;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = detail::strip_cr(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_of(" \t\v\f") != std::string_view::npos)
      throw FormatError("word contains whitespace", line_no);
    try {
      words.push_back(utf8_to_u32(line));
    } catch (const InputError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return words;
}

}  // namespace lexctc
