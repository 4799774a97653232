// Copyright 2026 The Authors.
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

#include "subsel/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "subsel/error.hpp"

namespace subsel::csv {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_record(const std::string& text, std::size_t line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t p = 0; p < text.size(); ++p) {
    const char c = text[p];
    if (quoted) {
      if (c == '"') {
        if (p + 1 < text.size() && text[p + 1] == '"') {
          field += '"';
          ++p;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || was_quoted) fail(line, "stray quote");
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      if (was_quoted) fail(line, "text after closing quote");
      field += c;
    }
  }
  if (quoted) fail(line, "unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

double parse_number(std::string field, std::size_t line) {
  const auto first = field.find_first_not_of(" \t");
  const auto last = field.find_last_not_of(" \t");
  if (first == std::string::npos) fail(line, "empty field");
  field = field.substr(first, last - first + 1);
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(line, "not a number: '" + field + "'");
  if (!std::isfinite(value)) fail(line, "non-finite value: '" + field + "'");
  return value;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_table(std::ostream& out, const std::string& response_name,
                 const std::vector<std::string>& names,
                 const Eigen::VectorXd& response, const Eigen::MatrixXd& features) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  out << quote(response_name);
  for (const auto& name : names) out << ',' << quote(name);
  out << '\n';
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    out << format17(response(r));
    for (Eigen::Index c = 0; c < features.cols(); ++c) out << ',' << format17(features(r, c));
    out << '\n';
  }
}

}  // namespace

RawData read(std::istream& in, const std::string& response_name) {
  std::string text;
  std::size_t line = 0;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (line == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    if (text.empty()) continue;
    auto fields = split_record(text, line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      fail(line, "expected " + std::to_string(header.size()) + " fields, got " +
                     std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto& f : fields) row.push_back(parse_number(std::move(f), line));
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw Error(ErrorKind::kParse, "missing header");
  int response_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == response_name) {
      if (response_col >= 0) {
        throw Error(ErrorKind::kParse, "duplicate response column '" + response_name + "'");
      }
      response_col = static_cast<int>(c);
    }
  }
  if (response_col < 0) {
    throw Error(ErrorKind::kParse, "no column named '" + response_name + "'");
  }
  if (header.size() < 2) throw Error(ErrorKind::kParse, "need at least one feature");

  RawData raw;
  raw.response_name = response_name;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(header.size() - 1);
  raw.features.resize(n, m);
  raw.response.resize(n);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (static_cast<int>(c) != response_col) raw.names.push_back(header[c]);
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::Index f = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const double v = rows[static_cast<size_t>(r)][c];
      if (static_cast<int>(c) == response_col) {
        raw.response(r) = v;
      } else {
        raw.features(r, f++) = v;
      }
    }
  }
  return raw;
}

RawData read_file(const std::string& path, const std::string& response_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  return read(in, response_name);
}

void write(std::ostream& out, const RawData& data) {
  write_table(out, data.response_name, data.names, data.response, data.features);
}

void write(std::ostream& out, const StandardizedDesign& design) {
  write_table(out, design.response_name(), design.names(), design.response(),
              design.features());
}

}  // namespace subsel::csv
