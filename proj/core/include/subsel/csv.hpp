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

#ifndef SUBSEL_CSV_HPP_
#define SUBSEL_CSV_HPP_

#include <istream>
#include <ostream>
#include <string>

#include "subsel/design.hpp"

namespace subsel::csv {

/// Parses a header-first CSV of finite numbers. The column named
/// `response_name` becomes the response and every other column a feature,
/// in file order. Double-quoted fields and CRLF endings are accepted.
/// Throws Parse with a line number on malformed input.
RawData read(std::istream& in, const std::string& response_name);

/// Opens and parses `path`; throws Io when it cannot be read.
RawData read_file(const std::string& path, const std::string& response_name);

/// Writes the response column first, then the features, with 17
/// significant digits and LF endings.
void write(std::ostream& out, const RawData& data);

/// Writes a standardized design in the same layout.
void write(std::ostream& out, const StandardizedDesign& design);

}  // namespace subsel::csv

#endif  // SUBSEL_CSV_HPP_
