// Copyright 2026 The topicscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPICSCOPE_CSV_HPP
#define TOPICSCOPE_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace topicscope::csv {

// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

// Joins escaped fields with commas (no trailing newline).
std::string join(const std::vector<std::string>& fields);

// Reads every record of a CSV stream. Quoted fields may span lines.
std::vector<std::vector<std::string>> read(std::istream& in);

// 12 significant digits, the precision used by every analysis export.
std::string number(double v);

// Shortest representation that parses back to the identical double.
std::string exact(double v);

// Parses a double written by number() or exact(); throws InputError.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

}  // namespace topicscope::csv

#endif  // TOPICSCOPE_CSV_HPP
