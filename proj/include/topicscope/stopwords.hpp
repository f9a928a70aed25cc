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

#ifndef TOPICSCOPE_STOPWORDS_HPP
#define TOPICSCOPE_STOPWORDS_HPP

#include <filesystem>
#include <string>
#include <unordered_set>

namespace topicscope {

using StopwordSet = std::unordered_set<std::string>;

// The bundled SMART stop list (570 entries), normalized like tokens.
StopwordSet smart_stopwords();

// One term per line, UTF-8. Blank lines are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace topicscope

#endif  // TOPICSCOPE_STOPWORDS_HPP
