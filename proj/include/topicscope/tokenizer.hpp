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

#ifndef TOPICSCOPE_TOKENIZER_HPP
#define TOPICSCOPE_TOKENIZER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "topicscope/stopwords.hpp"

namespace topicscope {

// Splits raw text into lowercase word tokens.
//
// Input is NFC-normalized and lowercased. Any codepoint that is not a letter
// (or a combining mark attached to a run of letters) acts as a separator, so
// hyphens, punctuation, digits and whitespace all split words:
// "Mixed-integer programming" gives {"mixed", "integer", "programming"}.
// Tokens found in `stopwords` are dropped; order is preserved.
std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords);

// NFC + lowercase of a single term with surrounding whitespace trimmed.
std::string normalize_term(std::string_view term);

}  // namespace topicscope

#endif  // TOPICSCOPE_TOKENIZER_HPP
