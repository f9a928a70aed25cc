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

#include "topicscope/tokenizer.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

namespace topicscope {

namespace {

const icu::Normalizer2& nfc()
{
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr)
        throw std::runtime_error("ICU NFC normalizer unavailable");
    return *n;
}

icu::UnicodeString canonical(std::string_view text)
{
    const icu::Normalizer2& norm = nfc();
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    s = norm.normalize(s, status);
    s.toLower(icu::Locale::getRoot());
    s = norm.normalize(s, status);
    if (U_FAILURE(status))
        throw std::runtime_error("unicode normalization failed");
    return s;
}

bool is_mark(UChar32 c)
{
    const int8_t t = u_charType(c);
    return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK || t == U_ENCLOSING_MARK;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords)
{
    const icu::UnicodeString s = canonical(text);
    std::vector<std::string> out;
    std::string token;
    icu::UnicodeString current;

    auto flush = [&] {
        if (current.isEmpty())
            return;
        token.clear();
        current.toUTF8String(token);
        current.remove();
        if (!stopwords.contains(token))
            out.push_back(token);
    };

    for (int32_t i = 0; i < s.length();) {
        const UChar32 c = s.char32At(i);
        i += U16_LENGTH(c);
        const bool letter = u_hasBinaryProperty(c, UCHAR_ALPHABETIC) != 0;
        if (letter || (is_mark(c) && !current.isEmpty()))
            current.append(c);
        else
            flush();
    }
    flush();
    return out;
}

std::string normalize_term(std::string_view term)
{
    const icu::UnicodeString s = canonical(term);
    std::string out;
    s.toUTF8String(out);
    const auto first = out.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = out.find_last_not_of(" \t\r\n");
    return out.substr(first, last - first + 1);
}

}  // namespace topicscope
