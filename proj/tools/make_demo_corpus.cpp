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

// Writes the synthetic demo corpus used by the end-to-end tests.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "topicscope/synthetic.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s OUTPUT.jsonl\n", argv[0]);
        return 1;
    }
    const auto demo = topicscope::synthetic::demo_corpus();
    std::ofstream out(argv[1], std::ios::binary);
    out << topicscope::synthetic::to_json_lines(demo.docs);
    if (!out) {
        std::fprintf(stderr, "cannot write %s\n", argv[1]);
        return 2;
    }
    std::printf("%zu documents, %zu venues\n", demo.docs.size(), demo.truth.venues.size());
    return 0;
}
