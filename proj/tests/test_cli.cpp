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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "topicscope/synthetic.hpp"

#ifndef TOPICSCOPE_CLI
#error "TOPICSCOPE_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;
using namespace topicscope;

namespace {

const fs::path kDir = fs::temp_directory_path() / "topicscope_cli_test";

struct Result {
    int status = -1;
    std::string err;
    std::string out;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result run(const std::string& args)
{
    const auto out = kDir / "stdout.txt";
    const auto err = kDir / "stderr.txt";
    const std::string cmd = std::string(TOPICSCOPE_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

struct Setup {
    Setup()
    {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
        synthetic::DemoCorpusSpec spec;
        spec.docs_per_venue_year = 2;
        spec.first_year = 2001;
        spec.last_year = 2008;
        std::ofstream(kDir / "corpus.jsonl") << synthetic::to_json_lines(synthetic::demo_corpus(spec).docs);
    }
    ~Setup() { fs::remove_all(kDir); }
};

}  // namespace

TEST_CASE("exit codes and messages")
{
    Setup s;
    const std::string corpus = "--corpus " + (kDir / "corpus.jsonl").string();
    const std::string out = "--out " + (kDir / "run").string();

    auto r = run("preprocess " + corpus + " " + out + " --stopwords " + (kDir / "missing.txt").string());
    CHECK(r.status == 1);
    CHECK(r.err.find((kDir / "missing.txt").string()) != std::string::npos);

    r = run("frobnicate");
    CHECK(r.status == 1);

    r = run("train " + out);
    CHECK(r.status == 2);

    r = run("preprocess --corpus " + (kDir / "nothing.jsonl").string() + " " + out);
    CHECK(r.status == 1);

    // A malformed record is a data error, reported with its line.
    std::ofstream(kDir / "bad.jsonl") << "{\"id\":\"a\",\"journal\":\"J\",\"year\":2000,\"abstract\":\"x\"}\n{oops\n";
    r = run("preprocess --corpus " + (kDir / "bad.jsonl").string() + " " + out);
    CHECK(r.status == 2);
    CHECK(r.err.find("line 2") != std::string::npos);

    r = run("train " + out + " --topics 0");
    CHECK(r.status == 1);
    r = run("train " + out + " --backend bayes");
    CHECK(r.status == 1);
}

TEST_CASE("config file, flag overrides and the full command sequence")
{
    Setup s;
    const auto conf = kDir / "run.conf";
    std::ofstream(conf) << "corpus = " << (kDir / "corpus.jsonl").string() << "\nout = " << (kDir / "run").string()
                        << "\ntopics = 3\nseed = 4\nmax_em_iters = 30\n";
    const std::string base = "--config " + conf.string();

    CHECK(run("preprocess " + base).status == 0);
    CHECK(run("train " + base + " --topics 10").status == 0);
    CHECK(slurp(kDir / "run" / "model" / "model.txt").find("\nK 10\n") != std::string::npos);

    // An empty window is rejected before anything is computed.
    auto r = run("analyze " + base + " --topics 10 --window 2006:2003 --window 2007:2008");
    CHECK(r.status == 1);
    CHECK(r.err.find("2006:2003") != std::string::npos);
    CHECK_FALSE(fs::exists(kDir / "run" / "analysis"));

    CHECK(run("analyze " + base + " --topics 10 --window 2001:2004 --window 2005:2008 --exclude-topics 2").status == 0);
    CHECK(slurp(kDir / "run" / "analysis" / "uniqueness_windows.csv")
              .starts_with("venue,uniqueness_2001:2004,uniqueness_2005:2008\n"));

    std::mt19937_64 rng(1);
    std::ofstream(kDir / "abstract.txt") << synthetic::topic_abstract(0, 50, rng);
    r = run("recommend " + base + " --topics 10 --abstract " + (kDir / "abstract.txt").string());
    CHECK(r.status == 0);
    CHECK(r.out.starts_with("rank,venue,hellinger\n1,J"));
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);
    r = run("recommend " + base + " --topics 10 --abstract " + (kDir / "abstract.txt").string() + " --output " +
            (kDir / "ranked.csv").string());
    CHECK(r.status == 0);
    CHECK(slurp(kDir / "ranked.csv").starts_with("rank,venue,hellinger\n"));
}
