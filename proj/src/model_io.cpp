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

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "topicscope/csv.hpp"
#include "topicscope/error.hpp"
#include "topicscope/lda.hpp"

namespace topicscope {

namespace {

constexpr const char* kMagic = "topicscope-model";
constexpr int kFormatVersion = 1;

void write_row(std::ostream& out, std::span<const double> row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out << ' ';
        out << csv::exact(row[i]);
    }
    out << '\n';
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string line()
    {
        std::string s;
        if (!std::getline(in_, s))
            throw InputError("model file truncated after line " + std::to_string(n_));
        ++n_;
        return s;
    }

    std::string value(const std::string& key)
    {
        const std::string s = line();
        if (s.compare(0, key.size() + 1, key + " ") != 0)
            throw InputError("model file line " + std::to_string(n_) + ": expected '" + key + "'");
        return s.substr(key.size() + 1);
    }

    void expect(const std::string& marker)
    {
        if (line() != marker)
            throw InputError("model file line " + std::to_string(n_) + ": expected '" + marker + "'");
    }

    void row(std::span<double> out)
    {
        std::istringstream fields(line());
        std::string tok;
        std::size_t i = 0;
        while (fields >> tok) {
            if (i == out.size())
                throw InputError("model file line " + std::to_string(n_) + ": too many values");
            out[i++] = csv::parse_double(tok);
        }
        if (i != out.size())
            throw InputError("model file line " + std::to_string(n_) + ": too few values");
    }

private:
    std::istream& in_;
    std::size_t n_ = 0;
};

std::size_t to_size(const std::string& s)
{
    const auto v = csv::parse_int(s);
    if (v < 0)
        throw InputError("model file: negative size");
    return static_cast<std::size_t>(v);
}

}  // namespace

void save_model(std::ostream& out, const TopicModel& model)
{
    const auto& c = model.config;
    out << kMagic << ' ' << kFormatVersion << '\n'
        << "K " << model.num_topics() << '\n'
        << "V " << model.num_terms() << '\n'
        << "D " << model.num_docs() << '\n'
        << "alpha " << csv::exact(c.alpha) << '\n'
        << "seed " << c.seed << '\n'
        << "backend " << to_string(c.backend) << '\n'
        << "max_em_iters " << c.max_em_iters << '\n'
        << "em_rel_tol " << csv::exact(c.em_rel_tol) << '\n'
        << "max_doc_iters " << c.max_doc_iters << '\n'
        << "doc_rel_tol " << csv::exact(c.doc_rel_tol) << '\n'
        << "gibbs_sweeps " << c.gibbs_sweeps << '\n'
        << "burn_in " << c.burn_in << '\n'
        << "thin " << c.thin << '\n'
        << "eta " << csv::exact(c.eta) << '\n'
        << "converged " << (model.converged ? 1 : 0) << '\n'
        << "iterations " << model.iterations << '\n';
    out << "vocab\n";
    for (const auto& t : model.vocab.terms())
        out << t << '\n';
    out << "beta\n";
    for (std::size_t k = 0; k < model.num_topics(); ++k)
        write_row(out, model.beta.row(k));
    out << "gamma\n";
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        out << nlohmann::json(model.doc_ids[d]).dump() << '\t';
        write_row(out, model.gamma.row(d));
    }
    out << "gamma_raw\n";
    for (std::size_t d = 0; d < model.num_docs(); ++d)
        write_row(out, model.gamma_raw.row(d));
    out << "elbo " << model.elbo_trace.size() << '\n';
    for (double v : model.elbo_trace)
        out << csv::exact(v) << '\n';
    out << "end\n";
}

TopicModel load_model(std::istream& in)
{
    Reader r(in);
    const std::string magic = r.line();
    if (magic != std::string(kMagic) + ' ' + std::to_string(kFormatVersion))
        throw InputError("not a topicscope model file (or unsupported version)");

    TopicModel m;
    auto& c = m.config;
    const std::size_t K = to_size(r.value("K"));
    const std::size_t V = to_size(r.value("V"));
    const std::size_t D = to_size(r.value("D"));
    c.num_topics = K;
    c.alpha = csv::parse_double(r.value("alpha"));
    c.seed = static_cast<std::uint64_t>(std::stoull(r.value("seed")));
    c.backend = parse_backend(r.value("backend"));
    c.max_em_iters = to_size(r.value("max_em_iters"));
    c.em_rel_tol = csv::parse_double(r.value("em_rel_tol"));
    c.max_doc_iters = to_size(r.value("max_doc_iters"));
    c.doc_rel_tol = csv::parse_double(r.value("doc_rel_tol"));
    c.gibbs_sweeps = to_size(r.value("gibbs_sweeps"));
    c.burn_in = to_size(r.value("burn_in"));
    c.thin = to_size(r.value("thin"));
    c.eta = csv::parse_double(r.value("eta"));
    m.converged = r.value("converged") == "1";
    m.iterations = to_size(r.value("iterations"));

    r.expect("vocab");
    std::vector<std::string> terms;
    terms.reserve(V);
    for (std::size_t v = 0; v < V; ++v)
        terms.push_back(r.line());
    m.vocab = Vocabulary(std::move(terms));

    r.expect("beta");
    m.beta = Matrix(K, V);
    for (std::size_t k = 0; k < K; ++k)
        r.row(m.beta.row(k));

    r.expect("gamma");
    m.gamma = Matrix(D, K);
    for (std::size_t d = 0; d < D; ++d) {
        const std::string line = r.line();
        // JSON-escaped ids never contain a raw tab.
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("model file: malformed gamma row " + std::to_string(d));
        try {
            m.doc_ids.push_back(nlohmann::json::parse(line.substr(0, tab)).get<std::string>());
        } catch (const nlohmann::json::exception&) {
            throw InputError("model file: bad document id in gamma row " + std::to_string(d));
        }
        const std::size_t consumed = tab + 1;
        std::istringstream fields(line.substr(consumed));
        std::string tok;
        std::size_t k = 0;
        while (fields >> tok) {
            if (k == K)
                throw InputError("model file: too many values in gamma row " + std::to_string(d));
            m.gamma(d, k++) = csv::parse_double(tok);
        }
        if (k != K)
            throw InputError("model file: too few values in gamma row " + std::to_string(d));
    }

    r.expect("gamma_raw");
    m.gamma_raw = Matrix(D, K);
    for (std::size_t d = 0; d < D; ++d)
        r.row(m.gamma_raw.row(d));

    const std::size_t n_elbo = to_size(r.value("elbo"));
    for (std::size_t i = 0; i < n_elbo; ++i)
        m.elbo_trace.push_back(csv::parse_double(r.line()));
    r.expect("end");
    return m;
}

}  // namespace topicscope
