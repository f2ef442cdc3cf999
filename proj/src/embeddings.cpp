#include "chatsumm/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "chatsumm/error.hpp"
#include "text_util.hpp"

#include <httplib.h>
#include <json.hpp>

namespace chatsumm {

const std::vector<double>* WordVectorStore::find(const std::string& token) const {
    auto it = table.find(token);
    return it == table.end() ? nullptr : &it->second;
}

WordVectorStore load_word_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open vector file " + path);

    WordVectorStore store;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string token;
        if (!(row >> token)) continue;
        std::vector<double> vec;
        double v;
        while (row >> v) vec.push_back(v);
        if (vec.empty()) {
            ++store.skipped_rows;
            continue;
        }
        if (store.dim == 0) store.dim = static_cast<int>(vec.size());
        if (static_cast<int>(vec.size()) != store.dim) {
            ++store.skipped_rows;
            continue;
        }
        store.table[token] = std::move(vec);
    }
    if (store.table.empty())
        throw Error(ErrorCode::NoValidRows, "no parseable vector rows in " + path);
    return store;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(u.size()) + " vs " + std::to_string(v.size()));
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

SentenceVector MeanWordEncoder::encode(const std::string& text) {
    SentenceVector out;
    out.values.assign(store_->dim, 0.0);
    for (const auto& tok : detail::lower_alnum_tokens(text)) {
        const auto* vec = store_->find(tok);
        if (!vec) continue;
        for (size_t i = 0; i < vec->size(); ++i) out.values[i] += (*vec)[i];
        ++out.source_len;
    }
    if (out.source_len > 0)
        for (double& v : out.values) v /= out.source_len;
    return out;
}

SentenceVector RemoteEncoder::encode(const std::string& text) {
    httplib::Client cli(cfg_.host, cfg_.port);
    auto whole = static_cast<time_t>(cfg_.timeout_sec);
    auto micros = static_cast<time_t>((cfg_.timeout_sec - whole) * 1e6);
    cli.set_connection_timeout(whole, micros);
    cli.set_read_timeout(whole, micros);

    nlohmann::json body = {{"text", text}};
    auto res = cli.Post(cfg_.path, body.dump(), "application/json");
    if (!res)
        throw Error(ErrorCode::RemoteEncoderFailure,
                    "no response from " + cfg_.host + ":" + std::to_string(cfg_.port));
    if (res->status < 200 || res->status >= 300)
        throw Error(ErrorCode::RemoteEncoderFailure, "status " + std::to_string(res->status));

    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("vector") || !parsed["vector"].is_array())
        throw Error(ErrorCode::RemoteEncoderFailure, "malformed embedding response");

    SentenceVector out;
    for (const auto& v : parsed["vector"]) {
        if (!v.is_number()) throw Error(ErrorCode::RemoteEncoderFailure, "non-numeric vector");
        out.values.push_back(v.get<double>());
    }
    out.source_len = 1;
    return out;
}

SentenceVector embed_sentence(const Sentence& s, const WordVectorStore& store,
                              SentenceEncoder* encoder) {
    if (encoder) {
        try {
            return encoder->encode(s.text);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RemoteEncoderFailure || !encoder->fallback_to_mean())
                throw;
        }
    }
    MeanWordEncoder mean(store);
    return mean.encode(s.text);
}

}  // namespace chatsumm
