#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chatsumm/transcript.hpp"

namespace chatsumm {

struct WordVectorStore {
    int dim = 0;
    std::unordered_map<std::string, std::vector<double>> table;
    int skipped_rows = 0;  // rows rejected for inconsistent dimension

    const std::vector<double>* find(const std::string& token) const;
};

// Text format: `token v1 v2 ... vD`, one entry per line. Dim comes from the
// first parseable row.
WordVectorStore load_word_vectors(const std::string& path);

// u.v / (|u||v|); 0 when either norm is 0. Throws DimensionMismatch.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

struct SentenceVector {
    std::vector<double> values;
    int source_len = 0;  // tokens that contributed
};

class SentenceEncoder {
public:
    virtual ~SentenceEncoder() = default;
    virtual SentenceVector encode(const std::string& text) = 0;
    virtual std::string provider() const = 0;
    virtual bool fallback_to_mean() const { return false; }
};

class MeanWordEncoder : public SentenceEncoder {
public:
    explicit MeanWordEncoder(const WordVectorStore& store) : store_(&store) {}
    SentenceVector encode(const std::string& text) override;
    std::string provider() const override { return "mean-of-words"; }

private:
    const WordVectorStore* store_;
};

struct RemoteEncoderConfig {
    std::string host = "127.0.0.1";
    int port = 0;
    std::string path = "/v1/embed";
    double timeout_sec = 5.0;
    bool fallback_to_mean = false;
};

class RemoteEncoder : public SentenceEncoder {
public:
    explicit RemoteEncoder(RemoteEncoderConfig cfg) : cfg_(std::move(cfg)) {}
    SentenceVector encode(const std::string& text) override;
    std::string provider() const override { return "remote"; }
    bool fallback_to_mean() const override { return cfg_.fallback_to_mean; }

private:
    RemoteEncoderConfig cfg_;
};

// Mean of in-vocabulary word vectors unless a remote encoder is supplied.
// Remote failure falls back to the mean only when the encoder allows it.
SentenceVector embed_sentence(const Sentence& s, const WordVectorStore& store,
                              SentenceEncoder* encoder = nullptr);

}  // namespace chatsumm
