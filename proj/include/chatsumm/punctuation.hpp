#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chatsumm {

enum class PunctLabel { O, Comma, Period, Question };
enum class PunctMode { PeriodsOnly, Full };

const char* punct_label_name(PunctLabel l);
std::optional<PunctLabel> punct_label_from(const std::string& name);

struct Segment {
    std::vector<int> token_ids;
    int start = 0;    // offset of token_ids[0] in the session token stream
    int overlap = 0;  // tokens shared with the previous segment
};

struct PunctuatedText {
    std::string text;
    std::vector<PunctLabel> labels;  // one per token of text
    PunctMode mode = PunctMode::Full;
};

class Predictor {
public:
    virtual ~Predictor() = default;
    // One label list per segment, aligned with its token_ids.
    virtual std::vector<std::vector<PunctLabel>> predict(
        const std::vector<Segment>& segments,
        const std::vector<std::string>& id_to_token) = 0;
};

std::vector<std::string> whitespace_tokens(const std::string& text);

// Removes , . ? ! ; : and records, per surviving token, the class that
// followed it. Result text is lowercased.
std::pair<std::string, std::vector<PunctLabel>> strip_punctuation(const std::string& text);

// Tokenize, segment with 25% overlap, predict, resolve overlaps by keeping
// the label from the segment where the token sits most centrally, merge.
PunctuatedText restore(const std::string& text, PunctMode mode, Predictor& predictor,
                       int segment_size = 512);

struct RuleOptions {
    int max_run = 25;
    std::vector<int> turn_boundaries;  // global token indices that end a turn
};

std::vector<PunctLabel> rule_predict(const Segment& segment,
                                     const std::vector<std::string>& id_to_token,
                                     const RuleOptions& opts = {});

class RulePredictor : public Predictor {
public:
    explicit RulePredictor(RuleOptions opts = {}) : opts_(std::move(opts)) {}
    std::vector<std::vector<PunctLabel>> predict(
        const std::vector<Segment>& segments,
        const std::vector<std::string>& id_to_token) override;

private:
    RuleOptions opts_;
};

// Replays a fixed per-token label stream; segments index into it by start
// offset. Positions past the stream get O.
class OraclePredictor : public Predictor {
public:
    explicit OraclePredictor(std::vector<PunctLabel> labels) : labels_(std::move(labels)) {}
    std::vector<std::vector<PunctLabel>> predict(
        const std::vector<Segment>& segments,
        const std::vector<std::string>& id_to_token) override;

private:
    std::vector<PunctLabel> labels_;
};

struct RemotePredictorConfig {
    std::string host = "127.0.0.1";
    int port = 0;
    std::string path = "/v1/punctuate";
    double timeout_sec = 5.0;
    int retries = 1;
};

class RemotePredictor : public Predictor {
public:
    explicit RemotePredictor(RemotePredictorConfig cfg) : cfg_(std::move(cfg)) {}
    std::vector<std::vector<PunctLabel>> predict(
        const std::vector<Segment>& segments,
        const std::vector<std::string>& id_to_token) override;

private:
    RemotePredictorConfig cfg_;
};

std::unique_ptr<Predictor> remote_predict(const RemotePredictorConfig& cfg);

}  // namespace chatsumm
