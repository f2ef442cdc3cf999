#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chatsumm/config.hpp"
#include "chatsumm/embeddings.hpp"
#include "chatsumm/metrics.hpp"
#include "chatsumm/punctuation.hpp"
#include "chatsumm/topics.hpp"
#include "chatsumm/transcript.hpp"

namespace chatsumm {

struct Summary {
    std::string transcript_id;
    ChannelKind channel_kind = ChannelKind::Full;
    std::vector<Sentence> sentences;  // transcript order, at most summary_length
    std::string term_string;
    std::string punctuated_text;  // Full-mode restoration of the summary
};

// Wall-clock accumulators for the ten pipeline steps (index = step - 1).
struct StepTimings {
    std::array<std::atomic<double>, 10> seconds{};
    void add(int step, double s) {
        seconds[step - 1].fetch_add(s, std::memory_order_relaxed);
    }
    static const char* step_name(int step);
};

struct ExtractiveResult {
    Summary customer;
    Summary agent;
    MetricScores customer_scores;
    MetricScores agent_scores;
    bool customer_scored = false;  // false when the channel was empty
    bool agent_scored = false;
    std::string customer_reference;  // period-restored channel text used as reference
    std::string agent_reference;
};

struct SummarizerResources {
    const RoleMap* roles = nullptr;
    const TopicModel* model = nullptr;  // when absent, selected from corpus or the transcript itself
    const Corpus* corpus = nullptr;
    const WordVectorStore* store = nullptr;
    SentenceEncoder* encoder = nullptr;  // defaults to mean-of-words over store
    Predictor* predictor = nullptr;      // defaults to RulePredictor
    const PreprocessConfig* preprocess = nullptr;
    StepTimings* timings = nullptr;
    std::function<void(const ExtractiveResult&)> persist;  // step 10, optional
    std::uint64_t seed = 0;
};

// Every (doc word, dominant keyword) pair at cosine >= W contributes both
// words; deduplicated in first-occurrence order, space-joined.
std::string significant_terms(const Document& doc, const std::vector<std::string>& dom_kwds,
                              double W, const WordVectorStore& store);

// Greedy near-duplicate removal: drop a sentence when its similarity to any
// kept sentence exceeds U.
std::vector<Sentence> reduce_unique_sentences(const std::vector<Sentence>& sentences,
                                              double U, SentenceEncoder& encoder);

// Top-l sentences by similarity to the term string, ties to the earlier
// sentence, output in transcript order.
std::vector<Sentence> rank_and_extract(const std::vector<Sentence>& sentences,
                                       const std::string& term_string, int l,
                                       SentenceEncoder& encoder);

// Steps 2-8 for one channel transcript.
Summary summarize_channel(const ChatTranscript& channel, const SummarizerConfig& cfg,
                          SummarizerResources& res);

// The full ten-step procedure over both channels. Module errors are rethrown
// with the step index attached.
ExtractiveResult summarize_extractive(const ChatTranscript& t, const SummarizerConfig& cfg,
                                      SummarizerResources& res);

}  // namespace chatsumm
