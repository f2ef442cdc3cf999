#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/config.hpp"
#include "chatsumm/preprocess.hpp"

namespace chatsumm {

struct TopicModel {
    TopicModelKind kind = TopicModelKind::LDA;
    int num_topics = 0;
    std::vector<std::vector<double>> topic_word;  // K x V
    std::vector<std::string> vocabulary;          // id -> token, shared with the Corpus
    std::uint64_t rng_seed = 0;                   // LDA
    double alpha = 0.1;                           // LDA, reused for fold-in
    std::vector<double> idf;                      // LSI, for projecting new docs
    bool rank_deficient = false;                  // LSI, K was clamped to the achieved rank
};

struct CoherenceReport {
    TopicModelKind kind = TopicModelKind::LDA;
    int num_topics = 0;
    double score = 0.0;
    std::vector<double> per_topic;
};

struct TopicEntry {
    int topic_id = 0;
    double weight = 0.0;
    std::vector<std::string> keywords;
};

struct DominantTopics {
    std::string transcript_id;
    std::vector<TopicEntry> entries;  // weight-descending
};

// Collapsed Gibbs sampling; topic_word[k][w] = (n_kw + beta) / (n_k + V*beta).
TopicModel fit_lda(const Corpus& c, int K, double alpha = 0.1, double beta = 0.01,
                   int iters = 200, std::uint64_t seed = 0);

// TF-IDF + truncated SVD by power iteration; rows are unit-norm right
// singular vectors. K above the achieved rank is clamped and flagged.
TopicModel fit_lsi(const Corpus& c, int K);

// UMass: per topic, sum over ranked pairs of log((D(wi,wj)+1)/D(wj)).
CoherenceReport coherence(const TopicModel& m, const Corpus& c, int top_n = 10);

// Grid search K in {N, N+5, ..., 50} over the configured kind(s); argmax
// coherence, ties to smaller K then LDA.
std::pair<TopicModel, CoherenceReport> select_optimal_model(const Corpus& c,
                                                            const SummarizerConfig& cfg,
                                                            std::uint64_t seed = 0,
                                                            int top_n = 10);

// Top-N topics for one document: LDA by fold-in Gibbs (20 sweeps), LSI by
// normalized absolute projections. Empty bow gives empty entries.
DominantTopics dominant_topics(const TopicModel& m, const std::string& transcript_id,
                               const std::vector<std::pair<int, int>>& bow, int N,
                               int top_m, std::uint64_t seed = 0);

std::vector<std::string> topic_keywords(const TopicModel& m, int topic, int top_m);

// Bag-of-words over the model's own vocabulary; unknown tokens dropped.
std::vector<std::pair<int, int>> model_bow(const TopicModel& m, const Document& doc);

void save_topic_model(const TopicModel& m, const std::string& path);
TopicModel load_topic_model(const std::string& path);

}  // namespace chatsumm
