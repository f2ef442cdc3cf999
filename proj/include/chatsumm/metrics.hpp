#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/punctuation.hpp"
#include "chatsumm/transcript.hpp"

namespace chatsumm {

enum class RougeVariant { R1, RL };

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricScores {
    double bleu = 0.0;
    RougeScore rouge1;
    RougeScore rougeL;
    std::optional<double> punct_accuracy;  // percent
};

struct AggregateEntry {
    long long count = 0;
    long long punct_count = 0;  // items that carried punct_accuracy
    MetricScores mean;
};

struct AggregateReport {
    std::map<ChannelKind, AggregateEntry> channels;
};

// Lowercased alphanumeric runs; the shared tokenization for BLEU/ROUGE.
std::vector<std::string> metric_tokens(const std::string& text);

// Cumulative BLEU-4, uniform weights, add-one smoothing on zero-match
// precisions, brevity penalty exp(1 - r/c) when c < r.
double bleu(const std::vector<std::string>& candidate,
            const std::vector<std::string>& reference);

RougeScore rouge(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, RougeVariant variant);

// Percent of positions whose labels match. PeriodsOnly coerces both sides to
// {O, PERIOD} first. Throws LengthMismatch.
double punct_accuracy(const std::vector<PunctLabel>& reference,
                      const std::vector<PunctLabel>& predicted,
                      PunctMode mode = PunctMode::Full);

AggregateReport aggregate(const std::vector<std::pair<ChannelKind, MetricScores>>& items);

// BLEU + both ROUGE variants over metric_tokens of the two texts.
MetricScores score_pair(const std::string& candidate, const std::string& reference);

}  // namespace chatsumm
