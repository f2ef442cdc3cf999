#include "chatsumm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "chatsumm/error.hpp"
#include "text_util.hpp"

namespace chatsumm {

std::vector<std::string> metric_tokens(const std::string& text) {
    return detail::lower_alnum_tokens(text);
}

namespace {

std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens,
                                                  int n) {
    std::unordered_map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int j = 1; j < n; ++j) {
            key += '\x1f';
            key += tokens[i + j];
        }
        ++counts[key];
    }
    return counts;
}

double harmonic_f1(double p, double r) {
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

double bleu(const std::vector<std::string>& candidate,
            const std::vector<std::string>& reference) {
    const long long c = static_cast<long long>(candidate.size());
    const long long r = static_cast<long long>(reference.size());
    if (c == 0) return 0.0;

    double log_sum = 0.0;
    for (int n = 1; n <= 4; ++n) {
        long long total = c >= n ? c - n + 1 : 0;
        long long match = 0;
        if (total > 0) {
            auto cand = ngram_counts(candidate, n);
            auto ref = ngram_counts(reference, n);
            for (const auto& [gram, count] : cand) {
                auto it = ref.find(gram);
                if (it != ref.end()) match += std::min(count, it->second);
            }
        }
        double p = match > 0 ? static_cast<double>(match) / static_cast<double>(total)
                             : 1.0 / static_cast<double>(total + 1);
        log_sum += 0.25 * std::log(p);
    }
    double bp = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
    return bp * std::exp(log_sum);
}

RougeScore rouge(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, RougeVariant variant) {
    RougeScore s;
    if (candidate.empty() || reference.empty()) return s;

    long long match = 0;
    if (variant == RougeVariant::R1) {
        auto cand = ngram_counts(candidate, 1);
        auto ref = ngram_counts(reference, 1);
        for (const auto& [tok, count] : cand) {
            auto it = ref.find(tok);
            if (it != ref.end()) match += std::min(count, it->second);
        }
    } else {
        const size_t n = candidate.size(), m = reference.size();
        std::vector<long long> prev(m + 1, 0), cur(m + 1, 0);
        for (size_t i = 1; i <= n; ++i) {
            for (size_t j = 1; j <= m; ++j) {
                cur[j] = candidate[i - 1] == reference[j - 1]
                             ? prev[j - 1] + 1
                             : std::max(prev[j], cur[j - 1]);
            }
            std::swap(prev, cur);
        }
        match = prev[m];
    }

    s.precision = static_cast<double>(match) / static_cast<double>(candidate.size());
    s.recall = static_cast<double>(match) / static_cast<double>(reference.size());
    s.f1 = harmonic_f1(s.precision, s.recall);
    return s;
}

double punct_accuracy(const std::vector<PunctLabel>& reference,
                      const std::vector<PunctLabel>& predicted, PunctMode mode) {
    if (reference.size() != predicted.size())
        throw Error(ErrorCode::LengthMismatch,
                    "label lists of length " + std::to_string(reference.size()) + " vs " +
                        std::to_string(predicted.size()));
    if (reference.empty()) return 100.0;

    auto coerce = [mode](PunctLabel l) {
        if (mode != PunctMode::PeriodsOnly) return l;
        if (l == PunctLabel::Comma) return PunctLabel::O;
        if (l == PunctLabel::Question) return PunctLabel::Period;
        return l;
    };
    long long matches = 0;
    for (size_t i = 0; i < reference.size(); ++i)
        if (coerce(reference[i]) == coerce(predicted[i])) ++matches;
    return 100.0 * static_cast<double>(matches) / static_cast<double>(reference.size());
}

AggregateReport aggregate(const std::vector<std::pair<ChannelKind, MetricScores>>& items) {
    struct Sums {
        long long count = 0, punct_count = 0;
        double bleu = 0;
        double r1p = 0, r1r = 0, r1f = 0;
        double rlp = 0, rlr = 0, rlf = 0;
        double punct = 0;
    };
    std::map<ChannelKind, Sums> acc;
    for (const auto& [kind, s] : items) {
        Sums& a = acc[kind];
        ++a.count;
        a.bleu += s.bleu;
        a.r1p += s.rouge1.precision;
        a.r1r += s.rouge1.recall;
        a.r1f += s.rouge1.f1;
        a.rlp += s.rougeL.precision;
        a.rlr += s.rougeL.recall;
        a.rlf += s.rougeL.f1;
        if (s.punct_accuracy) {
            ++a.punct_count;
            a.punct += *s.punct_accuracy;
        }
    }

    AggregateReport report;
    for (const auto& [kind, a] : acc) {
        AggregateEntry e;
        e.count = a.count;
        e.punct_count = a.punct_count;
        double n = static_cast<double>(a.count);
        e.mean.bleu = a.bleu / n;
        e.mean.rouge1 = {a.r1p / n, a.r1r / n, a.r1f / n};
        e.mean.rougeL = {a.rlp / n, a.rlr / n, a.rlf / n};
        if (a.punct_count > 0)
            e.mean.punct_accuracy = a.punct / static_cast<double>(a.punct_count);
        report.channels[kind] = e;
    }
    return report;
}

MetricScores score_pair(const std::string& candidate, const std::string& reference) {
    auto cand = metric_tokens(candidate);
    auto ref = metric_tokens(reference);
    MetricScores s;
    s.bleu = bleu(cand, ref);
    s.rouge1 = rouge(cand, ref, RougeVariant::R1);
    s.rougeL = rouge(cand, ref, RougeVariant::RL);
    return s;
}

}  // namespace chatsumm
