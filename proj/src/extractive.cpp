#include "chatsumm/extractive.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "chatsumm/error.hpp"
#include "chatsumm/preprocess.hpp"

namespace chatsumm {

const char* StepTimings::step_name(int step) {
    static const char* names[] = {
        "channel_separation",     "punctuation_strip_restore",
        "document_preparation",   "topic_model_selection",
        "dominant_topics",        "significant_terms",
        "sentence_reduction_ranking", "summary_restoration",
        "metric_evaluation",      "persistence",
    };
    return (step >= 1 && step <= 10) ? names[step - 1] : "unknown";
}

namespace {

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// Runs one pipeline step, records its wall time, and tags failures with the
// step they came from.
template <typename Fn>
auto run_step(StepTimings* timings, int step, Fn&& fn) -> decltype(fn()) {
    const double t0 = now_seconds();
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            if (timings) timings->add(step, now_seconds() - t0);
        } else {
            auto out = fn();
            if (timings) timings->add(step, now_seconds() - t0);
            return out;
        }
    } catch (const Error& e) {
        if (timings) timings->add(step, now_seconds() - t0);
        throw Error(e.code(), std::string("step ") + std::to_string(step) + " (" +
                                  StepTimings::step_name(step) + ") failed: " + e.what());
    }
}

const WordVectorStore& store_or_empty(const SummarizerResources& res) {
    static const WordVectorStore empty;
    return res.store ? *res.store : empty;
}

struct ChannelArtifacts {
    Summary summary;
    std::string restored_text;
    std::vector<PunctLabel> ref_labels;
    std::vector<PunctLabel> pred_labels;
    bool has_text = false;
};

std::vector<std::string> collect_keywords(const DominantTopics& dt) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& entry : dt.entries)
        for (const auto& kw : entry.keywords)
            if (seen.insert(kw).second) out.push_back(kw);
    return out;
}

std::vector<std::string> frequent_doc_tokens(const Document& doc, int limit) {
    std::map<std::string, int> counts;
    std::vector<std::string> order;
    for (const auto& tok : doc.tokens) {
        if (counts[tok]++ == 0) order.push_back(tok);
    }
    std::stable_sort(order.begin(), order.end(), [&](const std::string& a,
                                                     const std::string& b) {
        return counts[a] > counts[b];
    });
    if (static_cast<int>(order.size()) > limit) order.resize(limit);
    return order;
}

ChannelArtifacts channel_steps(const ChatTranscript& channel, const SummarizerConfig& cfg,
                               SummarizerResources& res) {
    ChannelArtifacts art;
    art.summary.transcript_id = channel.id;
    art.summary.channel_kind = channel.channel_kind;

    const std::string raw = transcript_text(channel);
    if (raw.empty()) return art;

    // The fallback predictor knows where each utterance ends.
    RuleOptions rule_opts;
    {
        int cum = 0;
        for (const auto& u : channel.utterances) {
            const int n = static_cast<int>(strip_punctuation(u.text).second.size());
            if (n > 0) {
                cum += n;
                rule_opts.turn_boundaries.push_back(cum - 1);
            }
        }
    }
    RulePredictor default_predictor(rule_opts);
    Predictor& predictor = res.predictor ? *res.predictor : default_predictor;
    const WordVectorStore& store = store_or_empty(res);
    MeanWordEncoder default_encoder(store);
    SentenceEncoder& encoder = res.encoder ? *res.encoder : default_encoder;
    const PreprocessConfig default_pre;
    const PreprocessConfig& pre = res.preprocess ? *res.preprocess : default_pre;

    std::vector<Sentence> sentences = run_step(res.timings, 2, [&] {
        auto [clean, original_labels] = strip_punctuation(raw);
        (void)original_labels;
        if (clean.empty()) return std::vector<Sentence>{};
        PunctuatedText restored =
            restore(clean, PunctMode::Full, predictor, cfg.punct_batch_size);
        art.restored_text = std::move(restored.text);
        return split_sentences(art.restored_text);
    });
    if (art.restored_text.empty()) return art;
    art.has_text = true;

    Document doc = run_step(res.timings, 3, [&] {
        return prepare_document_text(channel.id, raw, pre);
    });

    const TopicModel* model = res.model;
    TopicModel local_model;
    run_step(res.timings, 4, [&] {
        if (model) return;
        const Corpus* corpus = res.corpus;
        Corpus local_corpus;
        if (!corpus) {
            if (doc.tokens.empty()) return;  // nothing to model
            local_corpus = build_corpus({doc});
            corpus = &local_corpus;
        }
        local_model = select_optimal_model(*corpus, cfg, res.seed).first;
        model = &local_model;
    });

    std::vector<std::string> keywords = run_step(res.timings, 5, [&] {
        std::vector<std::string> out;
        if (model) {
            DominantTopics dt =
                dominant_topics(*model, channel.id, model_bow(*model, doc),
                                cfg.number_of_dominant_topics, cfg.keywords_per_topic,
                                res.seed);
            out = collect_keywords(dt);
        }
        return out;
    });

    art.summary.term_string = run_step(res.timings, 6, [&] {
        if (cfg.term_extraction_method == "local") {
            keywords = frequent_doc_tokens(
                doc, cfg.number_of_dominant_topics * cfg.keywords_per_topic);
        }
        return significant_terms(doc, keywords, cfg.word_similarity_threshold, store);
    });

    art.summary.sentences = run_step(res.timings, 7, [&] {
        std::vector<Sentence> reduced =
            reduce_unique_sentences(sentences, cfg.uniqueness_threshold, encoder);
        return rank_and_extract(reduced, art.summary.term_string, cfg.summary_length,
                                encoder);
    });

    run_step(res.timings, 8, [&] {
        std::string joined;
        for (const auto& s : art.summary.sentences) {
            if (!joined.empty()) joined += ' ';
            joined += s.text;
        }
        auto [clean, ref] = strip_punctuation(joined);
        art.ref_labels = std::move(ref);
        if (clean.empty()) return;
        PunctuatedText restored =
            restore(clean, PunctMode::Full, predictor, cfg.punct_batch_size);
        art.summary.punctuated_text = std::move(restored.text);
        art.pred_labels = std::move(restored.labels);
    });

    return art;
}

}  // namespace

std::string significant_terms(const Document& doc, const std::vector<std::string>& dom_kwds,
                              double W, const WordVectorStore& store) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string& w) {
        if (seen.insert(w).second) out.push_back(w);
    };
    for (const auto& tok : doc.tokens) {
        const std::vector<double>* tv = nullptr;
        bool tv_looked = false;
        for (const auto& kw : dom_kwds) {
            double sim;
            if (tok == kw) {
                sim = 1.0;
            } else {
                if (!tv_looked) {
                    tv = store.find(tok);
                    tv_looked = true;
                }
                if (!tv) continue;
                const std::vector<double>* kv = store.find(kw);
                if (!kv) continue;
                sim = cosine(*tv, *kv);
            }
            if (sim >= W) {
                add(tok);
                add(kw);
            }
        }
    }
    std::string joined;
    for (const auto& w : out) {
        if (!joined.empty()) joined += ' ';
        joined += w;
    }
    return joined;
}

std::vector<Sentence> reduce_unique_sentences(const std::vector<Sentence>& sentences,
                                              double U, SentenceEncoder& encoder) {
    std::vector<Sentence> kept;
    std::vector<SentenceVector> kept_vecs;
    for (const auto& s : sentences) {
        SentenceVector v = encoder.encode(s.text);
        bool duplicate = false;
        for (const auto& kv : kept_vecs) {
            if (v.values.size() != kv.values.size()) continue;
            if (cosine(v.values, kv.values) > U) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            kept.push_back(s);
            kept_vecs.push_back(std::move(v));
        }
    }
    return kept;
}

std::vector<Sentence> rank_and_extract(const std::vector<Sentence>& sentences,
                                       const std::string& term_string, int l,
                                       SentenceEncoder& encoder) {
    if (l < 1 || sentences.empty()) return {};
    SentenceVector terms = encoder.encode(term_string);

    std::vector<std::pair<double, int>> scored;  // (score, position)
    scored.reserve(sentences.size());
    for (size_t i = 0; i < sentences.size(); ++i) {
        SentenceVector v = encoder.encode(sentences[i].text);
        double score = 0.0;
        if (!terms.values.empty() && terms.values.size() == v.values.size())
            score = cosine(terms.values, v.values);
        scored.emplace_back(score, static_cast<int>(i));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    if (static_cast<int>(scored.size()) > l) scored.resize(l);
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<Sentence> out;
    out.reserve(scored.size());
    for (const auto& [score, pos] : scored) out.push_back(sentences[pos]);
    return out;
}

Summary summarize_channel(const ChatTranscript& channel, const SummarizerConfig& cfg,
                          SummarizerResources& res) {
    return channel_steps(channel, cfg, res).summary;
}

ExtractiveResult summarize_extractive(const ChatTranscript& t, const SummarizerConfig& cfg,
                                      SummarizerResources& res) {
    if (!res.roles)
        throw Error(ErrorCode::Uninitialized, "role map is required for channel separation");

    auto [customer, agent] = run_step(res.timings, 1, [&] {
        return separate_channels(t, *res.roles);
    });

    ChannelArtifacts cust = channel_steps(customer, cfg, res);
    ChannelArtifacts agnt = channel_steps(agent, cfg, res);

    ExtractiveResult result;
    result.customer = std::move(cust.summary);
    result.agent = std::move(agnt.summary);
    result.customer_reference = cust.restored_text;
    result.agent_reference = agnt.restored_text;

    run_step(res.timings, 9, [&] {
        auto score_channel = [](const Summary& summary, const ChannelArtifacts& art,
                                const std::string& reference, MetricScores& scores,
                                bool& scored_flag) {
            scored_flag = art.has_text && !summary.sentences.empty();
            if (!scored_flag) return;
            scores = score_pair(summary.punctuated_text, reference);
            scores.punct_accuracy =
                punct_accuracy(art.ref_labels, art.pred_labels, PunctMode::PeriodsOnly);
        };
        score_channel(result.customer, cust, result.customer_reference,
                      result.customer_scores, result.customer_scored);
        score_channel(result.agent, agnt, result.agent_reference, result.agent_scores,
                      result.agent_scored);
    });

    if (res.persist) {
        run_step(res.timings, 10, [&] { res.persist(result); });
    }
    return result;
}

}  // namespace chatsumm
