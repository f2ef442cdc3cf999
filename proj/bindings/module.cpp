#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "chatsumm/arms.hpp"
#include "chatsumm/bandit.hpp"
#include "chatsumm/embeddings.hpp"
#include "chatsumm/error.hpp"
#include "chatsumm/extractive.hpp"
#include "chatsumm/metrics.hpp"
#include "chatsumm/preprocess.hpp"
#include "chatsumm/punctuation.hpp"
#include "chatsumm/topics.hpp"
#include "chatsumm/transcript.hpp"

namespace py = pybind11;
using namespace chatsumm;

namespace {

RougeVariant variant_from(const std::string& name) {
    if (name == "rouge1" || name == "rouge_1" || name == "r1") return RougeVariant::R1;
    if (name == "rougeL" || name == "rouge_l" || name == "rl") return RougeVariant::RL;
    throw Error(ErrorCode::ConfigError, "unknown rouge variant '" + name + "'");
}

PunctMode mode_from(const std::string& name) {
    if (name == "full") return PunctMode::Full;
    if (name == "periods") return PunctMode::PeriodsOnly;
    throw Error(ErrorCode::ConfigError, "unknown punctuation mode '" + name + "'");
}

PunctLabel label_from_checked(const std::string& name) {
    auto l = punct_label_from(name);
    if (!l) throw Error(ErrorCode::ConfigError, "unknown label '" + name + "'");
    return *l;
}

std::vector<PunctLabel> labels_from(const std::vector<std::string>& names) {
    std::vector<PunctLabel> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(label_from_checked(n));
    return out;
}

std::vector<std::string> label_names(const std::vector<PunctLabel>& labels) {
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (PunctLabel l : labels) out.push_back(punct_label_name(l));
    return out;
}

Corpus corpus_from_docs(const std::vector<std::vector<std::string>>& docs) {
    std::vector<Document> ds;
    ds.reserve(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        Document d;
        d.transcript_id = "doc" + std::to_string(i);
        d.tokens = docs[i];
        ds.push_back(std::move(d));
    }
    return build_corpus(ds);
}

py::dict rouge_dict(const RougeScore& r) {
    py::dict d;
    d["precision"] = r.precision;
    d["recall"] = r.recall;
    d["f1"] = r.f1;
    return d;
}

py::dict scores_dict(const MetricScores& s) {
    py::dict d;
    d["bleu"] = s.bleu;
    d["rouge1"] = rouge_dict(s.rouge1);
    d["rougeL"] = rouge_dict(s.rougeL);
    if (s.punct_accuracy) d["punct_accuracy"] = *s.punct_accuracy;
    else d["punct_accuracy"] = py::none();
    return d;
}

py::dict summary_dict(const Summary& s, const MetricScores& scores, bool scored) {
    py::dict d;
    d["channel"] = channel_kind_name(s.channel_kind);
    py::list sentences;
    for (const auto& st : s.sentences) sentences.append(st.text);
    d["sentences"] = sentences;
    d["term_string"] = s.term_string;
    d["punctuated_text"] = s.punctuated_text;
    d["scores"] = scored ? py::object(scores_dict(scores)) : py::object(py::none());
    return d;
}

}  // namespace

PYBIND11_MODULE(_chatsumm, m) {
    m.doc() = "extractive chat summarization core";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("metric_tokens", &metric_tokens, py::arg("text"));
    m.def(
        "bleu",
        [](const std::string& candidate, const std::string& reference) {
            return bleu(metric_tokens(candidate), metric_tokens(reference));
        },
        py::arg("candidate"), py::arg("reference"));
    m.def(
        "rouge",
        [](const std::string& candidate, const std::string& reference,
           const std::string& variant) {
            return rouge_dict(
                rouge(metric_tokens(candidate), metric_tokens(reference),
                      variant_from(variant)));
        },
        py::arg("candidate"), py::arg("reference"), py::arg("variant") = "rouge1");
    m.def(
        "punct_accuracy",
        [](const std::vector<std::string>& reference, const std::vector<std::string>& predicted,
           const std::string& mode) {
            return punct_accuracy(labels_from(reference), labels_from(predicted),
                                  mode_from(mode));
        },
        py::arg("reference"), py::arg("predicted"), py::arg("mode") = "full");
    m.def(
        "score_pair",
        [](const std::string& candidate, const std::string& reference) {
            return scores_dict(score_pair(candidate, reference));
        },
        py::arg("candidate"), py::arg("reference"));

    m.def(
        "strip_punctuation",
        [](const std::string& text) {
            auto [clean, labels] = strip_punctuation(text);
            return py::make_tuple(clean, label_names(labels));
        },
        py::arg("text"));
    m.def(
        "restore",
        [](const std::string& text, const std::string& mode, int segment_size, int max_run) {
            RuleOptions opts;
            opts.max_run = max_run;
            RulePredictor predictor(opts);
            const PunctuatedText out = restore(text, mode_from(mode), predictor, segment_size);
            py::dict d;
            d["text"] = out.text;
            d["labels"] = label_names(out.labels);
            return d;
        },
        py::arg("text"), py::arg("mode") = "full", py::arg("segment_size") = 512,
        py::arg("max_run") = 25);
    m.def(
        "restore_with_labels",
        [](const std::string& clean_text, const std::vector<std::string>& labels,
           const std::string& mode, int segment_size) {
            OraclePredictor predictor(labels_from(labels));
            const PunctuatedText out =
                restore(clean_text, mode_from(mode), predictor, segment_size);
            py::dict d;
            d["text"] = out.text;
            d["labels"] = label_names(out.labels);
            return d;
        },
        py::arg("text"), py::arg("labels"), py::arg("mode") = "full",
        py::arg("segment_size") = 512);

    m.def("cosine", &cosine, py::arg("u"), py::arg("v"));
    m.def(
        "split_sentences",
        [](const std::string& text) {
            std::vector<std::string> out;
            for (const auto& s : split_sentences(text)) out.push_back(s.text);
            return out;
        },
        py::arg("text"));
    m.def(
        "prepare_document",
        [](const std::string& text) {
            PreprocessConfig cfg;
            return prepare_document_text("doc", text, cfg).tokens;
        },
        py::arg("text"));

    py::class_<TopicModel>(m, "TopicModel")
        .def_property_readonly(
            "kind", [](const TopicModel& t) { return topic_model_kind_name(t.kind); })
        .def_readonly("num_topics", &TopicModel::num_topics)
        .def_readonly("vocabulary", &TopicModel::vocabulary)
        .def_readonly("rank_deficient", &TopicModel::rank_deficient)
        .def(
            "keywords",
            [](const TopicModel& t, int topic, int top_m) {
                return topic_keywords(t, topic, top_m);
            },
            py::arg("topic"), py::arg("top_m") = 10)
        .def("save", [](const TopicModel& t, const std::string& path) {
            save_topic_model(t, path);
        });

    m.def("load_topic_model", &load_topic_model, py::arg("path"));
    m.def(
        "fit_lda",
        [](const std::vector<std::vector<std::string>>& docs, int k, double alpha, double beta,
           int iters, std::uint64_t seed) {
            return fit_lda(corpus_from_docs(docs), k, alpha, beta, iters, seed);
        },
        py::arg("docs"), py::arg("k"), py::arg("alpha") = 0.1, py::arg("beta") = 0.01,
        py::arg("iters") = 200, py::arg("seed") = 0);
    m.def(
        "fit_lsi",
        [](const std::vector<std::vector<std::string>>& docs, int k) {
            return fit_lsi(corpus_from_docs(docs), k);
        },
        py::arg("docs"), py::arg("k"));
    m.def(
        "coherence",
        [](const TopicModel& model, const std::vector<std::vector<std::string>>& docs,
           int top_n) {
            // Rebuild the corpus in the model's vocabulary so ids line up.
            Corpus c;
            c.id_to_token = model.vocabulary;
            for (size_t i = 0; i < model.vocabulary.size(); ++i)
                c.vocabulary[model.vocabulary[i]] = static_cast<int>(i);
            c.doc_count = static_cast<int>(docs.size());
            for (const auto& tokens : docs) {
                Document d;
                d.tokens = tokens;
                c.bows.push_back(model_bow(model, d));
            }
            const CoherenceReport rep = coherence(model, c, top_n);
            py::dict d;
            d["score"] = rep.score;
            d["per_topic"] = rep.per_topic;
            return d;
        },
        py::arg("model"), py::arg("docs"), py::arg("top_n") = 10);
    m.def(
        "select_optimal_model",
        [](const std::vector<std::vector<std::string>>& docs, int number_of_topics,
           const std::string& kind, std::uint64_t seed, int top_n) {
            SummarizerConfig cfg;
            cfg.number_of_topics = number_of_topics;
            if (!kind.empty()) {
                auto k = topic_model_kind_from(kind);
                if (!k) throw Error(ErrorCode::ConfigError, "unknown kind '" + kind + "'");
                cfg.topic_model_type = *k;
            }
            auto [model, rep] = select_optimal_model(corpus_from_docs(docs), cfg, seed, top_n);
            py::dict d;
            d["kind"] = topic_model_kind_name(model.kind);
            d["num_topics"] = model.num_topics;
            d["coherence"] = rep.score;
            return py::make_tuple(std::move(model), d);
        },
        py::arg("docs"), py::arg("number_of_topics") = 5, py::arg("kind") = "",
        py::arg("seed") = 0, py::arg("top_n") = 10);
    m.def(
        "dominant_topics",
        [](const TopicModel& model, const std::vector<std::string>& tokens, int n, int top_m,
           std::uint64_t seed) {
            Document d;
            d.transcript_id = "doc";
            d.tokens = tokens;
            const DominantTopics dt =
                dominant_topics(model, "doc", model_bow(model, d), n, top_m, seed);
            py::list out;
            for (const auto& e : dt.entries) {
                py::dict ed;
                ed["topic_id"] = e.topic_id;
                ed["weight"] = e.weight;
                ed["keywords"] = e.keywords;
                out.append(ed);
            }
            return out;
        },
        py::arg("model"), py::arg("tokens"), py::arg("n") = 1, py::arg("top_m") = 10,
        py::arg("seed") = 0);

    m.def(
        "summarize_text",
        [](const std::vector<std::pair<std::string, std::string>>& utterances,
           const std::map<std::string, std::string>& roles, int summary_length,
           const std::string& vectors_path, std::uint64_t seed) {
            ChatTranscript t;
            t.id = "session";
            int idx = 0;
            for (const auto& [speaker, text] : utterances) {
                Utterance u;
                u.index = idx++;
                u.speaker_id = speaker;
                u.text = text;
                t.utterances.push_back(std::move(u));
            }
            RoleMap role_map;
            for (const auto& [speaker, role] : roles) {
                if (role == "customer") role_map[speaker] = SpeakerRole::Customer;
                else if (role == "agent") role_map[speaker] = SpeakerRole::Agent;
                else
                    throw Error(ErrorCode::ConfigError,
                                "role must be customer or agent, got '" + role + "'");
            }
            WordVectorStore store;
            if (!vectors_path.empty()) store = load_word_vectors(vectors_path);

            SummarizerConfig cfg;
            cfg.summary_length = summary_length;
            SummarizerResources res;
            res.roles = &role_map;
            res.store = vectors_path.empty() ? nullptr : &store;
            res.seed = seed;
            const ExtractiveResult result = summarize_extractive(t, cfg, res);
            py::dict d;
            d["customer"] = summary_dict(result.customer, result.customer_scores,
                                         result.customer_scored);
            d["agent"] = summary_dict(result.agent, result.agent_scores,
                                      result.agent_scored);
            return d;
        },
        py::arg("utterances"), py::arg("roles"), py::arg("summary_length") = 5,
        py::arg("vectors_path") = "", py::arg("seed") = 0);

    m.def(
        "run_simulated_bandit",
        [](const std::string& policy, const std::vector<double>& arm_means, int rounds,
           std::uint64_t seed, double noise_sd) {
            auto kind = policy_kind_from(policy);
            if (!kind) throw Error(ErrorCode::ConfigError, "unknown policy '" + policy + "'");
            if (arm_means.empty())
                throw Error(ErrorCode::EmptyInput, "arm_means must be non-empty");
            if (rounds < 1) throw Error(ErrorCode::EmptyInput, "rounds must be >= 1");

            std::vector<std::unique_ptr<Arm>> owned;
            std::vector<Arm*> arms;
            for (size_t i = 0; i < arm_means.size(); ++i) {
                SimulatedArmSpec spec;
                spec.base_mean = arm_means[i];
                spec.noise_sd = noise_sd;
                spec.rng_seed = seed + i;
                owned.push_back(simulated_arm(static_cast<int>(i),
                                              "sim" + std::to_string(i), spec, true));
                arms.push_back(owned.back().get());
            }
            std::vector<BanditPair> pairs(static_cast<size_t>(rounds));
            for (int i = 0; i < rounds; ++i) {
                pairs[i].transcript.id = "r" + std::to_string(i);
                Utterance u;
                u.index = 0;
                u.speaker_id = "u0";
                u.text = "turn " + std::to_string(i);
                pairs[i].transcript.utterances.push_back(std::move(u));
                pairs[i].full_len = pairs[i].transcript.word_count();
            }
            PolicyConfig cfg;
            cfg.kind = *kind;
            cfg.num_arms = static_cast<int>(arms.size());
            cfg.rng_seed = seed;
            PolicyState ps(cfg);
            BanditOptions opts;
            opts.run_seed = seed;
            const BanditReport rep =
                run_bandit(ps, arms, pairs, RewardMetric::ROUGE_L, opts);
            py::dict d;
            d["best_arm"] = rep.best_arm;
            d["ams"] = rep.ams;
            d["pulls"] = rep.n_arm;
            d["q"] = rep.q;
            return d;
        },
        py::arg("policy"), py::arg("arm_means"), py::arg("rounds") = 500,
        py::arg("seed") = 0, py::arg("noise_sd") = 0.05);

    m.attr("__version__") = "0.1.0";
}
