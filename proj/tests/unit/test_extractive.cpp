#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chatsumm/error.hpp"
#include "chatsumm/extractive.hpp"

using namespace chatsumm;

namespace {

WordVectorStore axes_store() {
    WordVectorStore s;
    s.dim = 2;
    s.table["apple"] = {1.0, 0.0};
    s.table["apricot"] = {0.99, std::sqrt(1.0 - 0.99 * 0.99)};
    s.table["carrot"] = {0.0, 1.0};
    return s;
}

ChatTranscript support_chat() {
    ChatTranscript t;
    t.id = "chat1";
    t.utterances = {
        {0, "c1", "my internet connection keeps dropping every evening"},
        {1, "a1", "sorry to hear that let me check the line status"},
        {2, "c1", "it started after the storm last week"},
        {3, "a1", "i can see an outage in your area"},
        {4, "c1", "the router blinks red all night"},
        {5, "a1", "a technician visit is already scheduled"},
    };
    return t;
}

RoleMap support_roles() {
    return {{"c1", SpeakerRole::Customer}, {"a1", SpeakerRole::Agent}};
}

}  // namespace

TEST_CASE("identical words are significant without any vectors") {
    WordVectorStore empty;
    Document doc;
    doc.tokens = {"outage", "router"};
    std::string terms = significant_terms(doc, {"router"}, 0.9, empty);
    CHECK(terms == "router");
}

TEST_CASE("significant terms pair document words with keywords by similarity") {
    WordVectorStore store = axes_store();
    Document doc;
    doc.tokens = {"apple", "carrot"};

    std::string close = significant_terms(doc, {"apricot"}, 0.5, store);
    CHECK(close == "apple apricot");

    std::string none = significant_terms(doc, {"carrot"}, 0.9, store);
    // apple/carrot are orthogonal; carrot/carrot matches identically.
    CHECK(none == "carrot");

    // Unknown words never pair.
    std::string unknown = significant_terms(doc, {"zebra"}, 0.1, store);
    CHECK(unknown == "");
}

TEST_CASE("near-duplicate sentences are dropped, first wins") {
    WordVectorStore store = axes_store();
    MeanWordEncoder enc(store);
    std::vector<Sentence> sents = {
        {0, "apple pie"},
        {1, "apricot tart"},
        {2, "carrot soup"},
    };
    auto kept = reduce_unique_sentences(sents, 0.5, enc);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].index == 0);
    CHECK(kept[1].index == 2);

    // A higher threshold keeps everything.
    CHECK(reduce_unique_sentences(sents, 0.999, enc).size() == 3);
}

TEST_CASE("sentences with no vector support are kept") {
    WordVectorStore store = axes_store();
    MeanWordEncoder enc(store);
    std::vector<Sentence> sents = {
        {0, "mystery words only"},
        {1, "more mystery here"},
    };
    // Both encode to zero vectors; cosine of zero vectors is 0, below U.
    CHECK(reduce_unique_sentences(sents, 0.5, enc).size() == 2);
}

TEST_CASE("ranking picks the closest sentences in transcript order") {
    WordVectorStore store = axes_store();
    MeanWordEncoder enc(store);
    std::vector<Sentence> sents = {
        {0, "carrot stew"},
        {1, "apple crumble"},
        {2, "apricot jam"},
    };
    auto top2 = rank_and_extract(sents, "apple", 2, enc);
    REQUIRE(top2.size() == 2);
    // apple (cos 1.0) and apricot (cos 0.99) win; output is position-sorted.
    CHECK(top2[0].index == 1);
    CHECK(top2[1].index == 2);

    auto all = rank_and_extract(sents, "apple", 10, enc);
    CHECK(all.size() == 3);
    CHECK(all[0].index == 0);

    // Ties break toward the earlier sentence.
    std::vector<Sentence> twins = {{0, "apple one"}, {1, "apple two"}};
    auto one = rank_and_extract(twins, "apple", 1, enc);
    REQUIRE(one.size() == 1);
    CHECK(one[0].index == 0);
}

TEST_CASE("empty term string keeps the leading sentences") {
    WordVectorStore store = axes_store();
    MeanWordEncoder enc(store);
    std::vector<Sentence> sents = {{0, "apple a"}, {1, "apple b"}, {2, "apple c"}};
    auto kept = rank_and_extract(sents, "", 2, enc);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].index == 0);
    CHECK(kept[1].index == 1);
}

TEST_CASE("step names stay stable") {
    CHECK(std::string(StepTimings::step_name(1)) == "channel_separation");
    CHECK(std::string(StepTimings::step_name(2)) == "punctuation_strip_restore");
    CHECK(std::string(StepTimings::step_name(3)) == "document_preparation");
    CHECK(std::string(StepTimings::step_name(4)) == "topic_model_selection");
    CHECK(std::string(StepTimings::step_name(5)) == "dominant_topics");
    CHECK(std::string(StepTimings::step_name(6)) == "significant_terms");
    CHECK(std::string(StepTimings::step_name(7)) == "sentence_reduction_ranking");
    CHECK(std::string(StepTimings::step_name(8)) == "summary_restoration");
    CHECK(std::string(StepTimings::step_name(9)) == "metric_evaluation");
    CHECK(std::string(StepTimings::step_name(10)) == "persistence");
}

TEST_CASE("summarize_extractive needs a role map") {
    SummarizerConfig cfg;
    SummarizerResources res;
    try {
        summarize_extractive(support_chat(), cfg, res);
        FAIL("expected Uninitialized");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Uninitialized);
    }
}

TEST_CASE("the full pipeline summarizes both channels") {
    RoleMap roles = support_roles();
    SummarizerConfig cfg;
    cfg.summary_length = 2;
    cfg.number_of_topics = 2;
    StepTimings timings;
    SummarizerResources res;
    res.roles = &roles;
    res.timings = &timings;

    ExtractiveResult r = summarize_extractive(support_chat(), cfg, res);

    CHECK(r.customer_scored);
    CHECK(r.agent_scored);
    CHECK(r.customer.channel_kind == ChannelKind::Customer);
    CHECK(r.agent.channel_kind == ChannelKind::Agent);
    CHECK(r.customer.transcript_id == "chat1");
    CHECK(r.customer.sentences.size() <= 2);
    CHECK(r.agent.sentences.size() <= 2);
    CHECK(!r.customer.punctuated_text.empty());
    CHECK(!r.customer_reference.empty());
    REQUIRE(r.customer_scores.punct_accuracy.has_value());
    CHECK(*r.customer_scores.punct_accuracy >= 0.0);
    CHECK(*r.customer_scores.punct_accuracy <= 100.0);
    CHECK(r.customer_scores.bleu >= 0.0);
    CHECK(r.customer_scores.bleu <= 1.0);

    // Summary sentences come verbatim from the restored channel text.
    std::set<std::string> pool;
    for (const auto& s : split_sentences(r.customer_reference)) pool.insert(s.text);
    for (const auto& s : r.customer.sentences) CHECK(pool.count(s.text) == 1);

    // Every step except persistence ran and was timed.
    for (int step = 1; step <= 9; ++step)
        CHECK(timings.seconds[step - 1].load() >= 0.0);
    CHECK(timings.seconds[0].load() > 0.0);

    // Selected sentences keep distinct positions from the restored text.
    std::set<int> seen;
    for (const auto& s : r.customer.sentences) CHECK(seen.insert(s.index).second);
}

TEST_CASE("one-sided conversations leave the other channel unscored") {
    ChatTranscript t;
    t.id = "solo";
    t.utterances = {{0, "c1", "is anyone there"}};
    RoleMap roles = support_roles();
    SummarizerConfig cfg;
    SummarizerResources res;
    res.roles = &roles;

    ExtractiveResult r = summarize_extractive(t, cfg, res);
    CHECK(r.customer_scored);
    CHECK(!r.agent_scored);
    CHECK(r.agent.sentences.empty());
    CHECK(r.agent_reference.empty());
}

TEST_CASE("local term extraction sticks to document words") {
    RoleMap roles = support_roles();
    SummarizerConfig cfg;
    cfg.term_extraction_method = "local";
    SummarizerResources res;
    res.roles = &roles;

    ExtractiveResult r = summarize_extractive(support_chat(), cfg, res);
    PreprocessConfig pre;
    ChatTranscript t = support_chat();
    auto [cust, agent] = separate_channels(t, roles);
    Document doc = prepare_document_text("chat1", transcript_text(cust), pre);
    std::set<std::string> vocab(doc.tokens.begin(), doc.tokens.end());
    std::istringstream terms(r.customer.term_string);
    std::string w;
    while (terms >> w) CHECK(vocab.count(w) == 1);
}

namespace {

class ThrowingPredictor : public Predictor {
public:
    std::vector<std::vector<PunctLabel>> predict(const std::vector<Segment>&,
                                                 const std::vector<std::string>&) override {
        throw Error(ErrorCode::PredictorFailure, "wired to fail");
    }
};

}  // namespace

TEST_CASE("pipeline errors carry the failing step") {
    RoleMap roles = support_roles();
    SummarizerConfig cfg;
    ThrowingPredictor bad;
    SummarizerResources res;
    res.roles = &roles;
    res.predictor = &bad;
    try {
        summarize_extractive(support_chat(), cfg, res);
        FAIL("expected step-tagged error");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("step 2") != std::string::npos);
        CHECK(msg.find("punctuation_strip_restore") != std::string::npos);
    }
}

TEST_CASE("a preloaded model and persist hook are honored") {
    RoleMap roles = support_roles();
    ChatTranscript t = support_chat();

    PreprocessConfig pre;
    auto [cust, agent] = separate_channels(t, roles);
    std::vector<Document> docs = {
        prepare_document_text("c", transcript_text(cust), pre),
        prepare_document_text("a", transcript_text(agent), pre),
    };
    Corpus corpus = build_corpus(docs);
    TopicModel model = fit_lda(corpus, 2, 0.1, 0.01, 50, 3);

    SummarizerConfig cfg;
    int persisted = 0;
    SummarizerResources res;
    res.roles = &roles;
    res.model = &model;
    res.persist = [&](const ExtractiveResult&) { ++persisted; };

    ExtractiveResult r = summarize_extractive(t, cfg, res);
    CHECK(persisted == 1);
    CHECK(r.customer_scored);
}
