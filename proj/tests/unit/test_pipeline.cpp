#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "chatsumm/error.hpp"
#include "chatsumm/pipeline.hpp"

using namespace chatsumm;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("chatsumm_pipe_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SummaryRecord make_record(const std::string& id, const std::string& hash) {
    SummaryRecord r;
    r.transcript_id = id;
    r.config_hash = hash;
    r.seed = 3;
    r.ts = "2024-05-01T00:00:00Z";
    r.result.customer.transcript_id = id;
    r.result.customer.channel_kind = ChannelKind::Customer;
    r.result.customer.sentences = {{0, "We looked into it."}, {2, "All set now."}};
    r.result.customer.term_string = "looked set";
    r.result.customer.punctuated_text = "We looked into it. All set now.";
    r.result.customer_reference = "We looked into it. Hmm. All set now.";
    r.result.customer_scored = true;
    r.result.customer_scores.bleu = 0.5;
    r.result.customer_scores.rouge1 = {0.7, 0.6, 0.65};
    r.result.customer_scores.rougeL = {0.7, 0.6, 0.65};
    r.result.customer_scores.punct_accuracy = 90.0;
    r.result.agent_scored = false;
    return r;
}

std::vector<ChatTranscript> small_batch(int n) {
    std::vector<ChatTranscript> ts;
    for (int i = 0; i < n; ++i) {
        ChatTranscript t;
        t.id = "t" + std::to_string(i);
        t.utterances = {
            {0, "c1", "my connection drops every evening around eight"},
            {1, "a1", "thanks for the details let me check the area status"},
            {2, "c1", "the router light turns red before it fails"},
            {3, "a1", "an engineer visit is booked for tomorrow morning"},
        };
        ts.push_back(std::move(t));
    }
    return ts;
}

RoleMap batch_roles() {
    return {{"c1", SpeakerRole::Customer}, {"a1", SpeakerRole::Agent}};
}

}  // namespace

TEST_CASE("run config loads from json") {
    fs::path dir = scratch_dir("cfg");
    fs::path cfg_path = dir / "run.json";
    std::ofstream(cfg_path) << R"({
        "topic_model_type": "lsi",
        "number_of_topics": 7,
        "number_of_dominant_topics": 2,
        "punct_batch_size": 256,
        "term_extraction_method": "local",
        "summary_length": 3,
        "summary_table_name": "custom_table",
        "word_similarity_threshold": 0.6,
        "uniqueness_threshold": 0.4,
        "rouge_variant": "rougeL",
        "output_dir": "outs",
        "seed": 9,
        "workers": 2
    })";

    RunConfig rc = load_run_config(cfg_path.string());
    CHECK(rc.summarizer.topic_model_type == TopicModelKind::LSI);
    CHECK(rc.summarizer.number_of_topics == 7);
    CHECK(rc.summarizer.number_of_dominant_topics == 2);
    CHECK(rc.summarizer.punct_batch_size == 256);
    CHECK(rc.summarizer.term_extraction_method == "local");
    CHECK(rc.summarizer.summary_length == 3);
    CHECK(rc.summarizer.summary_table_name == "custom_table");
    CHECK(rc.summarizer.word_similarity_threshold == doctest::Approx(0.6));
    CHECK(rc.summarizer.uniqueness_threshold == doctest::Approx(0.4));
    CHECK(rc.rouge_variant == RougeVariant::RL);
    CHECK(rc.output_dir == "outs");
    CHECK(rc.seed == 9);
    CHECK(rc.workers == 2);
    fs::remove_all(dir);
}

TEST_CASE("run config rejects junk") {
    fs::path dir = scratch_dir("badcfg");

    fs::path bad_json = dir / "bad.json";
    std::ofstream(bad_json) << "{nope";
    CHECK_THROWS_AS(load_run_config(bad_json.string()), Error);

    fs::path bad_kind = dir / "kind.json";
    std::ofstream(bad_kind) << R"({"topic_model_type": "plsa"})";
    CHECK_THROWS_AS(load_run_config(bad_kind.string()), Error);

    fs::path bad_method = dir / "method.json";
    std::ofstream(bad_method) << R"({"term_extraction_method": "psychic"})";
    try {
        load_run_config(bad_method.string());
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
    }

    CHECK_THROWS_AS(load_run_config((dir / "missing.json").string()), Error);
    fs::remove_all(dir);
}

TEST_CASE("environment variables override the config") {
    RunConfig rc;
    setenv("CHATSUMM_SEED", "42", 1);
    setenv("CHATSUMM_OUTPUT_DIR", "/tmp/elsewhere", 1);
    setenv("CHATSUMM_SUMMARY_TABLE", "env_table", 1);
    apply_env_overrides(rc);
    CHECK(rc.seed == 42);
    CHECK(rc.output_dir == "/tmp/elsewhere");
    CHECK(rc.summarizer.summary_table_name == "env_table");

    setenv("CHATSUMM_WORKERS", "not-a-number", 1);
    CHECK_THROWS_AS(apply_env_overrides(rc), Error);

    unsetenv("CHATSUMM_SEED");
    unsetenv("CHATSUMM_OUTPUT_DIR");
    unsetenv("CHATSUMM_SUMMARY_TABLE");
    unsetenv("CHATSUMM_WORKERS");
}

TEST_CASE("config hash tracks behavior, not plumbing") {
    RunConfig a;
    std::string base = config_hash(a);
    CHECK(base.size() == 16);
    CHECK(base.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(config_hash(a) == base);

    RunConfig moved = a;
    moved.output_dir = "/somewhere/else";
    moved.workers = 16;
    CHECK(config_hash(moved) == base);

    RunConfig different = a;
    different.summarizer.summary_length = 9;
    CHECK(config_hash(different) != base);

    RunConfig reseeded = a;
    reseeded.seed = 1234;
    CHECK(config_hash(reseeded) != base);
}

TEST_CASE("summary records round trip through json lines") {
    SummaryRecord r = make_record("t9", "deadbeef00000000");
    std::string line = summary_record_json(r);
    CHECK(line.find('\n') == std::string::npos);

    auto j = nlohmann::json::parse(line);
    CHECK(j["schema_version"] == 1);
    CHECK(j["transcript_id"] == "t9");
    CHECK(j["customer"]["scored"] == true);
    CHECK(j["agent"]["scored"] == false);

    SummaryRecord back = parse_summary_record(line);
    CHECK(back.transcript_id == "t9");
    CHECK(back.config_hash == "deadbeef00000000");
    CHECK(back.seed == 3);
    CHECK(back.ts == "2024-05-01T00:00:00Z");
    CHECK(back.result.customer_scored);
    CHECK(!back.result.agent_scored);
    REQUIRE(back.result.customer.sentences.size() == 2);
    CHECK(back.result.customer.sentences[0].text == "We looked into it.");
    CHECK(back.result.customer.sentences[1].index == 2);
    CHECK(back.result.customer.term_string == "looked set");
    CHECK(back.result.customer_reference == r.result.customer_reference);
    CHECK(back.result.customer_scores.bleu == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(back.result.customer_scores.punct_accuracy.has_value());
    CHECK(*back.result.customer_scores.punct_accuracy == doctest::Approx(90.0));

    CHECK_THROWS_AS(parse_summary_record("{broken"), Error);
}

TEST_CASE("persistence dedups on transcript and config") {
    fs::path dir = scratch_dir("persist");
    std::vector<SummaryRecord> records = {
        make_record("t1", "aaaa000000000000"),
        make_record("t2", "aaaa000000000000"),
    };

    PersistStats first = persist_summaries(records, "results", dir.string());
    CHECK(first.written == 2);
    CHECK(first.skipped == 0);
    CHECK(fs::exists(dir / "results"));

    PersistStats second = persist_summaries(records, "results", dir.string());
    CHECK(second.written == 0);
    CHECK(second.skipped == 2);

    // A new config hash for an existing transcript id writes a fresh row.
    std::vector<SummaryRecord> rehashed = {make_record("t1", "bbbb000000000000")};
    PersistStats third = persist_summaries(rehashed, "results", dir.string());
    CHECK(third.written == 1);

    auto loaded = load_summaries((dir / "results").string());
    CHECK(loaded.size() == 3);
    CHECK(loaded[0].transcript_id == "t1");
    CHECK(loaded[2].config_hash == "bbbb000000000000");

    // Dedup can be disabled outright.
    PersistStats forced = persist_summaries(rehashed, "results", dir.string(), false);
    CHECK(forced.written == 1);
    fs::remove_all(dir);
}

TEST_CASE("loading summaries pinpoints broken lines") {
    fs::path dir = scratch_dir("loadbad");
    fs::path file = dir / "rows";
    std::ofstream(file) << summary_record_json(make_record("t1", "cccc000000000000")) << "\n"
                        << "garbage line\n";
    try {
        load_summaries(file.string());
        FAIL("expected MalformedRecord");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedRecord);
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("phase one batch writes scored records") {
    fs::path dir = scratch_dir("batch");
    RunConfig rc;
    rc.output_dir = dir.string();
    rc.seed = 5;
    rc.workers = 2;
    rc.summarizer.number_of_topics = 45;  // keeps the selection grid small

    BatchResult res = run_phase1_batch(small_batch(3), batch_roles(), rc);
    CHECK(res.persisted.written == 3);
    CHECK(res.persisted.skipped == 0);
    CHECK(res.config_hash == config_hash(rc));
    CHECK(res.total_seconds > 0.0);
    REQUIRE(res.step_seconds.size() == 10);
    CHECK(res.step_seconds[0].first == "channel_separation");
    CHECK(res.step_seconds[9].first == "persistence");
    CHECK(res.aggregate.channels.count(ChannelKind::Customer) == 1);
    CHECK(res.aggregate.channels.at(ChannelKind::Customer).count == 3);

    // Same batch again: everything dedups.
    BatchResult again = run_phase1_batch(small_batch(3), batch_roles(), rc);
    CHECK(again.persisted.written == 0);
    CHECK(again.persisted.skipped == 3);
    fs::remove_all(dir);
}

TEST_CASE("identical configs give byte-identical outputs modulo timestamps") {
    fs::path dir1 = scratch_dir("repro1");
    fs::path dir2 = scratch_dir("repro2");

    RunConfig rc;
    rc.seed = 11;
    rc.summarizer.number_of_topics = 45;
    rc.output_dir = dir1.string();
    run_phase1_batch(small_batch(2), batch_roles(), rc);
    rc.output_dir = dir2.string();
    run_phase1_batch(small_batch(2), batch_roles(), rc);

    auto strip_ts = [](std::string s) {
        for (size_t pos = 0; (pos = s.find("\"ts\":\"", pos)) != std::string::npos;) {
            size_t start = pos + 6;
            size_t end = s.find('"', start);
            s.erase(start, end - start);
            pos = start;
        }
        return s;
    };
    std::string a = strip_ts(slurp(dir1 / "summary_results"));
    std::string b = strip_ts(slurp(dir2 / "summary_results"));
    CHECK(!a.empty());
    CHECK(a == b);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("reports pivot channels into columns") {
    fs::path dir = scratch_dir("report");

    AggregateReport agg;
    AggregateEntry cust;
    cust.count = 4;
    cust.punct_count = 4;
    cust.mean.bleu = 0.25;
    cust.mean.rouge1.f1 = 0.5;
    cust.mean.rougeL.f1 = 0.45;
    cust.mean.punct_accuracy = 88.0;
    agg.channels[ChannelKind::Customer] = cust;

    BanditReport br;
    br.kind = PolicyKind::LogisticUCB;
    br.q = {0.2, 0.7};
    br.n_arm = {10, 40};
    br.ams = 0.61;
    br.best_arm = 1;
    br.trajectory.resize(50);

    ReportInputs in;
    in.aggregates = {{"baseline, tuned", agg}};
    in.bandits = {{"router", br}};
    in.arm_names = {"phase1", "remote"};
    in.total_seconds = 1.5;
    in.config_hash = "feedface00000000";
    in.seeds = {1, 2};

    auto files = emit_report(in, dir.string());
    REQUIRE(files.size() == 2);

    std::string summary = slurp(dir / "summary_report.csv");
    std::istringstream lines(summary);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header ==
          "label,customer_count,customer_bleu,customer_rouge1_f1,customer_rougeL_f1,"
          "customer_punct_accuracy,agent_count,agent_bleu,agent_rouge1_f1,agent_rougeL_f1,"
          "agent_punct_accuracy,total_seconds,config_hash,seeds");
    // The label holds a comma, so it must arrive quoted.
    CHECK(row.rfind("\"baseline, tuned\",4,0.25,0.5,0.45,88,", 0) == 0);
    // The agent channel was absent: count 0, metrics empty.
    CHECK(row.find(",0,,,,") != std::string::npos);
    CHECK(row.find("feedface00000000") != std::string::npos);

    std::string bandit = slurp(dir / "bandit_report.csv");
    CHECK(bandit.find("label,policy,best_arm,best_arm_name,final_ams,rounds,arm_pulls,"
                      "config_hash,seeds") == 0);
    CHECK(bandit.find("router,logistic_ucb,1,remote,0.61,50,") != std::string::npos);
    CHECK(bandit.find("(phase1: 10 + remote: 40)") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("curves stream one row per round") {
    fs::path dir = scratch_dir("curves");
    BanditReport br;
    br.trajectory = {{1, 0, 0.5, 0.5}, {2, 1, 0.7, 0.6}};
    CurveRun run;
    run.policy = "softmax";
    run.seed = 4;
    run.report = &br;

    fs::path path = dir / "curves.csv";
    write_curves_csv(path.string(), {run});
    std::string text = slurp(path);
    std::istringstream lines(text);
    std::string header, r1, r2;
    std::getline(lines, header);
    std::getline(lines, r1);
    std::getline(lines, r2);
    CHECK(header == "policy,seed,round,arm,reward,ams");
    CHECK(r1 == "softmax,4,1,0,0.5,0.5");
    CHECK(r2 == "softmax,4,2,1,0.7,0.6");
    fs::remove_all(dir);
}
