#include "chatsumm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chatsumm/error.hpp"
#include "chatsumm/preprocess.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace chatsumm {

namespace {

const char* rouge_variant_label(RougeVariant v) {
    return v == RougeVariant::R1 ? "rouge1" : "rougeL";
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json rouge_json(const RougeScore& r) {
    return {{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

RougeScore rouge_from_json(const json& j) {
    RougeScore r;
    r.precision = j.at("precision").get<double>();
    r.recall = j.at("recall").get<double>();
    r.f1 = j.at("f1").get<double>();
    return r;
}

json channel_json(const Summary& s, const MetricScores& scores, bool scored,
                  const std::string& reference) {
    json sent = json::array();
    for (const auto& st : s.sentences) sent.push_back({{"index", st.index}, {"text", st.text}});
    json j;
    j["channel"] = channel_kind_name(s.channel_kind);
    j["sentences"] = std::move(sent);
    j["term_string"] = s.term_string;
    j["punctuated_text"] = s.punctuated_text;
    j["reference"] = reference;
    j["scored"] = scored;
    if (scored) {
        json sc;
        sc["bleu"] = scores.bleu;
        sc["rouge1"] = rouge_json(scores.rouge1);
        sc["rougeL"] = rouge_json(scores.rougeL);
        if (scores.punct_accuracy) sc["punct_accuracy"] = *scores.punct_accuracy;
        else sc["punct_accuracy"] = nullptr;
        j["scores"] = std::move(sc);
    } else {
        j["scores"] = nullptr;
    }
    return j;
}

void channel_from_json(const json& j, const std::string& transcript_id, ChannelKind kind,
                       Summary& s, MetricScores& scores, bool& scored,
                       std::string& reference) {
    s.transcript_id = transcript_id;
    s.channel_kind = kind;
    s.sentences.clear();
    for (const auto& st : j.at("sentences")) {
        Sentence sent;
        sent.index = st.at("index").get<int>();
        sent.text = st.at("text").get<std::string>();
        s.sentences.push_back(std::move(sent));
    }
    s.term_string = j.at("term_string").get<std::string>();
    s.punctuated_text = j.at("punctuated_text").get<std::string>();
    reference = j.at("reference").get<std::string>();
    scored = j.at("scored").get<bool>();
    if (scored) {
        const json& sc = j.at("scores");
        scores.bleu = sc.at("bleu").get<double>();
        scores.rouge1 = rouge_from_json(sc.at("rouge1"));
        scores.rougeL = rouge_from_json(sc.at("rougeL"));
        if (sc.contains("punct_accuracy") && !sc.at("punct_accuracy").is_null())
            scores.punct_accuracy = sc.at("punct_accuracy").get<double>();
        else
            scores.punct_accuracy.reset();
    }
}

std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
    std::string out;
    for (auto s : seeds) {
        if (!out.empty()) out += ';';
        out += std::to_string(s);
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open config file " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::ConfigError, "config file is not a JSON object: " + path);

    RunConfig rc;
    try {
        auto& s = rc.summarizer;
        if (j.contains("topic_model_type") && !j["topic_model_type"].is_null()) {
            auto kind = topic_model_kind_from(j["topic_model_type"].get<std::string>());
            if (!kind)
                throw Error(ErrorCode::ConfigError,
                            "topic_model_type must be LDA or LSI");
            s.topic_model_type = *kind;
        }
        s.number_of_topics = j.value("number_of_topics", s.number_of_topics);
        s.number_of_dominant_topics =
            j.value("number_of_dominant_topics", s.number_of_dominant_topics);
        s.punct_batch_size = j.value("punct_batch_size", s.punct_batch_size);
        s.term_extraction_method =
            j.value("term_extraction_method", s.term_extraction_method);
        if (s.term_extraction_method != "global" && s.term_extraction_method != "local")
            throw Error(ErrorCode::ConfigError,
                        "term_extraction_method must be global or local");
        s.summary_length = j.value("summary_length", s.summary_length);
        s.summary_table_name = j.value("summary_table_name", s.summary_table_name);
        s.word_similarity_threshold =
            j.value("word_similarity_threshold", s.word_similarity_threshold);
        s.uniqueness_threshold = j.value("uniqueness_threshold", s.uniqueness_threshold);
        s.keywords_per_topic = j.value("keywords_per_topic", s.keywords_per_topic);
        s.lda_alpha = j.value("lda_alpha", s.lda_alpha);
        s.lda_beta = j.value("lda_beta", s.lda_beta);
        s.lda_iters = j.value("lda_iters", s.lda_iters);

        if (j.contains("rouge_variant")) {
            std::string v = j["rouge_variant"].get<std::string>();
            std::string low;
            for (char c : v) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (low == "rouge1" || low == "rouge_1") rc.rouge_variant = RougeVariant::R1;
            else if (low == "rougel" || low == "rouge_l") rc.rouge_variant = RougeVariant::RL;
            else throw Error(ErrorCode::ConfigError, "rouge_variant must be rouge1 or rougeL");
        }
        rc.roles_path = j.value("roles_path", rc.roles_path);
        rc.vectors_path = j.value("vectors_path", rc.vectors_path);
        rc.model_path = j.value("model_path", rc.model_path);
        rc.stop_words_path = j.value("stop_words_path", rc.stop_words_path);
        rc.contractions_path = j.value("contractions_path", rc.contractions_path);
        rc.output_dir = j.value("output_dir", rc.output_dir);
        rc.seed = j.value("seed", rc.seed);
        rc.workers = j.value("workers", rc.workers);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("config file: ") + e.what());
    }
    return rc;
}

void apply_env_overrides(RunConfig& rc) {
    auto get = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v) return std::nullopt;
        return std::string(v);
    };
    if (auto v = get("CHATSUMM_OUTPUT_DIR")) rc.output_dir = *v;
    if (auto v = get("CHATSUMM_VECTORS")) rc.vectors_path = *v;
    if (auto v = get("CHATSUMM_ROLES")) rc.roles_path = *v;
    if (auto v = get("CHATSUMM_MODEL")) rc.model_path = *v;
    if (auto v = get("CHATSUMM_SUMMARY_TABLE")) rc.summarizer.summary_table_name = *v;
    if (auto v = get("CHATSUMM_SEED")) {
        try {
            rc.seed = std::stoull(*v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "CHATSUMM_SEED is not an integer: " + *v);
        }
    }
    if (auto v = get("CHATSUMM_WORKERS")) {
        try {
            rc.workers = std::stoi(*v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "CHATSUMM_WORKERS is not an integer: " + *v);
        }
    }
}

std::string config_hash(const RunConfig& rc) {
    json j;
    const auto& s = rc.summarizer;
    j["topic_model_type"] =
        s.topic_model_type ? json(topic_model_kind_name(*s.topic_model_type)) : json(nullptr);
    j["number_of_topics"] = s.number_of_topics;
    j["number_of_dominant_topics"] = s.number_of_dominant_topics;
    j["punct_batch_size"] = s.punct_batch_size;
    j["term_extraction_method"] = s.term_extraction_method;
    j["summary_length"] = s.summary_length;
    j["summary_table_name"] = s.summary_table_name;
    j["word_similarity_threshold"] = s.word_similarity_threshold;
    j["uniqueness_threshold"] = s.uniqueness_threshold;
    j["keywords_per_topic"] = s.keywords_per_topic;
    j["lda_alpha"] = s.lda_alpha;
    j["lda_beta"] = s.lda_beta;
    j["lda_iters"] = s.lda_iters;
    j["rouge_variant"] = rouge_variant_label(rc.rouge_variant);
    j["roles_path"] = rc.roles_path;
    j["vectors_path"] = rc.vectors_path;
    j["model_path"] = rc.model_path;
    j["stop_words_path"] = rc.stop_words_path;
    j["contractions_path"] = rc.contractions_path;
    j["seed"] = rc.seed;
    // output_dir and workers steer execution, not results, so they stay out.

    const std::string canon = j.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string summary_record_json(const SummaryRecord& r) {
    json j;
    j["schema_version"] = 1;
    j["transcript_id"] = r.transcript_id;
    j["config_hash"] = r.config_hash;
    j["seed"] = r.seed;
    j["ts"] = r.ts;
    j["customer"] = channel_json(r.result.customer, r.result.customer_scores,
                                 r.result.customer_scored, r.result.customer_reference);
    j["agent"] = channel_json(r.result.agent, r.result.agent_scores,
                              r.result.agent_scored, r.result.agent_reference);
    return j.dump();
}

SummaryRecord parse_summary_record(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::MalformedRecord, "summary record is not a JSON object");
    try {
        SummaryRecord r;
        r.transcript_id = j.at("transcript_id").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.ts = j.at("ts").get<std::string>();
        channel_from_json(j.at("customer"), r.transcript_id, ChannelKind::Customer,
                          r.result.customer, r.result.customer_scores,
                          r.result.customer_scored, r.result.customer_reference);
        channel_from_json(j.at("agent"), r.transcript_id, ChannelKind::Agent,
                          r.result.agent, r.result.agent_scores, r.result.agent_scored,
                          r.result.agent_reference);
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("summary record: ") + e.what());
    }
}

PersistStats persist_summaries(const std::vector<SummaryRecord>& records,
                               const std::string& table_name, const std::string& out_dir,
                               bool dedup) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path path = fs::path(out_dir) / table_name;

    std::set<std::string> seen;
    if (dedup && fs::exists(path)) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::FileUnreadable, "cannot read " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const SummaryRecord r = parse_summary_record(line);
            seen.insert(r.transcript_id + "|" + r.config_hash);
        }
    }

    std::ofstream out(path, std::ios::app);
    if (!out) throw Error(ErrorCode::IoError, "cannot append to " + path.string());

    PersistStats stats;
    stats.path = path.string();
    for (const auto& r : records) {
        const std::string key = r.transcript_id + "|" + r.config_hash;
        if (dedup && !seen.insert(key).second) {
            ++stats.skipped;
            continue;
        }
        out << summary_record_json(r) << '\n';
        ++stats.written;
    }
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
    return stats;
}

std::vector<SummaryRecord> load_summaries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
    std::vector<SummaryRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse_summary_record(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedRecord,
                        path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

BatchResult run_phase1_batch(const std::vector<ChatTranscript>& transcripts,
                             const RoleMap& roles, const RunConfig& rc) {
    using clock = std::chrono::steady_clock;
    const auto batch_start = clock::now();
    auto elapsed = [](clock::time_point t0) {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    StepTimings timings;

    PreprocessConfig pre;
    if (!rc.stop_words_path.empty()) pre.stop_words = load_word_list(rc.stop_words_path);
    if (!rc.contractions_path.empty())
        pre.contractions = load_contraction_table(rc.contractions_path);

    WordVectorStore store;
    if (!rc.vectors_path.empty()) store = load_word_vectors(rc.vectors_path);

    // Shared model: loaded from disk, or selected once over the whole corpus.
    TopicModel model;
    bool have_model = false;
    Corpus corpus;
    bool have_corpus = false;
    if (!rc.model_path.empty()) {
        auto t0 = clock::now();
        model = load_topic_model(rc.model_path);
        have_model = true;
        timings.add(4, elapsed(t0));
    } else {
        auto t0 = clock::now();
        std::vector<Document> docs;
        docs.reserve(transcripts.size());
        for (const auto& t : transcripts)
            docs.push_back(prepare_document_text(t.id, transcript_text(t), pre));
        timings.add(3, elapsed(t0));

        t0 = clock::now();
        try {
            corpus = build_corpus(docs);
            have_corpus = true;
            model = select_optimal_model(corpus, rc.summarizer, rc.seed).first;
            have_model = true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EmptyCorpus) throw;
        }
        timings.add(4, elapsed(t0));
    }

    const std::string hash = config_hash(rc);
    const std::string stamp = iso_timestamp();

    int workers = rc.workers > 0
                      ? rc.workers
                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers,
                       static_cast<int>(std::max<std::size_t>(transcripts.size(), 1)));

    std::vector<SummaryRecord> records(transcripts.size());
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            SummarizerResources res;
            res.roles = &roles;
            res.model = have_model ? &model : nullptr;
            res.corpus = have_corpus ? &corpus : nullptr;
            res.store = rc.vectors_path.empty() ? nullptr : &store;
            res.preprocess = &pre;
            res.timings = &timings;
            res.seed = rc.seed;
            SummaryRecord rec;
            rec.transcript_id = transcripts[i].id;
            rec.config_hash = hash;
            rec.seed = rc.seed;
            rec.ts = stamp;
            rec.result = summarize_extractive(transcripts[i], rc.summarizer, res);
            records[i] = std::move(rec);
        }
    };

    if (workers <= 1 || transcripts.size() <= 1) {
        work(0, transcripts.size());
    } else {
        std::vector<std::future<void>> futs;
        const size_t n = transcripts.size();
        for (int w = 0; w < workers; ++w) {
            const size_t begin = n * w / workers;
            const size_t end = n * (w + 1) / workers;
            if (begin == end) continue;
            futs.push_back(std::async(std::launch::async, work, begin, end));
        }
        for (auto& f : futs) f.get();
    }

    BatchResult out;
    {
        auto t0 = clock::now();
        std::vector<std::pair<ChannelKind, MetricScores>> items;
        for (const auto& rec : records) {
            if (rec.result.customer_scored)
                items.emplace_back(ChannelKind::Customer, rec.result.customer_scores);
            if (rec.result.agent_scored)
                items.emplace_back(ChannelKind::Agent, rec.result.agent_scores);
        }
        out.aggregate = aggregate(items);
        timings.add(9, elapsed(t0));
    }
    {
        auto t0 = clock::now();
        out.persisted = persist_summaries(records, rc.summarizer.summary_table_name,
                                          rc.output_dir);
        timings.add(10, elapsed(t0));
    }

    for (int step = 1; step <= 10; ++step)
        out.step_seconds.emplace_back(StepTimings::step_name(step),
                                      timings.seconds[step - 1].load());
    out.total_seconds = elapsed(batch_start);
    out.config_hash = hash;
    return out;
}

std::vector<std::string> emit_report(const ReportInputs& in, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string seeds = join_seeds(in.seeds);

    const fs::path summary_path = fs::path(out_dir) / "summary_report.csv";
    {
        std::ofstream out(summary_path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + summary_path.string());
        // Table layout: one row per summarizer label, channel metrics as columns.
        const ChannelKind kinds[] = {ChannelKind::Customer, ChannelKind::Agent};
        out << "label";
        for (ChannelKind k : kinds) {
            const std::string p = channel_kind_name(k);
            out << ',' << p << "_count," << p << "_bleu," << p << "_rouge1_f1," << p
                << "_rougeL_f1," << p << "_punct_accuracy";
        }
        out << ",total_seconds,config_hash,seeds\n";
        for (const auto& [label, report] : in.aggregates) {
            out << csv_cell(label);
            for (ChannelKind k : kinds) {
                auto it = report.channels.find(k);
                if (it == report.channels.end()) {
                    out << ",0,,,,";
                    continue;
                }
                const AggregateEntry& entry = it->second;
                out << ',' << entry.count << ',' << format_double(entry.mean.bleu) << ','
                    << format_double(entry.mean.rouge1.f1) << ','
                    << format_double(entry.mean.rougeL.f1) << ','
                    << (entry.mean.punct_accuracy
                            ? format_double(*entry.mean.punct_accuracy)
                            : std::string());
            }
            out << ',' << format_double(in.total_seconds) << ',' << in.config_hash << ','
                << csv_cell(seeds) << '\n';
        }
    }

    const fs::path bandit_path = fs::path(out_dir) / "bandit_report.csv";
    {
        std::ofstream out(bandit_path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + bandit_path.string());
        out << "label,policy,best_arm,best_arm_name,final_ams,rounds,arm_pulls,"
               "config_hash,seeds\n";
        for (const auto& [label, report] : in.bandits) {
            std::string pulls = "(";
            for (size_t a = 0; a < report.n_arm.size(); ++a) {
                if (a) pulls += " + ";
                const std::string name = a < in.arm_names.size()
                                             ? in.arm_names[a]
                                             : "arm" + std::to_string(a);
                pulls += name + ": " + std::to_string(report.n_arm[a]);
            }
            pulls += ")";
            const std::string best_name =
                report.best_arm >= 0 &&
                        report.best_arm < static_cast<int>(in.arm_names.size())
                    ? in.arm_names[report.best_arm]
                    : "arm" + std::to_string(report.best_arm);
            out << csv_cell(label) << ',' << policy_kind_name(report.kind) << ','
                << report.best_arm << ',' << csv_cell(best_name) << ','
                << format_double(report.ams) << ',' << report.trajectory.size() << ','
                << csv_cell(pulls) << ',' << in.config_hash << ',' << csv_cell(seeds)
                << '\n';
        }
    }
    return {summary_path.string(), bandit_path.string()};
}

void write_curves_csv(const std::string& path, const std::vector<CurveRun>& runs) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << "policy,seed,round,arm,reward,ams\n";
    for (const auto& run : runs) {
        if (!run.report) continue;
        for (const auto& pt : run.report->trajectory) {
            out << run.policy << ',' << run.seed << ',' << pt.round << ',' << pt.arm << ','
                << format_double(pt.reward) << ',' << format_double(pt.ams) << '\n';
        }
    }
}

}  // namespace chatsumm
