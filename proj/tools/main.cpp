#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chatsumm/arms.hpp"
#include "chatsumm/bandit.hpp"
#include "chatsumm/embeddings.hpp"
#include "chatsumm/error.hpp"
#include "chatsumm/extractive.hpp"
#include "chatsumm/metrics.hpp"
#include "chatsumm/pipeline.hpp"
#include "chatsumm/preprocess.hpp"
#include "chatsumm/punctuation.hpp"
#include "chatsumm/topics.hpp"
#include "chatsumm/transcript.hpp"

using nlohmann::json;
using namespace chatsumm;

namespace {

std::string read_text_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

ChannelKind channel_from_name(const std::string& name) {
    if (name == "full") return ChannelKind::Full;
    if (name == "customer") return ChannelKind::Customer;
    if (name == "agent") return ChannelKind::Agent;
    throw Error(ErrorCode::ConfigError, "unknown channel '" + name + "'");
}

json scores_json(const MetricScores& s) {
    json j;
    j["bleu"] = s.bleu;
    j["rouge1"] = {{"precision", s.rouge1.precision},
                   {"recall", s.rouge1.recall},
                   {"f1", s.rouge1.f1}};
    j["rougeL"] = {{"precision", s.rougeL.precision},
                   {"recall", s.rougeL.recall},
                   {"f1", s.rougeL.f1}};
    if (s.punct_accuracy) j["punct_accuracy"] = *s.punct_accuracy;
    else j["punct_accuracy"] = nullptr;
    return j;
}

json aggregate_json(const AggregateReport& rep) {
    json channels = json::object();
    for (const auto& [kind, entry] : rep.channels) {
        json e;
        e["count"] = entry.count;
        e["punct_count"] = entry.punct_count;
        e["mean"] = scores_json(entry.mean);
        channels[channel_kind_name(kind)] = std::move(e);
    }
    return {{"channels", std::move(channels)}};
}

json bandit_report_json(const BanditReport& rep, const std::vector<std::string>& names,
                        std::uint64_t seed) {
    json j;
    j["policy"] = policy_kind_name(rep.kind);
    j["seed"] = seed;
    j["best_arm"] = rep.best_arm;
    j["best_arm_name"] = rep.best_arm < static_cast<int>(names.size())
                             ? names[rep.best_arm]
                             : "arm" + std::to_string(rep.best_arm);
    j["ams"] = rep.ams;
    j["q"] = rep.q;
    j["n_arm"] = rep.n_arm;
    j["rounds"] = rep.trajectory.size();
    return j;
}

BanditReport bandit_report_from_json(const json& j) {
    BanditReport rep;
    auto kind = policy_kind_from(j.at("policy").get<std::string>());
    if (!kind) throw Error(ErrorCode::MalformedRecord, "unknown policy in report");
    rep.kind = *kind;
    rep.best_arm = j.at("best_arm").get<int>();
    rep.ams = j.at("ams").get<double>();
    rep.q = j.at("q").get<std::vector<double>>();
    rep.n_arm = j.at("n_arm").get<std::vector<long long>>();
    rep.trajectory.resize(j.value("rounds", std::size_t{0}));
    return rep;
}

struct ArmSet {
    std::vector<std::unique_ptr<Arm>> owned;
    std::vector<Arm*> ptrs;
    std::vector<std::string> names;
};

// Specs: "sim:base=0.5,noise=0.05,seed=1,coef0=0.1", "extractive", or
// "http://host:port/path".
ArmSet build_arms(const std::vector<std::string>& specs, const WordVectorStore* store) {
    ArmSet set;
    int id = 0;
    for (const auto& spec : specs) {
        std::unique_ptr<Arm> arm;
        if (spec.rfind("sim", 0) == 0 && (spec.size() == 3 || spec[3] == ':')) {
            SimulatedArmSpec s;
            bool direct = true;
            std::string name = "sim" + std::to_string(id);
            if (spec.size() > 4) {
                for (const auto& kv : split_list(spec.substr(4), ',')) {
                    auto eq = kv.find('=');
                    if (eq == std::string::npos)
                        throw Error(ErrorCode::ConfigError,
                                    "arm spec entry '" + kv + "' lacks '='");
                    const std::string key = kv.substr(0, eq);
                    const std::string val = kv.substr(eq + 1);
                    try {
                        if (key == "base") s.base_mean = std::stod(val);
                        else if (key == "noise") s.noise_sd = std::stod(val);
                        else if (key == "seed") s.rng_seed = std::stoull(val);
                        else if (key == "direct") direct = val != "0" && val != "false";
                        else if (key == "name") name = val;
                        else if (key.rfind("coef", 0) == 0) {
                            const size_t idx = std::stoul(key.substr(4));
                            if (s.context_coefficients.size() <= idx)
                                s.context_coefficients.resize(idx + 1, 0.0);
                            s.context_coefficients[idx] = std::stod(val);
                        } else {
                            throw Error(ErrorCode::ConfigError,
                                        "unknown arm spec key '" + key + "'");
                        }
                    } catch (const std::invalid_argument&) {
                        throw Error(ErrorCode::ConfigError,
                                    "bad value in arm spec entry '" + kv + "'");
                    }
                }
            }
            arm = simulated_arm(id, name, std::move(s), direct);
        } else if (spec.rfind("extractive", 0) == 0) {
            SummarizerResources res;
            res.store = store;
            arm = extractive_arm(id, "extractive", SummarizerConfig{}, std::move(res));
        } else if (spec.rfind("http://", 0) == 0) {
            std::string rest = spec.substr(7);
            RemoteArmConfig cfg;
            const auto slash = rest.find('/');
            if (slash != std::string::npos) {
                cfg.path = rest.substr(slash);
                rest = rest.substr(0, slash);
            }
            const auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw Error(ErrorCode::ConfigError, "arm endpoint needs host:port: " + spec);
            cfg.host = rest.substr(0, colon);
            try {
                cfg.port = std::stoi(rest.substr(colon + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ConfigError, "bad port in arm endpoint: " + spec);
            }
            arm = remote_arm(id, cfg.host + ":" + std::to_string(cfg.port), cfg);
        } else {
            throw Error(ErrorCode::ConfigError, "unrecognized arm spec '" + spec + "'");
        }
        set.names.push_back(arm->name());
        set.ptrs.push_back(arm.get());
        set.owned.push_back(std::move(arm));
        ++id;
    }
    return set;
}

std::vector<BanditPair> load_pairs(const std::string& path, const TopicModel* model,
                                   std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
    PreprocessConfig pre;
    std::vector<BanditPair> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("text"))
            throw Error(ErrorCode::MalformedRecord,
                        path + ":" + std::to_string(line_no) + ": need id and text");
        BanditPair p;
        p.transcript.id = j["id"].get<std::string>();
        p.transcript.channel_kind = ChannelKind::Full;
        Utterance u;
        u.index = 0;
        u.speaker_id = j.value("speaker", std::string("u0"));
        u.text = j["text"].get<std::string>();
        p.transcript.utterances.push_back(std::move(u));
        p.extracted_summary = j.value("extracted", std::string());
        p.full_len = j.value("full_len", p.transcript.word_count());
        p.doc = prepare_document_text(p.transcript.id, j["text"].get<std::string>(), pre);
        if (model)
            p.dt = dominant_topics(*model, p.transcript.id, model_bow(*model, p.doc), 1, 10,
                                   seed);
        pairs.push_back(std::move(p));
    }
    if (pairs.empty()) throw Error(ErrorCode::EmptyInput, "no pairs in " + path);
    return pairs;
}

std::vector<std::vector<double>> load_score_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        for (const auto& cell : split_list(line, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(ErrorCode::MalformedRecord,
                            path + ":" + std::to_string(line_no) + ": bad number '" +
                                cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Corpus corpus_in_model_vocab(const TopicModel& model, const std::vector<Document>& docs) {
    Corpus c;
    c.id_to_token = model.vocabulary;
    for (size_t i = 0; i < model.vocabulary.size(); ++i)
        c.vocabulary[model.vocabulary[i]] = static_cast<int>(i);
    c.doc_count = static_cast<int>(docs.size());
    for (const auto& d : docs) c.bows.push_back(model_bow(model, d));
    return c;
}

std::vector<Document> docs_from_transcripts(const std::vector<ChatTranscript>& ts,
                                            const PreprocessConfig& pre) {
    std::vector<Document> docs;
    docs.reserve(ts.size());
    for (const auto& t : ts) docs.push_back(prepare_document_text(t.id, transcript_text(t), pre));
    return docs;
}

struct PolicyFlags {
    double epsilon = 0.1;
    bool epsilon_decay = false;
    int explore_m = 100;
    double tau = 0.1;
    double percentile = 30.0;
    int window = 100;
    double ucb_alpha = 1.0;
    int replicas = 10;
    double lr = 0.05;
    double l2 = 1.0;
    std::uint64_t policy_seed = 0;

    PolicyConfig config(PolicyKind kind, int num_arms) const {
        PolicyConfig cfg;
        cfg.kind = kind;
        cfg.num_arms = num_arms;
        cfg.epsilon = epsilon;
        cfg.epsilon_decay = epsilon_decay;
        cfg.explore_rounds_per_arm = explore_m;
        cfg.tau = tau;
        cfg.adaptive_percentile = percentile;
        cfg.adaptive_window = window;
        cfg.ucb_alpha = ucb_alpha;
        cfg.bootstrap_replicas = replicas;
        cfg.learning_rate = lr;
        cfg.l2_lambda = l2;
        cfg.rng_seed = policy_seed;
        return cfg;
    }

    void attach(CLI::App* sub) {
        sub->add_option("--epsilon", epsilon, "exploration rate");
        sub->add_flag("--epsilon-decay", epsilon_decay, "decay epsilon by 1/sqrt(N+1)");
        sub->add_option("--explore-m", explore_m, "explore-first rounds per arm");
        sub->add_option("--tau", tau, "softmax temperature");
        sub->add_option("--percentile", percentile, "adaptive-greedy threshold percentile");
        sub->add_option("--window", window, "adaptive-greedy window size");
        sub->add_option("--ucb-alpha", ucb_alpha, "UCB exploration width");
        sub->add_option("--replicas", replicas, "bootstrap replica count");
        sub->add_option("--lr", lr, "model learning rate");
        sub->add_option("--l2", l2, "model L2 strength");
        sub->add_option("--policy-seed", policy_seed, "policy RNG seed");
    }
};

void write_or_print(const std::string& path, const json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chatsumm: extractive chat summarization with bandit routing"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse and optionally split transcripts");
    std::string in_path, roles_path, out_path, channel_name = "full";
    ingest->add_option("--in", in_path, "transcripts JSONL")->required();
    ingest->add_option("--roles", roles_path, "speaker role map file");
    ingest->add_option("--channel", channel_name, "full|customer|agent")
        ->check(CLI::IsMember({"full", "customer", "agent"}));
    ingest->add_option("--out", out_path, "output JSONL (default stdout)");

    // summarize
    auto* summ = app.add_subcommand("summarize", "Phase I batch over a JSONL corpus");
    std::string s_in, s_roles, s_out, s_config, s_vectors, s_model, s_stop, s_contr, s_table,
        s_rouge;
    std::uint64_t s_seed = 0;
    int s_workers = 0;
    summ->add_option("--in", s_in, "transcripts JSONL")->required();
    summ->add_option("--roles", s_roles, "speaker role map file");
    summ->add_option("--out", s_out, "output directory");
    summ->add_option("--config", s_config, "run config JSON");
    summ->add_option("--vectors", s_vectors, "word vector file");
    summ->add_option("--model", s_model, "pre-fit topic model");
    summ->add_option("--stop-words", s_stop, "stop word list override");
    summ->add_option("--contractions", s_contr, "contraction table override");
    summ->add_option("--table", s_table, "summary table name");
    summ->add_option("--rouge", s_rouge, "rouge1|rougeL")
        ->check(CLI::IsMember({"rouge1", "rougeL"}));
    summ->add_option("--seed", s_seed, "run seed");
    summ->add_option("--workers", s_workers, "worker pool size");

    // topics fit|score|select
    auto* topics = app.add_subcommand("topics", "topic model operations");
    topics->require_subcommand(1);
    auto* tfit = topics->add_subcommand("fit", "fit one model");
    std::string tf_in, tf_kind, tf_out;
    int tf_k = 5, tf_iters = 200, tf_topn = 10;
    double tf_alpha = 0.1, tf_beta = 0.01;
    std::uint64_t tf_seed = 0;
    tfit->add_option("--in", tf_in, "transcripts JSONL")->required();
    tfit->add_option("--kind", tf_kind, "lda|lsi")
        ->required()
        ->check(CLI::IsMember({"lda", "lsi", "LDA", "LSI"}));
    tfit->add_option("--k", tf_k, "topic count")->required();
    tfit->add_option("--alpha", tf_alpha, "LDA alpha");
    tfit->add_option("--beta", tf_beta, "LDA beta");
    tfit->add_option("--iters", tf_iters, "Gibbs sweeps");
    tfit->add_option("--seed", tf_seed, "sampler seed");
    tfit->add_option("--top-n", tf_topn, "coherence words per topic");
    tfit->add_option("--out", tf_out, "model output path")->required();

    auto* tscore = topics->add_subcommand("score", "coherence of a saved model");
    std::string ts_model, ts_in;
    int ts_topn = 10;
    tscore->add_option("--model", ts_model, "model path")->required();
    tscore->add_option("--in", ts_in, "transcripts JSONL")->required();
    tscore->add_option("--top-n", ts_topn, "words per topic");

    auto* tsel = topics->add_subcommand("select", "grid search LDA/LSI by coherence");
    std::string tl_in, tl_kind, tl_out;
    int tl_n = 5, tl_topn = 10;
    std::uint64_t tl_seed = 0;
    tsel->add_option("--in", tl_in, "transcripts JSONL")->required();
    tsel->add_option("--n", tl_n, "grid start (number_of_topics)");
    tsel->add_option("--kind", tl_kind, "restrict to lda|lsi")
        ->check(CLI::IsMember({"lda", "lsi", "LDA", "LSI"}));
    tsel->add_option("--seed", tl_seed, "sampler seed");
    tsel->add_option("--top-n", tl_topn, "coherence words per topic");
    tsel->add_option("--out", tl_out, "save the winning model here");

    // punctuate
    auto* punct = app.add_subcommand("punctuate", "restore punctuation in a text file");
    std::string p_in, p_mode = "full", p_remote;
    int p_segment = 512, p_max_run = 25, p_retries = 1;
    double p_timeout = 5.0;
    punct->add_option("--in", p_in, "text file, '-' for stdin")->required();
    punct->add_option("--mode", p_mode, "full|periods")
        ->check(CLI::IsMember({"full", "periods"}));
    punct->add_option("--segment-size", p_segment, "tokens per segment");
    punct->add_option("--max-run", p_max_run, "rule predictor boundary cap");
    punct->add_option("--remote", p_remote, "host:port[/path] of a punctuator service");
    punct->add_option("--timeout", p_timeout, "remote timeout seconds");
    punct->add_option("--retries", p_retries, "remote attempts");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "score candidate/reference JSONL pairs");
    std::string e_in, e_csv = "evaluate_items.csv", e_pmode = "full";
    eval->add_option("--in", e_in, "JSONL of {candidate, reference, channel?}")->required();
    eval->add_option("--csv", e_csv, "per-item CSV path ('' to skip)");
    eval->add_option("--punct-mode", e_pmode, "full|periods")
        ->check(CLI::IsMember({"full", "periods"}));

    // bandit run|compare
    auto* bandit = app.add_subcommand("bandit", "contextual bandit over summarizer arms");
    bandit->require_subcommand(1);
    auto* brun = bandit->add_subcommand("run", "one policy over a pair stream");
    std::string br_pairs, br_policy, br_metric = "rouge_l", br_scores, br_out, br_curves,
        br_model, br_vectors;
    std::vector<std::string> br_arms;
    std::uint64_t br_seed = 0;
    int br_max_sentences = 5;
    bool br_prefilter = false, br_abort = false;
    PolicyFlags br_flags;
    brun->add_option("--pairs", br_pairs, "JSONL of {id, text, extracted}")->required();
    brun->add_option("--policy", br_policy, "policy kind")->required();
    brun->add_option("--arm", br_arms, "arm spec (repeatable)")->required();
    brun->add_option("--metric", br_metric, "bleu|rouge_l");
    brun->add_option("--seed", br_seed, "run seed");
    brun->add_option("--scores", br_scores, "precomputed pair x arm score CSV");
    brun->add_flag("--prefilter", br_prefilter, "drop pairs where every arm scores 0");
    brun->add_flag("--abort-on-failure", br_abort, "fail instead of scoring 0");
    brun->add_option("--max-sentences", br_max_sentences, "summary length per arm");
    brun->add_option("--model", br_model, "topic model for context features");
    brun->add_option("--vectors", br_vectors, "word vectors for extractive arms");
    brun->add_option("--out", br_out, "report JSON path (default stdout)");
    brun->add_option("--curves", br_curves, "trajectory CSV path");
    br_flags.attach(brun);

    auto* bcmp = bandit->add_subcommand("compare", "replay several policies x seeds");
    std::string bc_pairs, bc_policies = "all", bc_metric = "rouge_l", bc_scores, bc_model,
        bc_vectors, bc_out_dir = ".", bc_seeds = "0";
    std::vector<std::string> bc_arms;
    int bc_max_sentences = 5;
    bool bc_prefilter = false;
    PolicyFlags bc_flags;
    bcmp->add_option("--pairs", bc_pairs, "JSONL of {id, text, extracted}")->required();
    bcmp->add_option("--policies", bc_policies, "comma list or 'all'");
    bcmp->add_option("--seeds", bc_seeds, "comma list of run seeds");
    bcmp->add_option("--arm", bc_arms, "arm spec (repeatable)")->required();
    bcmp->add_option("--metric", bc_metric, "bleu|rouge_l");
    bcmp->add_option("--scores", bc_scores, "precomputed pair x arm score CSV");
    bcmp->add_flag("--prefilter", bc_prefilter, "drop pairs where every arm scores 0");
    bcmp->add_option("--max-sentences", bc_max_sentences, "summary length per arm");
    bcmp->add_option("--model", bc_model, "topic model for context features");
    bcmp->add_option("--vectors", bc_vectors, "word vectors for extractive arms");
    bcmp->add_option("--out-dir", bc_out_dir, "directory for reports and curves");
    bc_flags.attach(bcmp);

    // report
    auto* report = app.add_subcommand("report", "emit CSV tables from saved outputs");
    std::vector<std::string> r_summaries, r_bandits;
    std::string r_out_dir = ".", r_arm_names;
    double r_total = 0.0;
    report->add_option("--summaries", r_summaries, "summary_results file (repeatable)");
    report->add_option("--bandit", r_bandits, "bandit report JSON (repeatable)");
    report->add_option("--arm-names", r_arm_names, "comma list for pull-count columns");
    report->add_option("--total-seconds", r_total, "wall clock to record");
    report->add_option("--out-dir", r_out_dir, "directory for the CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        json err{{"error", "ConfigError"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (*ingest) {
            const auto transcripts = load_transcripts(in_path);
            const ChannelKind want = channel_from_name(channel_name);
            RoleMap roles;
            if (!roles_path.empty()) roles = load_role_map(roles_path);
            if (want != ChannelKind::Full && roles_path.empty())
                throw Error(ErrorCode::ConfigError,
                            "--channel customer|agent requires --roles");

            std::ostringstream data;
            long long utterances = 0;
            for (const auto& t : transcripts) {
                const ChatTranscript* pick = &t;
                ChatTranscript side;
                if (want != ChannelKind::Full) {
                    auto [customer, agent] = separate_channels(t, roles);
                    side = want == ChannelKind::Customer ? std::move(customer)
                                                         : std::move(agent);
                    pick = &side;
                }
                json j;
                j["id"] = pick->id;
                j["channel"] = channel_kind_name(pick->channel_kind);
                json us = json::array();
                for (const auto& u : pick->utterances) {
                    us.push_back({{"speaker", u.speaker_id}, {"text", u.text}});
                    ++utterances;
                }
                j["utterances"] = std::move(us);
                data << j.dump() << "\n";
            }
            if (out_path.empty()) {
                std::cout << data.str();
            } else {
                std::ofstream out(out_path);
                if (!out) throw Error(ErrorCode::IoError, "cannot write " + out_path);
                out << data.str();
            }
            json stats{{"transcripts", transcripts.size()}, {"utterances", utterances}};
            std::cerr << stats.dump() << "\n";
            return 0;
        }

        if (*summ) {
            RunConfig rc;
            if (!s_config.empty()) rc = load_run_config(s_config);
            apply_env_overrides(rc);
            if (summ->count("--roles")) rc.roles_path = s_roles;
            if (summ->count("--out")) rc.output_dir = s_out;
            if (summ->count("--vectors")) rc.vectors_path = s_vectors;
            if (summ->count("--model")) rc.model_path = s_model;
            if (summ->count("--stop-words")) rc.stop_words_path = s_stop;
            if (summ->count("--contractions")) rc.contractions_path = s_contr;
            if (summ->count("--table")) rc.summarizer.summary_table_name = s_table;
            if (summ->count("--rouge"))
                rc.rouge_variant = s_rouge == "rouge1" ? RougeVariant::R1 : RougeVariant::RL;
            if (summ->count("--seed")) rc.seed = s_seed;
            if (summ->count("--workers")) rc.workers = s_workers;
            if (rc.roles_path.empty())
                throw Error(ErrorCode::ConfigError, "a role map is required (--roles)");

            const auto roles = load_role_map(rc.roles_path);
            const auto transcripts = load_transcripts(s_in);
            const BatchResult result = run_phase1_batch(transcripts, roles, rc);

            json steps = json::array();
            for (const auto& [name, secs] : result.step_seconds)
                steps.push_back({{"step", name}, {"seconds", secs}});
            json out{{"written", result.persisted.written},
                     {"skipped", result.persisted.skipped},
                     {"path", result.persisted.path},
                     {"total_seconds", result.total_seconds},
                     {"config_hash", result.config_hash},
                     {"steps", std::move(steps)},
                     {"aggregate", aggregate_json(result.aggregate)}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*topics) {
            PreprocessConfig pre;
            if (*tfit) {
                const auto transcripts = load_transcripts(tf_in);
                const Corpus corpus = build_corpus(docs_from_transcripts(transcripts, pre));
                const auto kind = topic_model_kind_from(tf_kind);
                TopicModel model = *kind == TopicModelKind::LDA
                                       ? fit_lda(corpus, tf_k, tf_alpha, tf_beta, tf_iters,
                                                 tf_seed)
                                       : fit_lsi(corpus, tf_k);
                const CoherenceReport rep = coherence(model, corpus, tf_topn);
                save_topic_model(model, tf_out);
                json out{{"kind", topic_model_kind_name(model.kind)},
                         {"num_topics", model.num_topics},
                         {"rank_deficient", model.rank_deficient},
                         {"coherence", rep.score},
                         {"path", tf_out}};
                std::cout << out.dump(2) << "\n";
            } else if (*tscore) {
                const TopicModel model = load_topic_model(ts_model);
                const auto transcripts = load_transcripts(ts_in);
                const Corpus corpus =
                    corpus_in_model_vocab(model, docs_from_transcripts(transcripts, pre));
                const CoherenceReport rep = coherence(model, corpus, ts_topn);
                json out{{"kind", topic_model_kind_name(rep.kind)},
                         {"num_topics", rep.num_topics},
                         {"score", rep.score},
                         {"per_topic", rep.per_topic}};
                std::cout << out.dump(2) << "\n";
            } else if (*tsel) {
                const auto transcripts = load_transcripts(tl_in);
                const Corpus corpus = build_corpus(docs_from_transcripts(transcripts, pre));
                SummarizerConfig cfg;
                cfg.number_of_topics = tl_n;
                if (!tl_kind.empty()) cfg.topic_model_type = topic_model_kind_from(tl_kind);
                auto [model, rep] = select_optimal_model(corpus, cfg, tl_seed, tl_topn);
                if (!tl_out.empty()) save_topic_model(model, tl_out);
                json out{{"kind", topic_model_kind_name(model.kind)},
                         {"num_topics", model.num_topics},
                         {"coherence", rep.score}};
                if (!tl_out.empty()) out["path"] = tl_out;
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (*punct) {
            const std::string text = read_text_file(p_in);
            const PunctMode mode = p_mode == "full" ? PunctMode::Full : PunctMode::PeriodsOnly;
            std::unique_ptr<Predictor> predictor;
            if (!p_remote.empty()) {
                RemotePredictorConfig cfg;
                std::string rest = p_remote;
                const auto slash = rest.find('/');
                if (slash != std::string::npos) {
                    cfg.path = rest.substr(slash);
                    rest = rest.substr(0, slash);
                }
                const auto colon = rest.find(':');
                if (colon == std::string::npos)
                    throw Error(ErrorCode::ConfigError, "--remote needs host:port");
                cfg.host = rest.substr(0, colon);
                cfg.port = std::stoi(rest.substr(colon + 1));
                cfg.timeout_sec = p_timeout;
                cfg.retries = p_retries;
                predictor = remote_predict(cfg);
            } else {
                RuleOptions opts;
                opts.max_run = p_max_run;
                predictor = std::make_unique<RulePredictor>(opts);
            }
            const PunctuatedText restored = restore(text, mode, *predictor, p_segment);
            json labels = json::array();
            for (PunctLabel l : restored.labels) labels.push_back(punct_label_name(l));
            json out{{"text", restored.text}, {"labels", std::move(labels)}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*eval) {
            std::ifstream in(e_in);
            if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + e_in);
            const PunctMode pmode =
                e_pmode == "full" ? PunctMode::Full : PunctMode::PeriodsOnly;

            std::ofstream csv;
            if (!e_csv.empty()) {
                csv.open(e_csv);
                if (!csv) throw Error(ErrorCode::IoError, "cannot write " + e_csv);
                csv << "index,channel,bleu,rouge1_f1,rougeL_f1,punct_accuracy\n";
            }

            std::vector<std::pair<ChannelKind, MetricScores>> items;
            std::string line;
            int line_no = 0, index = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                json j = json::parse(line, nullptr, false);
                if (j.is_discarded() || !j.is_object() || !j.contains("candidate") ||
                    !j.contains("reference"))
                    throw Error(ErrorCode::MalformedRecord,
                                e_in + ":" + std::to_string(line_no) +
                                    ": need candidate and reference");
                const std::string cand = j["candidate"].get<std::string>();
                const std::string ref = j["reference"].get<std::string>();
                const ChannelKind kind =
                    channel_from_name(j.value("channel", std::string("full")));

                MetricScores scores = score_pair(cand, ref);
                const auto [cand_clean, cand_labels] = strip_punctuation(cand);
                const auto [ref_clean, ref_labels] = strip_punctuation(ref);
                if (!ref_labels.empty() && ref_labels.size() == cand_labels.size())
                    scores.punct_accuracy = punct_accuracy(ref_labels, cand_labels, pmode);

                items.emplace_back(kind, scores);
                if (csv.is_open()) {
                    csv << index << ',' << channel_kind_name(kind) << ',' << scores.bleu
                        << ',' << scores.rouge1.f1 << ',' << scores.rougeL.f1 << ','
                        << (scores.punct_accuracy ? std::to_string(*scores.punct_accuracy)
                                                  : std::string())
                        << '\n';
                }
                ++index;
            }
            std::cout << aggregate_json(aggregate(items)).dump(2) << "\n";
            return 0;
        }

        if (*bandit) {
            if (*brun) {
                WordVectorStore store;
                if (!br_vectors.empty()) store = load_word_vectors(br_vectors);
                TopicModel model;
                bool have_model = false;
                if (!br_model.empty()) {
                    model = load_topic_model(br_model);
                    have_model = true;
                }
                const auto pairs =
                    load_pairs(br_pairs, have_model ? &model : nullptr, br_seed);
                ArmSet arms = build_arms(br_arms, br_vectors.empty() ? nullptr : &store);

                const auto kind = policy_kind_from(br_policy);
                if (!kind)
                    throw Error(ErrorCode::ConfigError, "unknown policy '" + br_policy + "'");
                const auto metric = reward_metric_from(br_metric);
                if (!metric)
                    throw Error(ErrorCode::ConfigError, "unknown metric '" + br_metric + "'");

                std::vector<std::vector<double>> matrix;
                BanditOptions opts;
                opts.run_seed = br_seed;
                opts.max_sentences = br_max_sentences;
                opts.prefilter_zero = br_prefilter;
                opts.abort_on_arm_failure = br_abort;
                if (!br_scores.empty()) {
                    matrix = load_score_matrix(br_scores);
                    opts.score_matrix = &matrix;
                }

                PolicyState ps(br_flags.config(*kind, static_cast<int>(arms.ptrs.size())));
                const BanditReport rep = run_bandit(ps, arms.ptrs, pairs, *metric, opts);

                if (!br_curves.empty())
                    write_curves_csv(br_curves,
                                     {{policy_kind_name(rep.kind), br_seed, &rep}});
                write_or_print(br_out, bandit_report_json(rep, arms.names, br_seed));
                return 0;
            }
            if (*bcmp) {
                WordVectorStore store;
                if (!bc_vectors.empty()) store = load_word_vectors(bc_vectors);
                TopicModel model;
                bool have_model = false;
                if (!bc_model.empty()) {
                    model = load_topic_model(bc_model);
                    have_model = true;
                }
                std::uint64_t pair_seed = 0;
                const auto pairs =
                    load_pairs(bc_pairs, have_model ? &model : nullptr, pair_seed);
                ArmSet arms = build_arms(bc_arms, bc_vectors.empty() ? nullptr : &store);

                std::vector<PolicyKind> kinds;
                if (bc_policies == "all") {
                    kinds = all_policy_kinds();
                } else {
                    for (const auto& name : split_list(bc_policies, ',')) {
                        const auto k = policy_kind_from(name);
                        if (!k)
                            throw Error(ErrorCode::ConfigError,
                                        "unknown policy '" + name + "'");
                        kinds.push_back(*k);
                    }
                }
                std::vector<std::uint64_t> seeds;
                for (const auto& s : split_list(bc_seeds, ',')) {
                    try {
                        seeds.push_back(std::stoull(s));
                    } catch (const std::exception&) {
                        throw Error(ErrorCode::ConfigError, "bad seed '" + s + "'");
                    }
                }
                const auto metric = reward_metric_from(bc_metric);
                if (!metric)
                    throw Error(ErrorCode::ConfigError, "unknown metric '" + bc_metric + "'");

                std::vector<PolicyConfig> configs;
                for (PolicyKind k : kinds)
                    configs.push_back(
                        bc_flags.config(k, static_cast<int>(arms.ptrs.size())));

                std::vector<std::vector<double>> matrix;
                BanditOptions opts;
                opts.max_sentences = bc_max_sentences;
                opts.prefilter_zero = bc_prefilter;
                if (!bc_scores.empty()) {
                    matrix = load_score_matrix(bc_scores);
                    opts.score_matrix = &matrix;
                }

                const ComparisonResult cmp =
                    compare_policies(configs, arms.ptrs, pairs, *metric, seeds, opts);

                std::error_code ec;
                std::filesystem::create_directories(bc_out_dir, ec);
                json files = json::array();
                std::vector<CurveRun> curve_runs;
                for (size_t p = 0; p < kinds.size(); ++p) {
                    for (size_t s = 0; s < seeds.size(); ++s) {
                        const BanditReport& rep = cmp.reports[p][s];
                        const std::string path =
                            bc_out_dir + "/report_" + policy_kind_name(kinds[p]) + "_" +
                            std::to_string(seeds[s]) + ".json";
                        write_or_print(path, bandit_report_json(rep, arms.names, seeds[s]));
                        files.push_back(path);
                        curve_runs.push_back({policy_kind_name(kinds[p]), seeds[s], &rep});
                    }
                }
                const std::string curves_path = bc_out_dir + "/curves.csv";
                write_curves_csv(curves_path, curve_runs);

                json finals = json::object();
                for (size_t p = 0; p < kinds.size(); ++p) {
                    double mean = 0.0;
                    for (const auto& rep : cmp.reports[p]) mean += rep.ams;
                    finals[policy_kind_name(kinds[p])] =
                        mean / static_cast<double>(cmp.reports[p].size());
                }
                json out{{"reports", std::move(files)},
                         {"curves", curves_path},
                         {"final_ams", std::move(finals)}};
                std::cout << out.dump(2) << "\n";
                return 0;
            }
        }

        if (*report) {
            ReportInputs inputs;
            inputs.total_seconds = r_total;
            for (const auto& path : r_summaries) {
                const auto records = load_summaries(path);
                std::vector<std::pair<ChannelKind, MetricScores>> items;
                for (const auto& rec : records) {
                    if (rec.result.customer_scored)
                        items.emplace_back(ChannelKind::Customer, rec.result.customer_scores);
                    if (rec.result.agent_scored)
                        items.emplace_back(ChannelKind::Agent, rec.result.agent_scores);
                    if (inputs.config_hash.empty()) inputs.config_hash = rec.config_hash;
                    if (std::find(inputs.seeds.begin(), inputs.seeds.end(), rec.seed) ==
                        inputs.seeds.end())
                        inputs.seeds.push_back(rec.seed);
                }
                const std::string label =
                    std::filesystem::path(path).filename().string();
                inputs.aggregates.emplace_back(label, aggregate(items));
            }
            for (const auto& path : r_bandits) {
                json j = json::parse(read_text_file(path), nullptr, false);
                if (j.is_discarded())
                    throw Error(ErrorCode::MalformedRecord, path + " is not JSON");
                const BanditReport rep = bandit_report_from_json(j);
                const std::string label =
                    std::filesystem::path(path).filename().string();
                inputs.bandits.emplace_back(label, rep);
                if (j.contains("seed")) {
                    const auto seed = j["seed"].get<std::uint64_t>();
                    if (std::find(inputs.seeds.begin(), inputs.seeds.end(), seed) ==
                        inputs.seeds.end())
                        inputs.seeds.push_back(seed);
                }
            }
            if (!r_arm_names.empty()) inputs.arm_names = split_list(r_arm_names, ',');
            const auto paths = emit_report(inputs, r_out_dir);
            json out{{"files", paths}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        json err{{"error", error_code_name(e.code())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return e.code() == ErrorCode::ConfigError ? 2 : 1;
    } catch (const std::exception& e) {
        json err{{"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
