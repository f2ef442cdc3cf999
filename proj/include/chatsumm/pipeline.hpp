#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/bandit.hpp"
#include "chatsumm/config.hpp"
#include "chatsumm/extractive.hpp"
#include "chatsumm/metrics.hpp"
#include "chatsumm/transcript.hpp"

namespace chatsumm {

struct RunConfig {
    SummarizerConfig summarizer;
    RougeVariant rouge_variant = RougeVariant::R1;
    std::string roles_path;
    std::string vectors_path;
    std::string model_path;
    std::string stop_words_path;
    std::string contractions_path;
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    int workers = 0;  // 0 picks hardware concurrency
};

RunConfig load_run_config(const std::string& path);
// CHATSUMM_OUTPUT_DIR, CHATSUMM_SEED, CHATSUMM_WORKERS, CHATSUMM_VECTORS,
// CHATSUMM_ROLES, CHATSUMM_MODEL, CHATSUMM_SUMMARY_TABLE.
void apply_env_overrides(RunConfig& rc);
// FNV-1a over the canonical JSON form, 16 hex digits.
std::string config_hash(const RunConfig& rc);

struct SummaryRecord {
    std::string transcript_id;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string ts;  // write timestamp, excluded from identity and dedup
    ExtractiveResult result;
};

std::string summary_record_json(const SummaryRecord& r);
SummaryRecord parse_summary_record(const std::string& line);

struct PersistStats {
    int written = 0;
    int skipped = 0;
    std::string path;
};

// Append-only JSONL named by table_name; dedup skips records whose
// (transcript_id, config_hash) already exist in the file.
PersistStats persist_summaries(const std::vector<SummaryRecord>& records,
                               const std::string& table_name, const std::string& out_dir,
                               bool dedup = true);
std::vector<SummaryRecord> load_summaries(const std::string& path);

struct BatchResult {
    PersistStats persisted;
    AggregateReport aggregate;
    std::vector<std::pair<std::string, double>> step_seconds;  // the ten steps, in order
    double total_seconds = 0.0;
    std::string config_hash;
};

// Phase I over a corpus: shared model selection, then per-transcript
// summarization fanned out over a worker pool, one writer at the end.
BatchResult run_phase1_batch(const std::vector<ChatTranscript>& transcripts,
                             const RoleMap& roles, const RunConfig& rc);

struct ReportInputs {
    std::vector<std::pair<std::string, AggregateReport>> aggregates;  // label, report
    std::vector<std::pair<std::string, BanditReport>> bandits;        // label, report
    std::vector<std::string> arm_names;
    double total_seconds = 0.0;
    std::string config_hash;
    std::vector<std::uint64_t> seeds;
};

// summary_report.csv and bandit_report.csv; returns the paths written.
std::vector<std::string> emit_report(const ReportInputs& in, const std::string& out_dir);

struct CurveRun {
    std::string policy;
    std::uint64_t seed = 0;
    const BanditReport* report = nullptr;
};

// CSV columns: policy,seed,round,arm,reward,ams.
void write_curves_csv(const std::string& path, const std::vector<CurveRun>& runs);

}  // namespace chatsumm
