#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/preprocess.hpp"
#include "chatsumm/rng.hpp"
#include "chatsumm/topics.hpp"
#include "chatsumm/transcript.hpp"

namespace chatsumm {

class Arm;

struct Context {
    double length = 0.0;
    double length_fraction = 0.0;
    int dominant_topic_id = -1;  // -1 means none
    double dominant_topic_contribution = 0.0;
    double num_dominant_keywords = 0.0;
    double num_document_words = 0.0;
    // Layout: 5 z-scored numerics, one-hot topic (50 ids + none), bias 1.
    std::vector<double> features;
};

// Owns the running standardization statistics, so one builder per run.
class ContextBuilder {
public:
    static constexpr int kNumerics = 5;
    static constexpr int kTopicSlots = 51;
    static constexpr int feature_dim() { return kNumerics + kTopicSlots + 1; }

    Context build(const ChatTranscript& t, int full_len, const DominantTopics& dt,
                  const Document& doc);

private:
    struct Stat {
        long long n = 0;
        double mean = 0.0;
        double m2 = 0.0;
        double push(double x);  // update and return the z-score
    };
    std::array<Stat, kNumerics> stats_;
};

enum class PolicyKind {
    EpsilonGreedy,
    ExploreFirst,
    Softmax,
    AdaptiveGreedy,
    LogisticUCB,
    BootstrappedUCB,
    BootstrappedTS,
};

const char* policy_kind_name(PolicyKind k);
std::optional<PolicyKind> policy_kind_from(const std::string& name);
std::vector<PolicyKind> all_policy_kinds();

struct PolicyConfig {
    PolicyKind kind = PolicyKind::EpsilonGreedy;
    int num_arms = 0;
    int dim = ContextBuilder::feature_dim();
    double epsilon = 0.1;
    bool epsilon_decay = false;
    int explore_rounds_per_arm = 100;  // ExploreFirst m
    double tau = 0.1;                  // Softmax temperature
    double adaptive_percentile = 30.0;
    int adaptive_window = 100;
    double ucb_alpha = 1.0;
    int bootstrap_replicas = 10;
    double learning_rate = 0.05;
    double l2_lambda = 1.0;
    std::uint64_t rng_seed = 0;
};

// Online logistic regression on soft targets in [0,1]. The L2 term is
// amortized as lambda/n per step so its total pull matches a batch fit.
struct OnlineLogit {
    std::vector<double> w;
    long long n_seen = 0;

    explicit OnlineLogit(int dim = 0) : w(dim, 0.0) {}
    double predict(const std::vector<double>& x) const;
    void update(const std::vector<double>& x, double target, double lr, double lambda);
};

struct PolicyState {
    PolicyConfig cfg;
    std::vector<double> Q;
    std::vector<long long> N_arm;
    long long N = 0;
    double AMS = 0.0;
    std::vector<OnlineLogit> models;                 // one per arm
    std::vector<std::vector<double>> a_inv;          // LogisticUCB: dim x dim, row-major
    std::vector<std::vector<OnlineLogit>> replicas;  // bootstrapped kinds: B per arm
    std::deque<double> recent_max_pred;              // AdaptiveGreedy window
    Rng rng;

    explicit PolicyState(const PolicyConfig& c);
    void reset_rng(std::uint64_t seed) { rng.seed(seed); }
    // Point prediction of the arm's base model (replica mean for bootstrapped kinds).
    double predict(int arm, const std::vector<double>& x) const;
    double ucb_bonus(int arm, const std::vector<double>& x) const;
};

int choose(PolicyState& ps, const Context& x);
void update(PolicyState& ps, const Context& x, int arm, double reward);

enum class RewardMetric { BLEU, ROUGE_L };
const char* reward_metric_name(RewardMetric m);
std::optional<RewardMetric> reward_metric_from(const std::string& name);

struct BanditPair {
    ChatTranscript transcript;
    std::string extracted_summary;  // reference text for scoring arm output
    int full_len = 0;
    DominantTopics dt;
    Document doc;
};

struct BanditOptions {
    bool abort_on_arm_failure = false;  // default: failed arm scores 0
    bool prefilter_zero = false;        // needs score_matrix
    const std::vector<std::vector<double>>* score_matrix = nullptr;  // pairs x arms replay
    std::uint64_t run_seed = 0;
    int max_sentences = 5;
};

struct TrajectoryPoint {
    long long round = 0;
    int arm = 0;
    double reward = 0.0;
    double ams = 0.0;
};

struct BanditReport {
    PolicyKind kind = PolicyKind::EpsilonGreedy;
    std::vector<double> q;
    std::vector<long long> n_arm;
    double ams = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    int best_arm = 0;
};

BanditReport run_bandit(PolicyState& policy, const std::vector<Arm*>& arms,
                        const std::vector<BanditPair>& pairs, RewardMetric metric,
                        const BanditOptions& opts = {});

struct PolicyCurve {
    PolicyKind kind = PolicyKind::EpsilonGreedy;
    std::vector<double> mean_ams;  // per round, averaged over seeds
};

struct ComparisonResult {
    std::vector<std::vector<BanditReport>> reports;  // [policy][seed]
    std::vector<PolicyCurve> curves;
};

// Each policy replays the identical seed-shuffled pair order.
ComparisonResult compare_policies(const std::vector<PolicyConfig>& policies,
                                  const std::vector<Arm*>& arms,
                                  const std::vector<BanditPair>& pairs, RewardMetric metric,
                                  const std::vector<std::uint64_t>& seeds,
                                  const BanditOptions& base = {});

}  // namespace chatsumm
