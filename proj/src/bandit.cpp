#include "chatsumm/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chatsumm/arms.hpp"
#include "chatsumm/error.hpp"
#include "chatsumm/metrics.hpp"

namespace chatsumm {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double dot_min(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t n = std::min(a.size(), b.size());
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Value at the p-th percentile of a copy of xs, index ceil(p/100 * n) - 1.
double percentile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    const auto n = static_cast<double>(xs.size());
    auto idx = static_cast<long long>(std::ceil(p / 100.0 * n)) - 1;
    if (idx < 0) idx = 0;
    if (idx >= static_cast<long long>(xs.size())) idx = static_cast<long long>(xs.size()) - 1;
    return xs[static_cast<size_t>(idx)];
}

std::uint64_t mix_seeds(std::uint64_t a, std::uint64_t b) {
    return a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
}

int argmax_strict(const std::vector<double>& vals) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(vals.size()); ++i)
        if (vals[i] > vals[best]) best = i;
    return best;
}

}  // namespace

double ContextBuilder::Stat::push(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
    if (n < 2) return 0.0;
    const double sd = std::sqrt(m2 / n);
    if (sd < 1e-12) return 0.0;
    return (x - mean) / sd;
}

Context ContextBuilder::build(const ChatTranscript& t, int full_len,
                              const DominantTopics& dt, const Document& doc) {
    Context x;
    x.length = static_cast<double>(t.word_count());
    if (full_len > 0) {
        x.length_fraction = std::clamp(x.length / full_len, 0.0, 1.0);
    }
    if (!dt.entries.empty()) {
        x.dominant_topic_id = dt.entries.front().topic_id;
        x.dominant_topic_contribution = dt.entries.front().weight;
    }
    double kw = 0.0;
    for (const auto& e : dt.entries) kw += static_cast<double>(e.keywords.size());
    x.num_dominant_keywords = kw;
    x.num_document_words = static_cast<double>(doc.tokens.size());

    const double raw[kNumerics] = {x.length, x.length_fraction,
                                   x.dominant_topic_contribution,
                                   x.num_dominant_keywords, x.num_document_words};
    x.features.assign(feature_dim(), 0.0);
    for (int i = 0; i < kNumerics; ++i) x.features[i] = stats_[i].push(raw[i]);

    int slot = kTopicSlots - 1;  // "none"
    if (x.dominant_topic_id >= 0 && x.dominant_topic_id < kTopicSlots - 1)
        slot = x.dominant_topic_id;
    x.features[kNumerics + slot] = 1.0;
    x.features[feature_dim() - 1] = 1.0;  // bias
    return x;
}

const char* policy_kind_name(PolicyKind k) {
    switch (k) {
        case PolicyKind::EpsilonGreedy: return "epsilon_greedy";
        case PolicyKind::ExploreFirst: return "explore_first";
        case PolicyKind::Softmax: return "softmax";
        case PolicyKind::AdaptiveGreedy: return "adaptive_greedy";
        case PolicyKind::LogisticUCB: return "logistic_ucb";
        case PolicyKind::BootstrappedUCB: return "bootstrapped_ucb";
        case PolicyKind::BootstrappedTS: return "bootstrapped_ts";
    }
    return "unknown";
}

std::optional<PolicyKind> policy_kind_from(const std::string& name) {
    std::string low;
    for (char c : name)
        low += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (PolicyKind k : all_policy_kinds())
        if (low == policy_kind_name(k)) return k;
    return std::nullopt;
}

std::vector<PolicyKind> all_policy_kinds() {
    return {PolicyKind::EpsilonGreedy,  PolicyKind::ExploreFirst,
            PolicyKind::Softmax,        PolicyKind::AdaptiveGreedy,
            PolicyKind::LogisticUCB,    PolicyKind::BootstrappedUCB,
            PolicyKind::BootstrappedTS};
}

const char* reward_metric_name(RewardMetric m) {
    return m == RewardMetric::BLEU ? "bleu" : "rouge_l";
}

std::optional<RewardMetric> reward_metric_from(const std::string& name) {
    std::string low;
    for (char c : name)
        low += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "bleu") return RewardMetric::BLEU;
    if (low == "rouge_l" || low == "rougel") return RewardMetric::ROUGE_L;
    return std::nullopt;
}

double OnlineLogit::predict(const std::vector<double>& x) const {
    return sigmoid(dot_min(w, x));
}

void OnlineLogit::update(const std::vector<double>& x, double target, double lr,
                         double lambda) {
    const double p = predict(x);
    const double shrink = lambda / static_cast<double>(n_seen + 1);
    const size_t n = std::min(w.size(), x.size());
    for (size_t i = 0; i < n; ++i) w[i] -= lr * ((p - target) * x[i] + shrink * w[i]);
    for (size_t i = n; i < w.size(); ++i) w[i] -= lr * shrink * w[i];
    ++n_seen;
}

PolicyState::PolicyState(const PolicyConfig& c)
    : cfg(c),
      Q(c.num_arms, 0.0),
      N_arm(c.num_arms, 0),
      rng(c.rng_seed) {
    const bool bootstrapped =
        cfg.kind == PolicyKind::BootstrappedUCB || cfg.kind == PolicyKind::BootstrappedTS;
    if (bootstrapped) {
        replicas.assign(cfg.num_arms,
                        std::vector<OnlineLogit>(cfg.bootstrap_replicas, OnlineLogit(cfg.dim)));
    } else {
        models.assign(cfg.num_arms, OnlineLogit(cfg.dim));
        if (cfg.kind == PolicyKind::LogisticUCB) {
            // Per-arm inverse of A = lambda*I, flattened row-major.
            std::vector<double> eye(static_cast<size_t>(cfg.dim) * cfg.dim, 0.0);
            for (int i = 0; i < cfg.dim; ++i)
                eye[static_cast<size_t>(i) * cfg.dim + i] = 1.0 / cfg.l2_lambda;
            a_inv.assign(cfg.num_arms, eye);
        }
    }
}

double PolicyState::predict(int arm, const std::vector<double>& x) const {
    if (!replicas.empty()) {
        double sum = 0.0;
        for (const auto& r : replicas[arm]) sum += r.predict(x);
        return sum / replicas[arm].size();
    }
    return models[arm].predict(x);
}

double PolicyState::ucb_bonus(int arm, const std::vector<double>& x) const {
    if (a_inv.empty()) return 0.0;
    const auto& inv = a_inv[arm];
    const int d = cfg.dim;
    double quad = 0.0;
    for (int i = 0; i < d; ++i) {
        if (x[i] == 0.0) continue;
        double row = 0.0;
        for (int j = 0; j < d; ++j) row += inv[static_cast<size_t>(i) * d + j] * x[j];
        quad += x[i] * row;
    }
    return cfg.ucb_alpha * std::sqrt(std::max(quad, 0.0));
}

int choose(PolicyState& ps, const Context& x) {
    const int K = ps.cfg.num_arms;
    if (K < 1) throw Error(ErrorCode::Uninitialized, "policy has no arms configured");
    if (static_cast<int>(x.features.size()) != ps.cfg.dim)
        throw Error(ErrorCode::DimensionMismatch, "context feature size != policy dim");

    switch (ps.cfg.kind) {
        case PolicyKind::EpsilonGreedy: {
            double eps = ps.cfg.epsilon;
            if (ps.cfg.epsilon_decay) eps /= std::sqrt(static_cast<double>(ps.N + 1));
            if (ps.rng.uniform() < eps) return ps.rng.uniform_int(K);
            std::vector<double> preds(K);
            for (int a = 0; a < K; ++a) preds[a] = ps.predict(a, x.features);
            return argmax_strict(preds);
        }
        case PolicyKind::ExploreFirst: {
            const long long horizon =
                static_cast<long long>(ps.cfg.explore_rounds_per_arm) * K;
            if (ps.N < horizon) return ps.rng.uniform_int(K);
            std::vector<double> preds(K);
            for (int a = 0; a < K; ++a) preds[a] = ps.predict(a, x.features);
            return argmax_strict(preds);
        }
        case PolicyKind::Softmax: {
            std::vector<double> preds(K);
            for (int a = 0; a < K; ++a) preds[a] = ps.predict(a, x.features);
            if (ps.cfg.tau <= 0.0) return argmax_strict(preds);
            const double mx = *std::max_element(preds.begin(), preds.end());
            std::vector<double> w(K);
            double total = 0.0;
            for (int a = 0; a < K; ++a) {
                w[a] = std::exp((preds[a] - mx) / ps.cfg.tau);
                total += w[a];
            }
            const double u = ps.rng.uniform() * total;
            double cum = 0.0;
            for (int a = 0; a < K; ++a) {
                cum += w[a];
                if (u < cum) return a;
            }
            return K - 1;
        }
        case PolicyKind::AdaptiveGreedy: {
            std::vector<double> preds(K);
            for (int a = 0; a < K; ++a) preds[a] = ps.predict(a, x.features);
            const int best = argmax_strict(preds);
            const double maxp = preds[best];
            int pick;
            if (ps.recent_max_pred.empty()) {
                pick = ps.rng.uniform_int(K);
            } else {
                const double threshold =
                    percentile({ps.recent_max_pred.begin(), ps.recent_max_pred.end()},
                               ps.cfg.adaptive_percentile);
                pick = maxp > threshold ? best : ps.rng.uniform_int(K);
            }
            ps.recent_max_pred.push_back(maxp);
            while (static_cast<int>(ps.recent_max_pred.size()) > ps.cfg.adaptive_window)
                ps.recent_max_pred.pop_front();
            return pick;
        }
        case PolicyKind::LogisticUCB: {
            std::vector<double> scores(K);
            for (int a = 0; a < K; ++a)
                scores[a] = ps.predict(a, x.features) + ps.ucb_bonus(a, x.features);
            return argmax_strict(scores);
        }
        case PolicyKind::BootstrappedUCB: {
            std::vector<double> scores(K);
            for (int a = 0; a < K; ++a) {
                std::vector<double> preds;
                preds.reserve(ps.replicas[a].size());
                for (const auto& r : ps.replicas[a]) preds.push_back(r.predict(x.features));
                scores[a] = percentile(std::move(preds), 80.0);
            }
            return argmax_strict(scores);
        }
        case PolicyKind::BootstrappedTS: {
            std::vector<double> scores(K);
            for (int a = 0; a < K; ++a) {
                const int b = ps.rng.uniform_int(static_cast<int>(ps.replicas[a].size()));
                scores[a] = ps.replicas[a][b].predict(x.features);
            }
            return argmax_strict(scores);
        }
    }
    throw Error(ErrorCode::ConfigError, "unknown policy kind");
}

void update(PolicyState& ps, const Context& x, int arm, double reward) {
    if (ps.cfg.num_arms < 1)
        throw Error(ErrorCode::Uninitialized, "policy has no arms configured");
    if (arm < 0 || arm >= ps.cfg.num_arms)
        throw Error(ErrorCode::DimensionMismatch, "arm index out of range");
    if (!(reward >= 0.0 && reward <= 1.0))
        throw Error(ErrorCode::RewardOutOfRange,
                    "reward must lie in [0, 1], got " + std::to_string(reward));
    if (static_cast<int>(x.features.size()) != ps.cfg.dim)
        throw Error(ErrorCode::DimensionMismatch, "context feature size != policy dim");

    ++ps.N_arm[arm];
    ps.Q[arm] += (reward - ps.Q[arm]) / ps.N_arm[arm];
    ++ps.N;
    ps.AMS += (reward - ps.AMS) / ps.N;

    if (!ps.replicas.empty()) {
        for (auto& replica : ps.replicas[arm]) {
            const int times = ps.rng.poisson1();
            for (int i = 0; i < times; ++i)
                replica.update(x.features, reward, ps.cfg.learning_rate, ps.cfg.l2_lambda);
        }
        return;
    }

    ps.models[arm].update(x.features, reward, ps.cfg.learning_rate, ps.cfg.l2_lambda);
    if (ps.cfg.kind == PolicyKind::LogisticUCB) {
        auto& inv = ps.a_inv[arm];
        const int d = ps.cfg.dim;
        std::vector<double> u(d, 0.0);
        for (int i = 0; i < d; ++i) {
            double row = 0.0;
            for (int j = 0; j < d; ++j) row += inv[static_cast<size_t>(i) * d + j] * x.features[j];
            u[i] = row;
        }
        double denom = 1.0;
        for (int i = 0; i < d; ++i) denom += x.features[i] * u[i];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                inv[static_cast<size_t>(i) * d + j] -= u[i] * u[j] / denom;
    }
}

BanditReport run_bandit(PolicyState& policy, const std::vector<Arm*>& arms,
                        const std::vector<BanditPair>& pairs, RewardMetric metric,
                        const BanditOptions& opts) {
    if (arms.empty()) throw Error(ErrorCode::EmptyInput, "no arms supplied");
    if (pairs.empty()) throw Error(ErrorCode::EmptyInput, "no transcript pairs supplied");
    if (policy.cfg.num_arms != static_cast<int>(arms.size()))
        throw Error(ErrorCode::DimensionMismatch, "policy arm count != arms supplied");
    const auto* matrix = opts.score_matrix;
    if (matrix) {
        if (matrix->size() != pairs.size())
            throw Error(ErrorCode::DimensionMismatch, "score matrix rows != pairs");
        for (const auto& row : *matrix)
            if (row.size() != arms.size())
                throw Error(ErrorCode::DimensionMismatch, "score matrix row width != arms");
    }
    if (opts.prefilter_zero && !matrix)
        throw Error(ErrorCode::ConfigError, "prefilter_zero requires a score matrix");

    policy.reset_rng(mix_seeds(opts.run_seed, policy.cfg.rng_seed));
    for (Arm* arm : arms)
        arm->reset_rng(opts.run_seed ^
                       (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(arm->id() + 1)));

    std::vector<size_t> rows;
    rows.reserve(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (opts.prefilter_zero) {
            const auto& r = (*matrix)[i];
            if (std::none_of(r.begin(), r.end(), [](double v) { return v > 0.0; })) continue;
        }
        rows.push_back(i);
    }

    ContextBuilder builder;
    BanditReport report;
    report.kind = policy.cfg.kind;
    report.trajectory.reserve(rows.size());

    long long round = 0;
    for (size_t i : rows) {
        const BanditPair& pair = pairs[i];
        const Context x = builder.build(pair.transcript, pair.full_len, pair.dt, pair.doc);
        const int a = choose(policy, x);

        double r = 0.0;
        if (matrix) {
            r = (*matrix)[i][static_cast<size_t>(a)];
        } else if (arms[a]->direct_reward()) {
            r = arms[a]->reward(x);
        } else {
            try {
                const std::string text =
                    arms[a]->summarize(pair.transcript, opts.max_sentences, &x);
                const auto cand = metric_tokens(text);
                const auto ref = metric_tokens(pair.extracted_summary);
                r = metric == RewardMetric::BLEU ? bleu(cand, ref)
                                                 : rouge(cand, ref, RougeVariant::RL).f1;
            } catch (const Error& e) {
                if (opts.abort_on_arm_failure)
                    throw Error(ErrorCode::ArmFailure,
                                "arm " + arms[a]->name() + " failed: " + e.what());
                r = 0.0;
            }
        }
        r = std::clamp(r, 0.0, 1.0);

        update(policy, x, a, r);
        ++round;
        report.trajectory.push_back({round, a, r, policy.AMS});
    }

    report.q = policy.Q;
    report.n_arm = policy.N_arm;
    report.ams = policy.AMS;
    report.best_arm = argmax_strict(policy.Q);
    return report;
}

ComparisonResult compare_policies(const std::vector<PolicyConfig>& policies,
                                  const std::vector<Arm*>& arms,
                                  const std::vector<BanditPair>& pairs, RewardMetric metric,
                                  const std::vector<std::uint64_t>& seeds,
                                  const BanditOptions& base) {
    if (policies.empty()) throw Error(ErrorCode::EmptyInput, "no policies supplied");
    if (seeds.empty()) throw Error(ErrorCode::EmptyInput, "no seeds supplied");

    ComparisonResult result;
    result.reports.resize(policies.size());

    for (size_t p = 0; p < policies.size(); ++p) {
        for (std::uint64_t seed : seeds) {
            std::vector<size_t> perm(pairs.size());
            std::iota(perm.begin(), perm.end(), size_t{0});
            Rng shuffle_rng(seed);
            for (size_t i = perm.size(); i > 1; --i) {
                const size_t j = static_cast<size_t>(shuffle_rng.uniform_int(static_cast<int>(i)));
                std::swap(perm[i - 1], perm[j]);
            }

            std::vector<BanditPair> shuffled;
            shuffled.reserve(pairs.size());
            std::vector<std::vector<double>> shuffled_matrix;
            for (size_t idx : perm) shuffled.push_back(pairs[idx]);

            BanditOptions opts = base;
            opts.run_seed = seed;
            if (base.score_matrix) {
                shuffled_matrix.reserve(perm.size());
                for (size_t idx : perm) shuffled_matrix.push_back((*base.score_matrix)[idx]);
                opts.score_matrix = &shuffled_matrix;
            }

            PolicyConfig cfg = policies[p];
            if (cfg.num_arms == 0) cfg.num_arms = static_cast<int>(arms.size());
            PolicyState ps(cfg);
            result.reports[p].push_back(run_bandit(ps, arms, shuffled, metric, opts));
        }
    }

    for (size_t p = 0; p < policies.size(); ++p) {
        PolicyCurve curve;
        curve.kind = policies[p].kind;
        const auto& runs = result.reports[p];
        size_t rounds = runs.empty() ? 0 : runs.front().trajectory.size();
        for (const auto& r : runs) rounds = std::min(rounds, r.trajectory.size());
        curve.mean_ams.resize(rounds, 0.0);
        for (const auto& r : runs)
            for (size_t i = 0; i < rounds; ++i) curve.mean_ams[i] += r.trajectory[i].ams;
        for (double& v : curve.mean_ams) v /= static_cast<double>(runs.size());
        result.curves.push_back(std::move(curve));
    }
    return result;
}

}  // namespace chatsumm
