#include "chatsumm/topics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <set>
#include <unordered_map>

#include "chatsumm/error.hpp"
#include "chatsumm/rng.hpp"

#include <json.hpp>

namespace chatsumm {

const char* topic_model_kind_name(TopicModelKind k) {
    return k == TopicModelKind::LDA ? "LDA" : "LSI";
}

std::optional<TopicModelKind> topic_model_kind_from(const std::string& name) {
    std::string up;
    for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "LDA") return TopicModelKind::LDA;
    if (up == "LSI") return TopicModelKind::LSI;
    return std::nullopt;
}

namespace {

long long corpus_token_total(const Corpus& c) {
    long long total = 0;
    for (const auto& bow : c.bows)
        for (const auto& [w, count] : bow) total += count;
    return total;
}

#ifndef NDEBUG
void check_lda_counts(const std::vector<int>& n_kw, const std::vector<long long>& n_k,
                      const std::vector<long long>& corpus_counts, int K, int V) {
    for (int w = 0; w < V; ++w) {
        long long sum = 0;
        for (int k = 0; k < K; ++k) sum += n_kw[static_cast<size_t>(k) * V + w];
        assert(sum == corpus_counts[w]);
    }
    for (int k = 0; k < K; ++k) {
        long long sum = 0;
        for (int w = 0; w < V; ++w) sum += n_kw[static_cast<size_t>(k) * V + w];
        assert(sum == n_k[k]);
    }
}
#endif

}  // namespace

TopicModel fit_lda(const Corpus& c, int K, double alpha, double beta, int iters,
                   std::uint64_t seed) {
    if (K < 1) throw Error(ErrorCode::InvalidHyperparam, "K must be >= 1");
    if (alpha <= 0.0 || beta <= 0.0)
        throw Error(ErrorCode::InvalidHyperparam, "alpha and beta must be positive");
    if (iters < 0) throw Error(ErrorCode::InvalidHyperparam, "iters must be >= 0");
    const int V = static_cast<int>(c.id_to_token.size());
    const int D = static_cast<int>(c.bows.size());
    const long long total = corpus_token_total(c);
    if (D == 0 || V == 0 || total == 0)
        throw Error(ErrorCode::EmptyCorpus, "cannot fit LDA on an empty corpus");

    std::vector<int> words;
    words.reserve(total);
    std::vector<int> doc_begin(D + 1, 0);
    for (int d = 0; d < D; ++d) {
        for (const auto& [w, count] : c.bows[d])
            for (int i = 0; i < count; ++i) words.push_back(w);
        doc_begin[d + 1] = static_cast<int>(words.size());
    }

    std::vector<int> z(words.size());
    std::vector<int> n_dk(static_cast<size_t>(D) * K, 0);
    std::vector<int> n_kw(static_cast<size_t>(K) * V, 0);
    std::vector<long long> n_k(K, 0);

    Rng rng(seed);
    for (size_t i = 0; i < words.size(); ++i) z[i] = rng.uniform_int(K);
    for (int d = 0; d < D; ++d) {
        for (int i = doc_begin[d]; i < doc_begin[d + 1]; ++i) {
            ++n_dk[static_cast<size_t>(d) * K + z[i]];
            ++n_kw[static_cast<size_t>(z[i]) * V + words[i]];
            ++n_k[z[i]];
        }
    }

#ifndef NDEBUG
    std::vector<long long> corpus_counts(V, 0);
    for (int w : words) ++corpus_counts[w];
#endif

    const double vbeta = V * beta;
    std::vector<double> p(K);
    for (int iter = 0; iter < iters; ++iter) {
        for (int d = 0; d < D; ++d) {
            int* dk = n_dk.data() + static_cast<size_t>(d) * K;
            for (int i = doc_begin[d]; i < doc_begin[d + 1]; ++i) {
                const int w = words[i];
                const int old = z[i];
                --dk[old];
                --n_kw[static_cast<size_t>(old) * V + w];
                --n_k[old];

                double sum = 0.0;
                for (int k = 0; k < K; ++k) {
                    double val = (dk[k] + alpha) *
                                 (n_kw[static_cast<size_t>(k) * V + w] + beta) /
                                 (n_k[k] + vbeta);
                    sum += val;
                    p[k] = sum;
                }
                const double u = rng.uniform() * sum;
                int next = 0;
                while (next < K - 1 && p[next] <= u) ++next;

                z[i] = next;
                ++dk[next];
                ++n_kw[static_cast<size_t>(next) * V + w];
                ++n_k[next];
            }
        }
#ifndef NDEBUG
        check_lda_counts(n_kw, n_k, corpus_counts, K, V);
#endif
    }

    TopicModel m;
    m.kind = TopicModelKind::LDA;
    m.num_topics = K;
    m.vocabulary = c.id_to_token;
    m.rng_seed = seed;
    m.alpha = alpha;
    m.topic_word.assign(K, std::vector<double>(V, 0.0));
    for (int k = 0; k < K; ++k) {
        const double denom = n_k[k] + vbeta;
        for (int w = 0; w < V; ++w)
            m.topic_word[k][w] = (n_kw[static_cast<size_t>(k) * V + w] + beta) / denom;
    }
    return m;
}

namespace {

void subtract_projections(std::vector<double>& v,
                          const std::vector<std::vector<double>>& basis) {
    for (const auto& b : basis) {
        double dot = 0.0;
        for (size_t i = 0; i < v.size(); ++i) dot += v[i] * b[i];
        for (size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TopicModel fit_lsi(const Corpus& c, int K) {
    if (K < 1) throw Error(ErrorCode::InvalidHyperparam, "K must be >= 1");
    const int V = static_cast<int>(c.id_to_token.size());
    const int D = static_cast<int>(c.bows.size());
    if (D == 0 || V == 0 || corpus_token_total(c) == 0)
        throw Error(ErrorCode::EmptyCorpus, "cannot fit LSI on an empty corpus");

    std::vector<int> df(V, 0);
    for (const auto& bow : c.bows)
        for (const auto& [w, count] : bow) ++df[w];
    std::vector<double> idf(V);
    for (int w = 0; w < V; ++w) idf[w] = std::log((1.0 + D) / (1.0 + df[w])) + 1.0;

    // Sparse TF-IDF rows of the doc-term matrix A.
    std::vector<std::vector<std::pair<int, double>>> rows(D);
    for (int d = 0; d < D; ++d)
        for (const auto& [w, count] : c.bows[d]) rows[d].emplace_back(w, count * idf[w]);

    const int kmax = std::min({K, D, V});
    std::vector<std::vector<double>> topics;
    double first_eig = 0.0;
    std::vector<double> u(D), v2(V);

    for (int k = 0; k < kmax; ++k) {
        std::vector<double> v(V);
        Rng start(0x5D1F00D5ULL + static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL);
        for (int i = 0; i < V; ++i) v[i] = start.uniform() - 0.5;
        subtract_projections(v, topics);
        double n = norm2(v);
        if (n < 1e-12) break;
        for (double& x : v) x /= n;

        double eig = 0.0;
        bool dead = false;
        for (int it = 0; it < 1000; ++it) {
            std::fill(u.begin(), u.end(), 0.0);
            for (int d = 0; d < D; ++d) {
                double s = 0.0;
                for (const auto& [w, x] : rows[d]) s += x * v[w];
                u[d] = s;
            }
            std::fill(v2.begin(), v2.end(), 0.0);
            for (int d = 0; d < D; ++d) {
                if (u[d] == 0.0) continue;
                for (const auto& [w, x] : rows[d]) v2[w] += x * u[d];
            }
            subtract_projections(v2, topics);
            eig = norm2(v2);
            if (eig < 1e-12 || (k > 0 && eig <= first_eig * 1e-10)) {
                dead = true;
                break;
            }
            double delta = 0.0;
            for (int i = 0; i < V; ++i) {
                const double next = v2[i] / eig;
                delta = std::max(delta, std::abs(next - v[i]));
                v[i] = next;
            }
            if (delta <= 1e-8) break;
        }
        if (dead) break;
        if (k == 0) first_eig = eig;

        // Fix the sign so equal inputs give byte-identical models.
        int arg = 0;
        for (int i = 1; i < V; ++i)
            if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
        if (v[arg] < 0.0)
            for (double& x : v) x = -x;
        topics.push_back(std::move(v));
    }

    TopicModel m;
    m.kind = TopicModelKind::LSI;
    m.num_topics = static_cast<int>(topics.size());
    m.topic_word = std::move(topics);
    m.vocabulary = c.id_to_token;
    m.idf = std::move(idf);
    m.rank_deficient = m.num_topics < K;
    return m;
}

namespace {

std::vector<int> top_word_ids(const TopicModel& m, int topic, int count) {
    const auto& row = m.topic_word[topic];
    const bool by_abs = m.kind == TopicModelKind::LSI;
    std::vector<int> ids(row.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto value = [&](int w) { return by_abs ? std::abs(row[w]) : row[w]; };
    std::stable_sort(ids.begin(), ids.end(),
                     [&](int a, int b) { return value(a) > value(b); });
    if (static_cast<int>(ids.size()) > count) ids.resize(count);
    return ids;
}

}  // namespace

CoherenceReport coherence(const TopicModel& m, const Corpus& c, int top_n) {
    if (top_n < 2) throw Error(ErrorCode::InvalidHyperparam, "top_n must be >= 2");
    const int V = static_cast<int>(c.id_to_token.size());
    if (m.topic_word.empty() || static_cast<int>(m.topic_word[0].size()) != V)
        throw Error(ErrorCode::DimensionMismatch, "model vocabulary differs from corpus");
    const int D = static_cast<int>(c.bows.size());
    const int eff = std::min(top_n, V);

    std::vector<std::vector<int>> ranked(m.num_topics);
    std::set<int> needed;
    for (int k = 0; k < m.num_topics; ++k) {
        ranked[k] = top_word_ids(m, k, eff);
        needed.insert(ranked[k].begin(), ranked[k].end());
    }

    const int blocks = (D + 63) / 64;
    std::unordered_map<int, std::vector<std::uint64_t>> doc_bits;
    for (int w : needed) doc_bits[w].assign(blocks, 0);
    for (int d = 0; d < D; ++d) {
        for (const auto& [w, count] : c.bows[d]) {
            auto it = doc_bits.find(w);
            if (it != doc_bits.end()) it->second[d >> 6] |= 1ULL << (d & 63);
        }
    }
    auto doc_count = [&](const std::vector<std::uint64_t>& bits) {
        long long n = 0;
        for (auto b : bits) n += __builtin_popcountll(b);
        return n;
    };

    CoherenceReport rep;
    rep.kind = m.kind;
    rep.num_topics = m.num_topics;
    rep.per_topic.resize(m.num_topics);
    for (int k = 0; k < m.num_topics; ++k) {
        double sum = 0.0;
        for (int j = 1; j < static_cast<int>(ranked[k].size()); ++j) {
            const auto& bits_j = doc_bits[ranked[k][j]];
            const double dj = std::max<long long>(1, doc_count(bits_j));
            for (int i = 0; i < j; ++i) {
                const auto& bits_i = doc_bits[ranked[k][i]];
                long long dij = 0;
                for (int b = 0; b < blocks; ++b)
                    dij += __builtin_popcountll(bits_i[b] & bits_j[b]);
                sum += std::log((dij + 1.0) / dj);
            }
        }
        rep.per_topic[k] = sum;
    }
    rep.score = rep.per_topic.empty()
                    ? 0.0
                    : std::accumulate(rep.per_topic.begin(), rep.per_topic.end(), 0.0) /
                          rep.per_topic.size();
    return rep;
}

std::pair<TopicModel, CoherenceReport> select_optimal_model(const Corpus& c,
                                                            const SummarizerConfig& cfg,
                                                            std::uint64_t seed, int top_n) {
    if (cfg.number_of_topics < 1)
        throw Error(ErrorCode::InvalidHyperparam, "number_of_topics must be >= 1");

    std::vector<int> grid;
    if (cfg.number_of_topics >= 50) {
        grid.push_back(cfg.number_of_topics);
    } else {
        for (int k = cfg.number_of_topics; k <= 50; k += 5) grid.push_back(k);
    }
    std::vector<TopicModelKind> kinds;
    if (cfg.topic_model_type) kinds.push_back(*cfg.topic_model_type);
    else kinds = {TopicModelKind::LDA, TopicModelKind::LSI};

    using Fit = std::pair<TopicModel, CoherenceReport>;
    std::vector<std::future<Fit>> tasks;
    for (TopicModelKind kind : kinds) {
        for (int k : grid) {
            tasks.push_back(std::async(std::launch::async, [&c, &cfg, kind, k, seed, top_n] {
                TopicModel m = kind == TopicModelKind::LDA
                                   ? fit_lda(c, k, cfg.lda_alpha, cfg.lda_beta,
                                             cfg.lda_iters, seed)
                                   : fit_lsi(c, k);
                CoherenceReport rep = coherence(m, c, top_n);
                return Fit{std::move(m), std::move(rep)};
            }));
        }
    }

    std::optional<Fit> best;
    for (auto& t : tasks) {
        Fit fit = t.get();
        if (!best) {
            best = std::move(fit);
            continue;
        }
        const auto& [bm, br] = *best;
        const auto& [fm, fr] = fit;
        bool better = fr.score > br.score;
        if (fr.score == br.score) {
            if (fm.num_topics < bm.num_topics) better = true;
            else if (fm.num_topics == bm.num_topics &&
                     fm.kind == TopicModelKind::LDA && bm.kind == TopicModelKind::LSI)
                better = true;
        }
        if (better) best = std::move(fit);
    }
    return std::move(*best);
}

DominantTopics dominant_topics(const TopicModel& m, const std::string& transcript_id,
                               const std::vector<std::pair<int, int>>& bow, int N,
                               int top_m, std::uint64_t seed) {
    DominantTopics out;
    out.transcript_id = transcript_id;
    if (bow.empty() || N < 1 || m.num_topics == 0) return out;

    const int K = m.num_topics;
    const int V = static_cast<int>(m.topic_word[0].size());
    std::vector<double> weight(K, 0.0);

    if (m.kind == TopicModelKind::LDA) {
        std::vector<int> words;
        for (const auto& [w, count] : bow) {
            if (w < 0 || w >= V) continue;
            for (int i = 0; i < count; ++i) words.push_back(w);
        }
        if (words.empty()) return out;

        Rng rng(seed);
        std::vector<int> z(words.size());
        std::vector<int> n_dk(K, 0);
        for (size_t i = 0; i < words.size(); ++i) {
            z[i] = rng.uniform_int(K);
            ++n_dk[z[i]];
        }
        std::vector<double> p(K);
        for (int sweep = 0; sweep < 20; ++sweep) {
            for (size_t i = 0; i < words.size(); ++i) {
                --n_dk[z[i]];
                double sum = 0.0;
                for (int k = 0; k < K; ++k) {
                    sum += (n_dk[k] + m.alpha) * m.topic_word[k][words[i]];
                    p[k] = sum;
                }
                const double u = rng.uniform() * sum;
                int next = 0;
                while (next < K - 1 && p[next] <= u) ++next;
                z[i] = next;
                ++n_dk[next];
            }
        }
        const double denom = static_cast<double>(words.size()) + K * m.alpha;
        for (int k = 0; k < K; ++k) weight[k] = (n_dk[k] + m.alpha) / denom;
    } else {
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
            double proj = 0.0;
            for (const auto& [w, count] : bow) {
                if (w < 0 || w >= V) continue;
                const double idf = w < static_cast<int>(m.idf.size()) ? m.idf[w] : 1.0;
                proj += count * idf * m.topic_word[k][w];
            }
            weight[k] = std::abs(proj);
            total += weight[k];
        }
        if (total > 0.0)
            for (double& w : weight) w /= total;
        else
            for (double& w : weight) w = 1.0 / K;
    }

    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight[a] > weight[b]; });
    const int take = std::min(N, K);
    for (int i = 0; i < take; ++i) {
        TopicEntry e;
        e.topic_id = order[i];
        e.weight = weight[order[i]];
        e.keywords = topic_keywords(m, order[i], top_m);
        out.entries.push_back(std::move(e));
    }
    return out;
}

std::vector<std::string> topic_keywords(const TopicModel& m, int topic, int top_m) {
    std::vector<std::string> out;
    if (topic < 0 || topic >= m.num_topics || top_m < 1) return out;
    for (int w : top_word_ids(m, topic, top_m)) out.push_back(m.vocabulary[w]);
    return out;
}

std::vector<std::pair<int, int>> model_bow(const TopicModel& m, const Document& doc) {
    std::unordered_map<std::string, int> lookup;
    lookup.reserve(m.vocabulary.size());
    for (size_t i = 0; i < m.vocabulary.size(); ++i)
        lookup[m.vocabulary[i]] = static_cast<int>(i);
    std::map<int, int> counts;
    for (const auto& tok : doc.tokens) {
        auto it = lookup.find(tok);
        if (it != lookup.end()) ++counts[it->second];
    }
    return {counts.begin(), counts.end()};
}

void save_topic_model(const TopicModel& m, const std::string& path) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = topic_model_kind_name(m.kind);
    j["num_topics"] = m.num_topics;
    j["alpha"] = m.alpha;
    j["rng_seed"] = m.rng_seed;
    j["rank_deficient"] = m.rank_deficient;
    j["vocabulary"] = m.vocabulary;
    j["idf"] = m.idf;
    j["topic_word"] = m.topic_word;

    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write model to " + path);
    out << j.dump();
    if (!out) throw Error(ErrorCode::IoError, "failed writing model to " + path);
}

TopicModel load_topic_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open model file " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::MalformedRecord, "model file is not valid JSON: " + path);

    try {
        TopicModel m;
        auto kind = topic_model_kind_from(j.at("kind").get<std::string>());
        if (!kind) throw Error(ErrorCode::MalformedRecord, "unknown model kind");
        m.kind = *kind;
        m.num_topics = j.at("num_topics").get<int>();
        m.alpha = j.value("alpha", 0.1);
        m.rng_seed = j.value("rng_seed", std::uint64_t{0});
        m.rank_deficient = j.value("rank_deficient", false);
        m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
        m.idf = j.value("idf", std::vector<double>{});
        m.topic_word = j.at("topic_word").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(m.topic_word.size()) != m.num_topics)
            throw Error(ErrorCode::MalformedRecord, "topic_word rows do not match num_topics");
        for (const auto& row : m.topic_word)
            if (row.size() != m.vocabulary.size())
                throw Error(ErrorCode::MalformedRecord, "topic_word row width mismatch");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("model file: ") + e.what());
    }
}

}  // namespace chatsumm
