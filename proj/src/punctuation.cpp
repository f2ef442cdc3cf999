#include "chatsumm/punctuation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chatsumm/error.hpp"

#include <httplib.h>
#include <json.hpp>

namespace chatsumm {

const char* punct_label_name(PunctLabel l) {
    switch (l) {
        case PunctLabel::O: return "O";
        case PunctLabel::Comma: return "COMMA";
        case PunctLabel::Period: return "PERIOD";
        case PunctLabel::Question: return "QUESTION";
    }
    return "O";
}

std::optional<PunctLabel> punct_label_from(const std::string& name) {
    if (name == "O") return PunctLabel::O;
    if (name == "COMMA") return PunctLabel::Comma;
    if (name == "PERIOD") return PunctLabel::Period;
    if (name == "QUESTION") return PunctLabel::Question;
    return std::nullopt;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                tokens.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

namespace {

std::optional<PunctLabel> punct_class(char c) {
    switch (c) {
        case ',':
        case ':': return PunctLabel::Comma;
        case '.':
        case ';':
        case '!': return PunctLabel::Period;
        case '?': return PunctLabel::Question;
        default: return std::nullopt;
    }
}

}  // namespace

std::pair<std::string, std::vector<PunctLabel>> strip_punctuation(const std::string& text) {
    std::vector<std::string> tokens;
    std::vector<PunctLabel> labels;
    std::string cur;
    auto flush = [&](PunctLabel l) {
        if (!cur.empty()) {
            tokens.push_back(cur);
            labels.push_back(l);
            cur.clear();
        } else if (l != PunctLabel::O && !labels.empty() && labels.back() == PunctLabel::O) {
            labels.back() = l;
        }
    };
    for (char raw : text) {
        unsigned char uc = static_cast<unsigned char>(raw);
        if (std::isspace(uc)) {
            flush(PunctLabel::O);
        } else if (auto cls = punct_class(raw)) {
            flush(*cls);
        } else {
            cur += static_cast<char>(std::tolower(uc));
        }
    }
    flush(PunctLabel::O);

    std::string clean;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) clean += ' ';
        clean += tokens[i];
    }
    return {clean, labels};
}

namespace {

void capitalize_first_alpha(std::string& token) {
    for (char& c : token) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isalpha(uc)) {
            c = static_cast<char>(std::toupper(uc));
            return;
        }
        if (std::isdigit(uc)) return;
    }
}

}  // namespace

PunctuatedText restore(const std::string& text, PunctMode mode, Predictor& predictor,
                       int segment_size) {
    if (segment_size < 8)
        throw Error(ErrorCode::SegmentSizeInvalid,
                    "segment_size " + std::to_string(segment_size) + " below minimum 8");

    PunctuatedText out;
    out.mode = mode;
    std::vector<std::string> tokens = whitespace_tokens(text);
    if (tokens.empty()) return out;
    const int n = static_cast<int>(tokens.size());

    std::unordered_map<std::string, int> vocab;
    std::vector<std::string> id_to_token;
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) {
        auto [it, inserted] = vocab.try_emplace(tokens[i], static_cast<int>(id_to_token.size()));
        if (inserted) id_to_token.push_back(tokens[i]);
        ids[i] = it->second;
    }

    const int stride = segment_size - segment_size / 4;
    std::vector<Segment> segments;
    for (int start = 0;;) {
        int end = std::min(n, start + segment_size);
        Segment s;
        s.start = start;
        s.overlap = segments.empty() ? 0 : segments.back().start + segment_size - start;
        s.token_ids.assign(ids.begin() + start, ids.begin() + end);
        segments.push_back(std::move(s));
        if (end >= n) break;
        start += stride;
    }

    std::vector<std::vector<PunctLabel>> predictions;
    try {
        predictions = predictor.predict(segments, id_to_token);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::PredictorFailure, e.what());
    }
    if (predictions.size() != segments.size())
        throw Error(ErrorCode::PredictorFailure,
                    "predictor returned " + std::to_string(predictions.size()) +
                        " label lists for " + std::to_string(segments.size()) + " segments");
    for (size_t s = 0; s < segments.size(); ++s)
        if (predictions[s].size() != segments[s].token_ids.size())
            throw Error(ErrorCode::PredictorFailure,
                        "segment " + std::to_string(s) + " labels " +
                            std::to_string(predictions[s].size()) + " != tokens " +
                            std::to_string(segments[s].token_ids.size()));

    // Overlapped positions keep the label from the segment where the token is
    // most central; strict improvement keeps the earlier segment on ties.
    std::vector<PunctLabel> labels(n, PunctLabel::O);
    std::vector<int> best(n, -1);
    for (size_t s = 0; s < segments.size(); ++s) {
        const int width = static_cast<int>(segments[s].token_ids.size());
        for (int i = 0; i < width; ++i) {
            int g = segments[s].start + i;
            int centrality = std::min(i, width - 1 - i);
            if (centrality > best[g]) {
                best[g] = centrality;
                labels[g] = predictions[s][i];
            }
        }
    }

    if (mode == PunctMode::PeriodsOnly) {
        for (auto& l : labels) {
            if (l == PunctLabel::Comma) l = PunctLabel::O;
            else if (l == PunctLabel::Question) l = PunctLabel::Period;
        }
    }

    std::string merged;
    bool capitalize = true;
    for (int i = 0; i < n; ++i) {
        std::string tok = tokens[i];
        if (capitalize) capitalize_first_alpha(tok);
        capitalize = false;
        if (i) merged += ' ';
        merged += tok;
        switch (labels[i]) {
            case PunctLabel::Comma: merged += ','; break;
            case PunctLabel::Period:
                merged += '.';
                capitalize = true;
                break;
            case PunctLabel::Question:
                merged += '?';
                capitalize = true;
                break;
            case PunctLabel::O: break;
        }
    }

    out.text = std::move(merged);
    out.labels = std::move(labels);
    return out;
}

namespace {

const std::unordered_set<std::string>& interrogative_openers() {
    static const std::unordered_set<std::string> words = {
        "what", "why",  "how",  "when",  "where", "which", "who",   "whom",
        "do",   "does", "did",  "can",   "could", "would", "will",  "shall",
        "should", "is", "are",  "was",   "were",  "am",    "have",  "has",
        "had",  "may",  "might", "must",
    };
    return words;
}

const std::unordered_set<std::string>& clause_conjunctions() {
    static const std::unordered_set<std::string> words = {
        "but",   "because", "however", "although", "though",
        "since", "unless",  "whereas", "while",
    };
    return words;
}

std::string lower_copy(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::vector<PunctLabel> rule_predict(const Segment& segment,
                                     const std::vector<std::string>& id_to_token,
                                     const RuleOptions& opts) {
    const int width = static_cast<int>(segment.token_ids.size());
    std::vector<PunctLabel> labels(width, PunctLabel::O);
    if (width == 0) return labels;

    std::set<int> boundaries(opts.turn_boundaries.begin(), opts.turn_boundaries.end());
    auto token_at = [&](int i) -> std::string {
        int id = segment.token_ids[i];
        if (id < 0 || id >= static_cast<int>(id_to_token.size())) return {};
        return lower_copy(id_to_token[id]);
    };

    int run = 0;
    int clause_start = 0;
    for (int i = 0; i < width; ++i) {
        ++run;
        PunctLabel lab = PunctLabel::O;
        if (i + 1 < width && clause_conjunctions().count(token_at(i + 1))) lab = PunctLabel::Comma;
        if (boundaries.count(segment.start + i) || run >= opts.max_run) {
            lab = interrogative_openers().count(token_at(clause_start)) ? PunctLabel::Question
                                                                        : PunctLabel::Period;
        }
        if (lab != PunctLabel::O) run = 0;
        if (lab == PunctLabel::Period || lab == PunctLabel::Question) clause_start = i + 1;
        labels[i] = lab;
    }
    return labels;
}

std::vector<std::vector<PunctLabel>> RulePredictor::predict(
    const std::vector<Segment>& segments, const std::vector<std::string>& id_to_token) {
    std::vector<std::vector<PunctLabel>> out;
    out.reserve(segments.size());
    for (const auto& s : segments) out.push_back(rule_predict(s, id_to_token, opts_));
    return out;
}

std::vector<std::vector<PunctLabel>> OraclePredictor::predict(
    const std::vector<Segment>& segments, const std::vector<std::string>&) {
    std::vector<std::vector<PunctLabel>> out;
    out.reserve(segments.size());
    for (const auto& s : segments) {
        std::vector<PunctLabel> labels(s.token_ids.size(), PunctLabel::O);
        for (size_t i = 0; i < s.token_ids.size(); ++i) {
            size_t g = static_cast<size_t>(s.start) + i;
            if (g < labels_.size()) labels[i] = labels_[g];
        }
        out.push_back(std::move(labels));
    }
    return out;
}

std::vector<std::vector<PunctLabel>> RemotePredictor::predict(
    const std::vector<Segment>& segments, const std::vector<std::string>& id_to_token) {
    httplib::Client cli(cfg_.host, cfg_.port);
    auto whole = static_cast<time_t>(cfg_.timeout_sec);
    auto micros = static_cast<time_t>((cfg_.timeout_sec - whole) * 1e6);
    cli.set_connection_timeout(whole, micros);
    cli.set_read_timeout(whole, micros);

    std::vector<std::vector<PunctLabel>> out;
    for (const auto& seg : segments) {
        nlohmann::json tokens = nlohmann::json::array();
        for (int id : seg.token_ids) tokens.push_back(id_to_token[id]);
        const std::string body = nlohmann::json{{"tokens", tokens}}.dump();

        httplib::Result res;
        int attempts = std::max(1, cfg_.retries);
        for (int attempt = 0; attempt < attempts; ++attempt) {
            res = cli.Post(cfg_.path, body, "application/json");
            if (res && res->status >= 200 && res->status < 300) break;
        }
        if (!res)
            throw Error(ErrorCode::Timeout, "punctuator " + cfg_.host + ":" +
                                                std::to_string(cfg_.port) + " unreachable");
        if (res->status < 200 || res->status >= 300)
            throw Error(ErrorCode::ProtocolError,
                        "status " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 120));

        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("labels") || !parsed["labels"].is_array())
            throw Error(ErrorCode::ProtocolError, "malformed punctuator response");
        if (parsed["labels"].size() != seg.token_ids.size())
            throw Error(ErrorCode::ProtocolError,
                        "got " + std::to_string(parsed["labels"].size()) + " labels for " +
                            std::to_string(seg.token_ids.size()) + " tokens");

        std::vector<PunctLabel> labels;
        for (const auto& l : parsed["labels"]) {
            auto lab = l.is_string() ? punct_label_from(l.get<std::string>()) : std::nullopt;
            if (!lab) throw Error(ErrorCode::ProtocolError, "unknown label in response");
            labels.push_back(*lab);
        }
        out.push_back(std::move(labels));
    }
    return out;
}

std::unique_ptr<Predictor> remote_predict(const RemotePredictorConfig& cfg) {
    return std::make_unique<RemotePredictor>(cfg);
}

}  // namespace chatsumm
