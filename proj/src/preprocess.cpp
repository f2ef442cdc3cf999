#include "chatsumm/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "chatsumm/error.hpp"
#include "lexicon_data.hpp"

namespace chatsumm {

PreprocessConfig::PreprocessConfig()
    : stop_words(detail::bundled_stop_words()),
      contractions(detail::bundled_contractions()) {}

const std::set<std::string>& default_stop_words() { return detail::bundled_stop_words(); }
const std::map<std::string, std::string>& default_contractions() {
    return detail::bundled_contractions();
}

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Splits into maximal runs of [alnum'] so contraction keys survive, then
// replaces whole runs via the table.
std::string expand_contractions(const std::string& text,
                                const std::map<std::string, std::string>& table) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_word_char(c) || c == '\'') {
            size_t j = i;
            while (j < text.size() && (is_word_char(text[j]) || text[j] == '\'')) ++j;
            std::string run = text.substr(i, j - i);
            auto it = table.find(run);
            out += (it != table.end()) ? it->second : run;
            i = j;
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

std::vector<std::string> tokenize_alnum(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (is_word_char(c)) {
            cur += c;
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

bool ends_with(const std::string& s, const char* suffix) {
    size_t n = std::char_traits<char>::length(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

bool double_consonant(const std::string& s) {
    if (s.size() < 2) return false;
    char a = s[s.size() - 2], b = s[s.size() - 1];
    if (a != b) return false;
    static const std::string doubles = "bdfgmnprt";
    return doubles.find(b) != std::string::npos;
}

// Joins bigrams (and, on the second pass, trigrams) scoring
// (count - min_count) * distinct / (count_a * count_b) against the threshold.
std::vector<std::string> join_phrases(std::vector<std::string> tokens,
                                      const PreprocessConfig& cfg) {
    for (int pass = 0; pass < 2 && tokens.size() >= 2; ++pass) {
        std::unordered_map<std::string, int> unigram;
        std::unordered_map<std::string, int> bigram;
        for (const auto& t : tokens) ++unigram[t];
        for (size_t i = 0; i + 1 < tokens.size(); ++i)
            ++bigram[tokens[i] + "\x1f" + tokens[i + 1]];
        double distinct = static_cast<double>(unigram.size());

        std::vector<std::string> joined;
        joined.reserve(tokens.size());
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (i + 1 < tokens.size()) {
                int pair_count = bigram[tokens[i] + "\x1f" + tokens[i + 1]];
                if (pair_count >= cfg.phrase_min_count) {
                    double score = (pair_count - cfg.phrase_min_count) * distinct /
                                   (double(unigram[tokens[i]]) * unigram[tokens[i + 1]]);
                    if (score >= cfg.phrase_threshold) {
                        joined.push_back(tokens[i] + "_" + tokens[i + 1]);
                        ++i;
                        continue;
                    }
                }
            }
            joined.push_back(tokens[i]);
        }
        if (joined.size() == tokens.size()) break;  // nothing merged
        tokens = std::move(joined);
    }
    return tokens;
}

std::string lemmatize_word(const std::string& token) {
    const auto& exceptions = detail::lemma_exceptions();
    if (auto it = exceptions.find(token); it != exceptions.end()) return it->second;

    auto keep_if_short = [&](std::string lemma) {
        return lemma.size() > 4 ? lemma : token;
    };
    if (ends_with(token, "ies") && token.size() > 4)
        return keep_if_short(token.substr(0, token.size() - 3) + "y");
    if (ends_with(token, "sses") || ends_with(token, "xes") || ends_with(token, "ches") ||
        ends_with(token, "shes") || ends_with(token, "zes"))
        return keep_if_short(token.substr(0, token.size() - 2));
    if (ends_with(token, "eed")) return keep_if_short(token.substr(0, token.size() - 1));
    if (ends_with(token, "ing") && token.size() > 5) {
        std::string stem = token.substr(0, token.size() - 3);
        if (double_consonant(stem)) stem.pop_back();
        return keep_if_short(stem);
    }
    if (ends_with(token, "ed") && token.size() > 4) {
        std::string stem = token.substr(0, token.size() - 2);
        if (double_consonant(stem)) stem.pop_back();
        return keep_if_short(stem);
    }
    if (ends_with(token, "s") && !ends_with(token, "ss") && !ends_with(token, "us") &&
        !ends_with(token, "is"))
        return keep_if_short(token.substr(0, token.size() - 1));
    return token;
}

}  // namespace

std::string lemmatize(const std::string& token) {
    // Joined phrases are lemmatized per part.
    if (token.find('_') == std::string::npos) return lemmatize_word(token);
    std::string out;
    size_t start = 0;
    while (start <= token.size()) {
        size_t us = token.find('_', start);
        if (us == std::string::npos) us = token.size();
        if (!out.empty()) out += '_';
        out += lemmatize_word(token.substr(start, us - start));
        start = us + 1;
    }
    return out;
}

Document prepare_document_text(const std::string& transcript_id, const std::string& text,
                               const PreprocessConfig& cfg) {
    std::string lowered;
    lowered.reserve(text.size());
    for (char c : text) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    std::string expanded = expand_contractions(lowered, cfg.contractions);
    std::vector<std::string> tokens = tokenize_alnum(expanded);

    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (auto& t : tokens) {
        if (cfg.stop_words.count(t) || cfg.extra_stop_words.count(t)) continue;
        if (static_cast<int>(t.size()) <= cfg.short_word_max_len) continue;
        kept.push_back(std::move(t));
    }

    kept = join_phrases(std::move(kept), cfg);

    Document doc;
    doc.transcript_id = transcript_id;
    doc.tokens.reserve(kept.size());
    for (const auto& t : kept) {
        std::string lemma = lemmatize(t);
        if (cfg.pos_filter && detail::non_content_lemmas().count(lemma)) continue;
        if (cfg.stop_words.count(lemma) || cfg.extra_stop_words.count(lemma)) continue;
        doc.tokens.push_back(std::move(lemma));
    }
    return doc;
}

Document prepare_document(const ChatTranscript& t, const PreprocessConfig& cfg) {
    return prepare_document_text(t.id, transcript_text(t), cfg);
}

Corpus build_corpus(const std::vector<Document>& docs) {
    Corpus c;
    c.doc_count = static_cast<int>(docs.size());
    bool any = false;
    for (const auto& doc : docs) {
        std::map<int, int> counts;
        for (const auto& tok : doc.tokens) {
            any = true;
            auto [it, inserted] = c.vocabulary.try_emplace(
                tok, static_cast<int>(c.id_to_token.size()));
            if (inserted) c.id_to_token.push_back(tok);
            ++counts[it->second];
        }
        c.bows.emplace_back(counts.begin(), counts.end());
    }
    if (!any) throw Error(ErrorCode::EmptyCorpus, "all documents are empty");
    return c;
}

std::vector<std::pair<int, int>> bow_for(const Corpus& c, const Document& doc) {
    std::map<int, int> counts;
    for (const auto& tok : doc.tokens) {
        auto it = c.vocabulary.find(tok);
        if (it != c.vocabulary.end()) ++counts[it->second];
    }
    return {counts.begin(), counts.end()};
}

std::set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open word list " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.insert(line);
    }
    return out;
}

std::map<std::string, std::string> load_contraction_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open contraction table " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) continue;
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

}  // namespace chatsumm
