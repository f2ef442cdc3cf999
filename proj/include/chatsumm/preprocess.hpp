#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/transcript.hpp"

namespace chatsumm {

struct PreprocessConfig {
    /// Words dropped outright. Starts from the bundled list; extend via
    /// extra_stop_words or replace wholesale.
    std::set<std::string> stop_words;
    std::set<std::string> extra_stop_words;
    /// "can't" -> "can not" rewrites applied before tokenization.
    std::map<std::string, std::string> contractions;
    /// Tokens of length <= short_word_max_len are removed.
    int short_word_max_len = 4;
    /// Collocation joining: a pair is joined when count >= phrase_min_count and
    /// (count - min_count) * distinct_tokens / (count_a * count_b) >= threshold.
    int phrase_min_count = 5;
    double phrase_threshold = 10.0;
    /// Drop lemmas the bundled lexicon tags as non-content (adverbs,
    /// interjections, ...). Unknown lemmas pass.
    bool pos_filter = true;

    PreprocessConfig();
};

struct Document {
    std::string transcript_id;
    std::vector<std::string> tokens;
};

struct Corpus {
    std::map<std::string, int> vocabulary;    // token -> dense id
    std::vector<std::string> id_to_token;     // inverse of vocabulary
    std::vector<std::vector<std::pair<int, int>>> bows;  // (token_id, count), id-sorted
    int doc_count = 0;
};

/// Bundled tables, exposed so CLI overrides can start from them.
const std::set<std::string>& default_stop_words();
const std::map<std::string, std::string>& default_contractions();

/// Rule-based suffix stripping with an exception table. Never returns a lemma
/// of length <= 4 for a longer token; the original token is kept instead.
std::string lemmatize(const std::string& token);

Document prepare_document(const ChatTranscript& t, const PreprocessConfig& cfg);
Document prepare_document_text(const std::string& transcript_id, const std::string& text,
                               const PreprocessConfig& cfg);

/// Vocabulary ids assigned in first-occurrence order. Throws EmptyCorpus when
/// every document is empty.
Corpus build_corpus(const std::vector<Document>& docs);

/// Maps a document onto an existing vocabulary; unknown tokens are dropped.
std::vector<std::pair<int, int>> bow_for(const Corpus& c, const Document& doc);

std::set<std::string> load_word_list(const std::string& path);
std::map<std::string, std::string> load_contraction_table(const std::string& path);

}  // namespace chatsumm
