#pragma once

#include <map>
#include <set>
#include <string>

namespace chatsumm::detail {

const std::set<std::string>& bundled_stop_words();
const std::map<std::string, std::string>& bundled_contractions();
const std::map<std::string, std::string>& lemma_exceptions();
/// Lemmas known to be non-content parts of speech (adverbs, conjunctions,
/// interjections, pronouns). Everything else is treated as noun/verb/adjective.
const std::set<std::string>& non_content_lemmas();

}  // namespace chatsumm::detail
