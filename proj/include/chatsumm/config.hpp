#pragma once

#include <optional>
#include <string>

namespace chatsumm {

enum class TopicModelKind { LDA, LSI };

const char* topic_model_kind_name(TopicModelKind k);
std::optional<TopicModelKind> topic_model_kind_from(const std::string& name);

struct SummarizerConfig {
    // Unset searches both kinds during model selection.
    std::optional<TopicModelKind> topic_model_type;
    int number_of_topics = 5;
    int number_of_dominant_topics = 1;
    int punct_batch_size = 512;
    std::string term_extraction_method = "global";  // or "local"
    int summary_length = 5;
    std::string summary_table_name = "summary_results";
    double word_similarity_threshold = 0.5;
    double uniqueness_threshold = 0.5;
    int keywords_per_topic = 10;

    double lda_alpha = 0.1;
    double lda_beta = 0.01;
    int lda_iters = 200;
};

}  // namespace chatsumm
