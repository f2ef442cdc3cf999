#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chatsumm {

enum class ChannelKind { Full, Customer, Agent };

const char* channel_kind_name(ChannelKind kind);

/// One dialog turn. `index` is the 0-based position in the conversation.
struct Utterance {
    int index = 0;
    std::string speaker_id;
    std::string text;

    bool operator==(const Utterance&) const = default;
};

struct ChatTranscript {
    std::string id;
    std::vector<Utterance> utterances;
    ChannelKind channel_kind = ChannelKind::Full;

    /// Total word count over all utterances (whitespace tokens).
    int word_count() const;
};

struct Sentence {
    int index = 0;
    std::string text;

    bool operator==(const Sentence&) const = default;
};

enum class SpeakerRole { Customer, Agent };

/// speaker_id -> role. Any speaker not mapped is a hard error in
/// separate_channels; non-customer speakers collapse onto the agent channel
/// through the mapping itself.
using RoleMap = std::map<std::string, SpeakerRole>;

/// Parses `speaker=customer|agent` lines.
RoleMap parse_role_map(std::istream& in);
RoleMap load_role_map(const std::string& path);

/// Reads line-delimited JSON records:
///   {"id": "...", "utterances": [{"speaker": "...", "text": "..."}, ...]}
/// Throws MalformedRecord with the offending line number, EmptyInput when the
/// stream holds no records.
std::vector<ChatTranscript> parse_transcripts(std::istream& in);
std::vector<ChatTranscript> load_transcripts(const std::string& path);

/// Splits a transcript into customer and agent transcripts. Utterances keep
/// their original indices so the two outputs partition the input.
std::pair<ChatTranscript, ChatTranscript> separate_channels(const ChatTranscript& t,
                                                            const RoleMap& roles);

/// Concatenates the utterance texts of a transcript, inserting "." between
/// utterances that do not already end in terminal punctuation.
std::string transcript_text(const ChatTranscript& t);

/// Splits at sentence-final '.', '?' or '!'. Delimiters stay attached to
/// their sentence; runs of delimiters are not split apart.
std::vector<Sentence> split_sentences(const std::string& text);

}  // namespace chatsumm
