#include "chatsumm/transcript.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chatsumm/error.hpp"

namespace chatsumm {

const char* channel_kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Full: return "full";
        case ChannelKind::Customer: return "customer";
        case ChannelKind::Agent: return "agent";
    }
    return "full";
}

int ChatTranscript::word_count() const {
    int n = 0;
    for (const auto& u : utterances) {
        std::istringstream ss(u.text);
        std::string w;
        while (ss >> w) ++n;
    }
    return n;
}

RoleMap parse_role_map(std::istream& in) {
    RoleMap roles;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError,
                        "role map line " + std::to_string(line_no) + " lacks '='");
        std::string speaker = line.substr(start, eq - start);
        while (!speaker.empty() && (speaker.back() == ' ' || speaker.back() == '\t'))
            speaker.pop_back();
        std::string role = line.substr(eq + 1);
        role.erase(std::remove_if(role.begin(), role.end(),
                                  [](unsigned char c) { return std::isspace(c); }),
                   role.end());
        if (role == "customer") {
            roles[speaker] = SpeakerRole::Customer;
        } else if (role == "agent") {
            roles[speaker] = SpeakerRole::Agent;
        } else {
            throw Error(ErrorCode::ConfigError,
                        "role map line " + std::to_string(line_no) +
                            ": role must be customer or agent, got '" + role + "'");
        }
    }
    return roles;
}

RoleMap load_role_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open role map " + path);
    return parse_role_map(in);
}

std::vector<ChatTranscript> parse_transcripts(std::istream& in) {
    std::vector<ChatTranscript> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
            !j.contains("utterances") || !j["utterances"].is_array())
            throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line_no));
        ChatTranscript t;
        t.id = j["id"].get<std::string>();
        t.channel_kind = ChannelKind::Full;
        int idx = 0;
        for (const auto& ju : j["utterances"]) {
            if (!ju.is_object() || !ju.contains("speaker") || !ju.contains("text"))
                throw Error(ErrorCode::MalformedRecord,
                            "line " + std::to_string(line_no) + " utterance " +
                                std::to_string(idx));
            Utterance u;
            u.index = idx++;
            u.speaker_id = ju["speaker"].get<std::string>();
            u.text = ju["text"].get<std::string>();
            t.utterances.push_back(std::move(u));
        }
        out.push_back(std::move(t));
    }
    if (out.empty()) throw Error(ErrorCode::EmptyInput, "no transcript records");
    return out;
}

std::vector<ChatTranscript> load_transcripts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
    return parse_transcripts(in);
}

std::pair<ChatTranscript, ChatTranscript> separate_channels(const ChatTranscript& t,
                                                            const RoleMap& roles) {
    ChatTranscript customer{t.id, {}, ChannelKind::Customer};
    ChatTranscript agent{t.id, {}, ChannelKind::Agent};
    for (const auto& u : t.utterances) {
        auto it = roles.find(u.speaker_id);
        if (it == roles.end())
            throw Error(ErrorCode::UnknownSpeaker, "'" + u.speaker_id + "'");
        (it->second == SpeakerRole::Customer ? customer : agent).utterances.push_back(u);
    }
    return {std::move(customer), std::move(agent)};
}

namespace {

bool ends_in_terminal(const std::string& s) {
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (std::isspace(static_cast<unsigned char>(*it))) continue;
        return *it == '.' || *it == '?' || *it == '!';
    }
    return false;
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string transcript_text(const ChatTranscript& t) {
    std::string out;
    for (const auto& u : t.utterances) {
        std::string piece = trimmed(u.text);
        if (piece.empty()) continue;
        if (!out.empty()) {
            if (!ends_in_terminal(out)) out += '.';
            out += ' ';
        }
        out += piece;
    }
    return out;
}

std::vector<Sentence> split_sentences(const std::string& text) {
    std::vector<Sentence> out;
    auto is_delim = [](char c) { return c == '.' || c == '?' || c == '!'; };
    auto has_content = [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) {
            char c = text[i];
            if (!is_delim(c) && !std::isspace(static_cast<unsigned char>(c))) return true;
        }
        return false;
    };
    size_t start = 0;
    size_t i = 0;
    int index = 0;
    auto emit = [&](size_t b, size_t e) {
        if (!has_content(b, e)) return;
        std::string s = trimmed(text.substr(b, e - b));
        if (!s.empty()) out.push_back(Sentence{index++, std::move(s)});
    };
    while (i < text.size()) {
        if (is_delim(text[i])) {
            while (i + 1 < text.size() && is_delim(text[i + 1])) ++i;
            emit(start, i + 1);
            start = i + 1;
        }
        ++i;
    }
    emit(start, text.size());
    return out;
}

}  // namespace chatsumm
