#include "chatsumm/arms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "chatsumm/error.hpp"

namespace chatsumm {

ExtractiveArm::ExtractiveArm(int id, std::string name, SummarizerConfig cfg,
                             SummarizerResources res)
    : Arm(id, std::move(name)), cfg_(std::move(cfg)), res_(std::move(res)) {}

std::string ExtractiveArm::summarize(const ChatTranscript& t, int max_sentences,
                                     const Context*) {
    SummarizerConfig cfg = cfg_;
    cfg.summary_length = max_sentences;
    return summarize_channel(t, cfg, res_).punctuated_text;
}

RemoteArm::RemoteArm(int id, std::string name, RemoteArmConfig cfg)
    : Arm(id, std::move(name)), cfg_(std::move(cfg)) {}

std::string RemoteArm::summarize(const ChatTranscript& t, int max_sentences,
                                 const Context*) {
    nlohmann::json body;
    body["id"] = t.id;
    body["text"] = transcript_text(t);
    body["channel"] = t.channel_kind == ChannelKind::Agent ? "agent" : "customer";
    body["max_sentences"] = max_sentences;
    const std::string payload = body.dump();

    httplib::Client cli(cfg_.host, cfg_.port);
    const auto whole = static_cast<time_t>(cfg_.timeout_sec);
    const auto micros = static_cast<time_t>((cfg_.timeout_sec - whole) * 1e6);
    cli.set_connection_timeout(whole, micros);
    cli.set_read_timeout(whole, micros);
    cli.set_write_timeout(whole, micros);

    const int attempts = std::max(1, cfg_.retries);
    bool last_was_connect = false;
    int last_status = 0;
    std::string last_body;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto res = cli.Post(cfg_.path.c_str(), payload, "application/json");
        if (!res) {
            last_was_connect = true;
            continue;
        }
        last_was_connect = false;
        last_status = res->status;
        last_body = res->body;
        if (res->status < 200 || res->status >= 300) continue;

        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("summary") ||
            !j["summary"].is_string())
            throw Error(ErrorCode::ProtocolError,
                        "summarizer returned a 2xx response without a summary field");
        return j["summary"].get<std::string>();
    }
    if (last_was_connect)
        throw Error(ErrorCode::Timeout, "summarizer at " + cfg_.host + ":" +
                                            std::to_string(cfg_.port) + " unreachable after " +
                                            std::to_string(attempts) + " attempts");
    throw Error(ErrorCode::ProtocolError,
                "summarizer replied " + std::to_string(last_status) + ": " +
                    last_body.substr(0, 120));
}

SimulatedArm::SimulatedArm(int id, std::string name, SimulatedArmSpec spec, bool direct)
    : Arm(id, std::move(name)), spec_(std::move(spec)), direct_(direct),
      rng_(spec_.rng_seed) {}

double SimulatedArm::mean_reward(const Context& x) const {
    double m = spec_.base_mean;
    const size_t n = std::min(spec_.context_coefficients.size(), x.features.size());
    for (size_t i = 0; i < n; ++i) m += spec_.context_coefficients[i] * x.features[i];
    return std::clamp(m, 0.0, 1.0);
}

double SimulatedArm::reward(const Context& x) {
    double r = mean_reward(x);
    if (spec_.noise_sd > 0.0) r += rng_.gaussian(0.0, spec_.noise_sd);
    return std::clamp(r, 0.0, 1.0);
}

void SimulatedArm::set_reference(const std::string& transcript_id, const std::string& text) {
    references_[transcript_id] = text;
}

std::string SimulatedArm::summarize(const ChatTranscript& t, int max_sentences,
                                    const Context* x) {
    static const Context kEmpty;
    double target = mean_reward(x ? *x : kEmpty);
    if (spec_.noise_sd > 0.0) target += rng_.gaussian(0.0, spec_.noise_sd);
    target = std::clamp(target, 0.0, 1.0);

    auto it = references_.find(t.id);
    const std::string ref = it != references_.end() ? it->second : transcript_text(t);
    std::istringstream in(ref);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);

    // A subsequence keeping fraction f of the reference scores ROUGE-L F1 of
    // 2f/(1+f); invert so the score lands near the drawn target.
    const double f = target / (2.0 - target);
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        const double lo = std::floor(static_cast<double>(i) * f);
        const double hi = std::floor(static_cast<double>(i + 1) * f);
        if (hi > lo) {
            if (!out.empty()) out += ' ';
            out += tokens[i];
        }
    }
    (void)max_sentences;
    return out;
}

std::unique_ptr<Arm> extractive_arm(int id, std::string name, SummarizerConfig cfg,
                                    SummarizerResources res) {
    return std::make_unique<ExtractiveArm>(id, std::move(name), std::move(cfg),
                                           std::move(res));
}

std::unique_ptr<Arm> remote_arm(int id, std::string name, RemoteArmConfig cfg) {
    return std::make_unique<RemoteArm>(id, std::move(name), std::move(cfg));
}

std::unique_ptr<Arm> simulated_arm(int id, std::string name, SimulatedArmSpec spec,
                                   bool direct_reward) {
    return std::make_unique<SimulatedArm>(id, std::move(name), std::move(spec),
                                          direct_reward);
}

}  // namespace chatsumm
