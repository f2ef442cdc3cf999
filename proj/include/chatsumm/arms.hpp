#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chatsumm/bandit.hpp"
#include "chatsumm/extractive.hpp"
#include "chatsumm/rng.hpp"
#include "chatsumm/transcript.hpp"

namespace chatsumm {

class Arm {
public:
    Arm(int id, std::string name) : id_(id), name_(std::move(name)) {}
    virtual ~Arm() = default;

    int id() const { return id_; }
    const std::string& name() const { return name_; }

    virtual std::string summarize(const ChatTranscript& t, int max_sentences,
                                  const Context* x = nullptr) = 0;
    // Direct-reward arms skip text generation entirely.
    virtual bool direct_reward() const { return false; }
    virtual double reward(const Context&) { return 0.0; }
    virtual void reset_rng(std::uint64_t) {}

private:
    int id_;
    std::string name_;
};

class ExtractiveArm : public Arm {
public:
    ExtractiveArm(int id, std::string name, SummarizerConfig cfg, SummarizerResources res);
    std::string summarize(const ChatTranscript& t, int max_sentences,
                          const Context* x) override;

private:
    SummarizerConfig cfg_;
    SummarizerResources res_;
};

struct RemoteArmConfig {
    std::string host = "127.0.0.1";
    int port = 0;
    std::string path = "/v1/summarize";
    double timeout_sec = 5.0;
    int retries = 3;  // total attempts
};

class RemoteArm : public Arm {
public:
    RemoteArm(int id, std::string name, RemoteArmConfig cfg);
    std::string summarize(const ChatTranscript& t, int max_sentences,
                          const Context* x) override;

private:
    RemoteArmConfig cfg_;
};

struct SimulatedArmSpec {
    double base_mean = 0.5;
    // Dotted against the leading entries of Context.features (the z-scored
    // numerics come first).
    std::vector<double> context_coefficients;
    double noise_sd = 0.0;
    std::uint64_t rng_seed = 0;
};

class SimulatedArm : public Arm {
public:
    SimulatedArm(int id, std::string name, SimulatedArmSpec spec, bool direct = true);

    bool direct_reward() const override { return direct_; }
    double reward(const Context& x) override;
    // Text mode subsamples the registered reference (or the transcript) so
    // the ROUGE score against it lands near the drawn reward.
    std::string summarize(const ChatTranscript& t, int max_sentences,
                          const Context* x) override;
    void reset_rng(std::uint64_t seed) override { rng_.seed(seed); }

    double mean_reward(const Context& x) const;  // noise-free, for regret oracles
    void set_reference(const std::string& transcript_id, const std::string& text);

private:
    SimulatedArmSpec spec_;
    bool direct_;
    Rng rng_;
    std::map<std::string, std::string> references_;
};

std::unique_ptr<Arm> extractive_arm(int id, std::string name, SummarizerConfig cfg,
                                    SummarizerResources res);
std::unique_ptr<Arm> remote_arm(int id, std::string name, RemoteArmConfig cfg);
std::unique_ptr<Arm> simulated_arm(int id, std::string name, SimulatedArmSpec spec,
                                   bool direct_reward = true);

}  // namespace chatsumm
