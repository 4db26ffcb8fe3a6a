#pragma once

#include <memory>
#include <string>

#include "seqcon/orchestrator.hpp"

namespace seqcon {

/**
 * One OpenAI-compatible chat-completions endpoint. The API key is read from
 * the named environment variable at call time; an empty name sends no
 * Authorization header (local gateways).
 */
struct RemoteBackendConfig {
    std::string base_url;  // e.g. http://127.0.0.1:8080 or https://gateway.example.com
    std::string api_key_env = "OPENAI_API_KEY";
    std::string model;
    double temperature = 0.7;
    int max_tokens = 1500;
    int timeout_seconds = 120;
};

struct PromptSet {
    // Placeholders: {question}, {own}, {peers}, {positions}.
    std::string agent_initial;
    std::string agent_revision;
    std::string judge_system;
};

PromptSet default_prompts();

class OpenAiAgent : public AgentBackend {
public:
    OpenAiAgent(RemoteBackendConfig config, PromptSet prompts = default_prompts());
    ~OpenAiAgent() override;
    std::string name() const override;
    std::string respond(const AgentContext& ctx) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Judge runs at temperature 0 and expects a strict-JSON verdict:
// {"score": <number in [0,1]>, "rationale": <string>}.
class OpenAiJudge : public JudgeBackend {
public:
    OpenAiJudge(RemoteBackendConfig config, PromptSet prompts = default_prompts());
    ~OpenAiJudge() override;
    std::string name() const override;
    JudgeResult assess(const std::string& question,
                       const std::vector<std::string>& positions) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace seqcon
