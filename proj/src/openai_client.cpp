#include "seqcon/openai_client.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace seqcon {

using nlohmann::json;

namespace {

std::string replace_all(std::string text, const std::string& key, const std::string& value) {
    size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
    return text;
}

std::string join_numbered(const std::vector<std::string>& texts) {
    std::string out;
    for (size_t i = 0; i < texts.size(); ++i)
        out += "Agent " + std::to_string(i + 1) + ":\n" + texts[i] + "\n\n";
    return out;
}

struct Endpoint {
    std::string scheme_host_port;
    std::string path;
};

Endpoint parse_base_url(const std::string& base_url) {
    if (base_url.empty()) throw config_error("remote backend: base_url is empty");
    const bool https = base_url.rfind("https://", 0) == 0;
    const bool http = base_url.rfind("http://", 0) == 0;
    if (!https && !http)
        throw config_error("remote backend: base_url must start with http:// or https://");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (https)
        throw config_error("remote backend: built without TLS support; use an http:// "
                           "gateway or rebuild with OpenSSL");
#endif
    const size_t scheme_end = base_url.find("://") + 3;
    const size_t slash = base_url.find('/', scheme_end);
    Endpoint ep;
    if (slash == std::string::npos) {
        ep.scheme_host_port = base_url;
        ep.path = "/v1/chat/completions";
        return ep;
    }
    ep.scheme_host_port = base_url.substr(0, slash);
    std::string prefix = base_url.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    if (prefix.size() >= 3 && prefix.compare(prefix.size() - 3, 3, "/v1") == 0)
        ep.path = prefix + "/chat/completions";
    else
        ep.path = prefix + "/v1/chat/completions";
    return ep;
}

// One chat-completions request; throws transport_error on anything retryable.
std::string chat_completion(const RemoteBackendConfig& cfg, const json& messages,
                            double temperature, int max_tokens) {
    const Endpoint ep = parse_base_url(cfg.base_url);
    httplib::Client client(ep.scheme_host_port);
    client.set_connection_timeout(cfg.timeout_seconds, 0);
    client.set_read_timeout(cfg.timeout_seconds, 0);
    client.set_write_timeout(cfg.timeout_seconds, 0);

    httplib::Headers headers;
    if (!cfg.api_key_env.empty()) {
        if (const char* key = std::getenv(cfg.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    json body;
    body["model"] = cfg.model;
    body["temperature"] = temperature;
    body["max_tokens"] = max_tokens;
    body["messages"] = messages;

    const httplib::Result res =
        client.Post(ep.path, headers, body.dump(), "application/json");
    if (!res)
        throw transport_error("chat completion failed: " +
                              httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
        throw transport_error("chat completion failed: HTTP " +
                              std::to_string(res->status));
    if (res->status != 200)
        throw transport_error("chat completion rejected: HTTP " +
                              std::to_string(res->status) + " " + res->body);
    try {
        const json reply = json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw transport_error(std::string("chat completion malformed: ") + e.what());
    }
}

} // namespace

PromptSet default_prompts() {
    PromptSet p;
    p.agent_initial =
        "You are one of several independent expert agents answering the same "
        "question.\n\nQuestion:\n{question}\n\nReason step by step, briefly. Finish "
        "with two lines:\nFinal answer: <answer>\nConfidence: <number between 0 and 1>";
    p.agent_revision =
        "You are revising your answer after seeing your peers.\n\nQuestion:\n{question}"
        "\n\nYour previous position:\n{own}\n\nPeer positions:\n{peers}\nIf a peer's "
        "reasoning is stronger, adopt it; otherwise defend your answer. Finish with two "
        "lines:\nFinal answer: <answer>\nConfidence: <number between 0 and 1>";
    p.judge_system =
        "You judge whether debating agents have converged on the same final answer. "
        "Reply with strict JSON only, no prose: {\"score\": <number in [0,1], the "
        "probability the agents agree on one final answer>, \"rationale\": <one short "
        "sentence>}";
    return p;
}

struct OpenAiAgent::Impl {
    RemoteBackendConfig config;
    PromptSet prompts;
};

OpenAiAgent::OpenAiAgent(RemoteBackendConfig config, PromptSet prompts)
    : impl_(new Impl{std::move(config), std::move(prompts)}) {
    parse_base_url(impl_->config.base_url);
    if (impl_->config.model.empty()) throw config_error("remote agent: model is empty");
}

OpenAiAgent::~OpenAiAgent() = default;

std::string OpenAiAgent::name() const { return impl_->config.model; }

std::string OpenAiAgent::respond(const AgentContext& ctx) {
    const bool initial = ctx.round <= 1;
    std::string prompt = initial ? impl_->prompts.agent_initial
                                 : impl_->prompts.agent_revision;
    prompt = replace_all(std::move(prompt), "{question}", ctx.question);
    prompt = replace_all(std::move(prompt), "{own}", ctx.own_position);
    prompt = replace_all(std::move(prompt), "{peers}", join_numbered(ctx.peer_positions));
    const json messages = json::array({{{"role", "user"}, {"content", prompt}}});
    return chat_completion(impl_->config, messages, impl_->config.temperature,
                           impl_->config.max_tokens);
}

struct OpenAiJudge::Impl {
    RemoteBackendConfig config;
    PromptSet prompts;
    bool corrective = false;  // set after a parse failure; next call re-prompts
};

OpenAiJudge::OpenAiJudge(RemoteBackendConfig config, PromptSet prompts)
    : impl_(new Impl{std::move(config), std::move(prompts), false}) {
    parse_base_url(impl_->config.base_url);
    if (impl_->config.model.empty()) throw config_error("remote judge: model is empty");
}

OpenAiJudge::~OpenAiJudge() = default;

std::string OpenAiJudge::name() const { return impl_->config.model; }

JudgeResult OpenAiJudge::assess(const std::string& question,
                                const std::vector<std::string>& positions) {
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", impl_->prompts.judge_system}});
    messages.push_back(
        {{"role", "user"},
         {"content", "Question:\n" + question + "\n\nPositions:\n" +
                         join_numbered(positions)}});
    if (impl_->corrective)
        messages.push_back({{"role", "user"},
                            {"content", "Your previous reply was not valid JSON. Respond "
                                        "with exactly one JSON object of the form "
                                        "{\"score\": <number>, \"rationale\": <string>} "
                                        "and nothing else."}});
    const std::string content = chat_completion(impl_->config, messages, 0.0, 400);
    try {
        const json verdict = json::parse(content);
        JudgeResult res;
        res.score = verdict.at("score").get<double>();
        res.rationale = verdict.value("rationale", "");
        impl_->corrective = false;
        return res;
    } catch (const json::exception& e) {
        impl_->corrective = true;
        throw parse_error(std::string("judge verdict is not strict JSON: ") + e.what());
    }
}

} // namespace seqcon
