#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqcon/beta_model.hpp"
#include "seqcon/errors.hpp"
#include "seqcon/simulation.hpp"
#include "seqcon/sprt.hpp"

namespace seqcon {

// Backend could not be reached or answered with a transport-level failure;
// retried with backoff before the item is marked failed.
struct transport_error : error {
    using error::error;
};

enum class TaskKind { MultipleChoice, Numeric };

std::string to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

struct AgentContext {
    std::string item_id;
    std::string question;
    std::string own_position;                 // empty in round 1
    std::vector<std::string> peer_positions;  // empty in round 1
    int round = 1;
};

class AgentBackend {
public:
    virtual ~AgentBackend() = default;
    virtual std::string name() const = 0;
    // Returns the agent's position text; throws transport_error on failure.
    virtual std::string respond(const AgentContext& ctx) = 0;
};

struct JudgeResult {
    double score = 0.0;  // raw, in [0,1]; the monitor clips, logs keep the raw value
    std::string rationale;
};

class JudgeBackend {
public:
    virtual ~JudgeBackend() = default;
    virtual std::string name() const = 0;
    // Scores the round's positions; throws transport_error or parse_error.
    virtual JudgeResult assess(const std::string& question,
                               const std::vector<std::string>& positions) = 0;
};

// Deterministic test backend: one scripted response per round, the last entry
// repeating forever.
class ScriptedAgent : public AgentBackend {
public:
    ScriptedAgent(std::string name, std::vector<std::string> responses);
    std::string name() const override { return name_; }
    std::string respond(const AgentContext& ctx) override;

private:
    std::string name_;
    std::vector<std::string> responses_;
};

class ScriptedJudge : public JudgeBackend {
public:
    explicit ScriptedJudge(std::vector<double> scores);
    std::string name() const override { return "scripted-judge"; }
    JudgeResult assess(const std::string& question,
                       const std::vector<std::string>& positions) override;

private:
    std::vector<double> scores_;
    int calls_ = 0;
};

struct Position {
    std::string agent;
    std::string text;
    std::string answer;       // canonical extracted answer, empty when extraction failed
    double confidence = 0.5;  // parsed opportunistically, 0.5 when absent
};

struct DebateConfig {
    LikelihoodPair pair;
    SprtConfig sprt;
    // Only Sprt, FixedRounds and SingleRound are debate protocols.
    StoppingRule protocol;
    TaskKind task_kind = TaskKind::MultipleChoice;
    int retry_attempts = 3;
    int retry_backoff_ms = 250;
    int item_parallelism = 1;
    std::uint64_t seed = 20260517;
    // Scripted runs set this false so logs are bit-identical across runs.
    bool record_timing = true;
};

void validate(const DebateConfig& config);

struct ItemResult {
    std::string item_id;
    std::string question;
    std::string gold;
    TaskKind task_kind = TaskKind::MultipleChoice;
    std::string protocol;
    std::vector<std::vector<Position>> rounds_positions;  // [round][agent]
    std::vector<double> scores;  // raw judge scores, one per judged round
    std::vector<std::string> judge_rationales;
    std::vector<double> lambda_trace;
    Decision decision;
    int rounds = 0;
    std::string aggregate_answer;  // winning position's text
    std::string extracted_answer;  // canonical answer the item is graded on
    bool correct = false;
    int llm_calls = 0;
    double wall_seconds = 0.0;
    bool failed = false;
    std::string failure;
};

// Multiple choice: last standalone A-D letter, uppercased. Numeric: last
// number with thousands separators stripped, in canonical decimal form.
std::optional<std::string> extract_answer(TaskKind kind, const std::string& text);

// Canonical decimal form ("18.0" -> "18"); throws parse_error when the text
// is not a number. Multiple-choice answers uppercase.
std::string canonical_answer(TaskKind kind, const std::string& raw);

bool grade(TaskKind kind, const std::string& extracted, const std::string& gold);

std::optional<double> parse_confidence(const std::string& text);

struct AggregateResult {
    std::string canonical;
    std::string text;  // the winning position's text
};

// Majority over extracted answers; ties break on the highest mean
// self-reported confidence, then the lexicographically smallest answer.
AggregateResult aggregate(const std::vector<Position>& positions);

ItemResult debate(const std::string& item_id, const std::string& question,
                  const std::string& gold, const std::vector<AgentBackend*>& agents,
                  JudgeBackend& judge, const DebateConfig& config);

struct DatasetItem {
    std::string id;
    std::string question;
    std::string gold;
    TaskKind task_kind = TaskKind::MultipleChoice;
};

std::vector<DatasetItem> load_dataset_jsonl(const std::string& path);

struct BenchmarkSummary {
    std::string protocol;
    long n_items = 0;
    long valid_n = 0;
    double accuracy = 0.0;    // over valid items
    double avg_rounds = 0.0;  // over valid items
    double avg_calls = 0.0;   // over valid items
    double wall_seconds = 0.0;
};

struct BenchmarkResult {
    BenchmarkSummary summary;
    std::vector<ItemResult> items;
};

BenchmarkResult run_benchmark(const std::vector<DatasetItem>& items,
                              const std::vector<AgentBackend*>& agents, JudgeBackend& judge,
                              const DebateConfig& config);

// The replay path: identical to the summary run_benchmark produced.
BenchmarkSummary summarize(const std::vector<ItemResult>& items);

std::string item_to_json_line(const ItemResult& item);
ItemResult item_from_json_line(const std::string& line);
void write_items_jsonl(const std::vector<ItemResult>& items, const std::string& path);
std::vector<ItemResult> read_items_jsonl(const std::string& path);

} // namespace seqcon
