#include "seqcon/orchestrator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <regex>
#include <thread>

#include <json.hpp>

namespace seqcon {

using nlohmann::json;

std::string to_string(TaskKind kind) {
    return kind == TaskKind::MultipleChoice ? "multiple_choice" : "numeric";
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "multiple_choice") return TaskKind::MultipleChoice;
    if (s == "numeric") return TaskKind::Numeric;
    throw parse_error("unknown task_kind: " + s);
}

ScriptedAgent::ScriptedAgent(std::string name, std::vector<std::string> responses)
    : name_(std::move(name)), responses_(std::move(responses)) {
    if (responses_.empty()) throw config_error("ScriptedAgent needs at least one response");
}

std::string ScriptedAgent::respond(const AgentContext& ctx) {
    const size_t idx = std::min<size_t>(static_cast<size_t>(ctx.round), responses_.size());
    return responses_[idx - 1];
}

ScriptedJudge::ScriptedJudge(std::vector<double> scores) : scores_(std::move(scores)) {
    if (scores_.empty()) throw config_error("ScriptedJudge needs at least one score");
}

JudgeResult ScriptedJudge::assess(const std::string&, const std::vector<std::string>&) {
    const size_t idx = std::min<size_t>(static_cast<size_t>(++calls_), scores_.size());
    return {scores_[idx - 1], "scripted"};
}

void validate(const DebateConfig& config) {
    validate(config.pair.f0);
    validate(config.pair.f1);
    validate(config.sprt);
    switch (config.protocol.kind) {
    case StoppingRule::Kind::Sprt:
    case StoppingRule::Kind::SingleRound:
        break;
    case StoppingRule::Kind::FixedRounds:
        if (config.protocol.fixed_rounds < 1)
            throw config_error("fixed_rounds must be >= 1");
        break;
    default:
        throw config_error("debate protocol must be sprt, fixed_rounds or single_round");
    }
    if (config.retry_attempts < 1) throw config_error("retry_attempts must be >= 1");
    if (config.retry_backoff_ms < 0) throw config_error("retry_backoff_ms must be >= 0");
    if (config.item_parallelism < 1) throw config_error("item_parallelism must be >= 1");
}

namespace {

std::string canonical_number(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ',') s += c;
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw parse_error("not a number: " + raw);
        char buf[32];
        auto [end, ec2] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec2;
        return std::string(buf, end);
    }
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.erase(s.begin());
    }
    std::string ipart = s, fpart;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        ipart = s.substr(0, dot);
        fpart = s.substr(dot + 1);
    }
    if (ipart.empty() && fpart.empty()) throw parse_error("not a number: " + raw);
    for (char c : ipart)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error("not a number: " + raw);
    for (char c : fpart)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error("not a number: " + raw);
    while (ipart.size() > 1 && ipart.front() == '0') ipart.erase(ipart.begin());
    while (!fpart.empty() && fpart.back() == '0') fpart.pop_back();
    if (ipart.empty()) ipart = "0";
    std::string out = ipart;
    if (!fpart.empty()) out += "." + fpart;
    if (out == "0") return out;
    return neg ? "-" + out : out;
}

const std::regex kChoiceRe("(^|[^A-Za-z])([A-Da-d])([^A-Za-z]|$)");
const std::regex kNumberRe("[-+]?[0-9][0-9,]*(\\.[0-9]+)?([eE][-+]?[0-9]+)?");
const std::regex kConfidenceRe("confidence[^0-9%]{0,12}([0-9]*\\.?[0-9]+)\\s*(%?)",
                               std::regex::icase);

} // namespace

std::optional<std::string> extract_answer(TaskKind kind, const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (kind == TaskKind::MultipleChoice) {
        std::string last;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), kChoiceRe);
             it != std::sregex_iterator(); ++it)
            last = it->str(2);
        if (last.empty()) return std::nullopt;
        last[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(last[0])));
        return last;
    }
    // Confidence phrases carry metadata, not answers; blank them out so
    // "Final answer: 18\nConfidence: 0.9" extracts 18, not 0.9.
    std::string masked = text;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), kConfidenceRe);
         it != std::sregex_iterator(); ++it)
        std::fill(masked.begin() + it->position(),
                  masked.begin() + it->position() + it->length(), ' ');
    std::string last;
    for (auto it = std::sregex_iterator(masked.begin(), masked.end(), kNumberRe);
         it != std::sregex_iterator(); ++it)
        last = it->str();
    if (last.empty()) return std::nullopt;
    return canonical_number(last);
}

std::string canonical_answer(TaskKind kind, const std::string& raw) {
    if (kind == TaskKind::MultipleChoice) {
        std::string out = raw;
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        return out;
    }
    return canonical_number(raw);
}

bool grade(TaskKind kind, const std::string& extracted, const std::string& gold) {
    if (extracted.empty()) return false;
    try {
        return canonical_answer(kind, extracted) == canonical_answer(kind, gold);
    } catch (const parse_error&) {
        return false;
    }
}

std::optional<double> parse_confidence(const std::string& text) {
    std::smatch last;
    bool found = false;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), kConfidenceRe);
         it != std::sregex_iterator(); ++it) {
        last = *it;
        found = true;
    }
    if (!found) return std::nullopt;
    double v = 0.0;
    try {
        v = std::stod(last.str(1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (last.str(2) == "%" || v > 1.0) v /= 100.0;
    if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
    return v;
}

AggregateResult aggregate(const std::vector<Position>& positions) {
    if (positions.empty()) throw data_error("aggregate: no positions");
    std::map<std::string, std::pair<int, double>> votes;  // answer -> (count, conf sum)
    for (const auto& pos : positions) {
        if (pos.answer.empty()) continue;
        auto& [count, conf] = votes[pos.answer];
        count += 1;
        conf += pos.confidence;
    }
    if (votes.empty()) throw data_error("aggregate: no extractable answers");
    std::string best;
    int best_count = -1;
    double best_conf = -1.0;
    // std::map iterates answers in lexicographic order, so on a full tie the
    // smallest answer is kept.
    for (const auto& [answer, tally] : votes) {
        const auto& [count, conf_sum] = tally;
        const double mean_conf = conf_sum / count;
        if (count > best_count ||
            (count == best_count && mean_conf > best_conf + 1e-12)) {
            best = answer;
            best_count = count;
            best_conf = mean_conf;
        }
    }
    for (const auto& pos : positions)
        if (pos.answer == best) return {best, pos.text};
    throw state_error("aggregate: winner lost its position");
}

namespace {

void backoff_sleep(int attempt, int base_ms) {
    if (base_ms <= 0) return;
    const auto wait = std::chrono::milliseconds(base_ms << (attempt - 1));
    std::this_thread::sleep_for(wait);
}

std::string call_agent(AgentBackend& agent, const AgentContext& ctx,
                       const DebateConfig& cfg) {
    for (int attempt = 1;; ++attempt) {
        try {
            return agent.respond(ctx);
        } catch (const transport_error&) {
            if (attempt >= cfg.retry_attempts) throw;
            backoff_sleep(attempt, cfg.retry_backoff_ms);
        }
    }
}

JudgeResult call_judge(JudgeBackend& judge, const std::string& question,
                       const std::vector<std::string>& positions, const DebateConfig& cfg) {
    int parse_attempts = 0;
    for (int attempt = 1;; ++attempt) {
        try {
            const JudgeResult res = judge.assess(question, positions);
            if (!std::isfinite(res.score) || res.score < 0.0 || res.score > 1.0)
                throw parse_error("judge score outside [0,1]");
            return res;
        } catch (const parse_error&) {
            // One re-prompt on a malformed verdict, then the item fails.
            if (++parse_attempts >= 2) throw;
        } catch (const transport_error&) {
            if (attempt >= cfg.retry_attempts) throw;
            backoff_sleep(attempt, cfg.retry_backoff_ms);
        }
    }
}

std::vector<Position> run_round(const std::string& item_id, const std::string& question,
                                const std::vector<AgentBackend*>& agents,
                                const std::vector<Position>* previous, int round,
                                TaskKind task_kind, const DebateConfig& cfg,
                                int& llm_calls) {
    std::vector<Position> out(agents.size());
    for (size_t i = 0; i < agents.size(); ++i) {
        AgentContext ctx;
        ctx.item_id = item_id;
        ctx.question = question;
        ctx.round = round;
        if (previous) {
            ctx.own_position = (*previous)[i].text;
            for (size_t j = 0; j < previous->size(); ++j)
                if (j != i) ctx.peer_positions.push_back((*previous)[j].text);
        }
        const std::string text = call_agent(*agents[i], ctx, cfg);
        llm_calls += 1;
        Position pos;
        pos.agent = agents[i]->name();
        pos.text = text;
        pos.answer = extract_answer(task_kind, text).value_or("");
        pos.confidence = parse_confidence(text).value_or(0.5);
        out[i] = std::move(pos);
    }
    return out;
}

} // namespace

ItemResult debate(const std::string& item_id, const std::string& question,
                  const std::string& gold, const std::vector<AgentBackend*>& agents,
                  JudgeBackend& judge, const DebateConfig& config) {
    validate(config);
    if (agents.size() < 2) throw config_error("debate needs at least 2 agents");

    const auto t0 = std::chrono::steady_clock::now();
    ItemResult item;
    item.item_id = item_id;
    item.question = question;
    item.gold = gold;
    item.task_kind = config.task_kind;
    item.protocol = config.protocol.name();

    try {
        const int n_rounds_fixed =
            config.protocol.kind == StoppingRule::Kind::SingleRound ? 1
            : config.protocol.kind == StoppingRule::Kind::FixedRounds
                ? config.protocol.fixed_rounds
                : config.sprt.r_max;

        if (config.protocol.kind == StoppingRule::Kind::Sprt) {
            WaldMonitor monitor(config.pair, config.sprt);
            while (!monitor.terminal()) {
                const int round = monitor.round() + 1;
                const std::vector<Position>* prev =
                    item.rounds_positions.empty() ? nullptr : &item.rounds_positions.back();
                item.rounds_positions.push_back(run_round(item_id, question, agents, prev,
                                                          round, config.task_kind, config,
                                                          item.llm_calls));
                std::vector<std::string> texts;
                for (const auto& pos : item.rounds_positions.back())
                    texts.push_back(pos.text);
                const JudgeResult verdict = call_judge(judge, question, texts, config);
                item.llm_calls += 1;
                item.scores.push_back(verdict.score);
                item.judge_rationales.push_back(verdict.rationale);
                monitor.observe(verdict.score);
                item.lambda_trace.push_back(monitor.lambda());
            }
            item.decision = monitor.decision();
            item.rounds = item.decision.round;
        } else {
            for (int round = 1; round <= n_rounds_fixed; ++round) {
                const std::vector<Position>* prev =
                    item.rounds_positions.empty() ? nullptr : &item.rounds_positions.back();
                item.rounds_positions.push_back(run_round(item_id, question, agents, prev,
                                                          round, config.task_kind, config,
                                                          item.llm_calls));
            }
            item.decision = {DecisionKind::Stopped, n_rounds_fixed};
            item.rounds = n_rounds_fixed;
        }

        const AggregateResult agg = aggregate(item.rounds_positions.back());
        item.aggregate_answer = agg.text;
        item.extracted_answer = agg.canonical;
        item.correct = grade(config.task_kind, item.extracted_answer, gold);
    } catch (const error& e) {
        item.failed = true;
        item.failure = e.what();
        item.correct = false;
    }

    if (config.record_timing) {
        const auto t1 = std::chrono::steady_clock::now();
        item.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    }
    return item;
}

std::vector<DatasetItem> load_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open dataset " + path);
    std::vector<DatasetItem> items;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            DatasetItem item;
            item.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                             : j.at("id").dump();
            item.question = j.at("question").get<std::string>();
            item.gold = j.at("gold").is_string() ? j.at("gold").get<std::string>()
                                                  : j.at("gold").dump();
            item.task_kind = task_kind_from_string(j.at("task_kind").get<std::string>());
            items.push_back(std::move(item));
        } catch (const json::exception& e) {
            throw parse_error("dataset " + path + " line " + std::to_string(line_no) +
                              ": " + e.what());
        }
    }
    if (items.empty()) throw data_error("dataset " + path + " has no items");
    return items;
}

BenchmarkSummary summarize(const std::vector<ItemResult>& items) {
    BenchmarkSummary sum;
    if (!items.empty()) sum.protocol = items.front().protocol;
    long correct = 0;
    long long rounds = 0, calls = 0;
    for (const auto& item : items) {
        sum.n_items += 1;
        sum.wall_seconds += item.wall_seconds;
        if (item.failed) continue;
        sum.valid_n += 1;
        correct += item.correct ? 1 : 0;
        rounds += item.rounds;
        calls += item.llm_calls;
    }
    if (sum.valid_n > 0) {
        sum.accuracy = static_cast<double>(correct) / static_cast<double>(sum.valid_n);
        sum.avg_rounds = static_cast<double>(rounds) / static_cast<double>(sum.valid_n);
        sum.avg_calls = static_cast<double>(calls) / static_cast<double>(sum.valid_n);
    } else {
        sum.accuracy = sum.avg_rounds = sum.avg_calls =
            std::numeric_limits<double>::quiet_NaN();
    }
    return sum;
}

BenchmarkResult run_benchmark(const std::vector<DatasetItem>& items,
                              const std::vector<AgentBackend*>& agents, JudgeBackend& judge,
                              const DebateConfig& config) {
    validate(config);
    BenchmarkResult result;
    result.items.reserve(items.size());
    for (const auto& ds : items) {
        DebateConfig per_item = config;
        per_item.task_kind = ds.task_kind;
        result.items.push_back(debate(ds.id, ds.question, ds.gold, agents, judge, per_item));
    }
    result.summary = summarize(result.items);
    return result;
}

namespace {

json position_to_json(const Position& pos) {
    return json{{"agent", pos.agent},
                {"text", pos.text},
                {"answer", pos.answer},
                {"confidence", pos.confidence}};
}

Position position_from_json(const json& j) {
    Position pos;
    pos.agent = j.at("agent").get<std::string>();
    pos.text = j.at("text").get<std::string>();
    pos.answer = j.at("answer").get<std::string>();
    pos.confidence = j.at("confidence").get<double>();
    return pos;
}

} // namespace

std::string item_to_json_line(const ItemResult& item) {
    json j;
    j["schema_version"] = 1;
    j["item_id"] = item.item_id;
    j["question"] = item.question;
    j["gold"] = item.gold;
    j["task_kind"] = to_string(item.task_kind);
    j["protocol"] = item.protocol;
    json rounds = json::array();
    for (const auto& round : item.rounds_positions) {
        json positions = json::array();
        for (const auto& pos : round) positions.push_back(position_to_json(pos));
        rounds.push_back(positions);
    }
    j["rounds_positions"] = rounds;
    j["scores"] = item.scores;
    j["judge_rationales"] = item.judge_rationales;
    j["lambda_trace"] = item.lambda_trace;
    j["decision"] = {{"kind", to_string(item.decision.kind)},
                     {"round", item.decision.round}};
    j["rounds"] = item.rounds;
    j["aggregate_answer"] = item.aggregate_answer;
    j["extracted_answer"] = item.extracted_answer;
    j["correct"] = item.correct;
    j["llm_calls"] = item.llm_calls;
    j["wall_seconds"] = item.wall_seconds;
    j["failed"] = item.failed;
    j["failure"] = item.failure;
    return j.dump();
}

ItemResult item_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("item record: ") + e.what());
    }
    try {
        if (!j.contains("schema_version"))
            throw parse_error("item record: missing schema_version");
        if (j.at("schema_version").get<int>() != 1)
            throw version_error("item record: unsupported schema_version");
        ItemResult item;
        item.item_id = j.at("item_id").get<std::string>();
        item.question = j.at("question").get<std::string>();
        item.gold = j.at("gold").get<std::string>();
        item.task_kind = task_kind_from_string(j.at("task_kind").get<std::string>());
        item.protocol = j.at("protocol").get<std::string>();
        for (const auto& round : j.at("rounds_positions")) {
            std::vector<Position> positions;
            for (const auto& pos : round) positions.push_back(position_from_json(pos));
            item.rounds_positions.push_back(std::move(positions));
        }
        item.scores = j.at("scores").get<std::vector<double>>();
        item.judge_rationales = j.at("judge_rationales").get<std::vector<std::string>>();
        item.lambda_trace = j.at("lambda_trace").get<std::vector<double>>();
        const std::string kind = j.at("decision").at("kind").get<std::string>();
        if (kind == "consensus") item.decision.kind = DecisionKind::Consensus;
        else if (kind == "no_consensus") item.decision.kind = DecisionKind::NoConsensus;
        else if (kind == "capped") item.decision.kind = DecisionKind::Capped;
        else if (kind == "stopped") item.decision.kind = DecisionKind::Stopped;
        else if (kind == "continue") item.decision.kind = DecisionKind::Continue;
        else throw parse_error("item record: unknown decision kind " + kind);
        item.decision.round = j.at("decision").at("round").get<int>();
        item.rounds = j.at("rounds").get<int>();
        item.aggregate_answer = j.at("aggregate_answer").get<std::string>();
        item.extracted_answer = j.at("extracted_answer").get<std::string>();
        item.correct = j.at("correct").get<bool>();
        item.llm_calls = j.at("llm_calls").get<int>();
        item.wall_seconds = j.at("wall_seconds").get<double>();
        item.failed = j.at("failed").get<bool>();
        item.failure = j.at("failure").get<std::string>();
        return item;
    } catch (const json::exception& e) {
        throw parse_error(std::string("item record: ") + e.what());
    }
}

void write_items_jsonl(const std::vector<ItemResult>& items, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open " + path + " for writing");
    for (const auto& item : items) out << item_to_json_line(item) << "\n";
    if (!out) throw data_error("write failed for " + path);
}

std::vector<ItemResult> read_items_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::vector<ItemResult> items;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        items.push_back(item_from_json_line(line));
    }
    return items;
}

} // namespace seqcon
