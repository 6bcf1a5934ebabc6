#pragma once
// Chat-completion backends. All implementations are safe to call from
// several threads at once.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace rulesmith {

inline constexpr std::string_view kApiKeyEnv = "RULESMITH_API_KEY";

struct TokenUsage {
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& o) {
        input_tokens += o.input_tokens;
        output_tokens += o.output_tokens;
        return *this;
    }
    bool operator==(const TokenUsage&) const = default;
};

// Rough token count for offline backends: one token per 4 bytes, rounded up.
std::uint64_t approximate_tokens(std::string_view text);

struct ChatRequest {
    std::string model;
    std::string prompt;
    double temperature = 0.0;
};

struct ChatResponse {
    std::string content;
    TokenUsage usage;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
    virtual std::string_view name() const = 0;
};

// Key used by replay fixtures: sha256 hex of the prompt text.
std::string query_hash(const ChatRequest& request);

// Answers with the rule samples embedded in the prompt, one per line.
class EchoBackend final : public ChatBackend {
public:
    ChatResponse complete(const ChatRequest& request) override;
    std::string_view name() const override { return "echo"; }
};

// Fixture lines: query-hash<TAB>base64(response). Unknown prompts raise
// TransportError.
class ReplayBackend final : public ChatBackend {
public:
    explicit ReplayBackend(const std::filesystem::path& fixture);
    ChatResponse complete(const ChatRequest& request) override;
    std::string_view name() const override { return "replay"; }
    std::size_t size() const noexcept { return responses_.size(); }

private:
    std::unordered_map<std::string, std::string> responses_;
};

struct LiveOptions {
    std::string endpoint = "https://api.openai.com/v1";
    std::string api_key;
    std::size_t max_retries = 3;
    std::chrono::milliseconds min_request_interval{0};
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::seconds timeout{120};
};

// OpenAI-compatible POST {endpoint}/chat/completions.
class LiveBackend final : public ChatBackend {
public:
    // Throws AuthError when api_key is empty.
    explicit LiveBackend(LiveOptions options);
    ChatResponse complete(const ChatRequest& request) override;
    std::string_view name() const override { return "live"; }

private:
    void pace();

    LiveOptions options_;
    std::string base_url_;
    std::string path_prefix_;
    std::mutex pace_mutex_;
    std::optional<std::chrono::steady_clock::time_point> last_request_;
};

// Reads the API key from RULESMITH_API_KEY; AuthError if unset or empty.
std::unique_ptr<LiveBackend> make_live_backend(LiveOptions options);

// Forwards to another backend and writes every exchange as a replay
// fixture (sorted by hash) on flush() or destruction.
class RecordingBackend final : public ChatBackend {
public:
    RecordingBackend(ChatBackend& inner, std::filesystem::path fixture);
    ~RecordingBackend() override;
    ChatResponse complete(const ChatRequest& request) override;
    std::string_view name() const override { return inner_.name(); }
    void flush();

private:
    ChatBackend& inner_;
    std::filesystem::path fixture_;
    std::mutex mutex_;
    std::map<std::string, std::string> records_;
};

void write_fixture_line(std::ostream& os, const std::string& hash, std::string_view response);

}  // namespace rulesmith
