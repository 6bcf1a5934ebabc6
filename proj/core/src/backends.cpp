#include "rulesmith/backends.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "rulesmith/digest.hpp"
#include "rulesmith/errors.hpp"
#include "rulesmith/generator.hpp"

namespace rulesmith {

using nlohmann::json;

std::uint64_t approximate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

std::string query_hash(const ChatRequest& request) { return sha256_hex(request.prompt); }

ChatResponse EchoBackend::complete(const ChatRequest& request) {
    ChatResponse response;
    const std::string_view prompt = request.prompt;
    const auto marker = prompt.find(kSampleBlockHeader);
    if (marker != std::string_view::npos) {
        auto start = marker + kSampleBlockHeader.size();
        if (start < prompt.size() && prompt[start] == '\n') ++start;
        auto end = prompt.find("\n\n", start);
        if (end == std::string_view::npos) end = prompt.size();
        response.content = std::string(prompt.substr(start, end - start));
    }
    response.usage = {approximate_tokens(request.prompt), approximate_tokens(response.content)};
    return response;
}

ReplayBackend::ReplayBackend(const std::filesystem::path& fixture) {
    std::ifstream in(fixture);
    if (!in) throw IoError("cannot open replay fixture " + fixture.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(fixture.string(), lineno, "expected hash<TAB>base64");
        try {
            responses_[line.substr(0, tab)] = base64_decode(std::string_view(line).substr(tab + 1));
        } catch (const InputError& e) {
            throw ParseError(fixture.string(), lineno, e.what());
        }
    }
}

ChatResponse ReplayBackend::complete(const ChatRequest& request) {
    const auto hash = query_hash(request);
    auto it = responses_.find(hash);
    if (it == responses_.end()) throw TransportError("replay fixture has no response for query " + hash);
    return ChatResponse{it->second, {approximate_tokens(request.prompt), approximate_tokens(it->second)}};
}

LiveBackend::LiveBackend(LiveOptions options) : options_(std::move(options)) {
    if (options_.api_key.empty()) throw AuthError(std::string(kApiKeyEnv) + " is not set");
    std::string endpoint = options_.endpoint;
    while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();
    const auto scheme = endpoint.find("://");
    if (scheme == std::string::npos) throw ConfigError("endpoint must include a scheme: " + endpoint);
    const auto path = endpoint.find('/', scheme + 3);
    base_url_ = endpoint.substr(0, path);
    path_prefix_ = path == std::string::npos ? std::string() : endpoint.substr(path);
}

void LiveBackend::pace() {
    if (options_.min_request_interval.count() <= 0) return;
    std::unique_lock lock(pace_mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (last_request_) {
        const auto ready = *last_request_ + options_.min_request_interval;
        if (ready > now) std::this_thread::sleep_until(ready);
    }
    last_request_ = std::chrono::steady_clock::now();
}

ChatResponse LiveBackend::complete(const ChatRequest& request) {
    const json body = {
        {"model", request.model},
        {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.temperature},
    };
    const std::string payload = body.dump();
    const httplib::Headers headers{{"Authorization", "Bearer " + options_.api_key}};

    std::string last_error;
    auto backoff = options_.initial_backoff;
    for (std::size_t attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0) {
            spdlog::warn("live backend: retry {}/{} after {} ({} ms)", attempt, options_.max_retries, last_error,
                         backoff.count());
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        pace();
        httplib::Client client(base_url_);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_write_timeout(options_.timeout);
        auto res = client.Post(path_prefix_ + "/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = "connection error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
        }
        try {
            const auto doc = json::parse(res->body);
            ChatResponse out;
            out.content = doc.at("choices").at(0).at("message").at("content").get<std::string>();
            if (doc.contains("usage") && doc["usage"].is_object()) {
                out.usage.input_tokens = doc["usage"].value("prompt_tokens", std::uint64_t{0});
                out.usage.output_tokens = doc["usage"].value("completion_tokens", std::uint64_t{0});
            } else {
                out.usage = {approximate_tokens(request.prompt), approximate_tokens(out.content)};
            }
            return out;
        } catch (const json::exception& e) {
            throw TransportError(std::string("malformed completion response: ") + e.what());
        }
    }
    throw TransportError("endpoint unreachable after " + std::to_string(options_.max_retries) +
                         " retries: " + last_error);
}

std::unique_ptr<LiveBackend> make_live_backend(LiveOptions options) {
    const char* key = std::getenv(std::string(kApiKeyEnv).c_str());
    if (key == nullptr || *key == '\0') throw AuthError(std::string(kApiKeyEnv) + " is not set");
    options.api_key = key;
    return std::make_unique<LiveBackend>(std::move(options));
}

void write_fixture_line(std::ostream& os, const std::string& hash, std::string_view response) {
    os << hash << '\t' << base64_encode(response) << '\n';
}

RecordingBackend::RecordingBackend(ChatBackend& inner, std::filesystem::path fixture)
    : inner_(inner), fixture_(std::move(fixture)) {}

RecordingBackend::~RecordingBackend() {
    try {
        flush();
    } catch (const std::exception& e) {
        spdlog::error("recording backend: {}", e.what());
    }
}

ChatResponse RecordingBackend::complete(const ChatRequest& request) {
    auto response = inner_.complete(request);
    std::lock_guard lock(mutex_);
    records_[query_hash(request)] = response.content;
    return response;
}

void RecordingBackend::flush() {
    std::lock_guard lock(mutex_);
    if (records_.empty()) return;
    std::ofstream out(fixture_, std::ios::trunc);
    if (!out) throw IoError("cannot write fixture " + fixture_.string());
    for (const auto& [hash, content] : records_) write_fixture_line(out, hash, content);
}

}  // namespace rulesmith
