#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "cobench/error.hpp"
#include "cobench/evalharness.hpp"

namespace cobench {

namespace {

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

UrlParts split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("endpoint url needs a scheme: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw InvalidArgument("unsupported endpoint scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  UrlParts parts;
  parts.origin = url.substr(0, path_start);
  parts.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!parts.path.empty() && parts.path.back() == '/') parts.path.pop_back();
  return parts;
}

class HttpChatClient : public CompletionClient {
 public:
  explicit HttpChatClient(EndpointConfig cfg) : cfg_(std::move(cfg)), url_(split_url(cfg_.base_url)) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str())) api_key_ = key;
  }

  std::vector<std::string> complete(const CompletionRequest& request) override {
    std::vector<std::string> out;
    if (cfg_.provider_sampling) {
      out = send(request, request.n);
    } else {
      for (int i = 0; i < request.n; ++i) {
        auto one = send(request, 1);
        out.insert(out.end(), one.begin(), one.end());
      }
    }
    if (static_cast<int>(out.size()) != request.n) {
      throw EndpointError("endpoint returned " + std::to_string(out.size()) + " choices, expected " +
                          std::to_string(request.n));
    }
    return out;
  }

 private:
  std::vector<std::string> send(const CompletionRequest& request, int n) {
    nlohmann::json body;
    body["model"] = cfg_.model_name;
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}});
    body["temperature"] = cfg_.temperature;
    body["top_p"] = cfg_.top_p;
    body["max_tokens"] = cfg_.max_tokens;
    if (n > 1) body["n"] = n;
    const std::string payload = body.dump();

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    std::string last_error;
    for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
      if (attempt > 0) {
        const double wait = cfg_.backoff_seconds * static_cast<double>(1 << std::min(attempt - 1, 10));
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
      }
      httplib::Client client(url_.origin);
      const auto timeout = std::chrono::duration<double>(cfg_.timeout_seconds);
      client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
      client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
      client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
      auto res = client.Post(url_.path + "/chat/completions", headers, payload, "application/json");
      if (!res) {
        last_error = "request failed: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 401 || res->status == 403) {
        throw EndpointError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) {
        throw EndpointError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
      }
      return choices(res->body);
    }
    throw EndpointError("giving up after " + std::to_string(cfg_.retries + 1) + " attempts: " + last_error);
  }

  static std::vector<std::string> choices(const std::string& text) {
    std::vector<std::string> out;
    try {
      const auto doc = nlohmann::json::parse(text);
      for (const auto& choice : doc.at("choices")) {
        const auto& content = choice.at("message").at("content");
        out.push_back(strip_reasoning(content.is_string() ? content.get<std::string>() : ""));
      }
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(std::string("malformed completion response: ") + e.what());
    }
    return out;
  }

  EndpointConfig cfg_;
  UrlParts url_;
  std::string api_key_;
};

}  // namespace

std::string strip_reasoning(std::string_view text) {
  constexpr std::string_view open = "<think>";
  constexpr std::string_view close = "</think>";
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto start = text.find(open, pos);
    if (start == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, start - pos));
    const auto end = text.find(close, start + open.size());
    if (end == std::string_view::npos) break;  // unterminated: drop the rest
    pos = end + close.size();
  }
  return out;
}

void validate(const EndpointConfig& cfg) {
  if (cfg.n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  if (!(cfg.temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (!(cfg.top_p > 0.0 && cfg.top_p <= 1.0)) throw InvalidArgument("top_p must lie in (0, 1]");
  if (cfg.max_tokens < 1) throw InvalidArgument("max_tokens must be >= 1");
  if (!(cfg.timeout_seconds > 0.0)) throw InvalidArgument("timeout must be > 0");
  if (cfg.max_parallel < 1) throw InvalidArgument("max_parallel must be >= 1");
  if (cfg.retries < 0) throw InvalidArgument("retries must be >= 0");
  if (!(cfg.backoff_seconds >= 0.0)) throw InvalidArgument("backoff must be >= 0");
}

std::unique_ptr<CompletionClient> make_http_client(const EndpointConfig& cfg) {
  validate(cfg);
  return std::make_unique<HttpChatClient>(cfg);
}

}  // namespace cobench
