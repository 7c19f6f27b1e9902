// Copyright 2026 The Labeler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <thread>

#include <nlohmann/json.hpp>

#include "labeler/error.h"
#include "labeler/io.h"
#include "labeler/logging.h"
#include "labeler/providers.h"

namespace labeler {
namespace {

struct Endpoint {
  std::string base;    // scheme://host[:port]
  std::string prefix;  // path prefix without trailing slash
};

Endpoint ParseEndpoint(const std::string &url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "provider endpoint '" + url + "' is not a URL");
  }
  const auto slash = url.find('/', scheme + 3);
  Endpoint endpoint;
  endpoint.base = url.substr(0, slash);
  if (slash != std::string::npos) {
    endpoint.prefix = url.substr(slash);
    while (!endpoint.prefix.empty() && endpoint.prefix.back() == '/') {
      endpoint.prefix.pop_back();
    }
  }
  return endpoint;
}

// POSTs `body` to `route`, retrying transport failures and 5xx responses.
// 4xx responses fail immediately with the server's error message.
nlohmann::json PostJson(const ProviderConfig &config, const std::string &url,
                        const std::string &route, const nlohmann::json &body) {
  const Endpoint endpoint = ParseEndpoint(url);
  const std::string payload = DumpJson(body);
  std::string last_failure;
  for (int attempt = 0; attempt <= config.retry_count; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(100 << std::min(attempt - 1, 4)));
    }
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_write_timeout(config.timeout);
    if (!config.bearer_token.empty()) {
      client.set_bearer_token_auth(config.bearer_token);
    }
    auto result =
        client.Post(endpoint.prefix + route, payload, "application/json");
    if (!result) {
      last_failure = httplib::to_string(result.error());
      LogWarning("provider.retry", {{"url", url + route},
                                    {"attempt", attempt},
                                    {"reason", last_failure}});
      continue;
    }
    nlohmann::json response;
    try {
      response = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::parse_error &) {
      if (result->status >= 500) {
        last_failure = "HTTP " + std::to_string(result->status);
        continue;
      }
      throw Error(ErrorCode::kProvider, url + route +
                                            ": malformed response (HTTP " +
                                            std::to_string(result->status) +
                                            ")");
    }
    if (result->status >= 500) {
      last_failure = "HTTP " + std::to_string(result->status);
      LogWarning("provider.retry", {{"url", url + route},
                                    {"attempt", attempt},
                                    {"reason", last_failure}});
      continue;
    }
    if (result->status != 200) {
      std::string message = "HTTP " + std::to_string(result->status);
      if (response.is_object() && response.contains("error") &&
          response["error"].is_string()) {
        message += ": " + response["error"].get<std::string>();
      }
      throw Error(ErrorCode::kProvider, url + route + ": " + message);
    }
    return response;
  }
  throw Error(ErrorCode::kProvider,
              url + route + ": provider unreachable after " +
                  std::to_string(config.retry_count + 1) +
                  " attempts (" + last_failure + ")");
}

std::string Lowercase(std::string text) {
  for (char &c : text) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return text;
}

}  // namespace

HttpEmbedder::HttpEmbedder(ProviderConfig config) : config_(std::move(config)) {
  config_.Validate();
  ParseEndpoint(config_.embed_endpoint);
}

std::string HttpEmbedder::identity() const {
  return "http:" + config_.embed_endpoint + "/" +
         std::to_string(config_.embedding_dim);
}

std::vector<EmbeddingVector> HttpEmbedder::Embed(
    std::span<const std::string> texts) {
  for (const std::string &text : texts) {
    if (text.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot embed empty text");
    }
  }
  if (texts.empty()) return {};
  const nlohmann::json response =
      PostJson(config_, config_.embed_endpoint, "/embed",
               {{"texts", std::vector<std::string>(texts.begin(), texts.end())}});
  if (!response.is_object() || !response.contains("embeddings") ||
      !response["embeddings"].is_array()) {
    throw Error(ErrorCode::kProvider,
                "malformed /embed response: missing 'embeddings'");
  }
  const auto &rows = response["embeddings"];
  if (rows.size() != texts.size()) {
    throw Error(ErrorCode::kProvider,
                "/embed returned " + std::to_string(rows.size()) +
                    " embeddings for " + std::to_string(texts.size()) +
                    " texts");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(rows.size());
  for (const auto &row : rows) {
    std::vector<double> values;
    try {
      values = row.get<std::vector<double>>();
    } catch (const nlohmann::json::exception &) {
      throw Error(ErrorCode::kProvider,
                  "malformed /embed response: embedding is not numeric");
    }
    if (values.size() != config_.embedding_dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "/embed dimension mismatch: expected " +
                      std::to_string(config_.embedding_dim) + ", received " +
                      std::to_string(values.size()));
    }
    try {
      out.push_back(EmbeddingVector::Normalize(std::move(values)));
    } catch (const Error &e) {
      throw Error(ErrorCode::kProvider,
                  std::string("unusable /embed vector: ") + e.what());
    }
  }
  return out;
}

HttpMetadataProvider::HttpMetadataProvider(ProviderConfig config)
    : config_(std::move(config)) {
  config_.Validate();
  ParseEndpoint(config_.metadata_endpoint);
}

std::string HttpMetadataProvider::identity() const {
  return "http:" + config_.metadata_endpoint;
}

std::vector<MetadataRecord> HttpMetadataProvider::Generate(
    std::string_view abstract, std::span<const std::string> keywords) {
  if (abstract.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "metadata requires an abstract");
  }
  if (keywords.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "metadata requires keywords");
  }
  const nlohmann::json response = PostJson(
      config_, config_.metadata_endpoint, "/metadata",
      {{"abstract", std::string(abstract)},
       {"keywords", std::vector<std::string>(keywords.begin(), keywords.end())},
       {"prompt", FormatMetadataPrompt(abstract, keywords)}});
  if (!response.is_object() || !response.contains("metadata") ||
      !response["metadata"].is_array()) {
    throw Error(ErrorCode::kProvider,
                "malformed /metadata response: missing 'metadata'");
  }
  std::vector<MetadataRecord> received;
  for (const auto &item : response["metadata"]) {
    if (!item.is_object() || !item.contains("keyword") ||
        !item.contains("text") || !item["keyword"].is_string() ||
        !item["text"].is_string()) {
      throw Error(ErrorCode::kProvider,
                  "malformed /metadata response: bad record");
    }
    received.push_back(
        {item["keyword"].get<std::string>(), item["text"].get<std::string>()});
  }
  std::vector<MetadataRecord> out;
  out.reserve(keywords.size());
  for (const std::string &keyword : keywords) {
    auto it = std::find_if(received.begin(), received.end(),
                           [&](const MetadataRecord &r) {
                             return r.keyword == keyword;
                           });
    if (it == received.end()) {
      const std::string folded = Lowercase(keyword);
      it = std::find_if(received.begin(), received.end(),
                        [&](const MetadataRecord &r) {
                          return Lowercase(r.keyword) == folded;
                        });
    }
    if (it == received.end()) {
      throw Error(ErrorCode::kProvider,
                  "/metadata response is missing keyword '" + keyword + "'");
    }
    if (it->metadata_text.empty()) {
      throw Error(ErrorCode::kProvider,
                  "/metadata returned empty text for keyword '" + keyword +
                      "'");
    }
    out.push_back({keyword, it->metadata_text});
  }
  return out;
}

}  // namespace labeler
