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

#include "labeler/mock_server.h"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "labeler/error.h"
#include "labeler/io.h"
#include "labeler/logging.h"

namespace labeler {
namespace {

void Reply(httplib::Response &res, int status, const nlohmann::json &body) {
  res.status = status;
  res.set_content(DumpJson(body), "application/json");
}

// Returns the parsed body or writes a 400 and returns null.
std::optional<nlohmann::json> ParseBody(const httplib::Request &req,
                                        httplib::Response &res) {
  try {
    auto body = nlohmann::json::parse(req.body);
    if (!body.is_object()) {
      Reply(res, 400, {{"error", "request body must be a JSON object"}});
      return std::nullopt;
    }
    return body;
  } catch (const nlohmann::json::parse_error &) {
    Reply(res, 400, {{"error", "request body is not valid JSON"}});
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> StringArray(
    const nlohmann::json &body, const char *field, httplib::Response &res) {
  auto it = body.find(field);
  if (it == body.end() || !it->is_array()) {
    Reply(res, 400,
          {{"error", std::string("field '") + field + "' must be an array"}});
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (const auto &item : *it) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      Reply(res, 400, {{"error", std::string("field '") + field +
                                     "' must hold non-empty strings"}});
      return std::nullopt;
    }
    out.push_back(item.get<std::string>());
  }
  if (out.empty()) {
    Reply(res, 400,
          {{"error", std::string("field '") + field + "' must not be empty"}});
    return std::nullopt;
  }
  return out;
}

}  // namespace

MockProviderServer::MockProviderServer(MockMetadataProvider::Mode metadata_mode,
                                       std::size_t dim)
    : server_(std::make_unique<httplib::Server>()) {
  auto embedder = std::make_shared<MockEmbedder>(dim);
  auto metadata = std::make_shared<MockMetadataProvider>(metadata_mode);

  server_->Post("/embed", [embedder](const httplib::Request &req,
                                     httplib::Response &res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    auto texts = StringArray(*body, "texts", res);
    if (!texts) return;
    try {
      nlohmann::json rows = nlohmann::json::array();
      for (const EmbeddingVector &v : embedder->Embed(*texts)) {
        rows.push_back(std::vector<double>(v.values().begin(), v.values().end()));
      }
      Reply(res, 200, {{"embeddings", std::move(rows)},
                       {"model", embedder->identity()}});
    } catch (const Error &e) {
      Reply(res, 400, {{"error", e.what()}});
    }
  });

  server_->Post("/metadata", [metadata](const httplib::Request &req,
                                        httplib::Response &res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    auto abstract = body->find("abstract");
    if (abstract == body->end() || !abstract->is_string() ||
        abstract->get<std::string>().empty()) {
      Reply(res, 400, {{"error", "field 'abstract' must be a non-empty string"}});
      return;
    }
    auto keywords = StringArray(*body, "keywords", res);
    if (!keywords) return;
    try {
      nlohmann::json records = nlohmann::json::array();
      for (const MetadataRecord &r :
           metadata->Generate(abstract->get<std::string>(), *keywords)) {
        records.push_back({{"keyword", r.keyword}, {"text", r.metadata_text}});
      }
      Reply(res, 200, {{"metadata", std::move(records)},
                       {"model", metadata->identity()}});
    } catch (const Error &e) {
      Reply(res, 400, {{"error", e.what()}});
    }
  });

  server_->set_error_handler(
      [](const httplib::Request &, httplib::Response &res) {
        if (res.body.empty()) {
          Reply(res, res.status, {{"error", "HTTP " + std::to_string(res.status)}});
        }
      });
}

MockProviderServer::~MockProviderServer() { Stop(); }

int MockProviderServer::Bind(const std::string &host, int port) {
  host_ = host;
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    port_ = port;
  } else {
    port_ = -1;
  }
  if (port_ <= 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" +
                                    std::to_string(port) + " (port in use?)");
  }
  return port_;
}

void MockProviderServer::Start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void MockProviderServer::Run() {
  LogInfo("serve_mock.listening", {{"url", url()}});
  server_->listen_after_bind();
}

void MockProviderServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockProviderServer::url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace labeler
