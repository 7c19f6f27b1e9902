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

#ifndef LABELER_MOCK_SERVER_H_
#define LABELER_MOCK_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "labeler/providers.h"

namespace httplib {
class Server;
}

namespace labeler {

// Serves the provider wire protocol from the deterministic mocks:
//   POST /embed     {"texts": [...]}                -> {"embeddings", "model"}
//   POST /metadata  {"abstract", "keywords": [...]} -> {"metadata", "model"}
// Malformed requests get 400 {"error": ...}; unknown routes 404.
class MockProviderServer {
 public:
  explicit MockProviderServer(
      MockMetadataProvider::Mode metadata_mode =
          MockMetadataProvider::Mode::kContext,
      std::size_t dim = kEmbeddingDim);
  ~MockProviderServer();

  MockProviderServer(const MockProviderServer &) = delete;
  MockProviderServer &operator=(const MockProviderServer &) = delete;

  // Binds `host:port` (port 0 picks a free port) and returns the bound port.
  // Throws kIo when the port is in use.
  int Bind(const std::string &host, int port);

  // Serves on a background thread until Stop().
  void Start();
  // Serves on the calling thread until Stop() is called from elsewhere.
  void Run();
  void Stop();

  int port() const { return port_; }
  std::string url() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = -1;
};

}  // namespace labeler

#endif  // LABELER_MOCK_SERVER_H_
