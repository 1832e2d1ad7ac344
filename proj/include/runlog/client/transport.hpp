/* Copyright 2026 The Runlog Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "runlog/service/api_types.hpp"

namespace httplib {
class Client;
}

namespace runlog::service {
class Service;
}

namespace runlog::client {

class Transport {
 public:
  virtual ~Transport() = default;
  // Throws Error(kConnectionFailed) when the request could not be delivered.
  virtual api::Response send(const api::Request& request) = 0;
};

// Keep-alive HTTP/1.1 client. Multipart uploads are encoded from
// Request::files. Safe to share between threads.
class HttpTransport : public Transport {
 public:
  // endpoint: "http://host:port"
  explicit HttpTransport(const std::string& endpoint);
  ~HttpTransport() override;

  api::Response send(const api::Request& request) override;

 private:
  std::unique_ptr<httplib::Client> client_;
  std::string endpoint_;
  std::mutex mutex_;
};

// Calls Service::handle directly; no sockets.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(const service::Service& service) : service_(service) {}
  api::Response send(const api::Request& request) override;

 private:
  const service::Service& service_;
};

// Forwards to another transport and keeps every exchange.
class RecordingTransport : public Transport {
 public:
  struct Exchange {
    api::Request request;
    api::Response response;
  };

  explicit RecordingTransport(Transport& inner) : inner_(inner) {}
  api::Response send(const api::Request& request) override;

  const std::vector<Exchange>& exchanges() const { return exchanges_; }
  void clear() { exchanges_.clear(); }

 private:
  Transport& inner_;
  std::vector<Exchange> exchanges_;
  std::mutex mutex_;
};

// Checks "http://host[:port][/]"; throws Error(kInvalid).
void validate_endpoint(const std::string& endpoint);

}  // namespace runlog::client
