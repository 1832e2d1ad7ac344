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
#include <string>
#include <thread>

#include "runlog/service/service.hpp"

namespace httplib {
class Server;
}

namespace runlog::service {

// HTTP/1.1 adapter around Service. Every request is translated into an
// api::Request and handed to Service::handle on the server's worker threads.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Serves on a background thread until stop().
  void start();
  // Serves on the calling thread until stop() from elsewhere.
  void run();
  void stop();

  int port() const { return port_; }
  std::string endpoint() const;

 private:
  const Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
  bool listened_ = false;
};

}  // namespace runlog::service
