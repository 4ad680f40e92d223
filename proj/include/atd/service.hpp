#pragma once

// Stateless JSON evaluation service. Request and response schemas are in
// docs/http_api.md.

#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "atd/config_io.hpp"

namespace httplib {
class Server;
}

namespace atd {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// JSON views shared by the service and the CLI's --format json output.
nlohmann::json to_json(const ParameterFile& params);
nlohmann::json to_json(const ScenarioRow& row, const ParameterFile& params);
nlohmann::json to_json(const Report& report, const Point& point, const ParameterFile& params);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const PathSeries& series);
nlohmann::json to_json(const Insight& insight);
nlohmann::json to_json(const CategoryCalibration& result);

/// Routes one request against an immutable parameter snapshot. Per-request
/// overrides are applied to a copy and never touch the snapshot.
class EvaluationService {
 public:
  explicit EvaluationService(ParameterFile snapshot);

  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body) const;

  const ParameterFile& snapshot() const { return *snapshot_; }

 private:
  HttpResponse route(std::string_view method, std::string_view path,
                     std::string_view body) const;

  std::shared_ptr<const ParameterFile> snapshot_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path static_dir;  // dashboard assets, mounted at / when set
};

/// Owns the listening socket and its worker thread.
class HttpServer {
 public:
  HttpServer(const EvaluationService& service, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and starts serving in the background; returns the bound port.
  int start();
  /// Binds and serves on the calling thread until stop().
  void run();
  void stop();

 private:
  int bind();

  const EvaluationService& service_;
  ServeOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
  int port_ = -1;
};

}  // namespace atd
