#pragma once

// Process, filesystem and HTTP scaffolding shared by the integration tests.

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "chartscribe/service.hpp"
#include "httplib.h"

namespace harness {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs argv through /bin/sh with stdout and stderr captured.
CommandResult run(const std::vector<std::string>& argv);

/// Sorted fixture bundle directories.
std::vector<std::filesystem::path> fixture_dirs();

void copy_fixtures(const std::filesystem::path& to);

std::string read_file(const std::filesystem::path& path);

/// Service plus HTTP server on an ephemeral loopback port.
class LiveService {
public:
    explicit LiveService(chartscribe::service::ServiceConfig config,
                         std::shared_ptr<chartscribe::ingest::HttpTransport> transport = nullptr);
    ~LiveService();

    httplib::Client client() const;
    chartscribe::service::Service& service() noexcept { return *service_; }
    int port() const noexcept { return port_; }

private:
    std::unique_ptr<chartscribe::service::Service> service_;
    std::unique_ptr<chartscribe::service::HttpServer> server_;
    std::thread thread_;
    int port_ = 0;
};

/// Serves bundle directories in the remote chart API layout:
/// /charts/{id}, /charts/{id}/data, /charts/{id}/export/svg, guarded by a
/// bearer token.
class StubRemote {
public:
    StubRemote(std::map<std::string, std::filesystem::path> charts, std::string token);
    ~StubRemote();

    std::string base_url() const;
    std::size_t requests() const noexcept { return requests_.load(); }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<std::size_t> requests_{0};
};

}  // namespace harness
