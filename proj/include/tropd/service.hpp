#pragma once

#include "tropd/core.hpp"
#include "tropd/io.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace tropd {

struct HttpRequest {
    std::string method;
    std::string path;
    std::multimap<std::string, std::string> query;
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

// Least-recently-used map from an exact request key to a finished response.
class LruCache {
public:
    explicit LruCache(std::size_t capacity) : capacity_(capacity) {}
    std::optional<HttpResponse> get(const std::string& key);
    void put(const std::string& key, const HttpResponse& value);
    std::size_t size() const;
    std::size_t hits() const;
    std::size_t misses() const;

private:
    using Entry = std::pair<std::string, HttpResponse>;
    std::size_t capacity_;
    std::list<Entry> order_;  // front = most recent
    std::unordered_map<std::string, std::list<Entry>::iterator> index_;
    std::size_t hits_ = 0, misses_ = 0;
    mutable std::mutex m_;
};

// Session id -> system template. Ids are never reused or evicted while the process runs.
class SessionStore {
public:
    std::string create(const Tds& tds);
    std::optional<Tds> find(const std::string& id) const;
    std::size_t size() const;

private:
    std::map<std::string, Tds> sessions_;
    std::size_t next_ = 1;
    mutable std::shared_mutex m_;
};

struct ServiceOptions {
    std::size_t cache_capacity = 256;
    std::chrono::milliseconds budget{20000};  // longer computations answer 202 with a poll token
    std::size_t orbit_segments = 2000;
};

class ExplorerService {
public:
    explicit ExplorerService(ServiceOptions options = {});
    ~ExplorerService();

    HttpResponse handle(const HttpRequest& req);

    SessionStore& sessions() { return sessions_; }
    const LruCache& cache() const { return cache_; }

private:
    HttpResponse budgeted(const std::string& cache_key, std::function<HttpResponse()> work);
    HttpResponse poll(const std::string& token);

    ServiceOptions options_;
    SessionStore sessions_;
    LruCache cache_;
    std::map<std::string, std::shared_future<HttpResponse>> jobs_;
    std::size_t next_job_ = 1;
    std::mutex jobs_m_;
};

// Blocking-free HTTP front end: the API under /api and the static bundle from `web_root` at /.
class HttpServer {
public:
    HttpServer(ExplorerService& service, std::string web_root);
    ~HttpServer();
    // Binds and starts listening on a background thread; port 0 picks a free port. Returns the port.
    int start(const std::string& host, int port);
    void stop();
    // Start and block until stopped.
    void run(const std::string& host, int port);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tropd
