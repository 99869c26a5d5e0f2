#include "tropd/service.hpp"

#include "tropd/presets.hpp"
#include "tropd/scene.hpp"

#include <httplib.h>

#include <sstream>
#include <thread>

namespace tropd {

std::optional<HttpResponse> LruCache::get(const std::string& key) {
    std::lock_guard lock(m_);
    auto it = index_.find(key);
    if (it == index_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
}

void LruCache::put(const std::string& key, const HttpResponse& value) {
    std::lock_guard lock(m_);
    if (capacity_ == 0) return;
    auto it = index_.find(key);
    if (it != index_.end()) {
        it->second->second = value;
        order_.splice(order_.begin(), order_, it->second);
        return;
    }
    order_.emplace_front(key, value);
    index_[key] = order_.begin();
    if (order_.size() > capacity_) {
        index_.erase(order_.back().first);
        order_.pop_back();
    }
}

std::size_t LruCache::size() const {
    std::lock_guard lock(m_);
    return order_.size();
}

std::size_t LruCache::hits() const {
    std::lock_guard lock(m_);
    return hits_;
}

std::size_t LruCache::misses() const {
    std::lock_guard lock(m_);
    return misses_;
}

std::string SessionStore::create(const Tds& tds) {
    std::unique_lock lock(m_);
    std::string id = "s" + std::to_string(next_++);
    sessions_.emplace(id, tds);
    return id;
}

std::optional<Tds> SessionStore::find(const std::string& id) const {
    std::shared_lock lock(m_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return std::nullopt;
    return it->second;
}

std::size_t SessionStore::size() const {
    std::shared_lock lock(m_);
    return sessions_.size();
}

namespace {

HttpResponse json_response(int status, const Json& j) { return {status, "application/json", j.dump()}; }

HttpResponse error_response(int status, const std::string& error, const std::string& detail) {
    return json_response(status, {{"error", error}, {"detail", detail}});
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string p;
    while (std::getline(ss, p, '/'))
        if (!p.empty()) parts.push_back(p);
    return parts;
}

std::vector<std::pair<int, TropCoeff>> overrides_of(const HttpRequest& req) {
    std::vector<std::pair<int, TropCoeff>> out;
    auto [b, e] = req.query.equal_range("set");
    for (auto it = b; it != e; ++it) {
        std::stringstream ss(it->second);
        std::string one;
        while (std::getline(ss, one, ','))
            if (!one.empty()) out.push_back(parse_override(one));
    }
    return out;
}

std::string query_value(const HttpRequest& req, const std::string& key, const std::string& fallback = "") {
    auto it = req.query.find(key);
    return it == req.query.end() ? fallback : it->second;
}

// Errors raised while computing: bad input is 422, the rest is a server-side analysis failure.
HttpResponse from_error(const Error& e) {
    switch (e.code()) {
        case Errc::BadRational:
        case Errc::UnknownPair:
        case Errc::BadSchema: return error_response(422, errc_name(e.code()), e.detail());
        default: return error_response(500, errc_name(e.code()), e.detail());
    }
}

}  // namespace

ExplorerService::ExplorerService(ServiceOptions options) : options_(options), cache_(options.cache_capacity) {}

ExplorerService::~ExplorerService() {
    std::lock_guard lock(jobs_m_);
    for (auto& [token, f] : jobs_) f.wait();
}

HttpResponse ExplorerService::budgeted(const std::string& cache_key, std::function<HttpResponse()> work) {
    if (!cache_key.empty())
        if (auto hit = cache_.get(cache_key)) return *hit;
    auto task = [this, cache_key, work = std::move(work)]() {
        HttpResponse r;
        try {
            r = work();
        } catch (const Error& e) {
            r = from_error(e);
        } catch (const std::exception& e) {
            r = error_response(500, "InternalError", e.what());
        }
        if (!cache_key.empty() && r.status == 200) cache_.put(cache_key, r);
        return r;
    };
    std::shared_future<HttpResponse> f = std::async(std::launch::async, task).share();
    if (f.wait_for(options_.budget) == std::future_status::ready) return f.get();
    std::lock_guard lock(jobs_m_);
    std::string token = "j" + std::to_string(next_job_++);
    jobs_.emplace(token, f);
    return json_response(202, {{"token", token}, {"poll", "/api/jobs/" + token}});
}

HttpResponse ExplorerService::poll(const std::string& token) {
    std::shared_future<HttpResponse> f;
    {
        std::lock_guard lock(jobs_m_);
        auto it = jobs_.find(token);
        if (it == jobs_.end()) return error_response(404, "UnknownJob", token);
        f = it->second;
        if (f.wait_for(std::chrono::milliseconds(0)) != std::future_status::ready)
            return json_response(202, {{"token", token}, {"poll", "/api/jobs/" + token}});
        jobs_.erase(it);
    }
    return f.get();
}

HttpResponse ExplorerService::handle(const HttpRequest& req) {
    auto parts = split_path(req.path);
    if (parts.empty() || parts[0] != "api") return error_response(404, "NotFound", req.path);
    const bool get = req.method == "GET";
    const bool post = req.method == "POST";

    if (parts.size() == 2 && parts[1] == "presets") {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        Json list = Json::array();
        for (const auto& name : preset_names()) list.push_back({{"name", name}, {"tds", tds_to_json(preset(name))}});
        return json_response(200, {{"presets", list}});
    }
    if (parts.size() == 3 && parts[1] == "jobs") {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        return poll(parts[2]);
    }
    if (parts.size() == 2 && parts[1] == "tds") {
        if (!post) return error_response(405, "MethodNotAllowed", req.method);
        Json body;
        try {
            body = Json::parse(req.body);
        } catch (const Json::exception& e) {
            return error_response(400, "BadJson", e.what());
        }
        try {
            Tds tds = body.is_object() && body.contains("preset") && body.at("preset").is_string()
                          ? preset(body.at("preset").get<std::string>())
                          : tds_from_json(body);
            return json_response(201, {{"id", sessions_.create(tds)}});
        } catch (const Error& e) {
            return error_response(400, errc_name(e.code()), e.detail());
        }
    }
    if (parts.size() < 3 || parts[1] != "tds") return error_response(404, "NotFound", req.path);

    auto base = sessions_.find(parts[2]);
    if (!base) return error_response(404, "UnknownSession", parts[2]);
    std::string what = parts.size() > 3 ? parts[3] : "";
    if (parts.size() > 4) return error_response(404, "NotFound", req.path);

    Tds tds = *base;
    try {
        tds = apply_overrides(*base, overrides_of(req));
    } catch (const Error& e) {
        return error_response(422, errc_name(e.code()), e.detail());
    }
    const std::string key = tds_to_json(tds).dump();

    if (what.empty()) {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        return json_response(200, tds_to_json(tds));
    }
    if (what == "scene" || what == "portrait.svg") {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        std::string layers = query_value(req, "layers", "all");
        SceneOptions opts;
        try {
            opts = SceneOptions::from_layers(layers);
            if (auto c = query_value(req, "clip"); !c.empty()) {
                auto r = parse_rational(c);
                if (!r || *r <= 0) throw Error(Errc::BadRational, c);
                opts.clip = *r;
            }
        } catch (const Error& e) {
            return error_response(422, errc_name(e.code()), e.detail());
        }
        int size = 640;
        if (what == "portrait.svg") {
            try {
                size = std::stoi(query_value(req, "size", "640"));
            } catch (const std::exception&) {
                return error_response(422, "BadSize", query_value(req, "size"));
            }
            if (size < 16 || size > 8192) return error_response(422, "BadSize", std::to_string(size));
        }
        std::string ck = what + "|" + layers + "|" + to_string(opts.clip) + "|" + std::to_string(size) + "|" + key;
        return budgeted(ck, [tds, opts, what, size] {
            Scene s = export_scene(tds, opts);
            if (what == "scene") return json_response(200, scene_json(s));
            return HttpResponse{200, "image/svg+xml", export_svg(s, size)};
        });
    }
    if (what == "graph") {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        return budgeted("graph|" + key, [tds] {
            CrossingGraph g = build_graph(tds);
            CycleList c = enumerate_cycles(g);
            return json_response(200, graph_json(g, &c));
        });
    }
    if (what == "report") {
        if (!get) return error_response(405, "MethodNotAllowed", req.method);
        return budgeted("report|" + key, [tds] {
            PortraitAnalysis a = analyze(tds);
            Json j = report_json(stability_report(a));
            j["signature"] = portrait_signature(tds, a).lines;
            return json_response(200, j);
        });
    }
    if (what == "orbit") {
        if (!post) return error_response(405, "MethodNotAllowed", req.method);
        Json body;
        try {
            body = Json::parse(req.body);
        } catch (const Json::exception& e) {
            return error_response(400, "BadJson", e.what());
        }
        QPoint start;
        Orientation dir = Orientation::Forward;
        TracePolicy policy;
        bool branch_all = false;
        TraceLimits limits;
        limits.max_segments = options_.orbit_segments;
        try {
            if (!body.is_object() || !body.contains("start")) throw Error(Errc::BadSchema, "missing 'start'");
            start = point_from_json(body.at("start"));
            if (body.contains("set"))
                for (const auto& s : body.at("set")) tds = apply_overrides(tds, {parse_override(s.get<std::string>())});
            std::string d = body.value("direction", "forward");
            if (d == "backward") dir = Orientation::Backward;
            else if (d != "forward") throw Error(Errc::BadSchema, "direction must be forward or backward");
            if (body.contains("policy")) {
                const Json& p = body.at("policy");
                policy.crossing_only = p.value("crossing_only", false);
                branch_all = p.value("branch_all", false);
                if (p.contains("initial_direction")) {
                    QPoint w = point_from_json(p.at("initial_direction"));
                    policy.initial_direction = Vec2(w.u, w.v);
                }
                if (p.contains("max_segments")) limits.max_segments = std::min<std::size_t>(p.at("max_segments").get<std::size_t>(), 100000);
            }
        } catch (const Error& e) {
            return error_response(422, e.code() == Errc::BadRational ? "BadPoint" : errc_name(e.code()), e.detail());
        } catch (const Json::exception& e) {
            return error_response(422, "BadPoint", e.what());
        }
        return budgeted("", [tds, start, dir, policy, branch_all, limits] {
            if (branch_all) {
                Json list = Json::array();
                for (const auto& o : trace_branches(tds, start, dir, policy, limits)) list.push_back(orbit_json(o));
                return json_response(200, {{"orbits", list}});
            }
            return json_response(200, orbit_json(trace_orbit(tds, start, dir, policy, limits)));
        });
    }
    return error_response(404, "NotFound", req.path);
}

struct HttpServer::Impl {
    Impl(ExplorerService& s, std::string root) : service(s), web_root(std::move(root)) {}
    ExplorerService& service;
    std::string web_root;
    httplib::Server server;
    std::thread thread;
};

HttpServer::HttpServer(ExplorerService& service, std::string web_root)
    : impl_(std::make_unique<Impl>(service, std::move(web_root))) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        HttpRequest r{req.method, req.path, {}, req.body};
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        HttpResponse out = impl_->service.handle(r);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    impl_->server.Get(R"(/api/.*)", forward);
    impl_->server.Post(R"(/api/.*)", forward);
    if (!impl_->web_root.empty()) impl_->server.set_mount_point("/", impl_->web_root);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::stop() {
    if (impl_->thread.joinable()) {
        impl_->server.stop();
        impl_->thread.join();
    }
}

void HttpServer::run(const std::string& host, int port) {
    start(host, port);
    impl_->thread.join();
}

}  // namespace tropd
