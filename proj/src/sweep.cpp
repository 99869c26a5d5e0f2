#include "tropd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

namespace tropd {

namespace {

struct Probe {
    Signature signature;
    Overall verdict = Overall::StructurallyStable;
    bool degenerate = false;
    std::string error;
};

Probe probe(const Tds& tpl, int param, const Rational& a, const AnalysisLimits& limits) {
    Probe p;
    try {
        Tds t = tpl.with_alpha(param, a);
        PortraitAnalysis an = analyze(t, limits);
        p.signature = portrait_signature(t, an);
        p.verdict = stability_report(an).overall;
        p.degenerate = p.verdict == Overall::ViolationFound;
    } catch (const Error& e) {
        p.error = e.what();
        p.degenerate = true;
        p.verdict = Overall::ViolationFound;
        p.signature.lines = {std::string("error ") + errc_name(e.code())};
    }
    return p;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto work = [&] {
        for (std::size_t k; (k = next++) < n;) {
            try {
                body(k);
            } catch (...) {
                std::lock_guard lock(m);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

class Registry {
public:
    explicit Registry(std::vector<Signature>& out) : out_(out) {}
    int id(const Signature& s) {
        std::lock_guard lock(m_);
        for (std::size_t k = 0; k < out_.size(); ++k)
            if (out_[k] == s) return static_cast<int>(k);
        out_.push_back(s);
        return static_cast<int>(out_.size() - 1);
    }

private:
    std::vector<Signature>& out_;
    std::mutex m_;
};

struct End {
    Rational x;
    int sig;
    Overall verdict;
};

void bisect(const Tds& tpl, int param, End lo, End hi, const SweepOptions& o, Registry& reg, std::vector<Bracket>& out) {
    while (hi.x - lo.x > o.tolerance) {
        Rational m = (lo.x + hi.x) / 2;
        Probe p = probe(tpl, param, m, o.limits);
        int s = reg.id(p.signature);
        if (p.degenerate) {
            out.push_back({m, m, lo.sig, hi.sig, lo.verdict, hi.verdict, true});
            return;
        }
        End mid{m, s, p.verdict};
        if (s == lo.sig) {
            lo = mid;
        } else if (s == hi.sig) {
            hi = mid;
        } else {
            bisect(tpl, param, lo, mid, o, reg, out);
            bisect(tpl, param, mid, hi, o, reg, out);
            return;
        }
    }
    out.push_back({lo.x, hi.x, lo.sig, hi.sig, lo.verdict, hi.verdict, false});
}

}  // namespace

SweepResult sweep(const Tds& tpl, int param, const Rational& lo, const Rational& hi, const Rational& step,
                  const SweepOptions& o) {
    if (step <= 0) throw Error(Errc::BadSchema, "sweep step must be positive");
    if (hi < lo) throw Error(Errc::BadSchema, "sweep range is empty");
    if (!tpl.has(param)) throw Error(Errc::UnknownPair, "no pair " + std::to_string(param));
    SweepResult r;
    r.param = param;
    Registry reg(r.signatures);

    std::vector<Rational> grid;
    for (Rational a = lo; a <= hi; a += step) grid.push_back(a);
    std::vector<Probe> probes(grid.size());
    parallel_for(grid.size(), o.threads, [&](std::size_t k) { probes[k] = probe(tpl, param, grid[k], o.limits); });
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Probe& p = probes[k];
        r.samples.push_back({grid[k], reg.id(p.signature), p.verdict, p.degenerate, p.error});
    }

    // Chambers: runs of one signature among the regular samples.
    for (const auto& s : r.samples) {
        if (s.degenerate) continue;
        if (!r.chambers.empty() && r.chambers.back().signature == s.signature) r.chambers.back().hi = s.alpha;
        else r.chambers.push_back({s.alpha, s.alpha, s.signature});
    }

    // Gaps between neighbouring regular samples with different signatures, and degenerate samples.
    std::vector<std::pair<End, End>> gaps;
    const SweepSample* prev = nullptr;
    bool point_between = false;
    for (const auto& s : r.samples) {
        if (s.degenerate) {
            r.brackets.push_back({s.alpha, s.alpha, prev ? prev->signature : -1, -1, prev ? prev->verdict : s.verdict, s.verdict, true});
            point_between = true;
            continue;
        }
        if (prev && prev->signature != s.signature) {
            if (point_between) {
                r.brackets.back().to = s.signature;
                r.brackets.back().verdict_hi = s.verdict;
            } else {
                gaps.push_back({{prev->alpha, prev->signature, prev->verdict}, {s.alpha, s.signature, s.verdict}});
            }
        } else if (point_between && !r.brackets.empty()) {
            r.brackets.back().to = s.signature;
            r.brackets.back().verdict_hi = s.verdict;
        }
        prev = &s;
        point_between = false;
    }

    std::vector<std::vector<Bracket>> found(gaps.size());
    parallel_for(gaps.size(), o.threads,
                 [&](std::size_t k) { bisect(tpl, param, gaps[k].first, gaps[k].second, o, reg, found[k]); });
    for (auto& f : found) r.brackets.insert(r.brackets.end(), f.begin(), f.end());
    std::sort(r.brackets.begin(), r.brackets.end(), [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
    return r;
}

Json sweep_json(const SweepResult& r) {
    Json sigs = Json::array();
    for (const auto& s : r.signatures) sigs.push_back(s.lines);
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        Json e{{"alpha", rational_json(s.alpha)}, {"signature", s.signature}, {"verdict", overall_name(s.verdict)}, {"degenerate", s.degenerate}};
        if (!s.error.empty()) e["error"] = s.error;
        samples.push_back(e);
    }
    Json chambers = Json::array();
    for (const auto& c : r.chambers) chambers.push_back({{"lo", rational_json(c.lo)}, {"hi", rational_json(c.hi)}, {"signature", c.signature}});
    Json brackets = Json::array();
    for (const auto& b : r.brackets)
        brackets.push_back({{"lo", rational_json(b.lo)},
                            {"hi", rational_json(b.hi)},
                            {"lo_float", to_double(b.lo)},
                            {"hi_float", to_double(b.hi)},
                            {"from", b.from},
                            {"to", b.to},
                            {"verdict_lo", overall_name(b.verdict_lo)},
                            {"verdict_hi", overall_name(b.verdict_hi)},
                            {"point", b.point}});
    return {{"param", r.param}, {"signatures", sigs}, {"samples", samples}, {"chambers", chambers}, {"brackets", brackets}};
}

}  // namespace tropd
