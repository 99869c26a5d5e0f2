#include "tropd/graph.hpp"

#include "tropd/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace tropd {

bool CrossingGraph::has_arc(int i, int j) const { return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(i, j)); }

std::vector<int> CrossingGraph::successors(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : arcs)
        if (a == i) out.push_back(b);
    return out;
}

std::vector<int> CrossingGraph::predecessors(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : arcs)
        if (b == i) out.push_back(a);
    return out;
}

CrossingGraph build_graph(const Tds& tds) {
    Subdivision s = regular_subdivision(tds, AxisFilter::I);
    CrossingGraph g;
    std::set<int> used;
    for (const auto& f : s.faces)
        for (int k : f.boundary) used.insert(s.points[k].pair);
    for (const auto& [a, b] : s.edges) {
        used.insert(s.points[a].pair);
        used.insert(s.points[b].pair);
    }
    for (int k : used) {
        const auto& p = tds.pair(k);
        g.nodes.push_back({k, p.degree, p.flow});
    }
    for (const auto& [a, b] : s.edges) {
        int i = s.points[a].pair, j = s.points[b].pair;
        const auto& pi = tds.pair(i);
        const auto& pj = tds.pair(j);
        Degree n = pj.degree - pi.degree;
        const int x = pi.flow.dot(n), y = pj.flow.dot(n);
        if (x * y <= 0) continue;
        if (x > 0) g.arcs.emplace_back(i, j);
        else g.arcs.emplace_back(j, i);
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

namespace {

struct CircuitSearch {
    std::map<int, std::vector<int>> succ;
    int min_len = 4;
    std::size_t cap = 0;
    CycleList out;
    std::vector<int> path;
    std::set<int> on_path;

    void dfs(int start, int v) {
        for (int w : succ[v]) {
            if (out.truncated) return;
            if (w == start) {
                if (static_cast<int>(path.size()) >= min_len) {
                    if (out.cycles.size() >= cap) {
                        out.truncated = true;
                        return;
                    }
                    out.cycles.push_back(path);
                }
                continue;
            }
            if (w < start || on_path.count(w)) continue;
            path.push_back(w);
            on_path.insert(w);
            dfs(start, w);
            on_path.erase(w);
            path.pop_back();
        }
    }
};

}  // namespace

CycleList enumerate_cycles(const CrossingGraph& g, int min_len, std::size_t cap) {
    CircuitSearch s;
    s.min_len = min_len;
    s.cap = cap;
    for (const auto& [a, b] : g.arcs) s.succ[a].push_back(b);
    for (const auto& node : g.nodes) {
        s.path = {node.pair};
        s.on_path = {node.pair};
        s.dfs(node.pair, node.pair);
        if (s.out.truncated) break;
    }
    std::sort(s.out.cycles.begin(), s.out.cycles.end());
    return s.out;
}

std::set<int> reachable(const CrossingGraph& g, const std::set<int>& from, bool reversed) {
    std::set<int> seen(from.begin(), from.end());
    std::deque<int> queue(from.begin(), from.end());
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : reversed ? g.predecessors(v) : g.successors(v))
            if (seen.insert(w).second) queue.push_back(w);
    }
    return seen;
}

}  // namespace tropd
