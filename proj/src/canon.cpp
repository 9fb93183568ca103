#include "ftflow/canon.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ftflow::detail {

namespace {

thread_local long g_leaves = 0;

struct Search {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (edge colour, neighbour)
    std::vector<int> base;                               // initial colour rank
    std::vector<std::string> table;                      // sorted distinct colours
    const ColouredGraph* g = nullptr;
    std::string best;
    bool have_best = false;

    int count(const std::vector<int>& col) const {
        std::vector<int> c = col;
        std::sort(c.begin(), c.end());
        return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
    }

    void refine(std::vector<int>& col) const {
        int classes = count(col);
        std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
        while (true) {
            for (int v = 0; v < n; ++v) {
                sig[v].first = col[v];
                auto& s = sig[v].second;
                s.clear();
                for (auto [ec, u] : adj[v]) s.push_back({ec, col[u]});
                std::sort(s.begin(), s.end());
            }
            std::vector<int> order(n);
            for (int v = 0; v < n; ++v) order[v] = v;
            std::sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] < sig[y]; });
            std::vector<int> next(n);
            int rank = 0;
            for (int i = 0; i < n; ++i) {
                if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
                next[order[i]] = rank;
            }
            col = std::move(next);
            int now = n ? rank + 1 : 0;
            if (now == classes) break;
            classes = now;
        }
    }

    std::string certificate(const std::vector<int>& pos) const {
        std::string out;
        auto put = [&out](int x) {
            out.push_back(static_cast<char>((x >> 8) & 0xff));
            out.push_back(static_cast<char>(x & 0xff));
        };
        put(static_cast<int>(table.size()));
        for (const auto& t : table) {
            out += t;
            out.push_back('\0');
        }
        std::vector<int> at(n);
        for (int v = 0; v < n; ++v) at[pos[v]] = v;
        put(n);
        for (int i = 0; i < n; ++i) put(base[at[i]]);
        std::vector<std::array<int, 3>> es;
        es.reserve(g->edges.size());
        for (const auto& e : g->edges) {
            int u = pos[e[0]], v = pos[e[1]];
            if (u > v) std::swap(u, v);
            es.push_back({u, v, e[2]});
        }
        std::sort(es.begin(), es.end());
        put(static_cast<int>(es.size()));
        for (const auto& e : es) {
            put(e[0]);
            put(e[1]);
            put(e[2]);
        }
        return out;
    }

    void run(std::vector<int> col) {
        refine(col);
        if (count(col) == n) {
            ++g_leaves;
            auto c = certificate(col);
            if (!have_best || c < best) {
                best = std::move(c);
                have_best = true;
            }
            return;
        }
        // first non-singleton cell
        std::vector<int> size(n, 0);
        for (int v = 0; v < n; ++v) ++size[col[v]];
        int target = 0;
        while (size[target] < 2) ++target;
        for (int v = 0; v < n; ++v) {
            if (col[v] != target) continue;
            std::vector<int> child(n);
            for (int x = 0; x < n; ++x) child[x] = 2 * col[x] + (col[x] == target && x != v ? 1 : 0);
            run(std::move(child));
        }
    }
};

}  // namespace

std::string canonical_certificate(const ColouredGraph& g) {
    g_leaves = 0;
    Search s;
    s.g = &g;
    s.n = static_cast<int>(g.colour.size());
    s.adj.resize(s.n);
    for (const auto& e : g.edges) {
        s.adj[e[0]].push_back({e[2], e[1]});
        if (e[0] != e[1]) s.adj[e[1]].push_back({e[2], e[0]});
    }
    s.table = g.colour;
    std::sort(s.table.begin(), s.table.end());
    s.table.erase(std::unique(s.table.begin(), s.table.end()), s.table.end());
    s.base.resize(s.n);
    for (int v = 0; v < s.n; ++v)
        s.base[v] = static_cast<int>(std::lower_bound(s.table.begin(), s.table.end(), g.colour[v]) - s.table.begin());
    s.run(s.base);
    return s.best;
}

long last_search_leaves() { return g_leaves; }

}  // namespace ftflow::detail
