#include "sqconf/graph_models.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "sqconf/errors.hpp"

namespace sqconf {

Graph cycle_graph(int n) {
    if (n < 1) throw InputError("cycle needs at least one vertex");
    Graph g{n, {}};
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

Graph path_graph(int vertices) {
    if (vertices < 1) throw InputError("path needs at least one vertex");
    Graph g{vertices, {}};
    for (int i = 0; i + 1 < vertices; ++i) g.edges.push_back({i, i + 1});
    return g;
}

Graph star_graph(int leaves) {
    Graph g{leaves + 1, {}};
    for (int i = 1; i <= leaves; ++i) g.edges.push_back({0, i});
    return g;
}

namespace {

void check_endpoints(const Graph& g) {
    for (auto [u, v] : g.edges)
        if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
            throw InputError("edge endpoint out of range");
}

// Adjacency with edge indices.
std::vector<std::vector<std::pair<int, int>>> adjacency(const Graph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertices);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        auto [u, v] = g.edges[e];
        adj[u].push_back({v, e});
        if (u != v) adj[v].push_back({u, e});
    }
    return adj;
}

// BFS from src ignoring edge `skip`; returns parents (vertex) and distances.
void bfs(const std::vector<std::vector<std::pair<int, int>>>& adj, int src, int skip,
         std::vector<int>& dist, std::vector<int>& parent) {
    int n = static_cast<int>(adj.size());
    dist.assign(n, -1);
    parent.assign(n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, e] : adj[u]) {
            if (e == skip || dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            parent[v] = u;
            q.push(v);
        }
    }
}

std::vector<int> trace(const std::vector<int>& parent, int to) {
    std::vector<int> path;
    for (int v = to; v >= 0; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

bool is_connected(const Graph& g) {
    check_endpoints(g);
    if (g.vertices == 0) return true;
    std::vector<int> d, p;
    bfs(adjacency(g), 0, -1, d, p);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

std::vector<int> valences(const Graph& g) {
    check_endpoints(g);
    std::vector<int> val(g.vertices, 0);
    for (auto [u, v] : g.edges) {
        ++val[u];
        ++val[v];
    }
    return val;
}

CubeComplex graph_complex(const Graph& g) {
    check_endpoints(g);
    std::vector<Cell> cells;
    for (int v = 0; v < g.vertices; ++v) cells.push_back(Cell{static_cast<CellId>(v), 0, {}, "v" + std::to_string(v)});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if (u == v) throw InputError("loop at vertex " + std::to_string(u) + " is not a cube; subdivide the graph first");
        CellId id = static_cast<CellId>(cells.size());
        cells.push_back(Cell{id, 1,
                             {Facet{static_cast<CellId>(u), -1}, Facet{static_cast<CellId>(v), +1}},
                             "e" + std::to_string(u) + "-" + std::to_string(v)});
    }
    return CubeComplex::from_cells(std::move(cells), ComplexMetadata{"graph", -1, -1, 0});
}

Graph subdivide(const Graph& g, int k) {
    check_endpoints(g);
    if (k < 1) throw InputError("subdivision factor must be positive");
    Graph out{g.vertices, {}};
    for (auto [u, v] : g.edges) {
        int prev = u;
        for (int s = 1; s < k; ++s) {
            int w = out.vertices++;
            out.edges.push_back({prev, w});
            prev = w;
        }
        out.edges.push_back({prev, v});
    }
    return out;
}

std::vector<int> shortest_cycle(const Graph& g) {
    check_endpoints(g);
    auto adj = adjacency(g);
    std::vector<int> best;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        auto [u, v] = g.edges[e];
        if (u == v) {
            if (1 < best_len) {
                best_len = 1;
                best = {u, u};
            }
            continue;
        }
        std::vector<int> d, p;
        bfs(adj, u, e, d, p);
        if (d[v] < 0) continue;
        std::size_t len = static_cast<std::size_t>(d[v]) + 1;
        if (len < best_len) {
            best_len = len;
            best = trace(p, v);
            best.push_back(u);
        }
    }
    return best;
}

AbramsResult abrams_check(const Graph& g, int m) {
    if (m < 1) throw InputError("m must be positive");
    if (!is_connected(g)) throw InputError("graph is not connected");
    AbramsResult r;
    if (g.vertices < m) {
        r.ok = false;
        r.reason = "fewer than m vertices";
        return r;
    }
    auto adj = adjacency(g);
    auto val = valences(g);
    int best = std::numeric_limits<int>::max();
    std::vector<int> witness;
    for (int s = 0; s < g.vertices; ++s) {
        if (val[s] < 3) continue;
        std::vector<int> d, p;
        bfs(adj, s, -1, d, p);
        for (int t = s + 1; t < g.vertices; ++t) {
            if (val[t] < 3 || d[t] >= best) continue;
            best = d[t];
            witness = trace(p, t);
        }
    }
    if (best < m + 1) {
        r.ok = false;
        r.reason = "essential vertices at distance " + std::to_string(best);
        r.witness = witness;
        return r;
    }
    auto cyc = shortest_cycle(g);
    if (!cyc.empty() && static_cast<int>(cyc.size()) - 1 < m + 1) {
        r.ok = false;
        r.reason = "essential loop of length " + std::to_string(cyc.size() - 1);
        r.witness = cyc;
    }
    return r;
}

Graph read_edge_list(std::istream& in) {
    Graph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u)) continue;
        std::string extra;
        if (!(ss >> v) || (ss >> extra) || u < 0 || v < 0 || u > 1000000 || v > 1000000)
            throw InputError("edge list line " + std::to_string(lineno) + ": expected two vertex ids");
        g.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
        g.vertices = std::max<int>(g.vertices, static_cast<int>(std::max(u, v)) + 1);
    }
    return g;
}

Graph load_edge_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open edge list '" + path + "'");
    return read_edge_list(f);
}

}  // namespace sqconf
