#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace oracle {

long long Chains::euler() const {
    long long e = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long long>(counts[k]);
    return e;
}

Chains chains_of(const sqconf::CubeComplex& K) {
    Chains c;
    const std::size_t top = K.size() ? static_cast<std::size_t>(K.dim()) + 1 : 0;
    c.counts.assign(top, 0);
    c.cols.assign(top, {});
    std::vector<std::size_t> local(K.size());
    for (const auto& cell : K.cells()) local[cell.id] = c.counts[cell.dim]++;
    for (const auto& cell : K.cells()) {
        std::map<std::size_t, long long> col;
        for (const auto& f : cell.faces)
            if ((col[local[f.id]] += f.sign) == 0) col.erase(local[f.id]);
        c.cols[cell.dim].push_back(std::move(col));
    }
    return c;
}

namespace {

std::vector<std::set<sqconf::CellId>> closures(const sqconf::CubeComplex& K) {
    std::vector<std::set<sqconf::CellId>> cl(K.size());
    // Faces have lower dimension, and cells are visited in id order grouped
    // by dimension, so every face is done before its cofaces.
    std::vector<sqconf::CellId> order(K.size());
    for (sqconf::CellId i = 0; i < K.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return K.cells()[a].dim < K.cells()[b].dim; });
    for (auto id : order) {
        cl[id].insert(id);
        for (const auto& f : K.cells()[id].faces) cl[id].insert(cl[f.id].begin(), cl[f.id].end());
    }
    return cl;
}

bool meet(const std::set<sqconf::CellId>& a, const std::set<sqconf::CellId>& b) {
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        *i < *j ? ++i : ++j;
    }
    return false;
}

}  // namespace

Chains brute_force_df(const sqconf::CubeComplex& K, int m) {
    const auto cl = closures(K);
    const std::size_t N = K.size();
    std::vector<std::vector<bool>> apart(N, std::vector<bool>(N));
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) apart[a][b] = !meet(cl[a], cl[b]);

    std::vector<std::vector<sqconf::CellId>> tuples;
    std::vector<sqconf::CellId> cur;
    std::function<void()> grow = [&] {
        if (static_cast<int>(cur.size()) == m) {
            tuples.push_back(cur);
            return;
        }
        for (sqconf::CellId c = 0; c < N; ++c) {
            bool ok = true;
            for (auto x : cur) ok = ok && apart[x][c];
            if (!ok) continue;
            cur.push_back(c);
            grow();
            cur.pop_back();
        }
    };
    grow();

    auto dim_of = [&](const std::vector<sqconf::CellId>& t) {
        int d = 0;
        for (auto x : t) d += K.cells()[x].dim;
        return d;
    };
    Chains c;
    std::map<std::vector<sqconf::CellId>, std::size_t> index;
    int top = -1;
    for (const auto& t : tuples) top = std::max(top, dim_of(t));
    c.counts.assign(top + 1, 0);
    c.cols.assign(top + 1, {});
    for (const auto& t : tuples) index[t] = c.counts[dim_of(t)]++;
    for (auto& v : c.cols) v.clear();
    std::vector<std::vector<std::map<std::size_t, long long>>> cols(top + 1);
    for (int k = 0; k <= top; ++k) cols[k].resize(c.counts[k]);
    for (const auto& t : tuples) {
        int d = dim_of(t);
        auto& col = cols[d][index[t]];
        int before = 0;
        for (int i = 0; i < m; ++i) {
            const auto& cell = K.cells()[t[i]];
            long long sign = before % 2 ? -1 : 1;
            for (const auto& f : cell.faces) {
                auto u = t;
                u[i] = f.id;
                auto r = index.at(u);
                if ((col[r] += sign * f.sign) == 0) col.erase(r);
            }
            before += cell.dim;
        }
    }
    c.cols = std::move(cols);
    return c;
}

std::size_t rank_mod(const std::vector<std::map<std::size_t, long long>>& cols, std::uint32_t p) {
    using Col = std::map<std::size_t, std::uint64_t>;
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::map<std::size_t, Col> pivots;  // lowest row -> reduced column
    std::size_t rank = 0;
    for (const auto& src : cols) {
        Col col;
        for (const auto& [r, v] : src) {
            long long m = v % static_cast<long long>(p);
            if (m < 0) m += p;
            if (m) col[r] = static_cast<std::uint64_t>(m);
        }
        while (!col.empty()) {
            auto low = std::prev(col.end());
            auto it = pivots.find(low->first);
            if (it == pivots.end()) break;
            const Col& piv = it->second;
            std::uint64_t f = low->second * inv(piv.rbegin()->second) % p;
            for (const auto& [r, v] : piv) {
                std::uint64_t x = (col.count(r) ? col[r] : 0) + p - f * v % p;
                x %= p;
                if (x) col[r] = x;
                else col.erase(r);
            }
        }
        if (!col.empty()) {
            std::size_t low = col.rbegin()->first;
            pivots.emplace(low, std::move(col));
            ++rank;
        }
    }
    return rank;
}

Betti betti_mod(const Chains& c, std::uint32_t p) {
    const std::size_t top = c.counts.size();
    std::vector<std::size_t> rk(top + 1, 0);
    for (std::size_t k = 1; k < top; ++k) rk[k] = rank_mod(c.cols[k], p);
    Betti b(top);
    for (std::size_t k = 0; k < top; ++k) b[k] = c.counts[k] - rk[k] - rk[k + 1];
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return b;
}

bool boundary_squares_to_zero(const Chains& c) {
    for (std::size_t k = 2; k < c.counts.size(); ++k)
        for (const auto& col : c.cols[k]) {
            std::map<std::size_t, long long> acc;
            for (const auto& [r, v] : col)
                for (const auto& [r2, v2] : c.cols[k - 1][r]) acc[r2] += v * v2;
            for (const auto& [r, v] : acc)
                if (v) return false;
        }
    return true;
}

// ---------------------------------------------------------------- grid

GridSurface::GridSurface(Kind kind, int g, int n) : kind_(kind), g_(g), n_(n) {
    if (kind == Kind::disk) {
        W_ = H_ = E * n;
        P_ = 0;
    } else {
        P_ = E * (n + 1);
        W_ = (2 * g - 1) * P_;
        H_ = P_;
    }
    id_.assign((W_ + 1) * (H_ + 1), -1);
    int count = 0;
    for (int y = 0; y <= H_; ++y)
        for (int x = 0; x <= W_; ++x) {
            auto [cx, cy] = canonical(x, y);
            if (removed(cx, cy)) continue;
            if (cx == x && cy == y) id_[slot(x, y)] = count++;
        }
    for (int y = 0; y <= H_; ++y)
        for (int x = 0; x <= W_; ++x) {
            auto [cx, cy] = canonical(x, y);
            id_[slot(x, y)] = id_[slot(cx, cy)];
        }
    adj_.assign(count, {});
    std::set<std::tuple<int, int, bool>> seen;
    // Every chart position contributes its four unit steps, so the cone
    // point collects the steps of all its chart corners.
    for (int y = 0; y <= H_; ++y)
        for (int x = 0; x <= W_; ++x) {
            int a = id_[slot(x, y)];
            if (a < 0) continue;
            const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                int nx = x + dx[d], ny = y + dy[d];
                int b = -1;
                if (inside_chart(nx, ny)) b = id_[slot(nx, ny)];
                else if (kind_ != Kind::disk) {
                    auto [cx, cy] = canonical(nx, ny);
                    if (cx >= 0) b = id_[slot(cx, cy)];
                }
                if (b < 0) continue;
                bool h = dx[d] != 0;
                if (seen.insert({a, b, h}).second) adj_[a].push_back({b, h});
            }
        }
}

bool GridSurface::inside_chart(int x, int y) const { return x >= 0 && y >= 0 && x <= W_ && y <= H_; }

// Left and right sides are identified; the top side of block s is glued to
// the bottom side of block 2g-2-s. Returns (-1,-1) for crossings through a
// block corner, which only the cone point has and which the chart corners
// already cover.
std::pair<int, int> GridSurface::canonical(int x, int y) const {
    if (kind_ == Kind::disk) return {x, y};
    if (x < 0) x += W_;
    if (x > W_) x -= W_;
    if (y < 0 || y > H_) {
        if (x % P_ == 0) return {-1, -1};
        int seg = x / P_, other = 2 * g_ - 2 - seg;
        x += (other - seg) * P_;
        y += y < 0 ? H_ : -H_;
    }
    if (x == W_) x = 0;
    if ((y == 0 || y == H_) && x % P_ == 0) return {0, 0};
    if (y == H_) {
        int seg = x / P_, other = 2 * g_ - 2 - seg;
        x += (other - seg) * P_;
        y = 0;
    }
    return {x, y};
}

bool GridSurface::removed(int x, int y) const {
    if (kind_ != Kind::bounded) return false;
    const int r = E / 2;
    for (int k = 0; k <= 2 * g_ - 1; ++k)
        for (int py : {0, H_})
            if (std::max(std::abs(x - k * P_), std::abs(y - py)) < r) return true;
    return false;
}

int GridSurface::node(int x, int y) const {
    if (!inside_chart(x, y)) throw std::out_of_range("grid point outside chart");
    return id_[slot(x, y)];
}

std::vector<int> GridSurface::distances_from(int source) const {
    const int budget = E * n_, N = static_cast<int>(adj_.size());
    const int INF = 1 << 29;
    std::vector<int> best(N, INF), layer(N, INF), prev;
    layer[source] = 0;
    for (int h = 0; h <= budget; ++h) {
        if (h > 0) {
            std::vector<int> next(N, INF);
            for (int a = 0; a < N; ++a) {
                if (prev[a] >= INF) continue;
                for (auto [b, horiz] : adj_[a])
                    if (horiz) next[b] = std::min(next[b], prev[a]);
            }
            layer.swap(next);
        }
        // vertical relaxation: unit weights, bucketed by v
        std::vector<std::vector<int>> bucket(budget + 2);
        for (int a = 0; a < N; ++a)
            if (layer[a] <= budget) bucket[layer[a]].push_back(a);
        for (int v = 0; v <= budget; ++v)
            for (std::size_t i = 0; i < bucket[v].size(); ++i) {
                int a = bucket[v][i];
                if (layer[a] != v) continue;
                for (auto [b, horiz] : adj_[a])
                    if (!horiz && layer[b] > v + 1) {
                        layer[b] = v + 1;
                        if (v + 1 <= budget) bucket[v + 1].push_back(b);
                    }
            }
        for (int a = 0; a < N; ++a)
            if (layer[a] < INF) best[a] = std::min(best[a], std::max(h, layer[a]));
        prev = layer;
    }
    for (auto& d : best)
        if (d > budget) d = -1;
    return best;
}

}  // namespace oracle
