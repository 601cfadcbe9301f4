#include "sqconf/homology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace sqconf {

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
}

std::size_t ChainComplex::total_cells() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not match");
    SparseMatrix out(a.rows, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j) {
        std::map<std::size_t, Integer> acc;
        for (const auto& [k, v] : b.columns[j])
            for (const auto& [i, w] : a.columns[k]) acc[i] += w * v;
        for (auto& [i, v] : acc)
            if (v != 0) out.columns[j].push_back({i, v});
    }
    return out;
}

bool is_zero(const SparseMatrix& a) {
    for (const auto& c : a.columns)
        for (const auto& e : c)
            if (e.second != 0) return false;
    return true;
}

ChainComplex chain_complex(const CubeComplex& cx) {
    ChainComplex cc;
    int d = cx.size() ? cx.dim() : -1;
    for (int k = 0; k <= d; ++k) cc.counts.push_back(cx.count(k));
    for (int k = 0; k <= d; ++k) {
        SparseMatrix m(k == 0 ? 0 : cc.counts[k - 1], cc.counts[k]);
        if (k > 0) {
            CellId lo = cx.dim_begin(k - 1);
            for (CellId c = cx.dim_begin(k); c < cx.dim_end(k); ++c) {
                auto& col = m.columns[c - cx.dim_begin(k)];
                for (const Facet& f : cx.cell(c).faces) col.push_back({f.id - lo, Integer(f.sign)});
                std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            }
        }
        cc.boundary.push_back(std::move(m));
    }
    return cc;
}

// ---------------------------------------------------------------- dense SNF

namespace {

using Dense = std::vector<std::vector<Integer>>;

void normalize_factors(std::vector<Integer>& d) {
    for (auto& x : d) x = abs(x);
    std::sort(d.begin(), d.end());
    // diag(a, b) is equivalent to diag(gcd, lcm); sweeping enforces divisibility.
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            Integer g, l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            d[i] = g;
            d[j] = l;
        }
}

}  // namespace

SmithResult smith_normal_form_dense(Dense a) {
    SmithResult res;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pivot: smallest magnitude, ties broken by fewest nonzeros in its row and column.
        std::size_t pr = rows, pc = cols;
        Integer best;
        std::size_t best_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                Integer mag = abs(a[i][j]);
                if (pr != rows && mag > best) continue;
                std::size_t cnt = 0;
                for (std::size_t jj = t; jj < cols; ++jj) cnt += a[i][jj] != 0;
                for (std::size_t ii = t; ii < rows; ++ii) cnt += a[ii][j] != 0;
                if (pr == rows || mag < best || cnt < best_count) {
                    pr = i;
                    pc = j;
                    best = mag;
                    best_count = cnt;
                }
            }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
        }
        diag.push_back(a[t][t]);
        ++t;
    }
    normalize_factors(diag);
    res.rank = diag.size();
    res.factors = std::move(diag);
    return res;
}

std::size_t rank_bareiss(Dense a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// ---------------------------------------------------------- sparse SNF front

SmithResult smith_normal_form(const SparseMatrix& m) {
    using Col = std::vector<std::pair<std::size_t, Integer>>;
    std::vector<Col> cols = m.columns;
    std::vector<std::set<std::size_t>> rowset(m.rows);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Col clean;
        for (auto& e : cols[j])
            if (e.second != 0) clean.push_back(e);
        cols[j] = std::move(clean);
        for (auto& e : cols[j]) rowset[e.first].insert(j);
    }
    std::size_t unit_rank = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::size_t> order;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (!cols[j].empty()) order.push_back(j);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return cols[x].size() < cols[y].size(); });
        for (std::size_t c : order) {
            if (cols[c].empty()) continue;
            std::size_t r = m.rows;
            Integer u;
            for (auto& [row, v] : cols[c]) {
                if (v != 1 && v != -1) continue;
                if (r == m.rows || rowset[row].size() < rowset[r].size()) {
                    r = row;
                    u = v;
                }
            }
            if (r == m.rows) continue;
            std::vector<std::size_t> others(rowset[r].begin(), rowset[r].end());
            for (std::size_t c2 : others) {
                if (c2 == c) continue;
                Integer x;
                for (auto& e : cols[c2])
                    if (e.first == r) x = e.second;
                Integer f = x * u;
                Col merged;
                merged.reserve(cols[c2].size() + cols[c].size());
                auto i1 = cols[c2].begin(), e1 = cols[c2].end();
                auto i2 = cols[c].begin(), e2 = cols[c].end();
                while (i1 != e1 || i2 != e2) {
                    if (i2 == e2 || (i1 != e1 && i1->first < i2->first)) {
                        merged.push_back(*i1++);
                    } else if (i1 == e1 || i2->first < i1->first) {
                        merged.push_back({i2->first, -f * i2->second});
                        rowset[i2->first].insert(c2);
                        ++i2;
                    } else {
                        Integer v = i1->second - f * i2->second;
                        if (v != 0) merged.push_back({i1->first, v});
                        else rowset[i1->first].erase(c2);
                        ++i1;
                        ++i2;
                    }
                }
                cols[c2] = std::move(merged);
            }
            for (auto& e : cols[c]) rowset[e.first].erase(c);
            cols[c].clear();
            ++unit_rank;
            progress = true;
        }
    }
    // Dense residual.
    std::vector<std::size_t> rc, rr;
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (!cols[j].empty()) rc.push_back(j);
    for (std::size_t i = 0; i < m.rows; ++i)
        if (!rowset[i].empty()) rr.push_back(i);
    SmithResult res;
    if (!rc.empty()) {
        std::vector<std::size_t> rowpos(m.rows, 0);
        for (std::size_t i = 0; i < rr.size(); ++i) rowpos[rr[i]] = i;
        Dense d(rr.size(), std::vector<Integer>(rc.size()));
        for (std::size_t j = 0; j < rc.size(); ++j)
            for (auto& [row, v] : cols[rc[j]]) d[rowpos[row]][j] = v;
        std::size_t q_rank = rank_bareiss(d);
        res = smith_normal_form_dense(std::move(d));
        if (res.rank != q_rank) throw std::logic_error("Smith form rank disagrees with fraction-free rank");
    }
    std::vector<Integer> factors(unit_rank, Integer(1));
    factors.insert(factors.end(), res.factors.begin(), res.factors.end());
    res.factors = std::move(factors);
    res.rank += unit_rank;
    return res;
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
    using Col = std::vector<std::pair<std::size_t, std::uint64_t>>;
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        a %= p;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<long long> pivot_of(m.rows, -1);
    std::vector<Col> reduced(m.cols);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        Col col;
        for (auto& [row, v] : m.columns[j]) {
            Integer r = v % static_cast<unsigned long>(p);
            if (r < 0) r += p;
            std::uint64_t x = r.get_ui();
            if (x) col.push_back({row, x});
        }
        while (!col.empty()) {
            std::size_t low = col.back().first;
            long long pc = pivot_of[low];
            if (pc < 0) break;
            const Col& piv = reduced[pc];
            std::uint64_t f = col.back().second * inv(piv.back().second) % p;
            Col out;
            auto i1 = col.cbegin();
            auto i2 = piv.begin();
            while (i1 != col.cend() || i2 != piv.end()) {
                if (i2 == piv.end() || (i1 != col.cend() && i1->first < i2->first)) out.push_back(*i1++);
                else if (i1 == col.cend() || i2->first < i1->first) {
                    out.push_back({i2->first, (p - f * i2->second % p) % p});
                    ++i2;
                } else {
                    std::uint64_t v = (i1->second + p - f * i2->second % p) % p;
                    if (v) out.push_back({i1->first, v});
                    ++i1;
                    ++i2;
                }
            }
            col = std::move(out);
        }
        if (!col.empty()) {
            pivot_of[col.back().first] = static_cast<long long>(j);
            reduced[j] = std::move(col);
            ++rank;
        }
    }
    return rank;
}

// ------------------------------------------------------------ Morse reduction

namespace {

struct Reducer {
    std::vector<std::vector<std::map<std::size_t, Integer>>> bd;  // bd[k][i]: faces in dim k-1
    std::vector<std::vector<std::set<std::size_t>>> cobd;         // cobd[k][i]: cofaces in dim k+1
    std::vector<std::vector<char>> alive;
    std::deque<std::pair<int, std::size_t>> queue;
    std::vector<std::vector<char>> queued;
    int top = -1;

    explicit Reducer(const ChainComplex& cc) {
        top = cc.dim();
        bd.resize(top + 1);
        cobd.resize(top + 1);
        alive.resize(top + 1);
        queued.resize(top + 1);
        for (int k = 0; k <= top; ++k) {
            bd[k].resize(cc.counts[k]);
            cobd[k].resize(cc.counts[k]);
            alive[k].assign(cc.counts[k], 1);
            queued[k].assign(cc.counts[k], 0);
        }
        for (int k = 1; k <= top; ++k)
            for (std::size_t j = 0; j < cc.counts[k]; ++j)
                for (auto& [i, v] : cc.boundary[k].columns[j]) {
                    if (v == 0) continue;
                    bd[k][j][i] = v;
                    cobd[k - 1][i].insert(j);
                }
    }

    void push(int k, std::size_t i) {
        if (k < 0 || k > top || !alive[k][i] || queued[k][i]) return;
        queued[k][i] = 1;
        queue.push_back({k, i});
    }

    static bool unit(const Integer& v) { return v == 1 || v == -1; }

    // Cancel the k-cell a against the (k+1)-cell b.
    void eliminate(int k, std::size_t a, std::size_t b) {
        const Integer u = bd[k + 1][b].at(a);
        std::vector<std::size_t> others(cobd[k][a].begin(), cobd[k][a].end());
        for (std::size_t c : others) {
            if (c == b) continue;
            Integer f = bd[k + 1][c].at(a) * u;
            auto& col = bd[k + 1][c];
            for (auto& [face, y] : bd[k + 1][b]) {
                auto it = col.find(face);
                if (it == col.end()) {
                    col.emplace(face, -f * y);
                    cobd[k][face].insert(c);
                } else {
                    it->second -= f * y;
                    if (it->second == 0) {
                        col.erase(it);
                        cobd[k][face].erase(c);
                    }
                }
                push(k, face);
            }
            push(k + 1, c);
        }
        for (auto& [face, y] : bd[k + 1][b]) {
            cobd[k][face].erase(b);
            push(k, face);
        }
        if (k + 2 <= top)
            for (std::size_t e : cobd[k + 1][b]) {
                bd[k + 2][e].erase(b);
                push(k + 2, e);
            }
        bd[k + 1][b].clear();
        cobd[k + 1][b].clear();
        alive[k + 1][b] = 0;
        if (k >= 1)
            for (auto& [face, y] : bd[k][a]) {
                cobd[k - 1][face].erase(a);
                push(k - 1, face);
            }
        bd[k][a].clear();
        cobd[k][a].clear();
        alive[k][a] = 0;
    }

    bool try_local(int k, std::size_t x) {
        if (!alive[k][x]) return false;
        if (k < top && cobd[k][x].size() == 1) {
            std::size_t b = *cobd[k][x].begin();
            if (unit(bd[k + 1][b].at(x))) {
                eliminate(k, x, b);
                return true;
            }
        }
        if (k >= 1 && bd[k][x].size() == 1 && unit(bd[k][x].begin()->second)) {
            eliminate(k - 1, bd[k][x].begin()->first, x);
            return true;
        }
        return false;
    }

    bool general_step() {
        bool found = false;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        int bk = 0;
        std::size_t ba = 0, bb = 0;
        for (int k = 1; k <= top; ++k)
            for (std::size_t b = 0; b < bd[k].size(); ++b) {
                if (!alive[k][b]) continue;
                for (auto& [a, v] : bd[k][b]) {
                    if (!unit(v)) continue;
                    std::size_t cost = (bd[k][b].size() - 1) * (cobd[k - 1][a].size() - 1);
                    if (!found || cost < best) {
                        found = true;
                        best = cost;
                        bk = k - 1;
                        ba = a;
                        bb = b;
                    }
                }
            }
        if (found) eliminate(bk, ba, bb);
        return found;
    }

    void run() {
        for (int k = 0; k <= top; ++k)
            for (std::size_t i = 0; i < alive[k].size(); ++i) push(k, i);
        while (true) {
            while (!queue.empty()) {
                auto [k, i] = queue.front();
                queue.pop_front();
                queued[k][i] = 0;
                try_local(k, i);
            }
            if (!general_step()) break;
        }
    }
};

}  // namespace

ChainComplex morse_reduce(const ChainComplex& cc) {
    Reducer r(cc);
    r.run();
    ChainComplex out;
    std::vector<std::vector<std::size_t>> renum(r.top + 1);
    for (int k = 0; k <= r.top; ++k) {
        renum[k].assign(r.alive[k].size(), 0);
        std::size_t n = 0;
        for (std::size_t i = 0; i < r.alive[k].size(); ++i)
            if (r.alive[k][i]) renum[k][i] = n++;
        out.counts.push_back(n);
    }
    for (int k = 0; k <= r.top; ++k) {
        SparseMatrix m(k == 0 ? 0 : out.counts[k - 1], out.counts[k]);
        if (k > 0)
            for (std::size_t j = 0; j < r.alive[k].size(); ++j) {
                if (!r.alive[k][j]) continue;
                auto& col = m.columns[renum[k][j]];
                for (auto& [i, v] : r.bd[k][j]) col.push_back({renum[k - 1][i], v});
            }
        out.boundary.push_back(std::move(m));
    }
    return out;
}

// ------------------------------------------------------------------ homology

HomologyResult homology(const ChainComplex& input, bool reduce) {
    HomologyResult res;
    res.f_vector = input.counts;
    for (std::size_t k = 0; k < input.counts.size(); ++k)
        res.euler += (k % 2 ? -1 : 1) * static_cast<long long>(input.counts[k]);
    ChainComplex reduced;
    const ChainComplex& cc = reduce ? (reduced = morse_reduce(input)) : input;
    res.reduced_cells = cc.counts;
    int d = cc.dim();
    std::vector<SmithResult> snf(d + 2);
    for (int k = 1; k <= d; ++k) snf[k] = smith_normal_form(cc.boundary[k]);
    res.betti.resize(d + 1);
    res.torsion.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::size_t rk = snf[k].rank, rk1 = k + 1 <= d ? snf[k + 1].rank : 0;
        res.betti[k] = cc.counts[k] - rk - rk1;
        if (k + 1 <= d)
            for (auto& f : snf[k + 1].factors)
                if (f > 1) res.torsion[k].push_back(f);
    }
    return res;
}

HomologyResult betti_numbers(const CubeComplex& complex, bool reduce) {
    return homology(chain_complex(complex), reduce);
}

std::vector<std::size_t> betti_mod_p(const ChainComplex& cc, std::uint32_t p) {
    int d = cc.dim();
    std::vector<std::size_t> rk(d + 2, 0), out(d + 1);
    for (int k = 1; k <= d; ++k) rk[k] = rank_mod_p(cc.boundary[k], p);
    for (int k = 0; k <= d; ++k) out[k] = cc.counts[k] - rk[k] - rk[k + 1];
    return out;
}

std::string homology_to_json(const HomologyResult& r) {
    nlohmann::ordered_json j;
    j["f_vector"] = r.f_vector;
    j["euler"] = r.euler;
    j["betti"] = r.betti;
    auto tor = nlohmann::ordered_json::array();
    for (auto& t : r.torsion) {
        auto row = nlohmann::ordered_json::array();
        for (auto& f : t) {
            if (f.fits_slong_p()) row.push_back(f.get_si());
            else row.push_back(f.get_str());
        }
        tor.push_back(row);
    }
    j["torsion"] = tor;
    j["reduced_cells"] = r.reduced_cells;
    return j.dump();
}

}  // namespace sqconf
