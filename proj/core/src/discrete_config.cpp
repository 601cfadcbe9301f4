#include "sqconf/discrete_config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "sqconf/errors.hpp"
#include "sqconf/parallel.hpp"

namespace sqconf {

int thread_count() {
    if (const char* env = std::getenv("CONF_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int koszul_sign(const std::vector<int>& dims, const std::vector<int>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (dims[i] * dims[j]) % 2 != 0) sign = -sign;
    return sign;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct Enumerator {
    const CubeComplex& base;
    int m;
    bool ordered;
    std::size_t cap;
    std::vector<Bits> bits;  // vertex set of each base cell
    std::size_t words;

    Enumerator(const CubeComplex& b, int m_, bool ord, std::size_t c) : base(b), m(m_), ordered(ord), cap(c) {
        std::size_t nv = base.count(0);
        words = (nv + 63) / 64;
        if (words == 0) words = 1;
        bits.assign(base.size(), Bits(words, 0));
        for (CellId c2 = 0; c2 < base.size(); ++c2)
            for (CellId v : base.vertex_set(c2)) bits[c2][v / 64] |= std::uint64_t(1) << (v % 64);
    }

    bool meets(const Bits& used, CellId c) const {
        for (std::size_t w = 0; w < words; ++w)
            if (used[w] & bits[c][w]) return true;
        return false;
    }

    // Appends all tuples extending `prefix` (length depth) to out.
    void recurse(std::vector<CellId>& prefix, Bits& used, std::vector<CellId>& out, std::size_t& produced,
                 const std::size_t& shared_limit) const {
        std::size_t depth = prefix.size();
        if (static_cast<int>(depth) == m) {
            out.insert(out.end(), prefix.begin(), prefix.end());
            if (++produced > shared_limit)
                throw CapExceeded("configuration complex exceeds the cell cap of " + std::to_string(cap));
            return;
        }
        CellId start = ordered || depth == 0 ? 0 : prefix.back() + 1;
        for (CellId c = start; c < base.size(); ++c) {
            if (meets(used, c)) continue;
            for (std::size_t w = 0; w < words; ++w) used[w] |= bits[c][w];
            prefix.push_back(c);
            recurse(prefix, used, out, produced, shared_limit);
            prefix.pop_back();
            for (std::size_t w = 0; w < words; ++w) used[w] &= ~bits[c][w];
        }
    }
};

}  // namespace

DiscreteConfigComplex build_configuration(const CubeComplex& base, int m, bool ordered,
                                          const DiscreteConfigOptions& opts) {
    if (m < 1) throw InputError("particle count m must be at least 1");
    DiscreteConfigComplex out;
    out.base_ = base;
    out.m_ = m;
    out.ordered_ = ordered;
    const auto& meta = base.metadata();
    bool surface = meta.family == "disk" || meta.family == "closed" || meta.family == "bounded" ||
                   meta.family == "dual_bounded";
    if (surface && meta.n >= 1 && m > meta.n)
        out.warnings_.push_back("m = " + std::to_string(m) + " exceeds n = " + std::to_string(meta.n) +
                                "; the discrete model is only guaranteed equivalent for m <= n");

    Enumerator en(base, m, ordered, opts.cap);
    int threads = opts.threads > 0 ? opts.threads : thread_count();
    std::size_t first_count = base.size();
    if (threads > static_cast<int>(first_count)) threads = std::max<int>(1, static_cast<int>(first_count));

    // Each worker handles a strided set of first factors; results are merged in
    // first-factor order so the output does not depend on the thread count.
    std::vector<std::vector<CellId>> per_first(first_count);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](int t) {
        try {
            std::size_t produced = 0;
            for (CellId c = static_cast<CellId>(t); c < first_count; c += static_cast<CellId>(threads)) {
                std::vector<CellId> prefix{c};
                Bits used = en.bits[c];
                en.recurse(prefix, used, per_first[c], produced, opts.cap);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t total = 0;
    for (auto& v : per_first) total += v.size() / m;
    if (total > opts.cap) throw CapExceeded("configuration complex exceeds the cell cap of " + std::to_string(opts.cap));

    std::vector<CellId> flat;
    flat.reserve(total * m);
    for (auto& v : per_first) {
        flat.insert(flat.end(), v.begin(), v.end());
        std::vector<CellId>().swap(v);
    }

    // Stable grouping by dimension keeps lexicographic order inside each group.
    std::vector<int> dims(total, 0);
    for (std::size_t i = 0; i < total; ++i)
        for (int k = 0; k < m; ++k) dims[i] += base.cell(flat[i * m + k]).dim;
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dims[a] < dims[b]; });
    out.flat_.resize(total * m);
    std::vector<int> sorted_dims(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::copy_n(flat.begin() + order[i] * m, m, out.flat_.begin() + i * m);
        sorted_dims[i] = dims[order[i]];
    }
    flat.clear();
    flat.shrink_to_fit();

    int maxdim = total ? sorted_dims.back() : -1;
    std::vector<std::size_t> group(maxdim + 2, total);
    for (int d = maxdim; d >= 0; --d) {
        auto it = std::lower_bound(sorted_dims.begin(), sorted_dims.end(), d);
        group[d] = static_cast<std::size_t>(it - sorted_dims.begin());
    }

    auto lookup = [&](const std::vector<CellId>& key, int d) -> std::optional<CellId> {
        std::size_t lo = group[d], hi = group[d + 1];
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto first = out.flat_.begin() + mid * m;
            if (std::lexicographical_compare(first, first + m, key.begin(), key.end())) lo = mid + 1;
            else hi = mid;
        }
        if (lo < group[d + 1] && std::equal(key.begin(), key.end(), out.flat_.begin() + lo * m))
            return static_cast<CellId>(lo);
        return std::nullopt;
    };

    std::vector<Cell> cells(total);
    std::vector<CellId> key(m);
    for (std::size_t i = 0; i < total; ++i) {
        Cell& cell = cells[i];
        cell.id = static_cast<CellId>(i);
        cell.dim = sorted_dims[i];
        cell.label = "(";
        for (int k = 0; k < m; ++k) {
            if (k) cell.label += ",";
            cell.label += std::to_string(out.flat_[i * m + k]);
        }
        cell.label += ")";
        int before = 0;
        for (int k = 0; k < m; ++k) {
            const Cell& bc = base.cell(out.flat_[i * m + k]);
            for (const Facet& f : bc.faces) {
                std::copy_n(out.flat_.begin() + i * m, m, key.begin());
                key[k] = f.id;
                int sign = f.sign * ((before % 2) ? -1 : 1);
                if (!ordered) {
                    // Move the replaced factor into sorted position.
                    int pos = k;
                    int df = bc.dim - 1;
                    while (pos > 0 && key[pos - 1] > key[pos]) {
                        std::swap(key[pos - 1], key[pos]);
                        if ((df * base.cell(key[pos]).dim) % 2) sign = -sign;
                        --pos;
                    }
                    while (pos + 1 < m && key[pos + 1] < key[pos]) {
                        std::swap(key[pos + 1], key[pos]);
                        if ((df * base.cell(key[pos]).dim) % 2) sign = -sign;
                        ++pos;
                    }
                }
                auto face = lookup(key, cell.dim - 1);
                if (!face) throw std::logic_error("configuration complex is not closed under faces");
                cell.faces.push_back({*face, sign});
            }
            before += bc.dim;
        }
    }
    ComplexMetadata cm{ordered ? "df" : "cf", meta.g, meta.n, m};
    out.complex_ = CubeComplex::from_cells(std::move(cells), cm);
    return out;
}

DiscreteConfigComplex build_ordered(const CubeComplex& base, int m, const DiscreteConfigOptions& opts) {
    return build_configuration(base, m, true, opts);
}

DiscreteConfigComplex build_unordered(const CubeComplex& base, int m, const DiscreteConfigOptions& opts) {
    return build_configuration(base, m, false, opts);
}

std::vector<CellId> DiscreteConfigComplex::factors(CellId id) const {
    if (id >= complex_.size()) throw InputError("unknown configuration cell id " + std::to_string(id));
    return {flat_.begin() + static_cast<std::size_t>(id) * m_, flat_.begin() + static_cast<std::size_t>(id + 1) * m_};
}

ProductCell DiscreteConfigComplex::product_cell(CellId id) const {
    return ProductCell{factors(id), complex_.cell(id).dim, id};
}

std::optional<CellId> DiscreteConfigComplex::find(const std::vector<CellId>& f) const {
    if (static_cast<int>(f.size()) != m_) return std::nullopt;
    std::vector<CellId> key = f;
    if (!ordered_) std::sort(key.begin(), key.end());
    int d = 0;
    for (CellId c : key) {
        if (c >= base_.size()) return std::nullopt;
        d += base_.cell(c).dim;
    }
    if (d > complex_.dim()) return std::nullopt;
    std::size_t lo = complex_.dim_begin(d), hi = complex_.dim_end(d);
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto first = flat_.begin() + mid * m_;
        if (std::lexicographical_compare(first, first + m_, key.begin(), key.end())) lo = mid + 1;
        else hi = mid;
    }
    if (lo < complex_.dim_end(d) && std::equal(key.begin(), key.end(), flat_.begin() + lo * m_))
        return static_cast<CellId>(lo);
    return std::nullopt;
}

std::pair<CellId, int> DiscreteConfigComplex::orbit(CellId cell, const std::vector<int>& perm) const {
    if (!ordered_) throw InputError("orbit is only defined on ordered configuration complexes");
    if (static_cast<int>(perm.size()) != m_) throw InputError("permutation has the wrong length");
    std::vector<int> seen(m_, 0);
    for (int p : perm) {
        if (p < 0 || p >= m_ || seen[p]) throw InputError("not a permutation");
        seen[p] = 1;
    }
    auto f = factors(cell);
    std::vector<CellId> img(m_);
    std::vector<int> dims(m_);
    for (int i = 0; i < m_; ++i) {
        img[perm[i]] = f[i];
        dims[i] = base_.cell(f[i]).dim;
    }
    auto id = find(img);
    if (!id) throw std::logic_error("permuted cell missing from configuration complex");
    return {*id, koszul_sign(dims, perm)};
}

}  // namespace sqconf
