#include "tileperiod/solver.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace tileperiod {

namespace {

struct CellsHash {
    std::size_t operator()(const std::vector<TileId>& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto t : v) {
            h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

Band band_from(const RegionAssignment& r, int first_row, int rows) {
    Band b;
    b.width = r.width;
    for (int y = first_row; y < first_row + rows; ++y) {
        std::vector<TileId> row(static_cast<std::size_t>(r.width));
        for (int x = 0; x < r.width; ++x) {
            row[static_cast<std::size_t>(x)] = r.at(x, y);
        }
        b.rows.push_back(std::move(row));
    }
    return b;
}

bool row_is_periodic(const std::vector<TileId>& row, int q) {
    const auto p = row.size();
    for (std::size_t x = 0; x < p; ++x) {
        if (row[x] != row[(x + static_cast<std::size_t>(q)) % p]) {
            return false;
        }
    }
    return true;
}

// Runs fn(p) for p = 1..pmax on `jobs` workers; results in ascending p.
template <class Fn>
std::vector<PeriodReport> per_period(int pmax, unsigned jobs, Fn fn) {
    std::vector<std::optional<PeriodReport>> slots(static_cast<std::size_t>(std::max(pmax, 0)));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<int> next{1};
    auto worker = [&] {
        while (true) {
            const int p = next.fetch_add(1);
            if (p > pmax) {
                return;
            }
            try {
                slots[static_cast<std::size_t>(p - 1)] = fn(p);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = pmax + 1;
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max(pmax, 1))));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<PeriodReport> out;
    for (auto& s : slots) {
        if (s) {
            out.push_back(std::move(*s));
        }
    }
    return out;
}

// From node `start` follow successors until a node repeats; returns the path
// before the cycle and the cycle itself.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> run_to_cycle(const TransferGraph& g,
                                                                               std::uint32_t start) {
    std::vector<std::uint32_t> path;
    std::unordered_map<std::uint32_t, std::size_t> seen;
    std::uint32_t v = start;
    while (!seen.contains(v)) {
        seen[v] = path.size();
        path.push_back(v);
        v = g.succ[v].front();
    }
    const auto at = seen[v];
    std::vector<std::uint32_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(at), path.end());
    path.resize(at);
    return {path, cycle};
}

} // namespace

std::size_t TransferGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) {
        n += s.size();
    }
    return n;
}

RegionAssignment BandWalk::unroll(int repeats) const {
    std::vector<const Band*> seq;
    for (const auto& b : prefix) {
        seq.push_back(&b);
    }
    for (int r = 0; r < repeats; ++r) {
        for (const auto& b : cycle) {
            seq.push_back(&b);
        }
    }
    if (seq.empty()) {
        throw InvalidDimensions("empty band walk");
    }
    std::vector<const std::vector<TileId>*> rows;
    for (const auto& row : seq.front()->rows) {
        rows.push_back(&row);
    }
    for (std::size_t i = 1; i < seq.size(); ++i) {
        rows.push_back(&seq[i]->rows.back());
    }
    const int w = seq.front()->width;
    RegionAssignment r(w, static_cast<int>(rows.size()), true, false);
    for (std::size_t y = 0; y < rows.size(); ++y) {
        for (int x = 0; x < w; ++x) {
            r.at(x, static_cast<int>(y)) = (*rows[y])[static_cast<std::size_t>(x)];
        }
    }
    return r;
}

int band_height_for(const TilingSystem& sys) { return std::max(sys.vheight() - 1, 1); }

std::vector<int> maximal_proper_divisors(int p) {
    std::vector<int> out;
    int n = p;
    for (int f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(p / f);
            while (n % f == 0) {
                n /= f;
            }
        }
    }
    if (n > 1) {
        out.push_back(p / n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TransferGraph build_transfer_graph(const TilingSystem& sys, int p, const SolverOptions& options) {
    if (p < 1) {
        throw InvalidDimensions("period must be positive");
    }
    const CompiledSystem cs(sys);
    const int k = band_height_for(sys);
    TransferGraph g;
    g.width = p;
    g.band_height = k;

    std::unordered_map<std::vector<TileId>, std::uint32_t, CellsHash> index;
    RegionSearch bands(cs, p, k, true, false, {options.search_budget});
    bands.enumerate([&](const RegionAssignment& r) {
        if (g.nodes.size() >= options.node_cap) {
            throw ResourceLimit("transfer graph exceeds node cap " + std::to_string(options.node_cap));
        }
        index.emplace(r.cells, static_cast<std::uint32_t>(g.nodes.size()));
        g.nodes.push_back(band_from(r, 0, k));
        return true;
    });
    g.succ.resize(g.nodes.size());

    RegionSearch ext(cs, p, k + 1, true, false, {options.search_budget});
    for (std::uint32_t u = 0; u < g.nodes.size(); ++u) {
        ext.reset_domains();
        const auto& band = g.nodes[u];
        for (int y = 0; y < k; ++y) {
            for (int x = 0; x < p; ++x) {
                ext.fix_cell(x, y, band.rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]);
            }
        }
        ext.enumerate([&](const RegionAssignment& r) {
            std::vector<TileId> top(r.cells.begin() + p, r.cells.end());
            g.succ[u].push_back(index.at(top));
            return true;
        });
    }
    return g;
}

TransferGraph live_subgraph(const TransferGraph& g) {
    const std::size_t n = g.nodes.size();
    std::vector<std::size_t> indeg(n, 0);
    std::vector<std::size_t> outdeg(n, 0);
    std::vector<std::vector<std::uint32_t>> pred(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        outdeg[u] = g.succ[u].size();
        for (const auto v : g.succ[u]) {
            ++indeg[v];
            pred[v].push_back(u);
        }
    }
    std::vector<bool> alive(n, true);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < n; ++u) {
        if (indeg[u] == 0 || outdeg[u] == 0) {
            alive[u] = false;
            queue.push_back(u);
        }
    }
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (const auto v : g.succ[u]) {
            if (alive[v] && --indeg[v] == 0) {
                alive[v] = false;
                queue.push_back(v);
            }
        }
        for (const auto v : pred[u]) {
            if (alive[v] && --outdeg[v] == 0) {
                alive[v] = false;
                queue.push_back(v);
            }
        }
    }
    TransferGraph out;
    out.width = g.width;
    out.band_height = g.band_height;
    std::vector<std::uint32_t> remap(n, std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t u = 0; u < n; ++u) {
        if (alive[u]) {
            remap[u] = static_cast<std::uint32_t>(out.nodes.size());
            out.nodes.push_back(g.nodes[u]);
        }
    }
    out.succ.resize(out.nodes.size());
    for (std::uint32_t u = 0; u < n; ++u) {
        if (!alive[u]) {
            continue;
        }
        for (const auto v : g.succ[u]) {
            if (alive[v]) {
                out.succ[remap[u]].push_back(remap[v]);
            }
        }
    }
    return out;
}

std::optional<PeriodReport> horizontal_period_exists(const TilingSystem& sys, int p, const SolverOptions& options) {
    const auto live = live_subgraph(build_transfer_graph(sys, p, options));
    if (live.nodes.empty()) {
        return std::nullopt;
    }
    auto [path, cycle] = run_to_cycle(live, 0);
    BandWalk walk;
    for (const auto v : cycle) {
        walk.cycle.push_back(live.nodes[v]);
    }
    PeriodReport rep;
    rep.period = p;
    rep.kind = PeriodKind::horizontal;
    rep.eigen = rows_are_eigen(walk.unroll());
    rep.walk = std::move(walk);
    return rep;
}

std::optional<PeriodReport> horizontal_eigenperiod(const TilingSystem& sys, int p, const SolverOptions& options) {
    const auto live = live_subgraph(build_transfer_graph(sys, p, options));
    if (live.nodes.empty()) {
        return std::nullopt;
    }
    const auto divisors = maximal_proper_divisors(p);
    if (divisors.size() > 16) {
        throw ResourceLimit("too many proper divisors to track for p = " + std::to_string(p));
    }
    const std::uint32_t full = (1u << divisors.size()) - 1;
    const std::size_t n = live.nodes.size();

    std::vector<std::uint32_t> bad(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t j = 0; j < divisors.size(); ++j) {
            for (const auto& row : live.nodes[v].rows) {
                if (!row_is_periodic(row, divisors[j])) {
                    bad[v] |= 1u << j;
                    break;
                }
            }
        }
    }

    // Product reachability over (node, divisors already violated).
    const std::size_t states = n << divisors.size();
    constexpr auto none = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> parent(states, none);
    std::vector<bool> seen(states, false);
    auto sid = [&](std::size_t v, std::uint32_t m) { return (v << divisors.size()) | m; };
    std::deque<std::uint64_t> queue;
    std::optional<std::uint64_t> goal;
    for (std::size_t v = 0; v < n && !goal; ++v) {
        const auto s = sid(v, bad[v]);
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
            if (bad[v] == full) {
                goal = s;
            }
        }
    }
    while (!queue.empty() && !goal) {
        const auto s = queue.front();
        queue.pop_front();
        const auto v = s >> divisors.size();
        const auto m = static_cast<std::uint32_t>(s & full);
        for (const auto w : live.succ[v]) {
            const auto nm = m | bad[w];
            const auto t = sid(w, nm);
            if (seen[t]) {
                continue;
            }
            seen[t] = true;
            parent[t] = s;
            if (nm == full) {
                goal = t;
                break;
            }
            queue.push_back(t);
        }
    }
    if (!goal) {
        return std::nullopt;
    }
    std::vector<std::uint32_t> nodes;
    for (auto s = *goal; s != none; s = parent[s]) {
        nodes.push_back(static_cast<std::uint32_t>(s >> divisors.size()));
    }
    std::reverse(nodes.begin(), nodes.end());
    auto [path, cycle] = run_to_cycle(live, nodes.back());
    nodes.pop_back();
    nodes.insert(nodes.end(), path.begin(), path.end());

    BandWalk walk;
    for (const auto v : nodes) {
        walk.prefix.push_back(live.nodes[v]);
    }
    for (const auto v : cycle) {
        walk.cycle.push_back(live.nodes[v]);
    }
    PeriodReport rep;
    rep.period = p;
    rep.kind = PeriodKind::horizontal;
    rep.eigen = true;
    rep.walk = std::move(walk);
    return rep;
}

std::vector<PeriodReport> horizontal_eigenperiods(const TilingSystem& sys, int pmax, const SolverOptions& options) {
    if (pmax < 1) {
        throw InvalidDimensions("pmax must be positive");
    }
    return per_period(pmax, options.jobs, [&](int p) { return horizontal_eigenperiod(sys, p, options); });
}

std::optional<PeriodReport> total_period_exists(const TilingSystem& sys, int p, const SolverOptions& options) {
    if (p < 1) {
        throw InvalidDimensions("period must be positive");
    }
    const CompiledSystem cs(sys);
    RegionSearch search(cs, p, p, true, true, {options.search_budget});
    auto torus = search.first();
    if (!torus) {
        return std::nullopt;
    }
    PeriodReport rep;
    rep.period = p;
    rep.kind = PeriodKind::total;
    rep.eigen = torus_is_eigen(*torus);
    rep.torus = std::move(torus);
    return rep;
}

bool torus_is_eigen(const RegionAssignment& torus) {
    for (const int q : maximal_proper_divisors(torus.width)) {
        if (torus.invariant_under(q, 0) && torus.invariant_under(0, q)) {
            return false;
        }
    }
    return true;
}

bool rows_are_eigen(const RegionAssignment& region) {
    for (const int q : maximal_proper_divisors(region.width)) {
        bool some_row_breaks = false;
        for (int y = 0; y < region.height && !some_row_breaks; ++y) {
            for (int x = 0; x < region.width; ++x) {
                if (region.at(x, y) != region.at((x + q) % region.width, y)) {
                    some_row_breaks = true;
                    break;
                }
            }
        }
        if (!some_row_breaks) {
            return false;
        }
    }
    return true;
}

std::optional<PeriodReport> total_eigenperiod(const TilingSystem& sys, int p, const SolverOptions& options) {
    if (p < 1) {
        throw InvalidDimensions("period must be positive");
    }
    const CompiledSystem cs(sys);
    RegionSearch search(cs, p, p, true, true, {options.search_budget});
    std::optional<RegionAssignment> found;
    search.enumerate([&](const RegionAssignment& r) {
        if (torus_is_eigen(r)) {
            found = r;
            return false;
        }
        return true;
    });
    if (!found) {
        return std::nullopt;
    }
    PeriodReport rep;
    rep.period = p;
    rep.kind = PeriodKind::total;
    rep.eigen = true;
    rep.torus = std::move(found);
    return rep;
}

std::vector<PeriodReport> total_eigenperiods(const TilingSystem& sys, int pmax, const SolverOptions& options) {
    if (pmax < 1) {
        throw InvalidDimensions("pmax must be positive");
    }
    return per_period(pmax, options.jobs, [&](int p) { return total_eigenperiod(sys, p, options); });
}

std::set<int> periods_of(const std::vector<PeriodReport>& reports) {
    std::set<int> out;
    for (const auto& r : reports) {
        out.insert(r.period);
    }
    return out;
}

} // namespace tileperiod
