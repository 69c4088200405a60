#include <algorithm>
#include <cmath>
#include <map>

#include "tileperiod/solver.hpp"

// Brute-force cross-check for horizontal eigenperiods. Only core validity
// checking is shared with the transfer-graph solver.

namespace tileperiod {

namespace {

struct OracleRun {
    const TilingSystem& sys;
    int width;
    int band;
    int max_height;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::vector<TileId>> rows;
    std::vector<std::uint32_t> row_breaks;
    std::uint32_t full = 0;
    std::vector<std::size_t> seq;

    RegionAssignment region_of(std::size_t from, std::size_t to, bool wrap_y) const {
        RegionAssignment r(width, static_cast<int>(to - from), true, wrap_y);
        for (std::size_t y = from; y < to; ++y) {
            for (int x = 0; x < width; ++x) {
                r.at(x, static_cast<int>(y - from)) = rows[seq[y]][static_cast<std::size_t>(x)];
            }
        }
        return r;
    }

    bool same_band(std::size_t i, std::size_t j) const {
        for (int t = 0; t < band; ++t) {
            if (seq[i + static_cast<std::size_t>(t)] != seq[j + static_cast<std::size_t>(t)]) {
                return false;
            }
        }
        return true;
    }

    bool certifies(std::uint32_t mask) const {
        if (mask != full) {
            return false;
        }
        const std::size_t d = seq.size();
        if (check_region(sys, region_of(0, d, true)).empty()) {
            return true;
        }
        const auto k = static_cast<std::size_t>(band);
        if (d < k + 1) {
            return false;
        }
        bool bottom = false;
        for (std::size_t i = 1; i + k <= d && !bottom; ++i) {
            bottom = same_band(0, i);
        }
        if (!bottom) {
            return false;
        }
        for (std::size_t j = 0; j + k < d; ++j) {
            if (same_band(j, d - k)) {
                return true;
            }
        }
        return false;
    }

    bool dfs(std::uint32_t mask) {
        if (!seq.empty() && certifies(mask)) {
            return true;
        }
        if (static_cast<int>(seq.size()) >= max_height) {
            return false;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (++nodes > budget) {
                throw ResourceLimit("brute-force oracle exceeded its budget");
            }
            seq.push_back(r);
            const std::size_t d = seq.size();
            const std::size_t from = d > static_cast<std::size_t>(band) ? d - static_cast<std::size_t>(band) - 1 : 0;
            if (check_region(sys, region_of(from, d, false)).empty() && dfs(mask | row_breaks[r])) {
                return true;
            }
            seq.pop_back();
        }
        return false;
    }
};

std::vector<std::uint32_t> row_masks(const std::vector<std::vector<TileId>>& rows, int width) {
    const auto divisors = maximal_proper_divisors(width);
    std::vector<std::uint32_t> out;
    for (const auto& row : rows) {
        RegionAssignment r(width, 1, true, false);
        r.cells = row;
        std::uint32_t breaks = 0;
        for (std::size_t j = 0; j < divisors.size(); ++j) {
            if (!r.invariant_under(divisors[j], 0)) {
                breaks |= 1u << j;
            }
        }
        out.push_back(breaks);
    }
    return out;
}

// Unbounded variant of the lasso search. Cylinders are explored as walks over
// bands of k consecutive rows; a walk is summarized by (current band,
// accumulated mask, whether the start band came back), so every state is
// expanded once per start band. A walk with a full mask certifies once its
// start band has come back and its current band can recur further up. The two
// loops then repeat forever below and above.
class ExactSearch {
public:
    ExactSearch(const TilingSystem& sys, int width, int band, std::vector<std::vector<TileId>> rows,
                std::vector<std::uint32_t> masks, std::uint32_t full, std::uint64_t budget)
        : sys_(sys), width_(width), band_(band), rows_(std::move(rows)), masks_(std::move(masks)), full_(full),
          budget_(budget) {
        enumerate_bands();
    }

    bool accepts() {
        for (std::size_t a = 0; a < bands_.size(); ++a) {
            if (recurs(a) && from(a)) {
                return true;
            }
        }
        return false;
    }

private:
    using Band = std::vector<std::size_t>;

    bool valid(const Band& seq) const {
        RegionAssignment r(width_, static_cast<int>(seq.size()), true, false);
        for (std::size_t y = 0; y < seq.size(); ++y) {
            for (int x = 0; x < width_; ++x) {
                r.at(x, static_cast<int>(y)) = rows_[seq[y]][static_cast<std::size_t>(x)];
            }
        }
        return check_region(sys_, r).empty();
    }

    void tick() {
        if (++nodes_ > budget_) {
            throw ResourceLimit("brute-force oracle exceeded its budget");
        }
    }

    void enumerate_bands() {
        std::vector<Band> partial{{}};
        for (int level = 0; level < band_; ++level) {
            std::vector<Band> next;
            for (const auto& b : partial) {
                for (std::size_t r = 0; r < rows_.size(); ++r) {
                    tick();
                    auto ext = b;
                    ext.push_back(r);
                    if (valid(ext)) {
                        next.push_back(std::move(ext));
                    }
                }
            }
            partial = std::move(next);
        }
        for (std::size_t i = 0; i < partial.size(); ++i) {
            index_[partial[i]] = i;
        }
        bands_ = std::move(partial);
        succ_.resize(bands_.size());
        for (std::size_t i = 0; i < bands_.size(); ++i) {
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                tick();
                auto window = bands_[i];
                window.push_back(r);
                if (!valid(window)) {
                    continue;
                }
                window.erase(window.begin());
                succ_[i].emplace_back(index_.at(window), r);
            }
        }
        recurs_.assign(bands_.size(), -1);
    }

    bool recurs(std::size_t b) {
        if (recurs_[b] < 0) {
            std::vector<char> seen(bands_.size(), 0);
            std::vector<std::size_t> stack{b};
            bool found = false;
            while (!stack.empty() && !found) {
                const auto v = stack.back();
                stack.pop_back();
                for (const auto& [w, row] : succ_[v]) {
                    tick();
                    if (w == b) {
                        found = true;
                        break;
                    }
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
            recurs_[b] = found ? 1 : 0;
        }
        return recurs_[b] == 1;
    }

    bool from(std::size_t start) {
        std::uint32_t mask0 = 0;
        for (const auto r : bands_[start]) {
            mask0 |= masks_[r];
        }
        const std::size_t states_per_band = static_cast<std::size_t>(full_ + 1) * 2;
        std::vector<char> seen(bands_.size() * states_per_band, 0);
        auto key = [&](std::size_t b, std::uint32_t m, bool back) {
            return b * states_per_band + static_cast<std::size_t>(m) * 2 + (back ? 1 : 0);
        };
        struct State {
            std::size_t band;
            std::uint32_t mask;
            bool back;
        };
        std::vector<State> stack{{start, mask0, false}};
        seen[key(start, mask0, false)] = 1;
        while (!stack.empty()) {
            const auto s = stack.back();
            stack.pop_back();
            if (s.back && s.mask == full_ && recurs(s.band)) {
                return true;
            }
            for (const auto& [w, row] : succ_[s.band]) {
                tick();
                const State t{w, s.mask | masks_[row], s.back || w == start};
                auto& mark = seen[key(t.band, t.mask, t.back)];
                if (!mark) {
                    mark = 1;
                    stack.push_back(t);
                }
            }
        }
        return false;
    }

    const TilingSystem& sys_;
    int width_;
    int band_;
    std::vector<std::vector<TileId>> rows_;
    std::vector<std::uint32_t> masks_;
    std::uint32_t full_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<Band> bands_;
    std::map<Band, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> succ_;
    std::vector<int> recurs_;
};

bool oracle_accepts(const TilingSystem& sys, int width, std::optional<int> hmax, std::uint64_t budget) {
    const auto n = static_cast<TileId>(sys.tiles.size());
    const int k = std::max(sys.vheight() - 1, 1);
    const auto divisors = maximal_proper_divisors(width);
    const std::uint32_t full = (1u << divisors.size()) - 1;

    std::vector<std::vector<TileId>> rows;
    std::vector<TileId> word(static_cast<std::size_t>(width), 0);
    while (true) {
        RegionAssignment r(width, 1, true, false);
        r.cells = word;
        if (check_region(sys, r).empty()) {
            rows.push_back(word);
        }
        std::size_t i = 0;
        for (; i < word.size(); ++i) {
            if (++word[i] < n) {
                break;
            }
            word[i] = 0;
        }
        if (i == word.size()) {
            break;
        }
    }
    auto masks = row_masks(rows, width);
    std::uint32_t reachable = 0;
    for (const auto b : masks) {
        reachable |= b;
    }
    if (rows.empty() || reachable != full) {
        return false;
    }
    if (!hmax) {
        return ExactSearch(sys, width, k, std::move(rows), std::move(masks), full, budget).accepts();
    }

    const double exponent = static_cast<double>(sys.radius()) * width * k;
    const double bound = std::pow(static_cast<double>(n), exponent);
    const int max_height = std::min(bound > 1e6 ? 1'000'000 : static_cast<int>(bound), *hmax);
    OracleRun run{sys, width, k, max_height, budget, 0, std::move(rows), std::move(masks), full, {}};
    return run.dfs(0);
}

} // namespace

std::set<int> brute_force_oracle(const TilingSystem& sys, int p, std::optional<int> hmax, std::uint64_t budget) {
    if (p < 1) {
        throw InvalidDimensions("period must be positive");
    }
    std::set<int> out;
    for (int w = 1; w <= p; ++w) {
        if (oracle_accepts(sys, w, hmax, budget)) {
            out.insert(w);
        }
    }
    return out;
}

} // namespace tileperiod
